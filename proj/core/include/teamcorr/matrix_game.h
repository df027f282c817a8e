// Copyright 2026 The teamcorr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TEAMCORR_MATRIX_GAME_H_
#define TEAMCORR_MATRIX_GAME_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "teamcorr/types.h"

namespace teamcorr {

// Dense row-major matrix of the row player's payoff.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, double fill = 0.0);
  Matrix(int rows, int cols, std::vector<double> data);
  static Matrix FromRows(const std::vector<std::vector<double>>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double operator()(int r, int c) const { return data_[Offset(r, c)]; }
  double& operator()(int r, int c) { return data_[Offset(r, c)]; }
  const std::vector<double>& data() const { return data_; }

  double min() const;
  double max() const;

  // (M y)_r for every row and (x^T M)_c for every column.
  std::vector<double> RowValues(std::span<const double> col_mix) const;
  std::vector<double> ColumnValues(std::span<const double> row_mix) const;

 private:
  std::size_t Offset(int r, int c) const {
    return static_cast<std::size_t>(r) * cols_ + c;
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

struct MaxminSolution {
  Distribution row_mix;
  Distribution col_mix;
  double value = 0.0;  // row_mix^T M col_mix
  // max(best row response to col_mix - value, value - worst column reply
  // to row_mix); zero at an exact equilibrium.
  double gap = 0.0;
  int pivots = 0;
};

// Thrown when the solver stops before meeting the tolerance; carries the
// best solution found.
class SolverError : public Error {
 public:
  SolverError(const std::string& what, MaxminSolution best)
      : Error(what), best_(std::move(best)) {}
  const MaxminSolution& best() const { return best_; }

 private:
  MaxminSolution best_;
};

// Maxmin strategies of the zero-sum matrix game where the row player
// maximises. Solved as a linear program with a dense simplex (Bland's rule);
// the returned gap certifies both mixes.
MaxminSolution SolveMatrixMaxmin(const Matrix& payoff, double tol = 1e-9,
                                 int max_pivots = 100000);

// Duality-gap certificate of a pair of mixes.
double EquilibriumGap(const Matrix& payoff, std::span<const double> row_mix,
                      std::span<const double> col_mix);

}  // namespace teamcorr

#endif  // TEAMCORR_MATRIX_GAME_H_
