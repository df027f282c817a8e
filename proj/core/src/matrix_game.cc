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

#include "teamcorr/matrix_game.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace teamcorr {

Matrix::Matrix(int rows, int cols, double fill)
    : rows_(rows), cols_(cols) {
  if (rows < 1 || cols < 1) throw DimensionError("matrix must be nonempty");
  data_.assign(static_cast<std::size_t>(rows) * cols, fill);
}

Matrix::Matrix(int rows, int cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (rows < 1 || cols < 1) throw DimensionError("matrix must be nonempty");
  if (data_.size() != static_cast<std::size_t>(rows) * cols) {
    throw DimensionError("matrix data has the wrong size");
  }
}

Matrix Matrix::FromRows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty() || rows[0].empty()) {
    throw DimensionError("matrix must be nonempty");
  }
  std::vector<double> data;
  for (const auto& row : rows) {
    if (row.size() != rows[0].size()) throw DimensionError("ragged matrix");
    data.insert(data.end(), row.begin(), row.end());
  }
  return Matrix(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()),
                std::move(data));
}

double Matrix::min() const { return *std::min_element(data_.begin(), data_.end()); }
double Matrix::max() const { return *std::max_element(data_.begin(), data_.end()); }

std::vector<double> Matrix::RowValues(std::span<const double> col_mix) const {
  if (static_cast<int>(col_mix.size()) != cols_) {
    throw DimensionError("column mixture has the wrong size");
  }
  std::vector<double> out(rows_, 0.0);
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) out[r] += (*this)(r, c) * col_mix[c];
  }
  return out;
}

std::vector<double> Matrix::ColumnValues(std::span<const double> row_mix) const {
  if (static_cast<int>(row_mix.size()) != rows_) {
    throw DimensionError("row mixture has the wrong size");
  }
  std::vector<double> out(cols_, 0.0);
  for (int r = 0; r < rows_; ++r) {
    if (row_mix[r] == 0.0) continue;
    for (int c = 0; c < cols_; ++c) out[c] += row_mix[r] * (*this)(r, c);
  }
  return out;
}

double EquilibriumGap(const Matrix& payoff, std::span<const double> row_mix,
                      std::span<const double> col_mix) {
  const auto row_values = payoff.RowValues(col_mix);
  const auto col_values = payoff.ColumnValues(row_mix);
  const double value = Dot(row_mix, row_values);
  const double upper = *std::max_element(row_values.begin(), row_values.end());
  const double lower = *std::min_element(col_values.begin(), col_values.end());
  return std::max({upper - value, value - lower, 0.0});
}

namespace {

// Dense simplex tableau for max 1^T w s.t. A w <= 1, w >= 0 with A > 0.
// Columns: C structural variables, R slacks, then the right-hand side.
class Tableau {
 public:
  explicit Tableau(const Matrix& a)
      : rows_(a.rows()), vars_(a.cols() + a.rows()), width_(vars_ + 1),
        cells_(static_cast<std::size_t>(rows_ + 1) * width_, 0.0),
        basis_(rows_) {
    for (int r = 0; r < rows_; ++r) {
      for (int c = 0; c < a.cols(); ++c) at(r, c) = a(r, c);
      at(r, a.cols() + r) = 1.0;
      at(r, vars_) = 1.0;
      basis_[r] = a.cols() + r;
    }
    for (int c = 0; c < a.cols(); ++c) at(rows_, c) = 1.0;  // reduced costs
  }

  // One Bland pivot. Returns false at optimality.
  bool Step(double eps) {
    int enter = -1;
    for (int j = 0; j < vars_; ++j) {
      if (at(rows_, j) > eps) {
        enter = j;
        break;
      }
    }
    if (enter < 0) return false;
    int leave = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int r = 0; r < rows_; ++r) {
      const double coef = at(r, enter);
      if (coef <= eps) continue;
      const double ratio = at(r, vars_) / coef;
      const bool tie = leave >= 0 && std::abs(ratio - best) <= eps;
      if ((!tie && ratio < best) || (tie && basis_[r] < basis_[leave])) {
        best = std::min(best, ratio);
        leave = r;
      }
    }
    // A > 0 keeps the problem bounded, so a leaving row always exists.
    if (leave < 0) throw Error("unbounded simplex step");
    Pivot(leave, enter);
    return true;
  }

  std::vector<double> Primal(int structural) const {
    std::vector<double> w(structural, 0.0);
    for (int r = 0; r < rows_; ++r) {
      if (basis_[r] < structural) w[basis_[r]] = at(r, vars_);
    }
    return w;
  }

  // Shadow prices of the row constraints.
  std::vector<double> Dual(int structural) const {
    std::vector<double> u(rows_);
    for (int r = 0; r < rows_; ++r) u[r] = -at(rows_, structural + r);
    return u;
  }

 private:
  double& at(int r, int c) {
    return cells_[static_cast<std::size_t>(r) * width_ + c];
  }
  double at(int r, int c) const {
    return cells_[static_cast<std::size_t>(r) * width_ + c];
  }

  void Pivot(int pr, int pc) {
    const double inv = 1.0 / at(pr, pc);
    for (int c = 0; c < width_; ++c) at(pr, c) *= inv;
    at(pr, pc) = 1.0;
    for (int r = 0; r <= rows_; ++r) {
      if (r == pr) continue;
      const double f = at(r, pc);
      if (f == 0.0) continue;
      for (int c = 0; c < width_; ++c) at(r, c) -= f * at(pr, c);
      at(r, pc) = 0.0;
    }
    basis_[pr] = pc;
  }

  int rows_;
  int vars_;
  int width_;
  std::vector<double> cells_;
  std::vector<int> basis_;
};

Distribution Normalise(std::vector<double> v) {
  double total = 0.0;
  for (double& x : v) {
    if (!(x > 0.0)) x = 0.0;  // also clears -0
    total += x;
  }
  if (total <= 0.0) return Distribution(v.size(), 1.0 / v.size());
  return CleanDistribution(v);
}

}  // namespace

MaxminSolution SolveMatrixMaxmin(const Matrix& payoff, double tol,
                                 int max_pivots) {
  if (payoff.rows() < 1 || payoff.cols() < 1) {
    throw DimensionError("matrix must be nonempty");
  }
  for (double v : payoff.data()) {
    if (!std::isfinite(v)) throw DimensionError("matrix entries must be finite");
  }
  const double shift = 1.0 - payoff.min();
  Matrix shifted = payoff;
  for (int r = 0; r < payoff.rows(); ++r) {
    for (int c = 0; c < payoff.cols(); ++c) shifted(r, c) += shift;
  }
  Tableau tableau(shifted);
  MaxminSolution sol;
  const double eps = 1e-12;
  auto finish = [&] {
    sol.col_mix = Normalise(tableau.Primal(payoff.cols()));
    sol.row_mix = Normalise(tableau.Dual(payoff.cols()));
    sol.value = Dot(sol.row_mix, payoff.RowValues(sol.col_mix));
    sol.gap = EquilibriumGap(payoff, sol.row_mix, sol.col_mix);
  };
  while (tableau.Step(eps)) {
    if (++sol.pivots > max_pivots) {
      finish();
      throw SolverError("simplex pivot limit reached", sol);
    }
  }
  finish();
  if (sol.gap > tol) {
    throw SolverError("maxmin solution gap " + std::to_string(sol.gap) +
                          " exceeds tolerance",
                      sol);
  }
  return sol;
}

}  // namespace teamcorr
