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

// Independent reference computations used as test oracles. Nothing here
// calls into the solvers under test; only game accessors are used.

#ifndef TEAMCORR_TESTS_REFERENCE_H_
#define TEAMCORR_TESTS_REFERENCE_H_

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "teamcorr/game.h"
#include "teamcorr/matrix_game.h"
#include "teamcorr/normal_form_game.h"
#include "teamcorr/policy.h"
#include "teamcorr/stochastic_game.h"

namespace ref {

using teamcorr::Game;
using teamcorr::Team;

// Solves A x = b by Gaussian elimination with partial pivoting.
inline std::optional<std::vector<double>> SolveLinear(
    std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    }
    if (std::abs(a[piv][c]) < 1e-12) return std::nullopt;
    std::swap(a[piv], a[c]);
    std::swap(b[piv], b[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

struct MatrixSolution {
  std::vector<double> row;
  std::vector<double> col;
  double value = 0.0;
};

// Matrix-game solution by enumerating square supports (Shapley-Snow): every
// zero-sum matrix game has an optimal pair that equalises a nonsingular
// square submatrix. Feasible only for small matrices.
inline MatrixSolution SupportEnumeration(const teamcorr::Matrix& m,
                                         double eps = 1e-9) {
  const int rows = m.rows(), cols = m.cols();
  const int kmax = std::min(rows, cols);
  auto subsets = [](int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int start) {
      if (static_cast<int>(cur.size()) == k) {
        out.push_back(cur);
        return;
      }
      for (int i = start; i < n; ++i) {
        cur.push_back(i);
        rec(i + 1);
        cur.pop_back();
      }
    };
    rec(0);
    return out;
  };
  for (int k = 1; k <= kmax; ++k) {
    for (const auto& rs : subsets(rows, k)) {
      for (const auto& cs : subsets(cols, k)) {
        // Unknowns x_1..x_k, v: sum_i x_i m(r_i, c_j) = v, sum x = 1.
        std::vector<std::vector<double>> a(k + 1, std::vector<double>(k + 1));
        std::vector<double> b(k + 1, 0.0);
        for (int j = 0; j < k; ++j) {
          for (int i = 0; i < k; ++i) a[j][i] = m(rs[i], cs[j]);
          a[j][k] = -1.0;
        }
        for (int i = 0; i < k; ++i) a[k][i] = 1.0;
        b[k] = 1.0;
        auto xs = SolveLinear(a, b);
        if (!xs) continue;
        for (int i = 0; i < k; ++i) {
          for (int j = 0; j < k; ++j) a[i][j] = m(rs[i], cs[j]);
          a[i][k] = -1.0;
        }
        auto ys = SolveLinear(a, b);
        if (!ys) continue;
        MatrixSolution s;
        s.row.assign(rows, 0.0);
        s.col.assign(cols, 0.0);
        bool ok = true;
        for (int i = 0; i < k; ++i) {
          if ((*xs)[i] < -eps || (*ys)[i] < -eps) ok = false;
          s.row[rs[i]] = std::max(0.0, (*xs)[i]);
          s.col[cs[i]] = std::max(0.0, (*ys)[i]);
        }
        if (!ok) continue;
        s.value = (*xs)[k];
        for (int c = 0; c < cols && ok; ++c) {
          double v = 0.0;
          for (int r = 0; r < rows; ++r) v += s.row[r] * m(r, c);
          if (v < s.value - eps) ok = false;
        }
        for (int r = 0; r < rows && ok; ++r) {
          double v = 0.0;
          for (int c = 0; c < cols; ++c) v += s.col[c] * m(r, c);
          if (v > s.value + eps) ok = false;
        }
        if (ok) return s;
      }
    }
  }
  return {};
}

// All joint actions of `sizes` in lexicographic order.
inline std::vector<std::vector<int>> JointActions(const std::vector<int>& sizes) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(sizes.size(), 0);
  while (true) {
    out.push_back(cur);
    int i = static_cast<int>(sizes.size()) - 1;
    while (i >= 0 && ++cur[i] == sizes[i]) cur[i--] = 0;
    if (i < 0) break;
  }
  return out;
}

inline std::vector<int> TeamSizes(const Game& game, Team team) {
  const auto& layout = game.layout();
  std::vector<int> sizes;
  for (int m = 0; m < layout.team_size(team); ++m) {
    sizes.push_back(layout.action_count(team, m));
  }
  return sizes;
}

// Probability that a product of member distributions plays `a`.
inline double ProductProb(const std::vector<std::vector<double>>& members,
                          const std::vector<int>& a) {
  double p = 1.0;
  for (std::size_t m = 0; m < a.size(); ++m) p *= members[m][a[m]];
  return p;
}

// Member distributions of a factorized policy at the given observations.
inline std::vector<std::vector<double>> MemberDists(
    const teamcorr::TeamPolicy& p, const std::vector<int>& obs) {
  std::vector<std::vector<double>> out;
  for (std::size_t m = 0; m < obs.size(); ++m) {
    auto d = p.member(static_cast<int>(m)).distribution(obs[m]);
    out.emplace_back(d.begin(), d.end());
  }
  return out;
}

// Distribution over a team's joint actions (lexicographic order) at the
// given member observations, for any policy kind.
inline std::vector<double> JointDist(const Game& game, Team team,
                                     const teamcorr::TeamPolicy& p,
                                     const std::vector<int>& obs) {
  const auto sizes = TeamSizes(game, team);
  const auto all = JointActions(sizes);
  std::vector<double> out(all.size(), 0.0);
  if (p.kind() == teamcorr::TeamPolicy::Kind::kJointMix) {
    const auto& mix = p.joint_mix();
    const auto& row = mix.rows.at(mix.Key(obs));
    for (std::size_t i = 0; i < row.size(); ++i) out[i] = row[i];
    return out;
  }
  const auto dists = MemberDists(p, obs);
  for (std::size_t i = 0; i < all.size(); ++i) out[i] = ProductProb(dists, all[i]);
  return out;
}

// Brute-force expected R1 in a normal-form game.
inline double NormalFormValue(const Game& game, const teamcorr::TeamPolicy& p1,
                              const teamcorr::TeamPolicy& p2) {
  const auto& g = game.normal_form();
  const auto d1 = JointDist(game, Team::kFirst, p1,
                            std::vector<int>(g.team_size(Team::kFirst), 0));
  const auto d2 = JointDist(game, Team::kSecond, p2,
                            std::vector<int>(g.team_size(Team::kSecond), 0));
  const auto a1 = JointActions(TeamSizes(game, Team::kFirst));
  const auto a2 = JointActions(TeamSizes(game, Team::kSecond));
  double v = 0.0;
  for (std::size_t i = 0; i < a1.size(); ++i) {
    for (std::size_t j = 0; j < a2.size(); ++j) {
      v += d1[i] * d2[j] * g.payoff(a1[i], a2[j]);
    }
  }
  return v;
}

// Finite-horizon value of team 1 by plain recursion over (state, steps
// left), memoised. Any policy kinds.
class BackwardInduction {
 public:
  BackwardInduction(const teamcorr::StochasticTeamGame& g, Game handle,
                    teamcorr::TeamPolicy p1, teamcorr::TeamPolicy p2)
      : g_(g), game_(std::move(handle)), p1_(std::move(p1)), p2_(std::move(p2)) {}

  double Value(int state, int steps) {
    if (steps <= 0 || g_.terminal(state)) return 0.0;
    const auto key = std::make_pair(state, steps);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const auto d1 = JointDist(game_, Team::kFirst, p1_,
                              g_.TeamObservations(state, Team::kFirst));
    const auto d2 = JointDist(game_, Team::kSecond, p2_,
                              g_.TeamObservations(state, Team::kSecond));
    double v = 0.0;
    for (std::size_t i = 0; i < d1.size(); ++i) {
      if (d1[i] == 0.0) continue;
      for (std::size_t j = 0; j < d2.size(); ++j) {
        if (d2[j] == 0.0) continue;
        v += d1[i] * d2[j] * QPair(state, steps, i, j);
      }
    }
    memo_[key] = v;
    return v;
  }

  // R1 of the pure joint-action pair (i, j) at `state` followed by the
  // policies for steps - 1 more steps.
  double QPair(int state, int steps, std::size_t i, std::size_t j) {
    const auto a1 = JointActions(TeamSizes(game_, Team::kFirst))[i];
    const auto a2 = JointActions(TeamSizes(game_, Team::kSecond))[j];
    std::vector<int> actions = a1;
    actions.insert(actions.end(), a2.begin(), a2.end());
    const auto step = g_.Step(state, actions);
    double v = step.reward;
    for (const auto& o : step.outcomes) {
      v += g_.discount() * o.probability * Value(o.state, steps - 1);
    }
    return v;
  }

  double Initial(int steps) {
    double v = 0.0;
    for (const auto& o : g_.initial_distribution()) {
      v += o.probability * Value(o.state, steps);
    }
    return v;
  }

 private:
  const teamcorr::StochasticTeamGame& g_;
  Game game_;
  teamcorr::TeamPolicy p1_, p2_;
  std::map<std::pair<int, int>, double> memo_;
};

}  // namespace ref

#endif  // TEAMCORR_TESTS_REFERENCE_H_
