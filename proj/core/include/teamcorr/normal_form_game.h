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

#ifndef TEAMCORR_NORMAL_FORM_GAME_H_
#define TEAMCORR_NORMAL_FORM_GAME_H_

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "teamcorr/layout.h"
#include "teamcorr/types.h"

namespace teamcorr {

// Largest team joint-action table we are willing to materialise.
inline constexpr std::int64_t kDefaultEnumerationBound = 1 << 20;

// Two-team zero-sum game in normal form. Only team 1's payoff R1 is stored;
// team 2 receives -R1 on every cell.
class NormalFormTeamGame {
 public:
  // payoff is row-major: index = joint1 * J2 + joint2.
  NormalFormTeamGame(std::array<int, 2> team_sizes,
                     std::vector<int> action_counts,
                     std::vector<double> payoff);

  const TeamLayout& layout() const { return layout_; }
  int team_size(Team team) const { return layout_.team_size(team); }
  std::int64_t num_joint_actions(Team team) const {
    return layout_.num_joint_actions(team);
  }

  // R1 at a pair of team joint-action indices.
  double payoff(std::int64_t joint1, std::int64_t joint2) const {
    return payoff_[joint1 * cols_ + joint2];
  }
  double payoff(std::span<const int> actions1,
                std::span<const int> actions2) const;
  // Reward of `team` when it plays `own` and the other team plays `other`.
  double team_payoff(Team team, std::int64_t own, std::int64_t other) const;

  const std::vector<double>& payoff_table() const { return payoff_; }

  // J_team x J_other matrix of the team's own reward, row-major.
  std::vector<double> TeamMatrix(Team team) const;

  double min_payoff() const;
  double max_payoff() const;

 private:
  TeamLayout layout_;
  std::int64_t rows_ = 0;
  std::int64_t cols_ = 0;
  std::vector<double> payoff_;
};

}  // namespace teamcorr

#endif  // TEAMCORR_NORMAL_FORM_GAME_H_
