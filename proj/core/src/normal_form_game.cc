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

#include "teamcorr/normal_form_game.h"

#include <algorithm>
#include <cmath>
#include <string>

namespace teamcorr {

NormalFormTeamGame::NormalFormTeamGame(std::array<int, 2> team_sizes,
                                       std::vector<int> action_counts,
                                       std::vector<double> payoff)
    : layout_(team_sizes, std::move(action_counts)), payoff_(std::move(payoff)) {
  rows_ = layout_.num_joint_actions(Team::kFirst);
  cols_ = layout_.num_joint_actions(Team::kSecond);
  if (cols_ > (std::int64_t{1} << 31) / rows_) {
    throw BoundError("payoff table too large");
  }
  if (static_cast<std::int64_t>(payoff_.size()) != rows_ * cols_) {
    throw DimensionError("payoff table needs " + std::to_string(rows_ * cols_) +
                         " entries, got " + std::to_string(payoff_.size()));
  }
  for (double v : payoff_) {
    if (!std::isfinite(v)) throw DimensionError("payoff entries must be finite");
  }
}

double NormalFormTeamGame::payoff(std::span<const int> actions1,
                                  std::span<const int> actions2) const {
  return payoff(layout_.EncodeJoint(Team::kFirst, actions1),
                layout_.EncodeJoint(Team::kSecond, actions2));
}

double NormalFormTeamGame::team_payoff(Team team, std::int64_t own,
                                       std::int64_t other) const {
  return team == Team::kFirst ? payoff(own, other) : -payoff(other, own);
}

std::vector<double> NormalFormTeamGame::TeamMatrix(Team team) const {
  if (team == Team::kFirst) return payoff_;
  std::vector<double> out(payoff_.size());
  for (std::int64_t r = 0; r < rows_; ++r) {
    for (std::int64_t c = 0; c < cols_; ++c) {
      out[c * rows_ + r] = -payoff_[r * cols_ + c];
    }
  }
  return out;
}

double NormalFormTeamGame::min_payoff() const {
  return *std::min_element(payoff_.begin(), payoff_.end());
}

double NormalFormTeamGame::max_payoff() const {
  return *std::max_element(payoff_.begin(), payoff_.end());
}

}  // namespace teamcorr
