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

#include "teamcorr/layout.h"

#include <string>

namespace teamcorr {
namespace {

constexpr std::int64_t kJointCountLimit = std::int64_t{1} << 62;

}  // namespace

TeamLayout::TeamLayout(std::array<int, 2> team_sizes,
                       std::vector<int> action_counts)
    : team_sizes_(team_sizes), action_counts_(std::move(action_counts)) {
  if (team_sizes_[0] < 1 || team_sizes_[1] < 1) {
    throw DimensionError("team sizes must be positive");
  }
  if (static_cast<int>(action_counts_.size()) != num_players()) {
    throw DimensionError("expected " + std::to_string(num_players()) +
                         " action counts, got " +
                         std::to_string(action_counts_.size()));
  }
  for (int count : action_counts_) {
    if (count < 1) throw DimensionError("action counts must be positive");
  }
  for (int t = 0; t < 2; ++t) {
    std::int64_t total = 1;
    for (int count : team_action_counts(static_cast<Team>(t))) {
      if (total > kJointCountLimit / count) {
        total = -1;  // overflow: reported lazily by num_joint_actions
        break;
      }
      total *= count;
    }
    joint_counts_[t] = total;
  }
}

int TeamLayout::player_index(Team team, int member) const {
  if (member < 0 || member >= team_size(team)) {
    throw DimensionError("member " + std::to_string(member) +
                         " out of range for team " +
                         std::to_string(Label(team)));
  }
  return team == Team::kFirst ? member : team_sizes_[0] + member;
}

int TeamLayout::action_count(Team team, int member) const {
  return action_counts_[player_index(team, member)];
}

std::span<const int> TeamLayout::team_action_counts(Team team) const {
  const int offset = team == Team::kFirst ? 0 : team_sizes_[0];
  return std::span<const int>(action_counts_).subspan(offset, team_size(team));
}

std::int64_t TeamLayout::num_joint_actions(Team team) const {
  const std::int64_t count = joint_counts_[Index(team)];
  if (count < 0) throw BoundError("team joint action space overflows");
  return count;
}

std::int64_t TeamLayout::EncodeJoint(Team team,
                                     std::span<const int> actions) const {
  const auto counts = team_action_counts(team);
  if (actions.size() != counts.size()) {
    throw DimensionError("joint action has " + std::to_string(actions.size()) +
                         " entries, team has " + std::to_string(counts.size()) +
                         " members");
  }
  std::int64_t index = 0;
  for (std::size_t m = 0; m < counts.size(); ++m) {
    if (actions[m] < 0 || actions[m] >= counts[m]) {
      throw DimensionError("action " + std::to_string(actions[m]) +
                           " out of range for member " + std::to_string(m));
    }
    index = index * counts[m] + actions[m];
  }
  return index;
}

JointAction TeamLayout::DecodeJoint(Team team, std::int64_t index) const {
  const auto counts = team_action_counts(team);
  if (index < 0 || index >= num_joint_actions(team)) {
    throw DimensionError("joint action index out of range");
  }
  JointAction actions(counts.size());
  for (std::size_t m = counts.size(); m-- > 0;) {
    actions[m] = static_cast<int>(index % counts[m]);
    index /= counts[m];
  }
  return actions;
}

bool TeamLayout::homogeneous(Team team) const {
  const auto counts = team_action_counts(team);
  for (int c : counts) {
    if (c != counts[0]) return false;
  }
  return true;
}

}  // namespace teamcorr
