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

#ifndef TEAMCORR_LAYOUT_H_
#define TEAMCORR_LAYOUT_H_

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "teamcorr/types.h"

namespace teamcorr {

// Team sizes and per-player action counts shared by every game type.
// Players are numbered team 1 members first, then team 2 members. A team's
// joint action is encoded row-major over its members: member 0 is the most
// significant digit, so index order equals lexicographic order.
class TeamLayout {
 public:
  TeamLayout() = default;
  TeamLayout(std::array<int, 2> team_sizes, std::vector<int> action_counts);

  int team_size(Team team) const { return team_sizes_[Index(team)]; }
  int num_players() const { return team_sizes_[0] + team_sizes_[1]; }
  int player_index(Team team, int member) const;
  int action_count(Team team, int member) const;
  const std::vector<int>& action_counts() const { return action_counts_; }
  std::span<const int> team_action_counts(Team team) const;
  std::array<int, 2> team_sizes() const { return team_sizes_; }

  // Number of pure joint actions of a team; throws BoundError beyond 2^62.
  std::int64_t num_joint_actions(Team team) const;
  std::int64_t EncodeJoint(Team team, std::span<const int> actions) const;
  JointAction DecodeJoint(Team team, std::int64_t index) const;

  // True when every member of the team has the same action count.
  bool homogeneous(Team team) const;

  bool operator==(const TeamLayout&) const = default;

 private:
  std::array<int, 2> team_sizes_{0, 0};
  std::vector<int> action_counts_;
  std::array<std::int64_t, 2> joint_counts_{0, 0};
};

}  // namespace teamcorr

#endif  // TEAMCORR_LAYOUT_H_
