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

#include "teamcorr/stochastic_game.h"

#include <cmath>
#include <string>

namespace teamcorr {

StochasticTeamGame::StochasticTeamGame(TeamLayout layout, double discount,
                                       double reward_bound, int horizon)
    : layout_(std::move(layout)),
      discount_(discount),
      reward_bound_(reward_bound),
      horizon_(horizon) {
  if (!(discount_ >= 0.0 && discount_ < 1.0)) {
    throw DimensionError("discount must lie in [0, 1)");
  }
  if (!(reward_bound_ >= 0.0) || !std::isfinite(reward_bound_)) {
    throw DimensionError("reward bound must be finite and nonnegative");
  }
  if (horizon_ < 1) throw DimensionError("horizon must be positive");
}

std::vector<int> StochasticTeamGame::TeamObservations(int state,
                                                      Team team) const {
  std::vector<int> obs(layout_.team_size(team));
  for (int m = 0; m < layout_.team_size(team); ++m) {
    obs[m] = observation(state, layout_.player_index(team, m));
  }
  return obs;
}

TabularStochasticGame::TabularStochasticGame(TeamLayout layout, Tables tables,
                                             double discount,
                                             double reward_bound, int horizon)
    : StochasticTeamGame(std::move(layout), discount, reward_bound, horizon),
      tables_(std::move(tables)) {
  const TeamLayout& l = this->layout();
  joint1_ = l.num_joint_actions(Team::kFirst);
  joint2_ = l.num_joint_actions(Team::kSecond);
  const int players = l.num_players();
  const int states = tables_.num_states;
  if (states < 1) throw DimensionError("need at least one state");
  if (static_cast<int>(tables_.num_observations.size()) != players) {
    throw DimensionError("observation counts must cover every player");
  }
  if (static_cast<int>(tables_.observations.size()) != states) {
    throw DimensionError("observation table must cover every state");
  }
  for (const auto& row : tables_.observations) {
    if (static_cast<int>(row.size()) != players) {
      throw DimensionError("observation row must cover every player");
    }
    for (int p = 0; p < players; ++p) {
      if (row[p] < 0 || row[p] >= tables_.num_observations[p]) {
        throw DimensionError("observation index out of range");
      }
    }
  }
  const std::size_t cells = static_cast<std::size_t>(states) * joint1_ * joint2_;
  if (tables_.transitions.size() != cells || tables_.rewards.size() != cells) {
    throw DimensionError("transition and reward tables need " +
                         std::to_string(cells) + " rows");
  }
  auto check_row = [&](const std::vector<Outcome>& row, const char* what) {
    double total = 0.0;
    for (const Outcome& o : row) {
      if (o.state < 0 || o.state >= states || o.probability < 0.0) {
        throw DimensionError(std::string(what) + " has an invalid outcome");
      }
      total += o.probability;
    }
    if (std::abs(total - 1.0) > 1e-12) {
      throw DimensionError(std::string(what) + " does not sum to 1");
    }
  };
  check_row(tables_.initial, "initial distribution");
  for (const auto& row : tables_.transitions) check_row(row, "transition row");
  for (double r : tables_.rewards) {
    if (!std::isfinite(r) || std::abs(r) > reward_bound) {
      throw DimensionError("reward exceeds the declared bound");
    }
  }
}

std::size_t TabularStochasticGame::Cell(int state, std::int64_t joint1,
                                        std::int64_t joint2) const {
  return (static_cast<std::size_t>(state) * joint1_ + joint1) * joint2_ + joint2;
}

StepResult TabularStochasticGame::Step(int state,
                                       std::span<const int> actions) const {
  if (state < 0 || state >= tables_.num_states) {
    throw DimensionError("state out of range");
  }
  const TeamLayout& l = layout();
  const int n1 = l.team_size(Team::kFirst);
  const auto j1 = l.EncodeJoint(Team::kFirst, actions.subspan(0, n1));
  const auto j2 = l.EncodeJoint(Team::kSecond, actions.subspan(n1));
  const std::size_t cell = Cell(state, j1, j2);
  return StepResult{tables_.rewards[cell], tables_.transitions[cell]};
}

}  // namespace teamcorr
