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

#ifndef TEAMCORR_GRID_SKIRMISH_H_
#define TEAMCORR_GRID_SKIRMISH_H_

#include <cstdint>
#include <string>
#include <vector>

#include "teamcorr/stochastic_game.h"

namespace teamcorr {

struct SkirmishConfig {
  int width = 3;
  int height = 3;
  int team_size = 2;  // n per side
  int horizon = 6;    // H
  double damage = 1.0;
  double discount = 0.95;
  // Optional explicit start cells (team 1 members, then team 2), each
  // y * width + x. Empty: team 1 fills the left columns, team 2 mirrors it.
  std::vector<int> start;
  // Allow construction when the model is too large for exact evaluation.
  bool allow_monte_carlo = false;

  void Validate() const;
};

// Small deterministic gridworld battle. Every step each agent moves
// (up/down/left/right), stays, or attacks. An attack deals `damage` to an
// adjacent opponent (the lowest-indexed one if several); attacks use the
// positions at the start of the step. Moves are then applied in player order
// and blocked by occupied or off-grid cells. R1 is the damage dealt by team
// 1 minus the damage dealt by team 2. Agents are never removed.
//
// A state is (step, placement of all agents); every agent observes the whole
// state, so the observation index equals the state index. States at step H
// are terminal.
class GridSkirmish final : public StochasticTeamGame {
 public:
  enum Action { kUp = 0, kDown, kLeft, kRight, kStay, kAttack, kNumActions };

  explicit GridSkirmish(SkirmishConfig config);

  int num_states() const override { return num_states_; }
  int num_observations(int) const override { return num_states_; }
  int observation(int state, int) const override { return state; }
  std::vector<Outcome> initial_distribution() const override;
  StepResult Step(int state, std::span<const int> actions) const override;
  bool terminal(int state) const override {
    return StepIndex(state) >= cfg_.horizon;
  }
  bool exact_feasible() const override { return exact_feasible_; }
  std::string kind() const override { return "grid_skirmish"; }

  const SkirmishConfig& config() const { return cfg_; }
  int placements() const { return num_placements_; }

  // Step counter and agent cells of a state.
  int StepIndex(int state) const { return state / num_placements_; }
  std::vector<int> Cells(int state) const;
  int StateOf(int step, const std::vector<int>& cells) const;

  std::string Render(int state) const;

 private:
  // Placements are ranked as ordered selections of distinct cells.
  int PlacementIndex(const std::vector<int>& cells) const;
  std::vector<int> PlacementCells(int index) const;

  SkirmishConfig cfg_;
  int num_cells_ = 0;
  int num_agents_ = 0;
  int num_placements_ = 0;
  int num_states_ = 0;
  bool exact_feasible_ = true;
  std::vector<int> radix_;  // falling-factorial place values
  int start_state_ = 0;
};

}  // namespace teamcorr

#endif  // TEAMCORR_GRID_SKIRMISH_H_
