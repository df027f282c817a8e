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

#ifndef TEAMCORR_STOCHASTIC_GAME_H_
#define TEAMCORR_STOCHASTIC_GAME_H_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "teamcorr/layout.h"
#include "teamcorr/types.h"

namespace teamcorr {

// Per-step cap on |joint observations| x |joint actions| for exact
// evaluation. Counted over the states and joint actions actually expanded.
inline constexpr std::int64_t kExactStepBound = 1'000'000;

struct Outcome {
  int state = 0;
  double probability = 0.0;
};

struct StepResult {
  double reward = 0.0;  // R1; team 2 receives -reward
  std::vector<Outcome> outcomes;
};

// Two-team zero-sum Markov game with finite joint observations ("states").
// Each state is one joint observation; observation(state, player) gives the
// player's local view of it.
class StochasticTeamGame {
 public:
  StochasticTeamGame(TeamLayout layout, double discount, double reward_bound,
                     int horizon);
  virtual ~StochasticTeamGame() = default;

  const TeamLayout& layout() const { return layout_; }
  double discount() const { return discount_; }
  double reward_bound() const { return reward_bound_; }
  // Default truncation horizon for evaluation.
  int horizon() const { return horizon_; }

  virtual int num_states() const = 0;
  virtual int num_observations(int player) const = 0;
  virtual int observation(int state, int player) const = 0;
  virtual std::vector<Outcome> initial_distribution() const = 0;
  // `actions` holds one action per player (team 1 members first).
  virtual StepResult Step(int state, std::span<const int> actions) const = 0;
  // Terminal states are absorbing and pay nothing.
  virtual bool terminal(int /*state*/) const { return false; }
  // False when the model is too large for exact evaluation.
  virtual bool exact_feasible() const { return true; }
  virtual std::string kind() const = 0;

  // Observations of every member of `team` at `state`.
  std::vector<int> TeamObservations(int state, Team team) const;

 private:
  TeamLayout layout_;
  double discount_;
  double reward_bound_;
  int horizon_;
};

// Fully tabulated game: observation table, transition rows and rewards for
// every (state, joint action1, joint action2).
class TabularStochasticGame final : public StochasticTeamGame {
 public:
  struct Tables {
    int num_states = 0;
    std::vector<int> num_observations;            // per player
    std::vector<std::vector<int>> observations;   // [state][player]
    std::vector<Outcome> initial;
    // Indexed by (state * J1 + joint1) * J2 + joint2.
    std::vector<std::vector<Outcome>> transitions;
    std::vector<double> rewards;
  };

  TabularStochasticGame(TeamLayout layout, Tables tables, double discount,
                        double reward_bound, int horizon);

  int num_states() const override { return tables_.num_states; }
  int num_observations(int player) const override {
    return tables_.num_observations[player];
  }
  int observation(int state, int player) const override {
    return tables_.observations[state][player];
  }
  std::vector<Outcome> initial_distribution() const override {
    return tables_.initial;
  }
  StepResult Step(int state, std::span<const int> actions) const override;
  std::string kind() const override { return "tabular"; }

  const Tables& tables() const { return tables_; }

 private:
  std::size_t Cell(int state, std::int64_t joint1, std::int64_t joint2) const;

  Tables tables_;
  std::int64_t joint1_ = 0;
  std::int64_t joint2_ = 0;
};

}  // namespace teamcorr

#endif  // TEAMCORR_STOCHASTIC_GAME_H_
