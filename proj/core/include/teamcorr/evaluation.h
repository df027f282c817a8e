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

#ifndef TEAMCORR_EVALUATION_H_
#define TEAMCORR_EVALUATION_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "teamcorr/game.h"
#include "teamcorr/policy.h"
#include "teamcorr/rng.h"
#include "teamcorr/types.h"

namespace teamcorr {

enum class EvalMode { kExact, kMonteCarlo };

struct EvalConfig {
  EvalMode mode = EvalMode::kExact;
  std::int64_t samples = 0;            // Monte-Carlo episodes
  std::optional<std::uint64_t> seed;   // required for Monte-Carlo
  int horizon = 0;                     // 0: the game's own horizon
  std::int64_t exact_step_bound = kExactStepBound;

  static EvalConfig MonteCarlo(std::int64_t samples, std::uint64_t seed);
};

struct Evaluation {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t samples = 0;  // 0 for exact evaluation

  bool exact() const { return samples == 0; }
};

// Expected reward of team 1 (R1) when the teams play p1 and p2. Normal-form
// games are always evaluated exactly; stochastic games follow `config`.
Evaluation ExpectedTeamReward(const Game& game, const TeamPolicy& p1,
                              const TeamPolicy& p2,
                              const EvalConfig& config = {});

// Reward of `team` playing `own` against a mixture of opponent policies.
Evaluation ExpectedTeamReward(const Game& game, Team team,
                              const TeamPolicy& own,
                              const PolicyMixture& opponents,
                              const EvalConfig& config = {});

// Dense distribution over a team's joint actions in a normal-form game.
Distribution JointDistribution(const Game& game, Team team,
                               const TeamPolicy& policy);
Distribution JointDistribution(const Game& game, Team team,
                               const PolicyMixture& mixture);

// Product (or shared) policy rewritten as the joint mixture it induces.
TeamPolicy ProductToJoint(const Game& game, Team team,
                          const TeamPolicy& policy);

// Draws one joint action of `team` given each member's observation. Shared
// policies draw independently per member.
JointAction SampleJointAction(const Game& game, Team team,
                              const TeamPolicy& policy,
                              std::span<const int> member_observations,
                              Rng& rng);

// Per-joint-action value of `team` against the opponent mixture in a
// normal-form game: entry i is E[R_team | own joint action i].
std::vector<double> TeamActionValues(const Game& game, Team team,
                                     const PolicyMixture& opponents);

// Exact finite-horizon value of team 1 from a start distribution. Throws
// BoundError when a step expands more than `step_bound` (state, joint
// action) pairs.
double ExactStochasticValue(const StochasticTeamGame& game,
                            const TeamPolicy& p1, const TeamPolicy& p2,
                            std::span<const Outcome> start, int horizon,
                            std::int64_t step_bound = kExactStepBound);

int EffectiveHorizon(const Game& game, const EvalConfig& config);

}  // namespace teamcorr

#endif  // TEAMCORR_EVALUATION_H_
