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

#ifndef TEAMCORR_PSRO_H_
#define TEAMCORR_PSRO_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "teamcorr/evaluation.h"
#include "teamcorr/game.h"
#include "teamcorr/matrix_game.h"
#include "teamcorr/oracles.h"
#include "teamcorr/policy.h"

namespace teamcorr {

struct MetaStrategy {
  Distribution weights;
};

// Policy pools of both teams and the empirical meta-payoff matrix:
// payoff(a, b) is team 1's expected reward of entry a against entry b.
class Population {
 public:
  Population() = default;

  const std::vector<TeamPolicy>& entries(Team team) const {
    return entries_[Index(team)];
  }
  std::size_t size(Team team) const { return entries_[Index(team)].size(); }
  const Matrix& payoff() const { return payoff_; }
  const Matrix& std_error() const { return stderr_; }
  // "exact" or "mc(n=...)"
  const std::string& provenance() const { return provenance_; }

  // Mixture over one team's entries.
  PolicyMixture Mixture(Team team, const MetaStrategy& meta) const;

  // Builds a population from explicit entries and evaluates every cell.
  static Population Evaluate(const Game& game,
                             std::vector<TeamPolicy> team1,
                             std::vector<TeamPolicy> team2,
                             const EvalConfig& eval);

  // Rebuild from stored parts (deserialisation).
  static Population FromParts(std::array<std::vector<TeamPolicy>, 2> entries,
                              Matrix payoff, Matrix std_error,
                              std::string provenance);

 private:
  friend Population ExtendPopulation(const Population&, const TeamPolicy&,
                                     Team, const Game&, const EvalConfig&);

  std::array<std::vector<TeamPolicy>, 2> entries_;
  Matrix payoff_;
  Matrix stderr_;
  std::string provenance_ = "exact";
};

struct MetaSolution {
  MetaStrategy team1;
  MetaStrategy team2;
  double value = 0.0;  // team 1
  double gap = 0.0;
};

MetaSolution MetaSolve(const Matrix& payoff, double tol = 1e-9);

// Appends one entry for `team`, evaluating only the new row or column.
Population ExtendPopulation(const Population& population,
                            const TeamPolicy& entry, Team team,
                            const Game& game, const EvalConfig& eval);

enum class OracleKind { kSebr, kShared, kIndividual, kJoint };

std::string OracleName(OracleKind kind);
OracleKind ParseOracle(const std::string& name);

struct PsroConfig {
  OracleKind oracle = OracleKind::kJoint;
  int max_iterations = 50;
  double meta_tolerance = 1e-9;
  // BR-gain threshold for termination; 0 picks 1e-6 (exact) or twice the
  // largest payoff standard error (Monte-Carlo).
  double convergence_tolerance = 0.0;
  EvalConfig eval;
  std::uint64_t seed = 0;
  SebrConfig sebr;
  int individual_sweeps = 50;

  void Validate() const;
};

struct PsroIteration {
  int iteration = 0;
  double meta_value = 0.0;
  std::array<double, 2> br_value{0.0, 0.0};  // each team's own reward
  std::array<double, 2> br_gain{0.0, 0.0};
  std::array<std::size_t, 2> population_size{0, 0};
  std::array<bool, 2> appended{false, false};
};

struct PsroResult {
  Population population;
  MetaSolution meta;
  std::vector<PsroIteration> history;
  bool converged = false;
  bool hit_cap = false;
  double tolerance = 0.0;
};

// Population loop: solve the restricted meta-game, add each team's oracle
// response to the opponent meta-strategy, stop when neither response gains
// more than the tolerance.
PsroResult RunPsro(const Game& game, const PsroConfig& config);

// The oracle used by RunPsro, exposed for evaluation code.
BestResponse OracleResponse(const Game& game, Team team,
                            const PolicyMixture& opponent,
                            const std::vector<TeamPolicy>& own_population,
                            const PsroConfig& config, std::uint64_t seed);

}  // namespace teamcorr

#endif  // TEAMCORR_PSRO_H_
