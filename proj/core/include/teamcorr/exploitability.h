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

#ifndef TEAMCORR_EXPLOITABILITY_H_
#define TEAMCORR_EXPLOITABILITY_H_

#include <cstdint>
#include <string>
#include <vector>

#include "teamcorr/evaluation.h"
#include "teamcorr/game.h"
#include "teamcorr/oracles.h"
#include "teamcorr/policy.h"
#include "teamcorr/psro.h"

namespace teamcorr {

// Opponent correlation classes, in report column order.
enum class OpponentClass {
  kSequential,
  kJoint,
  kSynchronized,
  kNoCorrelation,
  kRandom
};

inline constexpr OpponentClass kAllOpponentClasses[] = {
    OpponentClass::kSequential, OpponentClass::kJoint,
    OpponentClass::kSynchronized, OpponentClass::kNoCorrelation,
    OpponentClass::kRandom};

std::string OpponentClassName(OpponentClass cls);
OpponentClass ParseOpponentClass(const std::string& name);

struct ExploitEntry {
  OpponentClass cls = OpponentClass::kJoint;
  bool applicable = true;
  double opponent_reward = 0.0;
  double std_error = 0.0;
  std::string opponent_summary;
};

struct ExploitReport {
  std::string candidate_id;
  Team candidate_team = Team::kFirst;
  std::string note;
  std::vector<ExploitEntry> entries;

  const ExploitEntry& entry(OpponentClass cls) const;
};

struct ExploitConfig {
  EvalConfig eval;
  SebrConfig sebr;
  int individual_sweeps = 50;
  OracleOptions oracle;
};

// For each class, the opponent of `candidate_team` best-responds to the
// frozen candidate mixture within its correlation ability; the entry holds
// the opponent's expected reward (negative: the opponent loses).
ExploitReport ExploitabilityProfile(const Game& game, Team candidate_team,
                                    const PolicyMixture& candidate,
                                    const std::vector<OpponentClass>& classes,
                                    const ExploitConfig& config = {},
                                    const std::string& candidate_id = "");

// Value of the zero-sum meta-game on a cross-payoff matrix.
double RppFromMatrix(const Matrix& cross, double tol = 1e-9);

// Relative population performance of A over B. Each side fields its
// population in both seats: A's team-1 entries meet B's team-2 entries and
// B's team-1 entries meet A's team-2 entries; the result is the average of
// A's two meta-game values, so Rpp(A, B) = -Rpp(B, A).
double Rpp(const Game& game, const Population& a, const Population& b,
           const EvalConfig& eval = {}, double tol = 1e-9);

struct Match {
  std::string a;
  std::string b;
  double score = 0.0;  // for a: 0, 0.5 or 1
};
using MatchLedger = std::vector<Match>;

struct EloRating {
  std::string id;
  double rating = 0.0;
};

// Sequential Elo updates in ledger order. Ids are rated in order of first
// appearance. When `roster` is non-empty every id must belong to it.
std::vector<EloRating> EloRatings(const MatchLedger& ledger, double k,
                                  double base,
                                  const std::vector<std::string>& roster = {});

}  // namespace teamcorr

#endif  // TEAMCORR_EXPLOITABILITY_H_
