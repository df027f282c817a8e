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

#ifndef TEAMCORR_ORACLES_H_
#define TEAMCORR_ORACLES_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "teamcorr/evaluation.h"
#include "teamcorr/game.h"
#include "teamcorr/normal_form_game.h"
#include "teamcorr/policy.h"
#include "teamcorr/types.h"

namespace teamcorr {

struct OracleOptions {
  // Cap on enumerated pure team joint actions / policies.
  std::int64_t enumeration_bound = kDefaultEnumerationBound;
  // Horizon and per-step bound for exact stochastic computations.
  EvalConfig eval;
  // Grid resolution for mixed shared policies (points per dimension).
  int shared_grid_points = 1000;
  std::uint64_t seed = 0;
};

struct BestResponse {
  TeamPolicy policy;
  double value = 0.0;  // reward of the responding team
  // False when a stochastic game forced the local-search fallback.
  bool exact = true;
};

// Best pure team joint action (normal form) or pure joint policy (stochastic)
// against the opponent mixture. Ties go to the lexicographically smallest
// joint action.
BestResponse BestResponseJoint(const Game& game, Team team,
                               const PolicyMixture& opponent,
                               const OracleOptions& options = {});

// Exact best response of one member with every other player fixed. The
// member keeps its current action wherever that action is optimal.
struct MemberResponse {
  IndividualPolicy policy;
  double value = 0.0;
  bool exact = true;
};
MemberResponse BestResponseMember(const Game& game, Team team,
                                  const TeamPolicy& current, int member,
                                  const PolicyMixture& opponent,
                                  const OracleOptions& options = {});

struct MemberUpdate {
  int restart = 0;
  int sweep = 0;
  int member = 0;
  double before = 0.0;
  double after = 0.0;
  bool changed = false;
};

struct IndividualResponse {
  TeamPolicy policy;  // product policy
  double value = 0.0;
  int sweeps = 0;
  bool converged = false;
  std::vector<MemberUpdate> trace;
};

// Round-robin pure individual best responses from `start` until no member
// moves or `sweeps` passes have run.
IndividualResponse BestResponseIndividual(const Game& game, Team team,
                                          const PolicyMixture& opponent,
                                          const TeamPolicy& start, int sweeps,
                                          const OracleOptions& options = {});

// Best shared (pivot) policy: pure candidates by enumeration, then a
// refinement over mixed shared distributions in normal-form games.
BestResponse BestResponseShared(const Game& game, Team team,
                                const PolicyMixture& opponent,
                                const OracleOptions& options = {});

struct SharedMaxmin {
  Distribution shared;  // distribution each member plays
  double value = 0.0;   // guaranteed team reward against any joint reply
};

// max over shared mixed policies of the worst-case reward against an
// opponent that can play any joint action (normal-form only).
SharedMaxmin SolveSharedMaxmin(const Game& game, Team team,
                               int grid_points = 10000);

// Per-member advantage terms A^{i_m}(o, a^{i_1..i_{m-1}}, a^{i_m}) of the
// team joint action at `state` (ignored for normal-form games), listed in
// `order`. Their sum is the joint advantage Q(o, a) - V(o). Requires a
// factorized team policy.
std::vector<double> AdvantageDecompose(const Game& game, Team team,
                                       const TeamPolicy& policy,
                                       const PolicyMixture& opponent,
                                       int state, std::span<const int> actions,
                                       std::span<const int> order,
                                       const OracleOptions& options = {});

// Q(o, a) of every team joint action at `state` against the opponent
// mixture, with `policy` played afterwards.
std::vector<double> TeamQValues(const Game& game, Team team,
                                const TeamPolicy& policy,
                                const PolicyMixture& opponent, int state,
                                const OracleOptions& options = {});

// Ordered log of one SeBR sweep: what each member chose and the decomposed
// advantage terms it saw.
class CommChannel {
 public:
  struct Entry {
    int member = 0;
    std::string policy_summary;
    std::vector<double> advantages;  // A_1 .. A_m
    double team_reward = 0.0;        // R_T at the start of the sweep
  };

  // Starts a new sweep with the members' update order.
  void Clear(std::span<const int> order);
  // Throws if `entry.member` is not the next member in order.
  void Record(Entry entry);

  const std::vector<Entry>& entries() const { return entries_; }
  const std::vector<int>& order() const { return order_; }

 private:
  std::vector<int> order_;
  std::vector<Entry> entries_;
};

struct SebrConfig {
  std::vector<int> order;  // empty: members 0..n-1
  int max_iter = 50;
  // Extra seeded starts on top of the incumbent. When the game has at most
  // this many pure product policies, every one of them is used instead.
  int restarts = 4;
  std::uint64_t seed = 0;
  OracleOptions oracle;
};

struct SebrResult {
  TeamPolicy policy;  // product policy
  double value = 0.0;
  int restart = 0;    // index of the winning start (0: incumbent)
  int sweeps = 0;     // sweeps run by the winning start
  bool converged = false;
  bool exact = true;
  std::vector<MemberUpdate> trace;  // every update of every start
};

// Sequential best response: members update in order, each best-responding
// exactly to predecessors' updated and successors' current policies. Stops
// when a sweep changes nothing. `start` defaults to all members on action 0.
SebrResult Sebr(const Game& game, Team team, const PolicyMixture& opponent,
                const SebrConfig& config, CommChannel& channel,
                const std::optional<TeamPolicy>& start = std::nullopt);

}  // namespace teamcorr

#endif  // TEAMCORR_ORACLES_H_
