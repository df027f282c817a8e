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

#ifndef TEAMCORR_DEVIATION_H_
#define TEAMCORR_DEVIATION_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "teamcorr/evaluation.h"
#include "teamcorr/game.h"
#include "teamcorr/policy.h"
#include "teamcorr/types.h"

namespace teamcorr {

// Linear budget on evaluated deviation policies:
//   N = N_init + delta_team * f_team + delta_policy * f_policy.
struct SampleFactor {
  double f_team = 0.0;    // growth per added teammate
  double f_policy = 0.0;  // growth per added individual policy
  std::uint64_t n_init = 0;

  void Validate() const;
};

std::uint64_t SampleBudget(const SampleFactor& factor, std::uint64_t delta_team,
                           std::uint64_t delta_policy);

struct NoCorrelation {};
struct PivotFollowers {
  int pivot = 0;
};
struct SequentialCorrelation {
  std::vector<int> order;  // empty: members 0..n-1
  SampleFactor factor;
  std::uint64_t seed = 0;
  std::uint64_t delta_team = 0;
  std::uint64_t delta_policy = 0;
};
struct JointCorrelation {};

using CorrelationClass = std::variant<NoCorrelation, PivotFollowers,
                                      SequentialCorrelation, JointCorrelation>;

std::string ClassName(const CorrelationClass& cls);

// One member switching to a pure policy while teammates keep the candidate.
struct IndividualDeviation {
  int member = 0;
  IndividualPolicy policy;
  TeamPolicy team_policy;  // the candidate with `member` replaced
};

struct DeviationSpec {
  Team team = Team::kFirst;
  CorrelationClass correlation;
  std::vector<IndividualDeviation> individual;  // I
  std::vector<TeamPolicy> correlated;           // C
  std::uint64_t budget = 0;  // evaluated deviations allowed (sequential)
};

struct DeviationOptions {
  std::int64_t enumeration_bound = kDefaultEnumerationBound;
};

// Deviation policy space of `team` around `candidate` under a correlation
// class. Only pure deviations are generated.
DeviationSpec BuildDeviationSpec(const Game& game, Team team,
                                 const TeamPolicy& candidate,
                                 const CorrelationClass& correlation,
                                 const DeviationOptions& options = {});

// Distinct pure team joint policies reachable through the correlated set.
std::int64_t CooperativeAbility(const Game& game, const DeviationSpec& spec);

struct Witness {
  enum class Kind { kNone, kIndividual, kCorrelated };
  Kind kind = Kind::kNone;
  int member = -1;          // individual deviations only
  std::size_t index = 0;    // position inside I or C
  std::string description;
  JointAction joint_action;  // set when the deviation is a pure joint action
};

struct TeamVerification {
  Team team = Team::kFirst;
  std::string class_name;
  std::uint64_t budget = 0;
  std::size_t deviations = 0;
  double candidate_value = 0.0;
  double max_gain = 0.0;
  Witness witness;
  bool pass = true;
};

struct VerificationReport {
  std::array<TeamVerification, 2> teams;
  double epsilon = 0.0;
  bool pass = true;
};

// Checks that neither team gains more than epsilon by moving to any policy in
// its deviation set while the other team stays on the candidate.
VerificationReport VerifyEquilibrium(const Game& game, const TeamPolicy& p1,
                                     const TeamPolicy& p2,
                                     const std::array<DeviationSpec, 2>& specs,
                                     double epsilon,
                                     const EvalConfig& eval = {});

// 1e-6 for exact evaluation, twice the standard error otherwise.
double DefaultEpsilon(const Evaluation& candidate);

}  // namespace teamcorr

#endif  // TEAMCORR_DEVIATION_H_
