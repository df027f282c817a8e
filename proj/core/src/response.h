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

// Internal best-response machinery for stochastic team games.

#ifndef TEAMCORR_SRC_RESPONSE_H_
#define TEAMCORR_SRC_RESPONSE_H_

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "teamcorr/policy.h"
#include "teamcorr/stochastic_game.h"
#include "teamcorr/types.h"

namespace teamcorr::internal {

// A single decision maker inside a stochastic game.
enum class AgentKind {
  kMember,  // one member, teammates fixed
  kTeam,    // the whole team acting on its joint observation
  kShared,  // every member plays the same action; needs teammates to share
            // their observation at every state
};

struct ResponseProblem {
  const StochasticTeamGame* game = nullptr;
  Team team = Team::kFirst;
  AgentKind agent = AgentKind::kTeam;
  int member = 0;                         // kMember only
  const TeamPolicy* teammates = nullptr;  // kMember only
  const PolicyMixture* opponent = nullptr;
  int horizon = 1;
  std::int64_t step_bound = kExactStepBound;
};

// Deterministic decision rule keyed by the agent's observation (member and
// shared modes) or the team's mixed-radix joint-observation key.
using ActionMap = std::map<std::uint64_t, int>;

struct ResponseResult {
  ActionMap actions;
  double value = 0.0;  // responding team's reward
  bool exact = true;
};

// `preferred(key)` is the action kept on ties and at unreached observations.
ResponseResult SolveResponse(const ResponseProblem& problem,
                             const std::function<int(std::uint64_t)>& preferred);

// Observation key of the agent at `state`.
std::uint64_t AgentKey(const ResponseProblem& problem, int state);

// True when all members of `team` observe the same symbol at every state.
bool SharedObservations(const StochasticTeamGame& game, Team team);

}  // namespace teamcorr::internal

#endif  // TEAMCORR_SRC_RESPONSE_H_
