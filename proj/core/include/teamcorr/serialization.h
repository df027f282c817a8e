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

#ifndef TEAMCORR_SERIALIZATION_H_
#define TEAMCORR_SERIALIZATION_H_

#include <string>

#include "teamcorr/deviation.h"
#include "teamcorr/exploitability.h"
#include "teamcorr/game.h"
#include "teamcorr/matrix_game.h"
#include "teamcorr/policy.h"
#include "teamcorr/psro.h"

namespace teamcorr {

// JSON documents. Normal-form games:
//   {"type": "normal_form", "team_sizes": [n1, n2],
//    "action_counts": [...], "payoff": [...]}
// with the payoff flattened row-major over (team-1 joint, team-2 joint).
// Tabular and grid-skirmish stochastic games have their own "type".
std::string GameToJson(const Game& game);
Game GameFromJson(const std::string& text);

// {"kind": "product" | "shared" | "joint_mix", ...}
std::string PolicyToJson(const TeamPolicy& policy);
TeamPolicy PolicyFromJson(const std::string& text);

std::string PopulationToJson(const Population& population,
                             const MetaSolution* meta = nullptr);
Population PopulationFromJson(const std::string& text,
                              MetaSolution* meta = nullptr);

std::string MaxminToJson(const MaxminSolution& solution);
// {team, class, budget, max_gain, witness, verdict} per team.
std::string VerificationToJson(const VerificationReport& report);
std::string ExploitReportToJson(const ExploitReport& report);

// Numbers in CSV and report output: nine significant digits.
std::string FormatNumber(double value);

}  // namespace teamcorr

#endif  // TEAMCORR_SERIALIZATION_H_
