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

#include "teamcorr/exploitability.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace teamcorr {
namespace {

bool Homogeneous(const Game& game, Team team) {
  const auto obs = game.ObservationCounts(team);
  const TeamLayout& layout = game.layout();
  for (int m = 1; m < layout.team_size(team); ++m) {
    if (layout.action_count(team, m) != layout.action_count(team, 0) ||
        obs[m] != obs[0]) {
      return false;
    }
  }
  return true;
}

TeamPolicy UniformProduct(const Game& game, Team team) {
  const auto obs = game.ObservationCounts(team);
  std::vector<IndividualPolicy> members;
  for (int m = 0; m < game.layout().team_size(team); ++m) {
    members.push_back(
        IndividualPolicy::Uniform(obs[m], game.layout().action_count(team, m)));
  }
  return TeamPolicy::Product(std::move(members));
}

}  // namespace

std::string OpponentClassName(OpponentClass cls) {
  switch (cls) {
    case OpponentClass::kSequential:
      return "Sequential";
    case OpponentClass::kJoint:
      return "Joint";
    case OpponentClass::kSynchronized:
      return "Synchronized";
    case OpponentClass::kNoCorrelation:
      return "NoCorrelation";
    case OpponentClass::kRandom:
      return "Random";
  }
  return "";
}

OpponentClass ParseOpponentClass(const std::string& name) {
  std::string lower = name;
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  for (OpponentClass cls : kAllOpponentClasses) {
    std::string n = OpponentClassName(cls);
    std::transform(n.begin(), n.end(), n.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (n == lower) return cls;
  }
  if (lower == "none") return OpponentClass::kNoCorrelation;
  if (lower == "shared" || lower == "pivot") return OpponentClass::kSynchronized;
  throw Error("unknown opponent class '" + name + "'");
}

const ExploitEntry& ExploitReport::entry(OpponentClass cls) const {
  for (const auto& e : entries) {
    if (e.cls == cls) return e;
  }
  throw Error("report has no " + OpponentClassName(cls) + " entry");
}

ExploitReport ExploitabilityProfile(const Game& game, Team candidate_team,
                                    const PolicyMixture& candidate,
                                    const std::vector<OpponentClass>& classes,
                                    const ExploitConfig& config,
                                    const std::string& candidate_id) {
  candidate.Validate();
  if (classes.empty()) throw Error("no opponent classes requested");
  const Team opp = Other(candidate_team);
  const TeamLayout& layout = game.layout();
  OracleOptions options = config.oracle;
  options.eval = config.eval;
  options.eval.mode = EvalMode::kExact;

  ExploitReport report;
  report.candidate_id = candidate_id;
  report.candidate_team = candidate_team;
  report.note =
      "opponents best-respond to the frozen final meta-strategy of team " +
      std::to_string(Label(candidate_team));
  for (OpponentClass cls : classes) {
    ExploitEntry e;
    e.cls = cls;
    std::optional<TeamPolicy> response;
    switch (cls) {
      case OpponentClass::kJoint:
        response = BestResponseJoint(game, opp, candidate, options).policy;
        break;
      case OpponentClass::kSynchronized:
        if (Homogeneous(game, opp)) {
          response = BestResponseShared(game, opp, candidate, options).policy;
        }
        break;
      case OpponentClass::kNoCorrelation: {
        const auto start =
            TeamPolicy::AllPure(layout, opp, game.ObservationCounts(opp));
        response = BestResponseIndividual(game, opp, candidate, start,
                                          config.individual_sweeps, options)
                       .policy;
        break;
      }
      case OpponentClass::kSequential: {
        SebrConfig cfg = config.sebr;
        cfg.oracle = options;
        CommChannel channel;
        response = Sebr(game, opp, candidate, cfg, channel).policy;
        break;
      }
      case OpponentClass::kRandom:
        response = UniformProduct(game, opp);
        break;
    }
    if (!response) {
      e.applicable = false;
      e.opponent_summary = "n/a (heterogeneous team)";
    } else {
      const auto v =
          ExpectedTeamReward(game, opp, *response, candidate, config.eval);
      e.opponent_reward = v.mean;
      e.std_error = v.std_error;
      e.opponent_summary = response->Summary(layout, opp);
    }
    report.entries.push_back(std::move(e));
  }
  return report;
}

double RppFromMatrix(const Matrix& cross, double tol) {
  return MetaSolve(cross, tol).value;
}

double Rpp(const Game& game, const Population& a, const Population& b,
           const EvalConfig& eval, double tol) {
  const auto ab = Population::Evaluate(game, a.entries(Team::kFirst),
                                       b.entries(Team::kSecond), eval);
  const auto ba = Population::Evaluate(game, b.entries(Team::kFirst),
                                       a.entries(Team::kSecond), eval);
  return 0.5 * (RppFromMatrix(ab.payoff(), tol) -
                RppFromMatrix(ba.payoff(), tol));
}

std::vector<EloRating> EloRatings(const MatchLedger& ledger, double k,
                                  double base,
                                  const std::vector<std::string>& roster) {
  if (ledger.empty()) throw Error("match ledger is empty");
  if (!(k > 0.0)) throw Error("Elo K-factor must be positive");
  std::vector<EloRating> ratings;
  std::map<std::string, std::size_t> index;
  auto slot = [&](const std::string& id) {
    if (id.empty()) throw Error("match has an empty player id");
    if (!roster.empty() &&
        std::find(roster.begin(), roster.end(), id) == roster.end()) {
      throw Error("unknown player id '" + id + "'");
    }
    auto it = index.find(id);
    if (it == index.end()) {
      it = index.emplace(id, ratings.size()).first;
      ratings.push_back({id, base});
    }
    return it->second;
  };
  for (const Match& m : ledger) {
    if (m.score != 0.0 && m.score != 0.5 && m.score != 1.0) {
      throw Error("match score must be 0, 0.5 or 1");
    }
    if (m.a == m.b) throw Error("player '" + m.a + "' cannot play itself");
    const std::size_t ia = slot(m.a);
    const std::size_t ib = slot(m.b);
    double& ra = ratings[ia].rating;
    double& rb = ratings[ib].rating;
    const double expected = 1.0 / (1.0 + std::pow(10.0, (rb - ra) / 400.0));
    const double delta = k * (m.score - expected);
    ra += delta;
    rb -= delta;
  }
  return ratings;
}

}  // namespace teamcorr
