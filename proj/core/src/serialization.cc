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

#include "teamcorr/serialization.h"

#include <cmath>
#include <cstdio>
#include <memory>
#include <string>

#include "json.hpp"
#include "teamcorr/games.h"
#include "teamcorr/grid_skirmish.h"

namespace teamcorr {
namespace {

using Json = nlohmann::ordered_json;

// Rounds to the printed precision so reports stay stable across platforms.
double Rounded(double v) { return std::stod(FormatNumber(v)); }

Json Parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw Error(std::string("malformed JSON: ") + e.what());
  }
}

template <typename T>
T Get(const Json& j, const char* key) {
  if (!j.contains(key)) throw Error(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw Error(std::string("bad field '") + key + "': " + e.what());
  }
}

Json IndividualToJson(const IndividualPolicy& p) {
  return Json{{"num_observations", p.num_observations()},
              {"num_actions", p.num_actions()},
              {"table", p.table()}};
}

IndividualPolicy IndividualFromJson(const Json& j) {
  if (j.contains("probs")) {
    const auto probs = Get<std::vector<double>>(j, "probs");
    return IndividualPolicy::Stationary(1, probs);
  }
  return IndividualPolicy(Get<int>(j, "num_observations"),
                          Get<int>(j, "num_actions"),
                          Get<std::vector<double>>(j, "table"));
}

Json PolicyJson(const TeamPolicy& policy) {
  switch (policy.kind()) {
    case TeamPolicy::Kind::kProduct: {
      Json members = Json::array();
      for (const auto& m : policy.product().members) {
        members.push_back(IndividualToJson(m));
      }
      return Json{{"kind", "product"}, {"members", members}};
    }
    case TeamPolicy::Kind::kShared:
      return Json{{"kind", "shared"},
                  {"team_size", policy.shared().team_size},
                  {"policy", IndividualToJson(policy.shared().policy)}};
    case TeamPolicy::Kind::kJointMix: {
      const auto& mix = policy.joint_mix();
      Json rows = Json::array();
      for (const auto& [key, probs] : mix.rows) {
        rows.push_back(Json{{"key", key}, {"probs", probs}});
      }
      return Json{{"kind", "joint_mix"},
                  {"observation_counts", mix.observation_counts},
                  {"num_joint_actions", mix.num_joint_actions},
                  {"rows", rows}};
    }
  }
  return Json();
}

TeamPolicy PolicyFromJsonValue(const Json& j) {
  const auto kind = Get<std::string>(j, "kind");
  if (kind == "product") {
    std::vector<IndividualPolicy> members;
    for (const auto& m : j.at("members")) members.push_back(IndividualFromJson(m));
    return TeamPolicy::Product(std::move(members));
  }
  if (kind == "shared") {
    return TeamPolicy::Shared(IndividualFromJson(j.at("policy")),
                              Get<int>(j, "team_size"));
  }
  if (kind == "joint_mix") {
    if (j.contains("probs")) {
      return TeamPolicy::JointMix(Get<int>(j, "team_size"),
                                  Get<Distribution>(j, "probs"));
    }
    JointMixPolicy mix;
    mix.observation_counts = Get<std::vector<int>>(j, "observation_counts");
    mix.num_joint_actions = Get<std::int64_t>(j, "num_joint_actions");
    for (const auto& row : j.at("rows")) {
      mix.rows.emplace(Get<std::uint64_t>(row, "key"),
                       Get<Distribution>(row, "probs"));
    }
    return TeamPolicy::JointMix(std::move(mix));
  }
  throw Error("unknown policy kind '" + kind + "'");
}

Json OutcomesToJson(const std::vector<Outcome>& outcomes) {
  Json out = Json::array();
  for (const auto& o : outcomes) out.push_back(Json::array({o.state, o.probability}));
  return out;
}

std::vector<Outcome> OutcomesFromJson(const Json& j) {
  std::vector<Outcome> out;
  for (const auto& o : j) {
    if (!o.is_array() || o.size() != 2) {
      throw Error("outcomes must be [state, probability] pairs");
    }
    out.push_back({o[0].get<int>(), o[1].get<double>()});
  }
  return out;
}

Json MatrixToJson(const Matrix& m) {
  Json rows = Json::array();
  for (int r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

Matrix MatrixFromJson(const Json& j) {
  return Matrix::FromRows(j.get<std::vector<std::vector<double>>>());
}

Json RoundedVector(const std::vector<double>& v) {
  Json out = Json::array();
  for (double x : v) out.push_back(Rounded(x));
  return out;
}

}  // namespace

std::string FormatNumber(double value) {
  if (value == 0.0) return "0";  // also folds -0
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", value);
  return buf;
}

std::string GameToJson(const Game& game) {
  const TeamLayout& layout = game.layout();
  Json j;
  j["type"] = game.kind();
  j["team_sizes"] = layout.team_sizes();
  j["action_counts"] = layout.action_counts();
  if (game.is_normal_form()) {
    j["payoff"] = game.normal_form().payoff_table();
    return j.dump(2) + "\n";
  }
  const StochasticTeamGame& sg = game.stochastic();
  j["discount"] = sg.discount();
  j["horizon"] = sg.horizon();
  if (const auto* grid = dynamic_cast<const GridSkirmish*>(&sg)) {
    const SkirmishConfig& c = grid->config();
    j.erase("action_counts");
    j["width"] = c.width;
    j["height"] = c.height;
    j["team_size"] = c.team_size;
    j["damage"] = c.damage;
    j["start"] = c.start;
    j["allow_monte_carlo"] = c.allow_monte_carlo;
    j.erase("team_sizes");
    return j.dump(2) + "\n";
  }
  const auto* tab = dynamic_cast<const TabularStochasticGame*>(&sg);
  if (tab == nullptr) throw Error("cannot serialise game kind " + sg.kind());
  const auto& t = tab->tables();
  j["reward_bound"] = sg.reward_bound();
  j["num_states"] = t.num_states;
  j["num_observations"] = t.num_observations;
  j["observations"] = t.observations;
  j["initial"] = OutcomesToJson(t.initial);
  Json transitions = Json::array();
  for (const auto& row : t.transitions) transitions.push_back(OutcomesToJson(row));
  j["transitions"] = transitions;
  j["rewards"] = t.rewards;
  return j.dump(2) + "\n";
}

Game GameFromJson(const std::string& text) {
  const Json j = Parse(text);
  const auto type = Get<std::string>(j, "type");
  if (type == "normal_form") {
    return Game(NormalFormTeamGame(Get<std::array<int, 2>>(j, "team_sizes"),
                                   Get<std::vector<int>>(j, "action_counts"),
                                   Get<std::vector<double>>(j, "payoff")));
  }
  if (type == "grid_skirmish") {
    SkirmishConfig c;
    c.width = Get<int>(j, "width");
    c.height = Get<int>(j, "height");
    c.team_size = Get<int>(j, "team_size");
    c.horizon = Get<int>(j, "horizon");
    c.damage = Get<double>(j, "damage");
    c.discount = Get<double>(j, "discount");
    if (j.contains("start")) c.start = Get<std::vector<int>>(j, "start");
    if (j.contains("allow_monte_carlo")) {
      c.allow_monte_carlo = Get<bool>(j, "allow_monte_carlo");
    }
    return Game(std::make_shared<GridSkirmish>(c));
  }
  if (type == "tabular") {
    TabularStochasticGame::Tables t;
    t.num_states = Get<int>(j, "num_states");
    t.num_observations = Get<std::vector<int>>(j, "num_observations");
    t.observations = Get<std::vector<std::vector<int>>>(j, "observations");
    t.initial = OutcomesFromJson(j.at("initial"));
    for (const auto& row : j.at("transitions")) {
      t.transitions.push_back(OutcomesFromJson(row));
    }
    t.rewards = Get<std::vector<double>>(j, "rewards");
    return Game(std::make_shared<TabularStochasticGame>(
        TeamLayout(Get<std::array<int, 2>>(j, "team_sizes"),
                   Get<std::vector<int>>(j, "action_counts")),
        std::move(t), Get<double>(j, "discount"), Get<double>(j, "reward_bound"),
        Get<int>(j, "horizon")));
  }
  throw Error("unknown game type '" + type + "'");
}

std::string PolicyToJson(const TeamPolicy& policy) {
  return PolicyJson(policy).dump(2) + "\n";
}

TeamPolicy PolicyFromJson(const std::string& text) {
  return PolicyFromJsonValue(Parse(text));
}

std::string PopulationToJson(const Population& population,
                             const MetaSolution* meta) {
  Json j;
  j["provenance"] = population.provenance();
  for (int t = 0; t < 2; ++t) {
    Json pool = Json::array();
    for (const auto& p : population.entries(TeamFromIndex(t))) {
      pool.push_back(PolicyJson(p));
    }
    j[t == 0 ? "team1" : "team2"] = pool;
  }
  j["payoff"] = MatrixToJson(population.payoff());
  j["std_error"] = MatrixToJson(population.std_error());
  if (meta != nullptr) {
    j["meta"] = Json{{"team1", meta->team1.weights},
                     {"team2", meta->team2.weights},
                     {"value", meta->value},
                     {"gap", meta->gap}};
  }
  return j.dump(2) + "\n";
}

Population PopulationFromJson(const std::string& text, MetaSolution* meta) {
  const Json j = Parse(text);
  std::array<std::vector<TeamPolicy>, 2> entries;
  for (int t = 0; t < 2; ++t) {
    for (const auto& p : j.at(t == 0 ? "team1" : "team2")) {
      entries[t].push_back(PolicyFromJsonValue(p));
    }
  }
  Population pop = Population::FromParts(
      std::move(entries), MatrixFromJson(j.at("payoff")),
      MatrixFromJson(j.at("std_error")), Get<std::string>(j, "provenance"));
  if (meta != nullptr) {
    if (!j.contains("meta")) throw Error("population file has no meta-strategy");
    const Json& m = j.at("meta");
    meta->team1.weights = Get<Distribution>(m, "team1");
    meta->team2.weights = Get<Distribution>(m, "team2");
    meta->value = Get<double>(m, "value");
    meta->gap = Get<double>(m, "gap");
  }
  return pop;
}

std::string MaxminToJson(const MaxminSolution& s) {
  Json j{{"value", Rounded(s.value)},
         {"gap", Rounded(s.gap)},
         {"pivots", s.pivots},
         {"row_mix", RoundedVector(s.row_mix)},
         {"col_mix", RoundedVector(s.col_mix)}};
  return j.dump(2) + "\n";
}

std::string VerificationToJson(const VerificationReport& report) {
  Json teams = Json::array();
  for (const auto& t : report.teams) {
    Json witness{{"kind", t.witness.kind == Witness::Kind::kNone
                              ? "none"
                              : t.witness.kind == Witness::Kind::kIndividual
                                    ? "individual"
                                    : "correlated"},
                 {"description", t.witness.description}};
    if (t.witness.kind == Witness::Kind::kIndividual) {
      witness["member"] = t.witness.member;
    }
    if (t.witness.kind != Witness::Kind::kNone) witness["index"] = t.witness.index;
    if (!t.witness.joint_action.empty()) {
      witness["joint_action"] = t.witness.joint_action;
    }
    teams.push_back(Json{{"team", Label(t.team)},
                         {"class", t.class_name},
                         {"budget", t.budget},
                         {"deviations", t.deviations},
                         {"candidate_value", Rounded(t.candidate_value)},
                         {"max_gain", Rounded(t.max_gain)},
                         {"witness", witness},
                         {"verdict", t.pass ? "PASS" : "FAIL"}});
  }
  Json j{{"epsilon", report.epsilon},
         {"verdict", report.pass ? "PASS" : "FAIL"},
         {"teams", teams}};
  return j.dump(2) + "\n";
}

std::string ExploitReportToJson(const ExploitReport& report) {
  Json entries = Json::array();
  for (const auto& e : report.entries) {
    Json row{{"class", OpponentClassName(e.cls)}, {"applicable", e.applicable}};
    if (e.applicable) {
      row["opponent_reward"] = Rounded(e.opponent_reward);
      row["stderr"] = Rounded(e.std_error);
    }
    row["opponent_summary"] = e.opponent_summary;
    entries.push_back(row);
  }
  Json j{{"candidate_id", report.candidate_id},
         {"candidate_team", Label(report.candidate_team)},
         {"note", report.note},
         {"entries", entries}};
  return j.dump(2) + "\n";
}

}  // namespace teamcorr
