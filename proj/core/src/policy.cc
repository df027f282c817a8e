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

#include "teamcorr/policy.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

namespace teamcorr {
namespace {

std::string FormatProbs(std::span<const double> probs) {
  std::ostringstream out;
  out.precision(6);
  out << '[';
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (i > 0) out << ',';
    out << probs[i];
  }
  out << ']';
  return out.str();
}

// Nonzero entries of a distribution as (action, probability).
std::vector<std::pair<int, double>> Nonzero(std::span<const double> probs) {
  std::vector<std::pair<int, double>> out;
  for (std::size_t a = 0; a < probs.size(); ++a) {
    if (probs[a] > 0.0) out.emplace_back(static_cast<int>(a), probs[a]);
  }
  return out;
}

// Enumerates the product of per-member supports in joint-index order.
JointSupport ProductSupport(
    const TeamLayout& layout, Team team,
    const std::vector<std::vector<std::pair<int, double>>>& members) {
  const auto counts = layout.team_action_counts(team);
  JointSupport out;
  const std::size_t n = members.size();
  std::vector<std::size_t> cursor(n, 0);
  for (const auto& m : members) {
    if (m.empty()) return out;
  }
  while (true) {
    std::int64_t index = 0;
    double prob = 1.0;
    for (std::size_t m = 0; m < n; ++m) {
      const auto& [action, p] = members[m][cursor[m]];
      index = index * counts[m] + action;
      prob *= p;
    }
    out.emplace_back(index, prob);
    std::size_t m = n;
    while (m > 0) {
      --m;
      if (++cursor[m] < members[m].size()) break;
      cursor[m] = 0;
      if (m == 0) return out;
    }
    if (n == 0) return out;
  }
}

}  // namespace

IndividualPolicy::IndividualPolicy(int num_observations, int num_actions,
                                   std::vector<double> table)
    : num_observations_(num_observations),
      num_actions_(num_actions),
      table_(std::move(table)) {
  if (num_observations_ < 1 || num_actions_ < 1) {
    throw DimensionError("policy needs at least one observation and action");
  }
  if (table_.size() !=
      static_cast<std::size_t>(num_observations_) * num_actions_) {
    throw DimensionError("policy table has the wrong size");
  }
  for (int o = 0; o < num_observations_; ++o) {
    CheckDistribution(distribution(o),
                      "policy row for observation " + std::to_string(o));
  }
}

IndividualPolicy IndividualPolicy::Deterministic(int num_observations,
                                                 int num_actions, int action) {
  if (action < 0 || action >= num_actions) {
    throw DimensionError("action out of range");
  }
  std::vector<double> table(static_cast<std::size_t>(num_observations) *
                            num_actions);
  for (int o = 0; o < num_observations; ++o) {
    table[static_cast<std::size_t>(o) * num_actions + action] = 1.0;
  }
  return IndividualPolicy(num_observations, num_actions, std::move(table));
}

IndividualPolicy IndividualPolicy::Deterministic(int num_actions,
                                                 std::span<const int> actions) {
  const int num_obs = static_cast<int>(actions.size());
  std::vector<double> table(static_cast<std::size_t>(num_obs) * num_actions);
  for (int o = 0; o < num_obs; ++o) {
    if (actions[o] < 0 || actions[o] >= num_actions) {
      throw DimensionError("action out of range");
    }
    table[static_cast<std::size_t>(o) * num_actions + actions[o]] = 1.0;
  }
  return IndividualPolicy(num_obs, num_actions, std::move(table));
}

IndividualPolicy IndividualPolicy::Uniform(int num_observations,
                                           int num_actions) {
  return IndividualPolicy(
      num_observations, num_actions,
      std::vector<double>(static_cast<std::size_t>(num_observations) *
                              num_actions,
                          1.0 / num_actions));
}

IndividualPolicy IndividualPolicy::Stationary(int num_observations,
                                              std::span<const double> probs) {
  const int num_actions = static_cast<int>(probs.size());
  std::vector<double> table;
  table.reserve(static_cast<std::size_t>(num_observations) * num_actions);
  for (int o = 0; o < num_observations; ++o) {
    table.insert(table.end(), probs.begin(), probs.end());
  }
  return IndividualPolicy(num_observations, num_actions, std::move(table));
}

std::span<const double> IndividualPolicy::distribution(int observation) const {
  if (observation < 0 || observation >= num_observations_) {
    throw DimensionError("observation " + std::to_string(observation) +
                         " not in policy table");
  }
  return std::span<const double>(table_).subspan(
      static_cast<std::size_t>(observation) * num_actions_, num_actions_);
}

std::optional<int> IndividualPolicy::pure_action(int observation) const {
  const auto probs = distribution(observation);
  for (int a = 0; a < num_actions_; ++a) {
    if (probs[a] >= 1.0 - kSimplexTolerance) return a;
  }
  return std::nullopt;
}

bool IndividualPolicy::is_pure() const {
  for (int o = 0; o < num_observations_; ++o) {
    if (!pure_action(o)) return false;
  }
  return true;
}

void IndividualPolicy::SetPure(int observation, int action) {
  if (action < 0 || action >= num_actions_) {
    throw DimensionError("action out of range");
  }
  distribution(observation);  // range check
  auto row = table_.begin() + static_cast<std::ptrdiff_t>(observation) * num_actions_;
  std::fill(row, row + num_actions_, 0.0);
  row[action] = 1.0;
}

void IndividualPolicy::SetDistribution(int observation,
                                       std::span<const double> probs) {
  if (static_cast<int>(probs.size()) != num_actions_) {
    throw DimensionError("distribution size mismatch");
  }
  CheckDistribution(probs, "policy row");
  distribution(observation);
  std::copy(probs.begin(), probs.end(),
            table_.begin() + static_cast<std::ptrdiff_t>(observation) * num_actions_);
}

std::uint64_t JointMixPolicy::Key(
    std::span<const int> member_observations) const {
  if (member_observations.size() != observation_counts.size()) {
    throw DimensionError("team observation has the wrong arity");
  }
  std::uint64_t key = 0;
  for (std::size_t m = 0; m < observation_counts.size(); ++m) {
    const int o = member_observations[m];
    if (o < 0 || o >= observation_counts[m]) {
      throw DimensionError("observation " + std::to_string(o) +
                           " not in policy table");
    }
    key = key * static_cast<std::uint64_t>(observation_counts[m]) +
          static_cast<std::uint64_t>(o);
  }
  return key;
}

std::vector<int> JointMixPolicy::DecodeKey(std::uint64_t key) const {
  std::vector<int> obs(observation_counts.size());
  for (std::size_t m = observation_counts.size(); m-- > 0;) {
    obs[m] = static_cast<int>(key % observation_counts[m]);
    key /= observation_counts[m];
  }
  return obs;
}

TeamPolicy TeamPolicy::Product(std::vector<IndividualPolicy> members) {
  if (members.empty()) throw DimensionError("product policy needs members");
  return TeamPolicy(ProductPolicy{std::move(members)});
}

TeamPolicy TeamPolicy::Shared(IndividualPolicy policy, int team_size) {
  if (team_size < 1) throw DimensionError("team size must be positive");
  return TeamPolicy(SharedPolicy{std::move(policy), team_size});
}

TeamPolicy TeamPolicy::JointMix(JointMixPolicy mix) {
  if (mix.observation_counts.empty() || mix.num_joint_actions < 1) {
    throw DimensionError("joint mixture needs members and actions");
  }
  for (const auto& [key, row] : mix.rows) {
    if (static_cast<std::int64_t>(row.size()) != mix.num_joint_actions) {
      throw DimensionError("joint mixture row has the wrong size");
    }
    CheckDistribution(row, "joint mixture row");
  }
  return TeamPolicy(std::move(mix));
}

TeamPolicy TeamPolicy::JointMix(int team_size, Distribution probs) {
  JointMixPolicy mix;
  mix.observation_counts.assign(team_size, 1);
  mix.num_joint_actions = static_cast<std::int64_t>(probs.size());
  mix.rows.emplace(0, std::move(probs));
  return JointMix(std::move(mix));
}

TeamPolicy TeamPolicy::AllPure(const TeamLayout& layout, Team team,
                               std::span<const int> observation_counts,
                               int action) {
  std::vector<IndividualPolicy> members;
  for (int m = 0; m < layout.team_size(team); ++m) {
    members.push_back(IndividualPolicy::Deterministic(
        observation_counts[m], layout.action_count(team, m), action));
  }
  return Product(std::move(members));
}

TeamPolicy TeamPolicy::PureJoint(const TeamLayout& layout, Team team,
                                 std::span<const int> actions) {
  if (static_cast<int>(actions.size()) != layout.team_size(team)) {
    throw DimensionError("joint action has the wrong arity");
  }
  std::vector<IndividualPolicy> members;
  for (int m = 0; m < layout.team_size(team); ++m) {
    members.push_back(IndividualPolicy::Deterministic(
        1, layout.action_count(team, m), actions[m]));
  }
  return Product(std::move(members));
}

TeamPolicy::Kind TeamPolicy::kind() const {
  return static_cast<Kind>(policy_.index());
}

int TeamPolicy::team_size() const {
  switch (kind()) {
    case Kind::kProduct:
      return static_cast<int>(product().members.size());
    case Kind::kShared:
      return shared().team_size;
    case Kind::kJointMix:
      return static_cast<int>(joint_mix().observation_counts.size());
  }
  return 0;
}

const ProductPolicy& TeamPolicy::product() const {
  if (const auto* p = std::get_if<ProductPolicy>(&policy_)) return *p;
  throw Error("not a product policy");
}

const SharedPolicy& TeamPolicy::shared() const {
  if (const auto* p = std::get_if<SharedPolicy>(&policy_)) return *p;
  throw Error("not a shared policy");
}

const JointMixPolicy& TeamPolicy::joint_mix() const {
  if (const auto* p = std::get_if<JointMixPolicy>(&policy_)) return *p;
  throw Error("not a joint mixture");
}

const IndividualPolicy& TeamPolicy::member(int index) const {
  if (index < 0 || index >= team_size()) {
    throw DimensionError("member index out of range");
  }
  if (kind() == Kind::kProduct) return product().members[index];
  if (kind() == Kind::kShared) return shared().policy;
  throw Error("joint mixtures have no individual member policies");
}

JointSupport TeamPolicy::Support(const TeamLayout& layout, Team team,
                                 std::span<const int> member_observations) const {
  const int n = layout.team_size(team);
  if (team_size() != n) {
    throw DimensionError("policy has " + std::to_string(team_size()) +
                         " members, team has " + std::to_string(n));
  }
  if (static_cast<int>(member_observations.size()) != n) {
    throw DimensionError("team observation has the wrong arity");
  }
  if (kind() == Kind::kJointMix) {
    const auto& mix = joint_mix();
    if (mix.num_joint_actions != layout.num_joint_actions(team)) {
      throw DimensionError("joint mixture does not match the team's actions");
    }
    const auto it = mix.rows.find(mix.Key(member_observations));
    if (it == mix.rows.end()) {
      throw DimensionError("team observation not in policy table");
    }
    JointSupport out;
    for (std::size_t j = 0; j < it->second.size(); ++j) {
      if (it->second[j] > 0.0) {
        out.emplace_back(static_cast<std::int64_t>(j), it->second[j]);
      }
    }
    return out;
  }
  std::vector<std::vector<std::pair<int, double>>> members(n);
  for (int m = 0; m < n; ++m) {
    const IndividualPolicy& pol = member(m);
    if (pol.num_actions() != layout.action_count(team, m)) {
      throw DimensionError("member " + std::to_string(m) +
                           " policy has the wrong number of actions");
    }
    members[m] = Nonzero(pol.distribution(member_observations[m]));
  }
  return ProductSupport(layout, team, members);
}

TeamPolicy TeamPolicy::ReplaceMember(const TeamLayout& layout, Team team,
                                     int member_index,
                                     const IndividualPolicy& replacement) const {
  const int n = layout.team_size(team);
  if (member_index < 0 || member_index >= n) {
    throw DimensionError("member index out of range");
  }
  if (replacement.num_actions() != layout.action_count(team, member_index)) {
    throw DimensionError("replacement policy has the wrong number of actions");
  }
  if (kind() != Kind::kJointMix) {
    std::vector<IndividualPolicy> members;
    for (int m = 0; m < n; ++m) members.push_back(member(m));
    members[member_index] = replacement;
    return Product(std::move(members));
  }
  const auto& mix = joint_mix();
  JointMixPolicy out;
  out.observation_counts = mix.observation_counts;
  out.num_joint_actions = mix.num_joint_actions;
  for (const auto& [key, row] : mix.rows) {
    const auto obs = mix.DecodeKey(key);
    const auto repl = replacement.distribution(obs[member_index]);
    Distribution next(row.size(), 0.0);
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (row[j] <= 0.0) continue;
      auto actions = layout.DecodeJoint(team, static_cast<std::int64_t>(j));
      for (std::size_t a = 0; a < repl.size(); ++a) {
        if (repl[a] <= 0.0) continue;
        actions[member_index] = static_cast<int>(a);
        next[layout.EncodeJoint(team, actions)] += row[j] * repl[a];
      }
    }
    out.rows.emplace(key, std::move(next));
  }
  return JointMix(std::move(out));
}

std::optional<JointAction> TeamPolicy::PureJointAction(const TeamLayout& layout,
                                                       Team team) const {
  const std::vector<int> obs(layout.team_size(team), 0);
  const auto support = Support(layout, team, obs);
  if (support.size() == 1 && support[0].second >= 1.0 - kSimplexTolerance) {
    return layout.DecodeJoint(team, support[0].first);
  }
  return std::nullopt;
}

std::string TeamPolicy::Summary(const TeamLayout& layout, Team team) const {
  const bool single_obs = [&] {
    if (kind() == Kind::kJointMix) {
      for (int c : joint_mix().observation_counts) {
        if (c != 1) return false;
      }
      return true;
    }
    for (int m = 0; m < team_size(); ++m) {
      if (member(m).num_observations() != 1) return false;
    }
    return true;
  }();
  std::ostringstream out;
  switch (kind()) {
    case Kind::kProduct:
      out << "product";
      break;
    case Kind::kShared:
      out << "shared";
      break;
    case Kind::kJointMix:
      out << "joint";
      break;
  }
  if (!single_obs) {
    out << "(tabular)";
    return out.str();
  }
  if (auto pure = PureJointAction(layout, team)) {
    out << FormatJointAction(*pure);
    return out.str();
  }
  if (kind() == Kind::kJointMix) {
    out << '{';
    bool first = true;
    const auto& row = joint_mix().rows.begin()->second;
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (row[j] <= 0.0) continue;
      if (!first) out << ',';
      first = false;
      out << FormatJointAction(layout.DecodeJoint(team, static_cast<std::int64_t>(j)))
          << ':' << row[j];
    }
    out << '}';
  } else if (kind() == Kind::kShared) {
    out << FormatProbs(shared().policy.distribution(0));
  } else {
    out << '(';
    for (int m = 0; m < team_size(); ++m) {
      if (m > 0) out << ',';
      out << FormatProbs(member(m).distribution(0));
    }
    out << ')';
  }
  return out.str();
}

PolicyMixture PolicyMixture::Single(TeamPolicy policy) {
  PolicyMixture mix;
  mix.policies.push_back(std::move(policy));
  mix.weights.push_back(1.0);
  return mix;
}

void PolicyMixture::Validate() const {
  if (policies.empty() || policies.size() != weights.size()) {
    throw DimensionError("mixture needs one weight per policy");
  }
  CheckDistribution(weights, "mixture weights");
}

}  // namespace teamcorr
