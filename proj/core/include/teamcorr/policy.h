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

#ifndef TEAMCORR_POLICY_H_
#define TEAMCORR_POLICY_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "teamcorr/layout.h"
#include "teamcorr/types.h"

namespace teamcorr {

// Tabular policy of one player: a distribution over its actions for every
// observation it can receive. Stored row-major (observation x action).
class IndividualPolicy {
 public:
  IndividualPolicy(int num_observations, int num_actions,
                   std::vector<double> table);

  static IndividualPolicy Deterministic(int num_observations, int num_actions,
                                        int action);
  static IndividualPolicy Deterministic(int num_actions,
                                        std::span<const int> actions);
  static IndividualPolicy Uniform(int num_observations, int num_actions);
  // Same mixed distribution at every observation.
  static IndividualPolicy Stationary(int num_observations,
                                     std::span<const double> probs);

  int num_observations() const { return num_observations_; }
  int num_actions() const { return num_actions_; }

  // Throws DimensionError for an observation outside the table.
  std::span<const double> distribution(int observation) const;
  std::optional<int> pure_action(int observation) const;
  bool is_pure() const;

  void SetPure(int observation, int action);
  void SetDistribution(int observation, std::span<const double> probs);

  const std::vector<double>& table() const { return table_; }

  bool operator==(const IndividualPolicy&) const = default;

 private:
  int num_observations_ = 0;
  int num_actions_ = 0;
  std::vector<double> table_;
};

struct ProductPolicy {
  std::vector<IndividualPolicy> members;
  bool operator==(const ProductPolicy&) const = default;
};

// One policy executed independently by every team member.
struct SharedPolicy {
  IndividualPolicy policy;
  int team_size = 0;
  bool operator==(const SharedPolicy&) const = default;
};

// Correlated team policy: for every team joint observation, a distribution
// over the team's joint actions. In a normal-form game there is a single
// row under key 0.
struct JointMixPolicy {
  std::vector<int> observation_counts;  // per member
  std::int64_t num_joint_actions = 0;
  std::map<std::uint64_t, Distribution> rows;

  std::uint64_t Key(std::span<const int> member_observations) const;
  std::vector<int> DecodeKey(std::uint64_t key) const;
  bool operator==(const JointMixPolicy&) const = default;
};

// (team joint action index, probability)
using JointSupport = std::vector<std::pair<std::int64_t, double>>;

class TeamPolicy {
 public:
  enum class Kind { kProduct, kShared, kJointMix };

  static TeamPolicy Product(std::vector<IndividualPolicy> members);
  static TeamPolicy Shared(IndividualPolicy policy, int team_size);
  static TeamPolicy JointMix(JointMixPolicy mix);
  // Normal-form joint mixture: one distribution over team joint actions.
  static TeamPolicy JointMix(int team_size, Distribution probs);
  // Every member deterministically plays `action` at every observation.
  static TeamPolicy AllPure(const TeamLayout& layout, Team team,
                            std::span<const int> observation_counts,
                            int action = 0);
  static TeamPolicy PureJoint(const TeamLayout& layout, Team team,
                              std::span<const int> actions);

  Kind kind() const;
  int team_size() const;
  bool factorized() const { return kind() != Kind::kJointMix; }

  const ProductPolicy& product() const;
  const SharedPolicy& shared() const;
  const JointMixPolicy& joint_mix() const;

  // Policy of one member. Valid for product and shared policies.
  const IndividualPolicy& member(int index) const;

  // Induced distribution over team joint actions given each member's
  // observation. Entries with zero probability are omitted; order follows
  // the joint-action index.
  JointSupport Support(const TeamLayout& layout, Team team,
                       std::span<const int> member_observations) const;

  // The team policy with one member switched to `replacement`, teammates
  // keeping their behaviour under this policy.
  TeamPolicy ReplaceMember(const TeamLayout& layout, Team team, int member,
                           const IndividualPolicy& replacement) const;

  // Pure joint action when the policy is deterministic at the single
  // normal-form observation.
  std::optional<JointAction> PureJointAction(const TeamLayout& layout,
                                             Team team) const;

  std::string Summary(const TeamLayout& layout, Team team) const;

  bool operator==(const TeamPolicy&) const = default;

 private:
  explicit TeamPolicy(std::variant<ProductPolicy, SharedPolicy, JointMixPolicy> v)
      : policy_(std::move(v)) {}

  std::variant<ProductPolicy, SharedPolicy, JointMixPolicy> policy_;
};

// A mixture over team policies (a meta-strategy applied to a population).
struct PolicyMixture {
  std::vector<TeamPolicy> policies;
  std::vector<double> weights;

  static PolicyMixture Single(TeamPolicy policy);
  void Validate() const;
};

}  // namespace teamcorr

#endif  // TEAMCORR_POLICY_H_
