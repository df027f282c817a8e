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

#include "teamcorr/deviation.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "teamcorr/rng.h"

namespace teamcorr {
namespace {

// Number of pure tables with `obs` rows over `actions` choices, or -1 when it
// exceeds `bound`.
std::int64_t CountPure(std::int64_t actions, int obs, std::int64_t bound) {
  std::int64_t count = 1;
  for (int o = 0; o < obs; ++o) {
    if (count > bound / actions) return -1;
    count *= actions;
  }
  return count <= bound ? count : -1;
}

// Pure table number `index` in lexicographic order (row 0 most significant).
std::vector<int> DecodeTable(std::uint64_t index, std::int64_t actions,
                             int obs) {
  std::vector<int> out(obs);
  for (int o = obs - 1; o >= 0; --o) {
    out[o] = static_cast<int>(index % static_cast<std::uint64_t>(actions));
    index /= static_cast<std::uint64_t>(actions);
  }
  return out;
}

std::vector<IndividualPolicy> PureIndividuals(const Game& game, Team team,
                                              int member,
                                              std::int64_t bound) {
  const int actions = game.layout().action_count(team, member);
  const int obs = game.ObservationCounts(team)[member];
  const std::int64_t count = CountPure(actions, obs, bound);
  if (count < 0) {
    throw BoundError("member " + std::to_string(member) +
                     " has too many pure policies to enumerate");
  }
  std::vector<IndividualPolicy> out;
  for (std::int64_t i = 0; i < count; ++i) {
    out.push_back(IndividualPolicy::Deterministic(
        actions, DecodeTable(static_cast<std::uint64_t>(i), actions, obs)));
  }
  return out;
}

// Pure team joint policies: every team observation key maps to a joint action.
class JointPolicySpace {
 public:
  JointPolicySpace(const Game& game, Team team, std::int64_t bound)
      : game_(game), team_(team) {
    counts_ = game.ObservationCounts(team);
    joint_ = game.layout().num_joint_actions(team);
    std::int64_t keys = 1;
    for (int c : counts_) {
      if (keys > bound / c) throw BoundError("too many team observations");
      keys *= c;
    }
    keys_ = static_cast<int>(keys);
    size_ = CountPure(joint_, keys_, bound);
    if (size_ < 0) {
      throw BoundError("team " + std::to_string(Label(team)) +
                       " has too many pure joint policies to enumerate");
    }
  }

  std::int64_t size() const { return size_; }

  TeamPolicy At(std::uint64_t index) const {
    const TeamLayout& layout = game_.layout();
    const auto rows = DecodeTable(index, joint_, keys_);
    if (keys_ == 1) {
      return TeamPolicy::PureJoint(layout, team_,
                                   layout.DecodeJoint(team_, rows[0]));
    }
    JointMixPolicy mix;
    mix.observation_counts = counts_;
    mix.num_joint_actions = joint_;
    for (int k = 0; k < keys_; ++k) {
      Distribution row(static_cast<std::size_t>(joint_), 0.0);
      row[rows[k]] = 1.0;
      mix.rows.emplace(static_cast<std::uint64_t>(k), std::move(row));
    }
    return TeamPolicy::JointMix(std::move(mix));
  }

 private:
  const Game& game_;
  Team team_;
  std::vector<int> counts_;
  std::int64_t joint_ = 0;
  int keys_ = 1;
  std::int64_t size_ = 0;
};

std::vector<int> CheckedOrder(std::vector<int> order, int n) {
  if (order.empty()) {
    for (int m = 0; m < n; ++m) order.push_back(m);
  }
  std::vector<int> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  for (int m = 0; m < n; ++m) {
    if (static_cast<int>(sorted.size()) != n || sorted[m] != m) {
      throw DimensionError("sequential order must be a permutation of the team");
    }
  }
  return order;
}

// Canonical pure joint behaviour of a team policy: the joint action taken at
// every state (one entry for normal-form games). Empty if not pure.
std::vector<std::int64_t> PureSignature(const Game& game, Team team,
                                        const TeamPolicy& policy) {
  const TeamLayout& layout = game.layout();
  std::vector<std::vector<int>> observations;
  if (game.is_normal_form()) {
    observations.emplace_back(layout.team_size(team), 0);
  } else {
    const auto& sg = game.stochastic();
    for (int s = 0; s < sg.num_states(); ++s) {
      observations.push_back(sg.TeamObservations(s, team));
    }
  }
  std::vector<std::int64_t> signature;
  for (const auto& obs : observations) {
    const auto support = policy.Support(layout, team, obs);
    if (support.size() != 1 || support[0].second < 1.0 - kSimplexTolerance) {
      return {};
    }
    signature.push_back(support[0].first);
  }
  return signature;
}

}  // namespace

void SampleFactor::Validate() const {
  if (!(f_team >= 0.0) || !(f_policy >= 0.0) || !std::isfinite(f_team) ||
      !std::isfinite(f_policy)) {
    throw DimensionError("sample factors must be finite and nonnegative");
  }
}

std::uint64_t SampleBudget(const SampleFactor& factor, std::uint64_t delta_team,
                           std::uint64_t delta_policy) {
  factor.Validate();
  const long double total =
      static_cast<long double>(factor.n_init) +
      static_cast<long double>(delta_team) * factor.f_team +
      static_cast<long double>(delta_policy) * factor.f_policy;
  if (total >= 1.8e19L) throw BoundError("sample budget overflows");
  return static_cast<std::uint64_t>(std::floor(total));
}

std::string ClassName(const CorrelationClass& cls) {
  switch (cls.index()) {
    case 0:
      return "NoCorrelation";
    case 1:
      return "PivotFollowers";
    case 2:
      return "Sequential";
    default:
      return "Joint";
  }
}

DeviationSpec BuildDeviationSpec(const Game& game, Team team,
                                 const TeamPolicy& candidate,
                                 const CorrelationClass& correlation,
                                 const DeviationOptions& options) {
  const TeamLayout& layout = game.layout();
  const int n = layout.team_size(team);
  if (candidate.team_size() != n) {
    throw DimensionError("candidate has the wrong number of members");
  }
  DeviationSpec spec;
  spec.team = team;
  spec.correlation = correlation;
  const std::int64_t bound = options.enumeration_bound;

  auto add_individuals = [&](const std::vector<int>& members,
                             std::uint64_t limit) {
    for (int m : members) {
      for (auto& pure : PureIndividuals(game, team, m, bound)) {
        if (spec.individual.size() >= limit) return;
        TeamPolicy replaced = candidate.ReplaceMember(layout, team, m, pure);
        spec.individual.push_back({m, std::move(pure), std::move(replaced)});
      }
    }
  };

  if (std::holds_alternative<NoCorrelation>(correlation)) {
    add_individuals(CheckedOrder({}, n), UINT64_MAX);
    spec.budget = spec.individual.size();
  } else if (const auto* pf = std::get_if<PivotFollowers>(&correlation)) {
    if (pf->pivot < 0 || pf->pivot >= n) {
      throw DimensionError("pivot " + std::to_string(pf->pivot) +
                           " is not a team member");
    }
    const auto obs = game.ObservationCounts(team);
    for (int m = 0; m < n; ++m) {
      if (layout.action_count(team, m) != layout.action_count(team, pf->pivot) ||
          obs[m] != obs[pf->pivot]) {
        throw DimensionError("pivot-follower deviations need homogeneous members");
      }
    }
    for (auto& pure : PureIndividuals(game, team, pf->pivot, bound)) {
      spec.correlated.push_back(TeamPolicy::Shared(std::move(pure), n));
    }
    spec.budget = spec.correlated.size();
  } else if (std::holds_alternative<JointCorrelation>(correlation)) {
    const JointPolicySpace space(game, team, bound);
    for (std::int64_t i = 0; i < space.size(); ++i) {
      spec.correlated.push_back(space.At(static_cast<std::uint64_t>(i)));
    }
    spec.budget = spec.correlated.size();
  } else {
    const auto& seq = std::get<SequentialCorrelation>(correlation);
    const auto order = CheckedOrder(seq.order, n);
    spec.budget = SampleBudget(seq.factor, seq.delta_team, seq.delta_policy);
    add_individuals(order, spec.budget);
    const std::uint64_t remaining = spec.budget - spec.individual.size();
    if (remaining > 0) {
      const JointPolicySpace space(game, team, bound);
      const auto total = static_cast<std::uint64_t>(space.size());
      Rng rng(SubSeed(seq.seed, "sequential-deviation"));
      for (std::uint64_t index : SampleWithoutReplacement(
               total, std::min(remaining, total), rng)) {
        spec.correlated.push_back(space.At(index));
      }
    }
  }
  return spec;
}

std::int64_t CooperativeAbility(const Game& game, const DeviationSpec& spec) {
  std::set<std::vector<std::int64_t>> distinct;
  for (const TeamPolicy& p : spec.correlated) {
    auto signature = PureSignature(game, spec.team, p);
    if (!signature.empty()) distinct.insert(std::move(signature));
  }
  return static_cast<std::int64_t>(distinct.size());
}

double DefaultEpsilon(const Evaluation& candidate) {
  return candidate.exact() ? 1e-6 : 2.0 * candidate.std_error;
}

VerificationReport VerifyEquilibrium(const Game& game, const TeamPolicy& p1,
                                     const TeamPolicy& p2,
                                     const std::array<DeviationSpec, 2>& specs,
                                     double epsilon, const EvalConfig& eval) {
  if (!(epsilon >= 0.0)) throw DimensionError("epsilon must be nonnegative");
  const TeamLayout& layout = game.layout();
  VerificationReport report;
  report.epsilon = epsilon;
  for (int j = 0; j < 2; ++j) {
    const Team team = TeamFromIndex(j);
    const DeviationSpec& spec = specs[j];
    if (spec.team != team) {
      throw DimensionError("deviation specs must be ordered team 1, team 2");
    }
    const TeamPolicy& own = team == Team::kFirst ? p1 : p2;
    const PolicyMixture opponent =
        PolicyMixture::Single(team == Team::kFirst ? p2 : p1);
    TeamVerification& out = report.teams[j];
    out.team = team;
    out.class_name = ClassName(spec.correlation);
    out.budget = spec.budget;
    out.deviations = spec.individual.size() + spec.correlated.size();
    out.candidate_value =
        ExpectedTeamReward(game, team, own, opponent, eval).mean;
    bool any = false;
    auto consider = [&](const TeamPolicy& deviation, Witness witness) {
      const double gain =
          ExpectedTeamReward(game, team, deviation, opponent, eval).mean -
          out.candidate_value;
      if (!any || gain > out.max_gain) {
        any = true;
        out.max_gain = gain;
        if (game.is_normal_form()) {
          if (auto pure = deviation.PureJointAction(layout, team)) {
            witness.joint_action = *pure;
          }
        }
        witness.description = deviation.Summary(layout, team);
        out.witness = std::move(witness);
      }
    };
    for (std::size_t i = 0; i < spec.individual.size(); ++i) {
      const auto& dev = spec.individual[i];
      consider(dev.team_policy,
               {Witness::Kind::kIndividual, dev.member, i, "", {}});
    }
    for (std::size_t i = 0; i < spec.correlated.size(); ++i) {
      consider(spec.correlated[i], {Witness::Kind::kCorrelated, -1, i, "", {}});
    }
    if (!any) out.max_gain = 0.0;
    out.pass = out.max_gain <= epsilon;
    report.pass &= out.pass;
  }
  return report;
}

}  // namespace teamcorr
