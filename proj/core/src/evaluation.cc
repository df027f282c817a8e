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

#include "teamcorr/evaluation.h"

#include <cmath>
#include <map>
#include <string>

namespace teamcorr {
namespace {

std::vector<int> Concat(const JointAction& a, const JointAction& b) {
  std::vector<int> out(a);
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

void CheckPolicyShape(const Game& game, Team team, const TeamPolicy& policy) {
  if (policy.team_size() != game.layout().team_size(team)) {
    throw DimensionError("team " + std::to_string(Label(team)) +
                         " policy has " + std::to_string(policy.team_size()) +
                         " members, expected " +
                         std::to_string(game.layout().team_size(team)));
  }
}

double NormalFormValue(const NormalFormTeamGame& nf, const Distribution& x1,
                       const Distribution& x2) {
  const auto j2 = static_cast<std::size_t>(nf.num_joint_actions(Team::kSecond));
  const auto& table = nf.payoff_table();
  double value = 0.0;
  for (std::size_t i = 0; i < x1.size(); ++i) {
    if (x1[i] == 0.0) continue;
    double row = 0.0;
    for (std::size_t j = 0; j < j2; ++j) row += table[i * j2 + j] * x2[j];
    value += x1[i] * row;
  }
  return value;
}

JointAction SampleFromPolicy(const TeamLayout& layout, Team team,
                             const TeamPolicy& policy,
                             std::span<const int> member_observations,
                             Rng& rng) {
  if (policy.kind() == TeamPolicy::Kind::kJointMix) {
    const auto support = policy.Support(layout, team, member_observations);
    std::vector<double> probs;
    for (const auto& [j, p] : support) probs.push_back(p);
    return layout.DecodeJoint(team, support[rng.Sample(probs)].first);
  }
  const int n = layout.team_size(team);
  if (policy.team_size() != n ||
      static_cast<int>(member_observations.size()) != n) {
    throw DimensionError("joint action sampling arity mismatch");
  }
  JointAction actions(n);
  for (int m = 0; m < n; ++m) {
    actions[m] = rng.Sample(policy.member(m).distribution(member_observations[m]));
  }
  return actions;
}

// One Monte-Carlo episode. Returns the discounted R1 return.
double Episode(const StochasticTeamGame& game, const TeamPolicy& p1,
               const TeamPolicy& p2, int horizon, Rng& rng) {
  const TeamLayout& layout = game.layout();
  const auto initial = game.initial_distribution();
  std::vector<double> probs;
  for (const auto& o : initial) probs.push_back(o.probability);
  int state = initial[rng.Sample(probs)].state;
  double total = 0.0;
  double weight = 1.0;
  for (int t = 0; t < horizon && !game.terminal(state); ++t) {
    const auto a1 = SampleFromPolicy(
        layout, Team::kFirst, p1, game.TeamObservations(state, Team::kFirst),
        rng);
    const auto a2 = SampleFromPolicy(
        layout, Team::kSecond, p2,
        game.TeamObservations(state, Team::kSecond), rng);
    const StepResult step = game.Step(state, Concat(a1, a2));
    total += weight * step.reward;
    weight *= game.discount();
    probs.clear();
    for (const auto& o : step.outcomes) probs.push_back(o.probability);
    state = step.outcomes[rng.Sample(probs)].state;
  }
  return total;
}

Evaluation MonteCarlo(const Game& game, Team team, const TeamPolicy& own,
                      const PolicyMixture& opponents, const EvalConfig& cfg) {
  if (!cfg.seed) throw Error("Monte-Carlo evaluation requires a seed");
  if (cfg.samples < 2) throw Error("Monte-Carlo evaluation needs >= 2 samples");
  const StochasticTeamGame& sg = game.stochastic();
  const int horizon = EffectiveHorizon(game, cfg);
  Rng rng(SubSeed(*cfg.seed, "mc"));
  double mean = 0.0;
  double m2 = 0.0;
  for (std::int64_t n = 1; n <= cfg.samples; ++n) {
    const int k = opponents.policies.size() == 1
                      ? 0
                      : rng.Sample(opponents.weights);
    const TeamPolicy& opp = opponents.policies[k];
    const double r1 = team == Team::kFirst
                          ? Episode(sg, own, opp, horizon, rng)
                          : Episode(sg, opp, own, horizon, rng);
    const double x = Sign(team) * r1;
    const double delta = x - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (x - mean);
  }
  const double n = static_cast<double>(cfg.samples);
  const double var = m2 / (n - 1.0);
  return Evaluation{mean, std::sqrt(var / n), cfg.samples};
}

}  // namespace

EvalConfig EvalConfig::MonteCarlo(std::int64_t samples, std::uint64_t seed) {
  EvalConfig cfg;
  cfg.mode = EvalMode::kMonteCarlo;
  cfg.samples = samples;
  cfg.seed = seed;
  return cfg;
}

int EffectiveHorizon(const Game& game, const EvalConfig& config) {
  if (game.is_normal_form()) return 1;
  if (config.horizon < 0) throw DimensionError("horizon must be nonnegative");
  return config.horizon > 0 ? config.horizon : game.stochastic().horizon();
}

Distribution JointDistribution(const Game& game, Team team,
                               const TeamPolicy& policy) {
  CheckPolicyShape(game, team, policy);
  const TeamLayout& layout = game.layout();
  Distribution out(static_cast<std::size_t>(layout.num_joint_actions(team)),
                   0.0);
  const std::vector<int> obs(layout.team_size(team), 0);
  for (const auto& [j, p] : policy.Support(layout, team, obs)) out[j] += p;
  return out;
}

Distribution JointDistribution(const Game& game, Team team,
                               const PolicyMixture& mixture) {
  mixture.Validate();
  Distribution out;
  for (std::size_t k = 0; k < mixture.policies.size(); ++k) {
    const auto d = JointDistribution(game, team, mixture.policies[k]);
    if (out.empty()) out.assign(d.size(), 0.0);
    for (std::size_t j = 0; j < d.size(); ++j) out[j] += mixture.weights[k] * d[j];
  }
  return out;
}

TeamPolicy ProductToJoint(const Game& game, Team team,
                          const TeamPolicy& policy) {
  if (!policy.factorized()) {
    throw Error("ProductToJoint expects a product or shared policy");
  }
  CheckPolicyShape(game, team, policy);
  const TeamLayout& layout = game.layout();
  JointMixPolicy mix;
  mix.observation_counts = game.ObservationCounts(team);
  mix.num_joint_actions = layout.num_joint_actions(team);
  std::uint64_t keys = 1;
  for (int c : mix.observation_counts) {
    keys *= static_cast<std::uint64_t>(c);
    if (keys > static_cast<std::uint64_t>(kDefaultEnumerationBound)) {
      throw BoundError("too many team observations to tabulate");
    }
  }
  for (std::uint64_t key = 0; key < keys; ++key) {
    const auto obs = mix.DecodeKey(key);
    Distribution row(static_cast<std::size_t>(mix.num_joint_actions), 0.0);
    for (const auto& [j, p] : policy.Support(layout, team, obs)) row[j] += p;
    mix.rows.emplace(key, std::move(row));
  }
  return TeamPolicy::JointMix(std::move(mix));
}

JointAction SampleJointAction(const Game& game, Team team,
                              const TeamPolicy& policy,
                              std::span<const int> member_observations,
                              Rng& rng) {
  return SampleFromPolicy(game.layout(), team, policy, member_observations,
                          rng);
}

std::vector<double> TeamActionValues(const Game& game, Team team,
                                     const PolicyMixture& opponents) {
  const NormalFormTeamGame& nf = game.normal_form();
  const Distribution y = JointDistribution(game, Other(team), opponents);
  const std::int64_t own = nf.num_joint_actions(team);
  std::vector<double> values(static_cast<std::size_t>(own), 0.0);
  for (std::int64_t i = 0; i < own; ++i) {
    double v = 0.0;
    for (std::size_t k = 0; k < y.size(); ++k) {
      if (y[k] != 0.0) v += y[k] * nf.team_payoff(team, i, static_cast<std::int64_t>(k));
    }
    values[i] = v;
  }
  return values;
}

double ExactStochasticValue(const StochasticTeamGame& game,
                            const TeamPolicy& p1, const TeamPolicy& p2,
                            std::span<const Outcome> start, int horizon,
                            std::int64_t step_bound) {
  const TeamLayout& layout = game.layout();
  std::map<int, double> current;
  for (const Outcome& o : start) {
    if (o.probability > 0.0) current[o.state] += o.probability;
  }
  double value = 0.0;
  double weight = 1.0;
  std::vector<int> actions;
  for (int t = 0; t < horizon && !current.empty(); ++t) {
    std::map<int, double> next;
    std::int64_t expanded = 0;
    for (const auto& [state, prob] : current) {
      if (game.terminal(state)) continue;
      const auto s1 = p1.Support(layout, Team::kFirst,
                                 game.TeamObservations(state, Team::kFirst));
      const auto s2 = p2.Support(layout, Team::kSecond,
                                 game.TeamObservations(state, Team::kSecond));
      expanded += static_cast<std::int64_t>(s1.size() * s2.size());
      if (expanded > step_bound) {
        throw BoundError("exact evaluation expands more than " +
                         std::to_string(step_bound) +
                         " state/joint-action pairs in one step");
      }
      for (const auto& [j1, q1] : s1) {
        const auto a1 = layout.DecodeJoint(Team::kFirst, j1);
        for (const auto& [j2, q2] : s2) {
          actions = Concat(a1, layout.DecodeJoint(Team::kSecond, j2));
          const double mass = prob * q1 * q2;
          const StepResult step = game.Step(state, actions);
          value += weight * mass * step.reward;
          for (const Outcome& o : step.outcomes) {
            if (o.probability > 0.0) next[o.state] += mass * o.probability;
          }
        }
      }
    }
    current = std::move(next);
    weight *= game.discount();
  }
  return value;
}

Evaluation ExpectedTeamReward(const Game& game, const TeamPolicy& p1,
                              const TeamPolicy& p2, const EvalConfig& config) {
  return ExpectedTeamReward(game, Team::kFirst, p1, PolicyMixture::Single(p2),
                            config);
}

Evaluation ExpectedTeamReward(const Game& game, Team team,
                              const TeamPolicy& own,
                              const PolicyMixture& opponents,
                              const EvalConfig& config) {
  opponents.Validate();
  CheckPolicyShape(game, team, own);
  for (const auto& p : opponents.policies) CheckPolicyShape(game, Other(team), p);
  if (game.is_normal_form()) {
    const Distribution x = JointDistribution(game, team, own);
    const Distribution y = JointDistribution(game, Other(team), opponents);
    const double r1 = team == Team::kFirst
                          ? NormalFormValue(game.normal_form(), x, y)
                          : NormalFormValue(game.normal_form(), y, x);
    return Evaluation{Sign(team) * r1, 0.0, 0};
  }
  if (config.mode == EvalMode::kMonteCarlo) {
    return MonteCarlo(game, team, own, opponents, config);
  }
  const StochasticTeamGame& sg = game.stochastic();
  if (!sg.exact_feasible()) {
    throw BoundError("game is too large for exact evaluation; use Monte-Carlo");
  }
  const int horizon = EffectiveHorizon(game, config);
  const auto start = sg.initial_distribution();
  double value = 0.0;
  for (std::size_t k = 0; k < opponents.policies.size(); ++k) {
    if (opponents.weights[k] == 0.0) continue;
    const TeamPolicy& opp = opponents.policies[k];
    const double r1 =
        team == Team::kFirst
            ? ExactStochasticValue(sg, own, opp, start, horizon,
                                   config.exact_step_bound)
            : ExactStochasticValue(sg, opp, own, start, horizon,
                                   config.exact_step_bound);
    value += opponents.weights[k] * r1;
  }
  return Evaluation{Sign(team) * value, 0.0, 0};
}

}  // namespace teamcorr
