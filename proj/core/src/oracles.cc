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

#include "teamcorr/oracles.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "response.h"
#include "teamcorr/rng.h"

namespace teamcorr {
namespace {

constexpr double kTol = 1e-10;
const double kGolden = (std::sqrt(5.0) - 1.0) / 2.0;

EvalConfig ExactConfig(const OracleOptions& options) {
  EvalConfig cfg = options.eval;
  cfg.mode = EvalMode::kExact;
  return cfg;
}

double TeamValue(const Game& game, Team team, const TeamPolicy& policy,
                 const PolicyMixture& opponent, const OracleOptions& options) {
  return ExpectedTeamReward(game, team, policy, opponent, ExactConfig(options))
      .mean;
}

// First index within kTol of the maximum.
int FirstArgmax(std::span<const double> values) {
  const double best = *std::max_element(values.begin(), values.end());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] >= best - kTol) return static_cast<int>(i);
  }
  return 0;
}

void CheckEnumerable(const Game& game, Team team, const OracleOptions& options) {
  if (game.layout().num_joint_actions(team) > options.enumeration_bound) {
    throw BoundError("team " + std::to_string(Label(team)) + " has " +
                     std::to_string(game.layout().num_joint_actions(team)) +
                     " joint actions, above the enumeration bound");
  }
}

void CheckExactStochastic(const StochasticTeamGame& game) {
  if (!game.exact_feasible()) {
    throw BoundError("game is too large for exact best responses");
  }
}

internal::ResponseProblem MakeProblem(const Game& game, Team team,
                                      const PolicyMixture& opponent,
                                      const OracleOptions& options) {
  internal::ResponseProblem p;
  p.game = &game.stochastic();
  p.team = team;
  p.opponent = &opponent;
  p.horizon = EffectiveHorizon(game, options.eval);
  p.step_bound = options.eval.exact_step_bound;
  return p;
}

int ModalAction(std::span<const double> probs) {
  return static_cast<int>(std::max_element(probs.begin(), probs.end()) -
                          probs.begin());
}

// Expected team reward of a shared mixed policy x given per-joint-action
// values (normal form).
double SharedValue(const TeamLayout& layout, Team team,
                   std::span<const double> q, std::span<const double> x) {
  double total = 0.0;
  for (std::size_t j = 0; j < q.size(); ++j) {
    const auto actions = layout.DecodeJoint(team, static_cast<std::int64_t>(j));
    double w = 1.0;
    for (int a : actions) {
      w *= x[a];
      if (w == 0.0) break;
    }
    total += w * q[j];
  }
  return total;
}

// Maximises a scalar function on [lo, hi] by golden-section search.
template <typename F>
std::pair<double, double> GoldenSection(const F& f, double lo, double hi) {
  double a = lo;
  double b = hi;
  double c = b - kGolden * (b - a);
  double d = a + kGolden * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int i = 0; i < 200 && b - a > 1e-13; ++i) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kGolden * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kGolden * (b - a);
      fd = f(d);
    }
  }
  const double x = fc >= fd ? c : d;
  return {x, std::max(fc, fd)};
}

// Grid plus golden-section refinement of g on [0, 1].
template <typename F>
std::pair<double, double> MaximizeUnit(const F& g, int grid_points) {
  const int n = std::max(grid_points, 2);
  int best_i = 0;
  double best = -1e300;
  for (int i = 0; i < n; ++i) {
    const double v = g(static_cast<double>(i) / (n - 1));
    if (v > best + 1e-15) {
      best = v;
      best_i = i;
    }
  }
  double arg = static_cast<double>(best_i) / (n - 1);
  const double lo = static_cast<double>(std::max(best_i - 1, 0)) / (n - 1);
  const double hi = static_cast<double>(std::min(best_i + 1, n - 1)) / (n - 1);
  const auto [x, v] = GoldenSection(g, lo, hi);
  if (v > best) {
    best = v;
    arg = x;
  }
  return {arg, best};
}

// Maximises f over the probability simplex of dimension `dim`. Two actions:
// grid plus golden section. More: pairwise line searches that move mass
// between two actions, started from every vertex and the barycentre.
template <typename F>
std::pair<Distribution, double> MaximizeSimplex(const F& f, int dim,
                                                int grid_points) {
  if (dim == 1) {
    Distribution x{1.0};
    return {x, f(x)};
  }
  if (dim == 2) {
    const auto [p, v] = MaximizeUnit(
        [&](double u) { return f(Distribution{1.0 - u, u}); }, grid_points);
    return {Distribution{1.0 - p, p}, v};
  }
  std::vector<Distribution> starts;
  for (int a = 0; a < dim; ++a) {
    Distribution e(dim, 0.0);
    e[a] = 1.0;
    starts.push_back(e);
  }
  starts.emplace_back(dim, 1.0 / dim);
  Distribution best_x;
  double best = -1e300;
  for (Distribution x : starts) {
    double value = f(x);
    for (int pass = 0; pass < 100; ++pass) {
      const double before = value;
      for (int a = 0; a < dim; ++a) {
        for (int b = a + 1; b < dim; ++b) {
          const double mass = x[a] + x[b];
          auto line = [&](double u) {
            Distribution y = x;
            y[a] = u * mass;
            y[b] = (1.0 - u) * mass;
            return f(y);
          };
          const auto [u, v] = MaximizeUnit(line, grid_points);
          if (v > value + 1e-15) {
            x[a] = u * mass;
            x[b] = (1.0 - u) * mass;
            value = v;
          }
        }
      }
      if (value - before <= 1e-12) break;
    }
    if (value > best + 1e-15) {
      best = value;
      best_x = x;
    }
  }
  return {best_x, best};
}

void CheckHomogeneous(const Game& game, Team team) {
  const TeamLayout& layout = game.layout();
  const auto obs = game.ObservationCounts(team);
  for (int m = 1; m < layout.team_size(team); ++m) {
    if (layout.action_count(team, m) != layout.action_count(team, 0) ||
        obs[m] != obs[0]) {
      throw DimensionError("shared policies need homogeneous members");
    }
  }
}

TeamPolicy AsProduct(const Game& game, Team team, const TeamPolicy& policy) {
  if (!policy.factorized()) {
    throw Error("a factorized (product or shared) team policy is required");
  }
  if (policy.team_size() != game.layout().team_size(team)) {
    throw DimensionError("team policy has the wrong number of members");
  }
  if (policy.kind() == TeamPolicy::Kind::kProduct) return policy;
  std::vector<IndividualPolicy> members(policy.team_size(),
                                        policy.shared().policy);
  return TeamPolicy::Product(std::move(members));
}

// Telescoping decomposition given Q over joint actions and each member's
// distribution at its observation.
std::vector<double> DecomposeQ(const TeamLayout& layout, Team team,
                               std::span<const double> q,
                               const std::vector<std::span<const double>>& dists,
                               std::span<const int> actions,
                               std::span<const int> order) {
  const int n = layout.team_size(team);
  std::vector<char> fixed(n, 0);
  auto conditional = [&]() {
    double total = 0.0;
    for (std::size_t j = 0; j < q.size(); ++j) {
      const auto a = layout.DecodeJoint(team, static_cast<std::int64_t>(j));
      double w = 1.0;
      for (int i = 0; i < n && w != 0.0; ++i) {
        w *= fixed[i] ? (a[i] == actions[i] ? 1.0 : 0.0) : dists[i][a[i]];
      }
      total += w * q[j];
    }
    return total;
  };
  std::vector<double> terms(n);
  double previous = conditional();
  for (int m = 0; m < n; ++m) {
    fixed[order[m]] = 1;
    const double current = conditional();
    terms[m] = current - previous;
    previous = current;
  }
  return terms;
}

void CheckOrder(std::span<const int> order, int n) {
  std::vector<int> sorted(order.begin(), order.end());
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(sorted.size()) != n || sorted[i] != i) {
      throw DimensionError("member order must be a permutation of the team");
    }
  }
}

std::string MemberSummary(const IndividualPolicy& policy) {
  if (policy.num_observations() != 1) {
    return std::string(policy.is_pure() ? "pure" : "mixed") + "(" +
           std::to_string(policy.num_observations()) + " obs)";
  }
  if (const auto a = policy.pure_action(0)) return "action " + std::to_string(*a);
  std::string out = "mixed[";
  const auto probs = policy.distribution(0);
  for (std::size_t a = 0; a < probs.size(); ++a) {
    if (a > 0) out += ',';
    out += std::to_string(probs[a]);
  }
  return out + "]";
}

// Most probable initial state; lowest index on ties.
int ModalInitialState(const Game& game) {
  if (game.is_normal_form()) return 0;
  int best = -1;
  double mass = -1.0;
  for (const Outcome& o : game.stochastic().initial_distribution()) {
    if (o.probability > mass || (o.probability == mass && o.state < best)) {
      best = o.state;
      mass = o.probability;
    }
  }
  return best;
}

std::vector<TeamPolicy> SebrStarts(const Game& game, Team team,
                                   const TeamPolicy& incumbent,
                                   const SebrConfig& config) {
  const TeamLayout& layout = game.layout();
  const auto obs = game.ObservationCounts(team);
  const int n = layout.team_size(team);
  std::vector<TeamPolicy> starts{incumbent};
  double count = 1.0;
  for (int m = 0; m < n; ++m) {
    count *= std::pow(static_cast<double>(layout.action_count(team, m)), obs[m]);
  }
  std::vector<std::vector<int>> actions(n);
  for (int m = 0; m < n; ++m) actions[m].assign(obs[m], 0);
  auto make = [&] {
    std::vector<IndividualPolicy> members;
    for (int m = 0; m < n; ++m) {
      members.push_back(IndividualPolicy::Deterministic(
          layout.action_count(team, m), actions[m]));
    }
    return TeamPolicy::Product(std::move(members));
  };
  if (count <= config.restarts) {
    // Every pure product policy, lexicographic with member 0 most significant.
    while (true) {
      starts.push_back(make());
      int m = n - 1;
      int o = obs[m] - 1;
      while (m >= 0) {
        if (++actions[m][o] < layout.action_count(team, m)) break;
        actions[m][o] = 0;
        if (--o < 0) {
          if (--m >= 0) o = obs[m] - 1;
        }
      }
      if (m < 0) break;
    }
    return starts;
  }
  for (int r = 0; r < config.restarts; ++r) {
    Rng rng(SubSeed(config.seed, "sebr-start", static_cast<std::uint64_t>(r)));
    for (int m = 0; m < n; ++m) {
      for (int& a : actions[m]) {
        a = static_cast<int>(rng.Below(layout.action_count(team, m)));
      }
    }
    starts.push_back(make());
  }
  return starts;
}

}  // namespace

BestResponse BestResponseJoint(const Game& game, Team team,
                               const PolicyMixture& opponent,
                               const OracleOptions& options) {
  opponent.Validate();
  CheckEnumerable(game, team, options);
  const TeamLayout& layout = game.layout();
  if (game.is_normal_form()) {
    const auto q = TeamActionValues(game, team, opponent);
    const int j = FirstArgmax(q);
    Distribution row(q.size(), 0.0);
    row[j] = 1.0;
    return {TeamPolicy::JointMix(layout.team_size(team), std::move(row)), q[j],
            true};
  }
  const StochasticTeamGame& sg = game.stochastic();
  CheckExactStochastic(sg);
  auto problem = MakeProblem(game, team, opponent, options);
  problem.agent = internal::AgentKind::kTeam;
  const auto result =
      internal::SolveResponse(problem, [](std::uint64_t) { return 0; });
  JointMixPolicy mix;
  mix.observation_counts = game.ObservationCounts(team);
  mix.num_joint_actions = layout.num_joint_actions(team);
  for (int s = 0; s < sg.num_states(); ++s) {
    const auto key = internal::AgentKey(problem, s);
    if (mix.rows.count(key)) continue;
    Distribution row(static_cast<std::size_t>(mix.num_joint_actions), 0.0);
    const auto it = result.actions.find(key);
    row[it == result.actions.end() ? 0 : it->second] = 1.0;
    mix.rows.emplace(key, std::move(row));
  }
  return {TeamPolicy::JointMix(std::move(mix)), result.value, result.exact};
}

MemberResponse BestResponseMember(const Game& game, Team team,
                                  const TeamPolicy& current, int member,
                                  const PolicyMixture& opponent,
                                  const OracleOptions& options) {
  opponent.Validate();
  const TeamPolicy product = AsProduct(game, team, current);
  const TeamLayout& layout = game.layout();
  if (member < 0 || member >= layout.team_size(team)) {
    throw DimensionError("member index out of range");
  }
  const IndividualPolicy& mine = product.member(member);
  const int num_actions = layout.action_count(team, member);
  if (game.is_normal_form()) {
    CheckEnumerable(game, team, options);
    const auto q = TeamActionValues(game, team, opponent);
    std::vector<double> values(num_actions, 0.0);
    for (std::size_t j = 0; j < q.size(); ++j) {
      const auto a = layout.DecodeJoint(team, static_cast<std::int64_t>(j));
      double w = 1.0;
      for (int i = 0; i < layout.team_size(team) && w != 0.0; ++i) {
        if (i != member) w *= product.member(i).distribution(0)[a[i]];
      }
      values[a[member]] += w * q[j];
    }
    int choice = FirstArgmax(values);
    const double best = values[choice];
    if (const auto keep = mine.pure_action(0);
        keep && values[*keep] >= best - kTol) {
      choice = *keep;
    }
    return {IndividualPolicy::Deterministic(1, num_actions, choice),
            values[choice], true};
  }
  const StochasticTeamGame& sg = game.stochastic();
  CheckExactStochastic(sg);
  auto problem = MakeProblem(game, team, opponent, options);
  problem.agent = internal::AgentKind::kMember;
  problem.member = member;
  problem.teammates = &product;
  auto preferred = [&](std::uint64_t key) {
    return ModalAction(mine.distribution(static_cast<int>(key)));
  };
  const auto result = internal::SolveResponse(problem, preferred);
  std::vector<int> actions(mine.num_observations());
  for (int o = 0; o < mine.num_observations(); ++o) {
    const auto it = result.actions.find(static_cast<std::uint64_t>(o));
    actions[o] = it == result.actions.end() ? preferred(o) : it->second;
  }
  MemberResponse out{IndividualPolicy::Deterministic(num_actions, actions),
                     result.value, result.exact};
  if (!result.exact) {
    // Local search starts from the modal actions; never return something
    // worse than the (possibly mixed) current policy.
    const double now = TeamValue(game, team, product, opponent, options);
    if (now > out.value) out = {mine, now, false};
  }
  return out;
}

IndividualResponse BestResponseIndividual(const Game& game, Team team,
                                          const PolicyMixture& opponent,
                                          const TeamPolicy& start, int sweeps,
                                          const OracleOptions& options) {
  if (sweeps < 0) throw DimensionError("sweep count must be nonnegative");
  IndividualResponse out{AsProduct(game, team, start), 0.0, 0, false, {}};
  out.value = TeamValue(game, team, out.policy, opponent, options);
  const int n = game.layout().team_size(team);
  for (int sweep = 1; sweep <= sweeps; ++sweep) {
    out.sweeps = sweep;
    bool changed = false;
    for (int m = 0; m < n; ++m) {
      const auto resp =
          BestResponseMember(game, team, out.policy, m, opponent, options);
      MemberUpdate update;
      update.sweep = sweep;
      update.member = m;
      update.before = out.value;
      update.changed = !(resp.policy == out.policy.member(m));
      if (update.changed) {
        out.policy = out.policy.ReplaceMember(game.layout(), team, m,
                                              resp.policy);
        out.value = TeamValue(game, team, out.policy, opponent, options);
      }
      update.after = out.value;
      out.trace.push_back(update);
      changed |= update.changed;
    }
    if (!changed) {
      out.converged = true;
      break;
    }
  }
  return out;
}

BestResponse BestResponseShared(const Game& game, Team team,
                                const PolicyMixture& opponent,
                                const OracleOptions& options) {
  opponent.Validate();
  CheckHomogeneous(game, team);
  const TeamLayout& layout = game.layout();
  const int n = layout.team_size(team);
  const int num_actions = layout.action_count(team, 0);
  if (game.is_normal_form()) {
    CheckEnumerable(game, team, options);
    const auto q = TeamActionValues(game, team, opponent);
    std::vector<double> pure(num_actions);
    for (int a = 0; a < num_actions; ++a) {
      pure[a] = q[layout.EncodeJoint(team, JointAction(n, a))];
    }
    const int a = FirstArgmax(pure);
    BestResponse out{
        TeamPolicy::Shared(IndividualPolicy::Deterministic(1, num_actions, a), n),
        pure[a], true};
    if (n > 1 && num_actions > 1) {
      const auto [x, v] = MaximizeSimplex(
          [&](const Distribution& d) { return SharedValue(layout, team, q, d); },
          num_actions, options.shared_grid_points);
      if (v > out.value + kTol) {
        out.policy = TeamPolicy::Shared(
            IndividualPolicy::Stationary(1, CleanDistribution(x)), n);
        out.value = v;
      }
    }
    return out;
  }
  const StochasticTeamGame& sg = game.stochastic();
  CheckExactStochastic(sg);
  const int num_obs = game.ObservationCounts(team)[0];
  auto shared = [&](std::span<const int> actions) {
    return TeamPolicy::Shared(
        IndividualPolicy::Deterministic(num_actions, actions), n);
  };
  if (internal::SharedObservations(sg, team)) {
    auto problem = MakeProblem(game, team, opponent, options);
    problem.agent = internal::AgentKind::kShared;
    const auto result =
        internal::SolveResponse(problem, [](std::uint64_t) { return 0; });
    std::vector<int> actions(num_obs, 0);
    for (const auto& [key, a] : result.actions) actions[key] = a;
    return {shared(actions), result.value, result.exact};
  }
  // Members observe different symbols: search over shared observation maps.
  double count = std::pow(static_cast<double>(num_actions), num_obs);
  std::vector<int> actions(num_obs, 0);
  BestResponse out{shared(actions), 0.0, true};
  out.value = TeamValue(game, team, out.policy, opponent, options);
  if (count <= 4096 && count <= static_cast<double>(options.enumeration_bound)) {
    while (true) {
      int o = num_obs - 1;
      while (o >= 0 && ++actions[o] == num_actions) actions[o--] = 0;
      if (o < 0) break;
      const auto candidate = shared(actions);
      const double v = TeamValue(game, team, candidate, opponent, options);
      if (v > out.value + kTol) out = {candidate, v, true};
    }
    return out;
  }
  out.exact = false;
  for (int pass = 0; pass < 100; ++pass) {
    bool changed = false;
    for (int o = 0; o < num_obs; ++o) {
      const int keep = actions[o];
      for (int a = 0; a < num_actions; ++a) {
        if (a == keep) continue;
        actions[o] = a;
        const auto candidate = shared(actions);
        const double v = TeamValue(game, team, candidate, opponent, options);
        if (v > out.value + kTol) {
          out = {candidate, v, false};
          changed = true;
        }
      }
      actions[o] = out.policy.shared().policy.pure_action(o).value();
    }
    if (!changed) break;
  }
  return out;
}

SharedMaxmin SolveSharedMaxmin(const Game& game, Team team, int grid_points) {
  CheckHomogeneous(game, team);
  const NormalFormTeamGame& nf = game.normal_form();
  const TeamLayout& layout = game.layout();
  const std::int64_t own = nf.num_joint_actions(team);
  const std::int64_t other = nf.num_joint_actions(Other(team));
  // Column k holds the team's payoff against opponent joint action k.
  std::vector<std::vector<double>> columns(other, std::vector<double>(own));
  for (std::int64_t j = 0; j < own; ++j) {
    for (std::int64_t k = 0; k < other; ++k) {
      columns[k][j] = nf.team_payoff(team, j, k);
    }
  }
  auto worst = [&](const Distribution& x) {
    double v = 1e300;
    for (const auto& col : columns) v = std::min(v, SharedValue(layout, team, col, x));
    return v;
  };
  auto [x, v] = MaximizeSimplex(worst, layout.action_count(team, 0), grid_points);
  return {CleanDistribution(x), v};
}

std::vector<double> TeamQValues(const Game& game, Team team,
                                const TeamPolicy& policy,
                                const PolicyMixture& opponent, int state,
                                const OracleOptions& options) {
  opponent.Validate();
  if (game.is_normal_form()) return TeamActionValues(game, team, opponent);
  const StochasticTeamGame& sg = game.stochastic();
  CheckExactStochastic(sg);
  CheckEnumerable(game, team, options);
  if (state < 0 || state >= sg.num_states()) {
    throw DimensionError("state out of range");
  }
  const TeamLayout& layout = game.layout();
  const Team other = Other(team);
  const int horizon = EffectiveHorizon(game, options.eval);
  const std::int64_t joint = layout.num_joint_actions(team);
  std::vector<double> q(static_cast<std::size_t>(joint), 0.0);
  if (sg.terminal(state)) return q;
  const double sign = Sign(team);
  for (std::size_t k = 0; k < opponent.policies.size(); ++k) {
    const double w = opponent.weights[k];
    if (w == 0.0) continue;
    const TeamPolicy& opp = opponent.policies[k];
    const auto support =
        opp.Support(layout, other, sg.TeamObservations(state, other));
    for (std::int64_t j = 0; j < joint; ++j) {
      const auto own = layout.DecodeJoint(team, j);
      double reward = 0.0;
      std::vector<Outcome> next;
      for (const auto& [jo, p] : support) {
        const auto theirs = layout.DecodeJoint(other, jo);
        std::vector<int> actions;
        const auto& first = team == Team::kFirst ? own : theirs;
        const auto& second = team == Team::kFirst ? theirs : own;
        actions.insert(actions.end(), first.begin(), first.end());
        actions.insert(actions.end(), second.begin(), second.end());
        const StepResult step = sg.Step(state, actions);
        reward += p * step.reward;
        for (const Outcome& o : step.outcomes) {
          next.push_back({o.state, p * o.probability});
        }
      }
      double future = 0.0;
      if (horizon > 1) {
        future = team == Team::kFirst
                     ? ExactStochasticValue(sg, policy, opp, next, horizon - 1,
                                            options.eval.exact_step_bound)
                     : ExactStochasticValue(sg, opp, policy, next, horizon - 1,
                                            options.eval.exact_step_bound);
      }
      q[j] += w * sign * (reward + sg.discount() * future);
    }
  }
  return q;
}

std::vector<double> AdvantageDecompose(const Game& game, Team team,
                                       const TeamPolicy& policy,
                                       const PolicyMixture& opponent,
                                       int state, std::span<const int> actions,
                                       std::span<const int> order,
                                       const OracleOptions& options) {
  const TeamPolicy product = AsProduct(game, team, policy);
  const TeamLayout& layout = game.layout();
  const int n = layout.team_size(team);
  CheckOrder(order, n);
  if (static_cast<int>(actions.size()) != n) {
    throw DimensionError("joint action has the wrong arity");
  }
  for (int m = 0; m < n; ++m) {
    if (actions[m] < 0 || actions[m] >= layout.action_count(team, m)) {
      throw DimensionError("action out of range");
    }
  }
  const auto q = TeamQValues(game, team, product, opponent, state, options);
  const std::vector<int> obs = game.is_normal_form()
                                   ? std::vector<int>(n, 0)
                                   : game.stochastic().TeamObservations(state, team);
  std::vector<std::span<const double>> dists;
  for (int m = 0; m < n; ++m) dists.push_back(product.member(m).distribution(obs[m]));
  return DecomposeQ(layout, team, q, dists, actions, order);
}

SebrResult Sebr(const Game& game, Team team, const PolicyMixture& opponent,
                const SebrConfig& config, CommChannel& channel,
                const std::optional<TeamPolicy>& start) {
  opponent.Validate();
  const TeamLayout& layout = game.layout();
  const int n = layout.team_size(team);
  std::vector<int> order = config.order;
  if (order.empty()) {
    for (int m = 0; m < n; ++m) order.push_back(m);
  }
  CheckOrder(order, n);
  if (config.max_iter < 0 || config.restarts < 0) {
    throw DimensionError("SeBR iteration and restart counts must be >= 0");
  }
  const OracleOptions& options = config.oracle;
  const TeamPolicy incumbent =
      start ? AsProduct(game, team, *start)
            : TeamPolicy::AllPure(layout, team, game.ObservationCounts(team));
  const auto starts = SebrStarts(game, team, incumbent, config);
  const int s0 = ModalInitialState(game);
  const std::vector<int> obs0 =
      game.is_normal_form() ? std::vector<int>(n, 0)
                            : game.stochastic().TeamObservations(s0, team);

  SebrResult best{incumbent, 0.0, -1, 0, false, true, {}};
  for (std::size_t r = 0; r < starts.size(); ++r) {
    TeamPolicy policy = starts[r];
    double value = TeamValue(game, team, policy, opponent, options);
    CommChannel local;
    int sweeps = 0;
    bool converged = false;
    for (int sweep = 1; sweep <= config.max_iter; ++sweep) {
      sweeps = sweep;
      local.Clear(order);
      // Advantages are read off the sweep-start policy's Q at the modal
      // initial state, as in the sequential search tree.
      const TeamPolicy sweep_start = policy;
      const double team_reward = value;
      const auto q =
          TeamQValues(game, team, sweep_start, opponent, s0, options);
      std::vector<std::span<const double>> dists;
      for (int m = 0; m < n; ++m) {
        dists.push_back(sweep_start.member(m).distribution(obs0[m]));
      }
      bool changed = false;
      for (int pos = 0; pos < n; ++pos) {
        const int m = order[pos];
        const auto resp =
            BestResponseMember(game, team, policy, m, opponent, options);
        best.exact &= resp.exact;
        MemberUpdate update;
        update.restart = static_cast<int>(r);
        update.sweep = sweep;
        update.member = m;
        update.before = value;
        update.changed = !(resp.policy == policy.member(m));
        if (update.changed) {
          policy = policy.ReplaceMember(layout, team, m, resp.policy);
          value = TeamValue(game, team, policy, opponent, options);
        }
        update.after = value;
        best.trace.push_back(update);
        changed |= update.changed;

        JointAction modal(n);
        for (int i = 0; i < n; ++i) {
          modal[i] = ModalAction(policy.member(i).distribution(obs0[i]));
        }
        auto terms = DecomposeQ(layout, team, q, dists, modal, order);
        terms.resize(pos + 1);
        local.Record({m, MemberSummary(policy.member(m)), std::move(terms),
                      team_reward});
      }
      if (!changed) {
        converged = true;
        break;
      }
    }
    if (best.restart < 0 || value > best.value + kTol) {
      best.policy = policy;
      best.value = value;
      best.restart = static_cast<int>(r);
      best.sweeps = sweeps;
      best.converged = converged;
      channel = local;
    }
  }
  return best;
}

void CommChannel::Clear(std::span<const int> order) {
  order_.assign(order.begin(), order.end());
  entries_.clear();
}

void CommChannel::Record(Entry entry) {
  const std::size_t next = entries_.size();
  if (next >= order_.size() || order_[next] != entry.member) {
    throw Error("channel entries must follow the update order");
  }
  entries_.push_back(std::move(entry));
}

}  // namespace teamcorr
