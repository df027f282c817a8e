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

#include "teamcorr/games.h"

#include <string>

#include "teamcorr/rng.h"

namespace teamcorr {
namespace {

void CheckCells(const TeamLayout& layout, std::int64_t bound) {
  const std::int64_t j1 = layout.num_joint_actions(Team::kFirst);
  const std::int64_t j2 = layout.num_joint_actions(Team::kSecond);
  if (j1 > bound / j2) {
    throw BoundError("payoff table would have " + std::to_string(j1) + " x " +
                     std::to_string(j2) + " cells, above the bound " +
                     std::to_string(bound));
  }
}

template <typename F>
NormalFormTeamGame Tabulate(std::array<int, 2> sizes, std::vector<int> actions,
                            std::int64_t bound, const F& reward) {
  const TeamLayout layout(sizes, actions);
  CheckCells(layout, bound);
  const std::int64_t j1 = layout.num_joint_actions(Team::kFirst);
  const std::int64_t j2 = layout.num_joint_actions(Team::kSecond);
  std::vector<double> payoff(static_cast<std::size_t>(j1 * j2));
  for (std::int64_t a = 0; a < j1; ++a) {
    const auto x = layout.DecodeJoint(Team::kFirst, a);
    for (std::int64_t b = 0; b < j2; ++b) {
      payoff[a * j2 + b] = reward(x, layout.DecodeJoint(Team::kSecond, b));
    }
  }
  return NormalFormTeamGame(sizes, std::move(actions), std::move(payoff));
}

}  // namespace

NormalFormTeamGame Example1() {
  return Tabulate({2, 2}, {2, 2, 2, 2}, kDefaultEnumerationBound,
                  [](const JointAction& a, const JointAction& b) {
                    if (a[0] == 1 && a[1] == 1 && b[0] == 0 && b[1] == 0) {
                      return 2.0;
                    }
                    const int nu1 = 2 * a[0] + a[1];
                    const int nu2 = 2 * b[0] + b[1];
                    return 1.0 + nu2 - nu1;
                  });
}

NormalFormTeamGame AntiCoordination() {
  return Tabulate({2, 2}, {2, 2, 2, 2}, kDefaultEnumerationBound,
                  [](const JointAction& a, const JointAction& b) {
                    return (a[0] != a[1] ? 1.0 : 0.0) -
                           (b[0] != b[1] ? 1.0 : 0.0);
                  });
}

NormalFormTeamGame Sad(const SadConfig& config, std::int64_t bound) {
  if (config.players < 1) throw DimensionError("SAD needs at least one player");
  if (config.seek_levels < 0) throw DimensionError("seek levels must be >= 0");
  if (!(config.attack_bonus > 0.0)) {
    throw DimensionError("attack bonus must be positive");
  }
  const int n = config.players;
  const int attack = SadAttack(config);
  const int defend = SadDefend(config);
  struct Stats {
    double seek = 0.0;
    double atk = 0.0;
    double def = 0.0;
  };
  auto stats = [&](const JointAction& a) {
    Stats s;
    int seek_total = 0;
    for (int x : a) {
      if (x == attack) {
        s.atk += 1.0 / n;
      } else if (x == defend) {
        s.def = 1.0;
      } else {
        seek_total += x;
      }
    }
    if (config.seek_levels > 0) {
      s.seek = static_cast<double>(seek_total) / (n * config.seek_levels);
    }
    return s;
  };
  return Tabulate({n, n}, std::vector<int>(2 * n, config.seek_levels + 3),
                  bound, [&](const JointAction& a, const JointAction& b) {
                    const Stats s1 = stats(a);
                    const Stats s2 = stats(b);
                    return (s1.seek - s2.seek) +
                           config.attack_bonus * (s1.atk * (1.0 - s2.def) -
                                                  s2.atk * (1.0 - s1.def));
                  });
}

NormalFormTeamGame RandomTeamGame(std::array<int, 2> team_sizes,
                                  std::vector<int> action_counts, double lo,
                                  double hi, std::uint64_t seed,
                                  std::int64_t bound) {
  if (!(lo <= hi)) throw DimensionError("payoff range must satisfy lo <= hi");
  Rng rng(seed);
  return Tabulate(team_sizes, std::move(action_counts), bound,
                  [&](const JointAction&, const JointAction&) {
                    return rng.Uniform(lo, hi);
                  });
}

std::shared_ptr<TabularStochasticGame> RandomStochasticGame(
    const RandomStochasticConfig& config, std::uint64_t seed) {
  if (config.num_states < 1 || config.observations_per_player < 1 ||
      config.successors < 1) {
    throw DimensionError("random stochastic game needs positive sizes");
  }
  const TeamLayout layout(config.team_sizes, config.action_counts);
  const int players = layout.num_players();
  const int states = config.num_states;
  Rng rng(seed);
  auto random_distribution = [&](int support) {
    std::vector<Outcome> out;
    const auto picked = SampleWithoutReplacement(
        static_cast<std::uint64_t>(states),
        static_cast<std::uint64_t>(std::min(support, states)), rng);
    double total = 0.0;
    for (std::uint64_t s : picked) {
      const double w = 0.1 + rng.Uniform();
      out.push_back({static_cast<int>(s), w});
      total += w;
    }
    for (Outcome& o : out) o.probability /= total;
    return out;
  };

  TabularStochasticGame::Tables t;
  t.num_states = states;
  t.num_observations.assign(players, config.observations_per_player);
  t.observations.resize(states);
  for (auto& row : t.observations) {
    for (int p = 0; p < players; ++p) {
      row.push_back(static_cast<int>(rng.Below(config.observations_per_player)));
    }
  }
  t.initial = random_distribution(states);
  const std::int64_t cells = static_cast<std::int64_t>(states) *
                             layout.num_joint_actions(Team::kFirst) *
                             layout.num_joint_actions(Team::kSecond);
  if (cells > kDefaultEnumerationBound) {
    throw BoundError("random stochastic game tables are too large");
  }
  for (std::int64_t c = 0; c < cells; ++c) {
    t.transitions.push_back(random_distribution(config.successors));
    t.rewards.push_back(
        rng.Uniform(-config.reward_bound, config.reward_bound));
  }
  return std::make_shared<TabularStochasticGame>(
      layout, std::move(t), config.discount, config.reward_bound,
      config.horizon);
}

}  // namespace teamcorr
