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

#ifndef TEAMCORR_GAMES_H_
#define TEAMCORR_GAMES_H_

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

#include "teamcorr/normal_form_game.h"
#include "teamcorr/stochastic_game.h"

namespace teamcorr {

// 2v2 game with two actions per player. With nu_j = 2 a_{j,1} + a_{j,2}
// computed on pure actions, R1 = 1 + nu_2 - nu_1, except that team 1 playing
// (1,1) against (0,0) earns 2. Extended multilinearly to mixed policies.
NormalFormTeamGame Example1();

// R1 = [team 1 members differ] - [team 2 members differ].
NormalFormTeamGame AntiCoordination();

// Seek-attack-defend. Each of the N players per team picks a seek level in
// {0..A}, attack (A+1) or defend (A+2). With seek(T) the sum of chosen seek
// levels divided by N*A, atk(T) the fraction of attackers and def(T) = 1 if
// anyone defends:
//   R1 = seek(T1) - seek(T2)
//        + B * (atk(T1) * (1 - def(T2)) - atk(T2) * (1 - def(T1))).
// The rule is antisymmetric, so swapping the teams' joint actions negates R1.
struct SadConfig {
  int players = 2;          // N
  int seek_levels = 3;      // A
  double attack_bonus = 1;  // B
};
NormalFormTeamGame Sad(const SadConfig& config,
                       std::int64_t bound = kDefaultEnumerationBound);

inline int SadAttack(const SadConfig& c) { return c.seek_levels + 1; }
inline int SadDefend(const SadConfig& c) { return c.seek_levels + 2; }

// I.i.d. uniform payoffs in [lo, hi], reproducible from the seed.
NormalFormTeamGame RandomTeamGame(std::array<int, 2> team_sizes,
                                  std::vector<int> action_counts, double lo,
                                  double hi, std::uint64_t seed,
                                  std::int64_t bound = kDefaultEnumerationBound);

struct RandomStochasticConfig {
  std::array<int, 2> team_sizes{2, 2};
  std::vector<int> action_counts{2, 2, 2, 2};
  int num_states = 3;
  int observations_per_player = 2;  // each state maps to one of these
  int successors = 2;               // outcomes per transition row
  int horizon = 3;
  double discount = 0.9;
  double reward_bound = 1.0;
};

// Random tabular Markov game for property tests.
std::shared_ptr<TabularStochasticGame> RandomStochasticGame(
    const RandomStochasticConfig& config, std::uint64_t seed);

}  // namespace teamcorr

#endif  // TEAMCORR_GAMES_H_
