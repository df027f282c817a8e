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

#include <memory>
#include <vector>

#include <gtest/gtest.h>

#include "reference.h"
#include "teamcorr/evaluation.h"
#include "teamcorr/games.h"
#include "teamcorr/grid_skirmish.h"
#include "teamcorr/matrix_game.h"
#include "teamcorr/oracles.h"
#include "teamcorr/rng.h"

namespace teamcorr {
namespace {

TEST(Example1Test, Cells) {
  const auto g = Example1();
  std::vector<int> z{0, 0}, o{1, 1};
  EXPECT_EQ(g.payoff(z, z), 1.0);
  EXPECT_EQ(g.payoff(o, z), 2.0);
  EXPECT_EQ(g.payoff(o, o), 1.0);
  // Otherwise 1 + nu2 - nu1 with nu = 2 a1 + a2.
  for (const auto& a : ref::JointActions({2, 2})) {
    for (const auto& b : ref::JointActions({2, 2})) {
      if (a == o && b == z) continue;
      EXPECT_EQ(g.payoff(a, b), 1 + (2 * b[0] + b[1]) - (2 * a[0] + a[1]));
    }
  }
}

TEST(Example1Test, MaxminValues) {
  const auto g = Example1();
  Matrix m(4, 4, g.TeamMatrix(Team::kFirst));
  EXPECT_NEAR(ref::SupportEnumeration(m).value, 1.25, 1e-12);
  double pure = -1e9;
  for (int r = 0; r < 4; ++r) {
    double worst = 1e9;
    for (int c = 0; c < 4; ++c) worst = std::min(worst, m(r, c));
    pure = std::max(pure, worst);
  }
  EXPECT_EQ(pure, 1.0);
}

TEST(AntiCoordinationTest, CellsAndValues) {
  const auto g = AntiCoordination();
  EXPECT_EQ(g.payoff(std::vector<int>{0, 1}, std::vector<int>{0, 0}), 1.0);
  EXPECT_EQ(g.payoff(std::vector<int>{0, 0}, std::vector<int>{0, 0}), 0.0);
  EXPECT_EQ(g.payoff(std::vector<int>{1, 0}, std::vector<int>{0, 1}), 0.0);
  // The game is symmetric, so its joint-action value is 0; what separates
  // the classes is the best reply: a correlated team always earns 1 minus
  // the opponent's statistic, a shared one at most 0.5 minus it.
  Matrix m(4, 4, g.TeamMatrix(Team::kFirst));
  EXPECT_NEAR(ref::SupportEnumeration(m).value, 0.0, 1e-12);
  Game handle(g);
  auto same = PolicyMixture::Single(
      TeamPolicy::PureJoint(handle.layout(), Team::kSecond, std::vector<int>{0, 0}));
  EXPECT_EQ(BestResponseJoint(handle, Team::kFirst, same).value, 1.0);
  EXPECT_NEAR(BestResponseShared(handle, Team::kFirst, same).value, 0.5, 1e-9);
  EXPECT_LE(SolveSharedMaxmin(handle, Team::kFirst).value, 0.5 + 1e-9);
}

TEST(SadTest, Examples) {
  const auto g = Sad({2, 3, 1.0});
  EXPECT_EQ(g.payoff(std::vector<int>{0, 0}, std::vector<int>{0, 0}), 0.0);
  const auto one = Sad({1, 2, 1.0});
  EXPECT_DOUBLE_EQ(one.payoff(std::vector<int>{3}, std::vector<int>{2}), 0.0);
  EXPECT_EQ(one.layout().action_count(Team::kFirst, 0), 5);
  EXPECT_THROW(Sad({3, 5, 1.0}, 100), BoundError);
  EXPECT_THROW(Sad({0, 2, 1.0}), Error);
}

TEST(SadProperty, Antisymmetric) {
  for (auto cfg : {SadConfig{1, 2, 1.0}, SadConfig{2, 3, 0.7}, SadConfig{3, 1, 2.0}}) {
    const auto g = Sad(cfg);
    const auto n = g.num_joint_actions(Team::kFirst);
    for (std::int64_t a = 0; a < n; ++a) {
      EXPECT_EQ(g.payoff(a, a), 0.0);
      for (std::int64_t b = 0; b < n; ++b) EXPECT_EQ(g.payoff(a, b), -g.payoff(b, a));
    }
  }
}

TEST(RandomTeamGameTest, ShapeAndDeterminism) {
  const auto a = RandomTeamGame({2, 2}, {2, 2, 2, 2}, -1, 1, 5);
  const auto b = RandomTeamGame({2, 2}, {2, 2, 2, 2}, -1, 1, 5);
  EXPECT_EQ(a.payoff_table(), b.payoff_table());
  EXPECT_EQ(a.payoff_table().size(), 16u);
  const auto zero = RandomTeamGame({2, 2}, {2, 2, 2, 2}, 0, 0, 3);
  for (double x : zero.payoff_table()) EXPECT_EQ(x, 0.0);
  EXPECT_THROW(RandomTeamGame({2, 2}, {4, 4, 4, 4}, 0, 1, 1, 100), BoundError);
}

TEST(GridSkirmishTest, StandApartIsZero) {
  SkirmishConfig cfg;
  cfg.width = 4;
  cfg.height = 1;
  cfg.team_size = 1;
  cfg.horizon = 5;
  cfg.start = {0, 3};
  Game g(std::make_shared<GridSkirmish>(cfg));
  auto stay1 = TeamPolicy::AllPure(g.layout(), Team::kFirst, g.ObservationCounts(Team::kFirst),
                                   GridSkirmish::kStay);
  auto stay2 = TeamPolicy::AllPure(g.layout(), Team::kSecond,
                                   g.ObservationCounts(Team::kSecond), GridSkirmish::kStay);
  EXPECT_EQ(ExpectedTeamReward(g, stay1, stay2).mean, 0.0);
}

TEST(GridSkirmishTest, AdjacentAttack) {
  SkirmishConfig cfg;
  cfg.width = 2;
  cfg.height = 1;
  cfg.team_size = 1;
  cfg.horizon = 1;
  cfg.discount = 0.5;
  cfg.start = {0, 1};
  auto sg = std::make_shared<GridSkirmish>(cfg);
  Game g(sg);
  auto atk = TeamPolicy::AllPure(g.layout(), Team::kFirst, g.ObservationCounts(Team::kFirst),
                                 GridSkirmish::kAttack);
  auto stay = TeamPolicy::AllPure(g.layout(), Team::kSecond,
                                  g.ObservationCounts(Team::kSecond), GridSkirmish::kStay);
  EXPECT_EQ(ExpectedTeamReward(g, atk, stay).mean, 1.0);
  const auto init = sg->initial_distribution();
  ASSERT_EQ(init.size(), 1u);
  std::vector<int> acts{GridSkirmish::kAttack, GridSkirmish::kAttack};
  EXPECT_EQ(sg->Step(init[0].state, acts).reward, 0.0);
}

TEST(GridSkirmishTest, MovesBlockedAndPriority) {
  SkirmishConfig cfg;
  cfg.width = 3;
  cfg.height = 1;
  cfg.team_size = 1;
  cfg.horizon = 2;
  cfg.start = {0, 2};
  auto sg = std::make_shared<GridSkirmish>(cfg);
  const int s0 = sg->initial_distribution()[0].state;
  // Both step right/left into cell 1: player 0 moves first, player 1 blocked.
  std::vector<int> acts{GridSkirmish::kRight, GridSkirmish::kLeft};
  const auto r = sg->Step(s0, acts);
  ASSERT_EQ(r.outcomes.size(), 1u);
  EXPECT_EQ(sg->Cells(r.outcomes[0].state), (std::vector<int>{1, 2}));
  EXPECT_EQ(sg->StepIndex(r.outcomes[0].state), 1);
  // Off-grid move is blocked.
  std::vector<int> up{GridSkirmish::kUp, GridSkirmish::kStay};
  EXPECT_EQ(sg->Cells(sg->Step(s0, up).outcomes[0].state), (std::vector<int>{0, 2}));
}

TEST(GridSkirmishTest, ConfigErrors) {
  SkirmishConfig cfg;
  cfg.width = 1;
  cfg.height = 1;
  EXPECT_THROW(GridSkirmish{cfg}, Error);
  SkirmishConfig big;
  big.width = 5;
  big.height = 5;
  big.team_size = 3;
  big.horizon = 2;
  EXPECT_THROW(GridSkirmish{big}, BoundError);
  big.allow_monte_carlo = true;
  GridSkirmish mc(big);
  EXPECT_FALSE(mc.exact_feasible());
  SkirmishConfig overlap;
  overlap.start = {0, 0, 1, 2};
  EXPECT_THROW(GridSkirmish{overlap}, Error);
}

TEST(GridSkirmishProperty, MirroredStartMirroredPoliciesValueZero) {
  SkirmishConfig cfg;
  cfg.horizon = 4;
  Game g(std::make_shared<GridSkirmish>(cfg));
  // Both teams always attack: symmetric under the mirror, so value 0.
  for (int a : {int(GridSkirmish::kAttack), int(GridSkirmish::kStay)}) {
    auto p1 = TeamPolicy::AllPure(g.layout(), Team::kFirst, g.ObservationCounts(Team::kFirst), a);
    auto p2 = TeamPolicy::AllPure(g.layout(), Team::kSecond, g.ObservationCounts(Team::kSecond), a);
    EXPECT_NEAR(ExpectedTeamReward(g, p1, p2).mean, 0.0, 1e-12);
  }
}

TEST(GridSkirmishProperty, DeterministicTrajectories) {
  SkirmishConfig cfg;
  cfg.horizon = 5;
  auto sg = std::make_shared<GridSkirmish>(cfg);
  Rng r1(3), r2(3);
  for (int ep = 0; ep < 20; ++ep) {
    int s1 = sg->initial_distribution()[0].state, s2 = s1;
    while (!sg->terminal(s1)) {
      std::vector<int> a(4), b(4);
      for (int i = 0; i < 4; ++i) {
        a[i] = static_cast<int>(r1.Below(GridSkirmish::kNumActions));
        b[i] = static_cast<int>(r2.Below(GridSkirmish::kNumActions));
      }
      const auto x = sg->Step(s1, a);
      const auto y = sg->Step(s2, b);
      ASSERT_EQ(x.outcomes.size(), 1u);
      EXPECT_EQ(x.outcomes[0].probability, 1.0);
      EXPECT_EQ(x.outcomes[0].state, y.outcomes[0].state);
      EXPECT_EQ(x.reward, y.reward);
      s1 = x.outcomes[0].state;
      s2 = y.outcomes[0].state;
    }
  }
}

TEST(GridSkirmishProperty, ExactMatchesBackwardInduction) {
  SkirmishConfig cfg;
  cfg.horizon = 3;
  auto sg = std::make_shared<GridSkirmish>(cfg);
  Game g(sg);
  auto p1 = TeamPolicy::Product({IndividualPolicy::Uniform(sg->num_states(), 6),
                                 IndividualPolicy::Deterministic(sg->num_states(), 6, 3)});
  auto p2 = TeamPolicy::AllPure(g.layout(), Team::kSecond, g.ObservationCounts(Team::kSecond),
                                GridSkirmish::kAttack);
  ref::BackwardInduction bi(*sg, g, p1, p2);
  EXPECT_NEAR(ExpectedTeamReward(g, p1, p2).mean, bi.Initial(3), 1e-12);
}

TEST(RandomStochasticGameTest, Deterministic) {
  RandomStochasticConfig cfg;
  auto a = RandomStochasticGame(cfg, 8);
  auto b = RandomStochasticGame(cfg, 8);
  EXPECT_EQ(a->tables().rewards, b->tables().rewards);
  EXPECT_EQ(a->tables().observations, b->tables().observations);
}

}  // namespace
}  // namespace teamcorr
