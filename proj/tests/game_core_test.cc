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

#include <cmath>
#include <map>
#include <memory>
#include <vector>

#include <gtest/gtest.h>

#include "reference.h"
#include "teamcorr/evaluation.h"
#include "teamcorr/game.h"
#include "teamcorr/games.h"
#include "teamcorr/layout.h"
#include "teamcorr/policy.h"
#include "teamcorr/rng.h"

namespace teamcorr {
namespace {

TeamPolicy Pure(const Game& g, Team t, std::vector<int> a) {
  return TeamPolicy::PureJoint(g.layout(), t, a);
}

TeamPolicy RandomProduct(const Game& g, Team t, Rng& rng) {
  std::vector<IndividualPolicy> members;
  const auto obs = g.ObservationCounts(t);
  for (int m = 0; m < g.layout().team_size(t); ++m) {
    const int na = g.layout().action_count(t, m);
    std::vector<double> table;
    for (int o = 0; o < obs[m]; ++o) {
      std::vector<double> row(na);
      double s = 0;
      for (auto& x : row) s += (x = rng.Uniform() + 1e-3);
      for (auto& x : row) table.push_back(x / s);
    }
    members.emplace_back(obs[m], na, table);
  }
  return TeamPolicy::Product(std::move(members));
}

TeamPolicy RandomJointMix(const Game& g, Team t, Rng& rng) {
  const auto n = g.layout().num_joint_actions(t);
  Distribution d(n);
  double s = 0;
  for (auto& x : d) s += (x = rng.Uniform());
  for (auto& x : d) x /= s;
  return TeamPolicy::JointMix(g.layout().team_size(t), d);
}

TEST(LayoutTest, EncodingIsLexicographic) {
  TeamLayout layout({2, 1}, {2, 3, 4});
  EXPECT_EQ(layout.num_joint_actions(Team::kFirst), 6);
  EXPECT_EQ(layout.num_joint_actions(Team::kSecond), 4);
  std::vector<int> a{1, 2};
  EXPECT_EQ(layout.EncodeJoint(Team::kFirst, a), 5);
  EXPECT_EQ(layout.DecodeJoint(Team::kFirst, 3), (JointAction{1, 0}));
  EXPECT_FALSE(layout.homogeneous(Team::kFirst));
  EXPECT_THROW(TeamLayout({0, 1}, {2}), DimensionError);
  std::vector<int> bad{2, 0};
  EXPECT_THROW(layout.EncodeJoint(Team::kFirst, bad), DimensionError);
}

TEST(RngTest, SubstreamsAreDeterministicAndDistinct) {
  EXPECT_EQ(SubSeed(7, "mc"), SubSeed(7, "mc"));
  EXPECT_NE(SubSeed(7, "mc"), SubSeed(7, "oracle"));
  EXPECT_NE(SubSeed(7, "mc", 0), SubSeed(7, "mc", 1));
  Rng a(3), b(3);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(a.Next(), b.Next());
  Rng r(11);
  auto s = SampleWithoutReplacement(10, 4, r);
  ASSERT_EQ(s.size(), 4u);
  for (std::size_t i = 1; i < s.size(); ++i) EXPECT_LT(s[i - 1], s[i]);
  EXPECT_EQ(SampleWithoutReplacement(5, 5, r).size(), 5u);
}

TEST(PolicyTest, ValidatesDistributions) {
  EXPECT_THROW(IndividualPolicy(1, 2, {0.5, 0.6}), Error);
  EXPECT_THROW(IndividualPolicy(1, 2, {1.5, -0.5}), Error);
  EXPECT_THROW(IndividualPolicy(2, 2, {1, 0}), DimensionError);
  IndividualPolicy p(1, 2, {0.25, 0.75});
  EXPECT_THROW(p.distribution(1), DimensionError);
  EXPECT_FALSE(p.is_pure());
  EXPECT_THROW(TeamPolicy::JointMix(2, {0.5, 0.5, 0.1}), Error);
}

TEST(EvaluationTest, ExampleOneCells) {
  Game g(Example1());
  auto v = [&](std::vector<int> a, std::vector<int> b) {
    return ExpectedTeamReward(g, Pure(g, Team::kFirst, a), Pure(g, Team::kSecond, b))
        .mean;
  };
  EXPECT_DOUBLE_EQ(v({0, 0}, {0, 0}), 1.0);
  EXPECT_DOUBLE_EQ(v({1, 1}, {0, 0}), 2.0);
  EXPECT_DOUBLE_EQ(v({1, 0}, {0, 1}), 0.0);
}

TEST(EvaluationTest, ProductToJointExamples) {
  Game g(Example1());
  auto pure = ProductToJoint(g, Team::kFirst, Pure(g, Team::kFirst, {0, 0}));
  EXPECT_EQ(pure.joint_mix().rows.at(0), (Distribution{1, 0, 0, 0}));
  auto uni = ProductToJoint(
      g, Team::kFirst,
      TeamPolicy::Product({IndividualPolicy::Uniform(1, 2),
                           IndividualPolicy::Uniform(1, 2)}));
  for (double w : uni.joint_mix().rows.at(0)) EXPECT_DOUBLE_EQ(w, 0.25);
  auto mixed = ProductToJoint(
      g, Team::kFirst,
      TeamPolicy::Product({IndividualPolicy(1, 2, {0.5, 0.5}),
                           IndividualPolicy(1, 2, {1, 0})}));
  EXPECT_EQ(mixed.joint_mix().rows.at(0), (Distribution{0.5, 0, 0.5, 0}));
  EXPECT_THROW(ProductToJoint(g, Team::kFirst, pure), Error);
}

TEST(EvaluationTest, SampleJointAction) {
  Game g(Example1());
  std::vector<int> obs{0, 0};
  Rng rng(5);
  auto det = Pure(g, Team::kFirst, {1, 0});
  for (int i = 0; i < 5; ++i) {
    EXPECT_EQ(SampleJointAction(g, Team::kFirst, det, obs, rng), (JointAction{1, 0}));
  }
  auto mix = TeamPolicy::JointMix(2, {0, 0, 0, 1});
  EXPECT_EQ(SampleJointAction(g, Team::kFirst, mix, obs, rng), (JointAction{1, 1}));
  auto shared = TeamPolicy::Shared(IndividualPolicy::Uniform(1, 2), 2);
  std::map<JointAction, int> counts;
  const int n = 100000;
  for (int i = 0; i < n; ++i) ++counts[SampleJointAction(g, Team::kFirst, shared, obs, rng)];
  ASSERT_EQ(counts.size(), 4u);
  for (const auto& [a, c] : counts) EXPECT_NEAR(c / double(n), 0.25, 0.01);
  std::vector<int> bad{0, 3};
  EXPECT_THROW(SampleJointAction(g, Team::kFirst, det, bad, rng), DimensionError);
}

TEST(EvaluationTest, DimensionMismatchThrows) {
  Game g(Example1());
  Game sad(Sad({2, 1, 1.0}));
  EXPECT_THROW(ExpectedTeamReward(g, Pure(sad, Team::kFirst, {3, 3}),
                                  Pure(g, Team::kSecond, {0, 0})),
               DimensionError);
  auto one = TeamPolicy::Product({IndividualPolicy::Uniform(1, 2)});
  EXPECT_THROW(ExpectedTeamReward(g, one, Pure(g, Team::kSecond, {0, 0})),
               DimensionError);
}

// Bilinearity, zero-sum and product-to-joint equivalence on random games.
TEST(EvaluationProperty, MultilinearAndZeroSum) {
  Rng rng(2024);
  for (int trial = 0; trial < 50; ++trial) {
    Game g(RandomTeamGame({2, 2}, {2, 3, 2, 2}, -1, 1, 100 + trial));
    auto a = RandomJointMix(g, Team::kFirst, rng);
    auto b = RandomJointMix(g, Team::kFirst, rng);
    auto q = RandomProduct(g, Team::kSecond, rng);
    const double w = rng.Uniform();
    Distribution mixed(a.joint_mix().rows.at(0).size());
    for (std::size_t i = 0; i < mixed.size(); ++i) {
      mixed[i] = w * a.joint_mix().rows.at(0)[i] + (1 - w) * b.joint_mix().rows.at(0)[i];
    }
    const double lhs =
        ExpectedTeamReward(g, TeamPolicy::JointMix(2, mixed), q).mean;
    const double rhs = w * ExpectedTeamReward(g, a, q).mean +
                       (1 - w) * ExpectedTeamReward(g, b, q).mean;
    EXPECT_NEAR(lhs, rhs, 1e-9);

    auto prod = RandomProduct(g, Team::kFirst, rng);
    const double e1 = ExpectedTeamReward(g, prod, q).mean;
    EXPECT_NEAR(e1, ExpectedTeamReward(g, ProductToJoint(g, Team::kFirst, prod), q).mean,
                1e-9);
    EXPECT_NEAR(e1, ref::NormalFormValue(g, prod, q), 1e-12);
    // Team 2's view is the exact negation.
    const double e2 = ExpectedTeamReward(g, Team::kSecond, q, PolicyMixture::Single(prod)).mean;
    EXPECT_EQ(e1 + e2, 0.0);
  }
}

TEST(EvaluationProperty, StochasticExactMatchesBackwardInduction) {
  Rng rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    RandomStochasticConfig cfg;
    cfg.num_states = 4;
    cfg.horizon = 4;
    auto sg = RandomStochasticGame(cfg, 500 + trial);
    Game g(sg);
    auto p1 = RandomProduct(g, Team::kFirst, rng);
    auto p2 = RandomProduct(g, Team::kSecond, rng);
    ref::BackwardInduction bi(*sg, g, p1, p2);
    EXPECT_NEAR(ExpectedTeamReward(g, p1, p2).mean, bi.Initial(cfg.horizon), 1e-12);
  }
}

TEST(EvaluationProperty, HorizonTruncationBound) {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    RandomStochasticConfig cfg;
    cfg.horizon = 3;
    cfg.discount = 0.8;
    auto sg = RandomStochasticGame(cfg, 900 + trial);
    Game g(sg);
    auto p1 = RandomProduct(g, Team::kFirst, rng);
    auto p2 = RandomProduct(g, Team::kSecond, rng);
    EvalConfig shorter, longer;
    shorter.horizon = 3;
    longer.horizon = 12;
    const double bound = sg->reward_bound() * std::pow(0.8, 3) / (1 - 0.8);
    EXPECT_LE(std::abs(ExpectedTeamReward(g, p1, p2, shorter).mean -
                       ExpectedTeamReward(g, p1, p2, longer).mean),
              bound + 1e-12);
  }
}

TEST(EvaluationTest, MonteCarloNeedsSeedAndTracksExact) {
  RandomStochasticConfig cfg;
  auto sg = RandomStochasticGame(cfg, 3);
  Game g(sg);
  Rng rng(1);
  auto p1 = RandomProduct(g, Team::kFirst, rng);
  auto p2 = RandomProduct(g, Team::kSecond, rng);
  EvalConfig no_seed;
  no_seed.mode = EvalMode::kMonteCarlo;
  no_seed.samples = 10;
  EXPECT_THROW(ExpectedTeamReward(g, p1, p2, no_seed), Error);
  const auto exact = ExpectedTeamReward(g, p1, p2);
  const auto mc = ExpectedTeamReward(g, p1, p2, EvalConfig::MonteCarlo(20000, 42));
  EXPECT_EQ(mc.samples, 20000);
  EXPECT_GT(mc.std_error, 0.0);
  EXPECT_NEAR(mc.mean, exact.mean, 5 * mc.std_error);
  const auto again = ExpectedTeamReward(g, p1, p2, EvalConfig::MonteCarlo(20000, 42));
  EXPECT_EQ(mc.mean, again.mean);
}

TEST(StochasticGameTest, RejectsBadTables) {
  TeamLayout layout({1, 1}, {2, 2});
  TabularStochasticGame::Tables t;
  t.num_states = 1;
  t.num_observations = {1, 1};
  t.observations = {{0, 0}};
  t.initial = {{0, 1.0}};
  t.transitions.assign(4, {{0, 1.0}});
  t.rewards.assign(4, 0.5);
  EXPECT_NO_THROW(TabularStochasticGame(layout, t, 0.9, 1.0, 2));
  EXPECT_THROW(TabularStochasticGame(layout, t, 1.0, 1.0, 2), Error);
  auto bad_reward = t;
  bad_reward.rewards[0] = 2.0;
  EXPECT_THROW(TabularStochasticGame(layout, bad_reward, 0.9, 1.0, 2), Error);
  auto bad_row = t;
  bad_row.transitions[1] = {{0, 0.7}};
  EXPECT_THROW(TabularStochasticGame(layout, bad_row, 0.9, 1.0, 2), Error);
}

TEST(StochasticGameTest, ExactBoundRefuses) {
  RandomStochasticConfig cfg;
  auto sg = RandomStochasticGame(cfg, 4);
  Game g(sg);
  auto p1 = TeamPolicy::AllPure(g.layout(), Team::kFirst, g.ObservationCounts(Team::kFirst));
  auto p2 = TeamPolicy::Product({IndividualPolicy::Uniform(2, 2),
                                 IndividualPolicy::Uniform(2, 2)});
  EvalConfig tight;
  tight.exact_step_bound = 1;
  EXPECT_THROW(ExpectedTeamReward(g, p1, p2, tight), BoundError);
}

}  // namespace
}  // namespace teamcorr
