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

#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "reference.h"
#include "teamcorr/deviation.h"
#include "teamcorr/evaluation.h"
#include "teamcorr/games.h"
#include "teamcorr/matrix_game.h"
#include "teamcorr/rng.h"

namespace teamcorr {
namespace {

TeamPolicy Pure(const Game& g, Team t, std::vector<int> a) {
  return TeamPolicy::PureJoint(g.layout(), t, a);
}

std::array<DeviationSpec, 2> Specs(const Game& g, const TeamPolicy& p1,
                                   const TeamPolicy& p2,
                                   const CorrelationClass& cls) {
  return {BuildDeviationSpec(g, Team::kFirst, p1, cls),
          BuildDeviationSpec(g, Team::kSecond, p2, cls)};
}

TEST(SampleBudgetTest, Arithmetic) {
  SampleFactor sf{100, 0, 10'000'000'000ULL};
  EXPECT_EQ(SampleBudget(sf, 90, 0), 10'000'000'000ULL + 9'000);
  sf.f_policy = 100;
  EXPECT_EQ(SampleBudget(sf, 90, 990) - SampleBudget(sf, 90, 0), 99'000u);
  EXPECT_EQ(SampleBudget(sf, 0, 0), sf.n_init);
  EXPECT_EQ(SampleBudget({0, 2, 5}, 0, 3), 11u);
  EXPECT_EQ(SampleBudget({0.5, 0, 0}, 3, 0), 1u);  // floor
  EXPECT_THROW(SampleFactor({-1, 0, 0}).Validate(), Error);
}

TEST(SampleBudgetProperty, ExactlyLinearInTeamGrowth) {
  Rng rng(8);
  for (int i = 0; i < 100; ++i) {
    SampleFactor sf{static_cast<double>(rng.Below(50)), rng.Uniform(0, 10),
                    rng.Below(1000)};
    const auto a = rng.Below(100), b = rng.Below(100), c = rng.Below(100);
    EXPECT_EQ(SampleBudget(sf, a + b, c) - SampleBudget(sf, a, c),
              b * static_cast<std::uint64_t>(sf.f_team));
  }
}

TEST(DeviationSpecTest, ExampleOneSizes) {
  Game g(Example1());
  auto cand = Pure(g, Team::kFirst, {0, 0});
  auto none = BuildDeviationSpec(g, Team::kFirst, cand, NoCorrelation{});
  EXPECT_EQ(none.individual.size(), 4u);
  EXPECT_TRUE(none.correlated.empty());
  EXPECT_EQ(CooperativeAbility(g, none), 0);

  auto joint = BuildDeviationSpec(g, Team::kFirst, cand, JointCorrelation{});
  EXPECT_EQ(joint.correlated.size(), 4u);
  EXPECT_TRUE(joint.individual.empty());
  EXPECT_EQ(CooperativeAbility(g, joint), 4);

  auto pivot = BuildDeviationSpec(g, Team::kFirst, cand, PivotFollowers{0});
  EXPECT_TRUE(pivot.individual.empty());
  for (const auto& p : pivot.correlated) EXPECT_EQ(p.kind(), TeamPolicy::Kind::kShared);
  EXPECT_EQ(CooperativeAbility(g, pivot), 2);
  EXPECT_THROW(BuildDeviationSpec(g, Team::kFirst, cand, PivotFollowers{2}), Error);
}

TEST(DeviationSpecTest, SequentialBudgetAndDeterminism) {
  Game g(Example1());
  auto cand = Pure(g, Team::kFirst, {0, 0});
  SequentialCorrelation seq;
  seq.factor.n_init = 3;
  seq.seed = 17;
  auto a = BuildDeviationSpec(g, Team::kFirst, cand, seq);
  auto b = BuildDeviationSpec(g, Team::kFirst, cand, seq);
  EXPECT_EQ(a.individual.size() + a.correlated.size(), 3u);
  EXPECT_EQ(a.budget, 3u);
  ASSERT_EQ(a.individual.size(), b.individual.size());
  for (std::size_t i = 0; i < a.individual.size(); ++i) {
    EXPECT_EQ(a.individual[i].team_policy, b.individual[i].team_policy);
  }
  EXPECT_EQ(a.correlated, b.correlated);
  // A larger budget adds sampled joint policies after all individual ones.
  seq.factor.n_init = 6;
  auto c = BuildDeviationSpec(g, Team::kFirst, cand, seq);
  EXPECT_EQ(c.individual.size(), 4u);
  EXPECT_EQ(c.correlated.size(), 2u);
  seq.order = {0, 0};
  EXPECT_THROW(BuildDeviationSpec(g, Team::kFirst, cand, seq), Error);
}

TEST(DeviationSpecTest, JointBoundExceeded) {
  Game g(Sad({2, 3, 1.0}));
  DeviationOptions opts;
  opts.enumeration_bound = 5;
  EXPECT_THROW(BuildDeviationSpec(g, Team::kFirst, Pure(g, Team::kFirst, {0, 0}),
                                  JointCorrelation{}, opts),
               BoundError);
}

TEST(VerifyTest, ExampleOneAllZeros) {
  Game g(Example1());
  auto p1 = Pure(g, Team::kFirst, {0, 0});
  auto p2 = Pure(g, Team::kSecond, {0, 0});
  auto ne = VerifyEquilibrium(g, p1, p2, Specs(g, p1, p2, NoCorrelation{}), 1e-9);
  EXPECT_TRUE(ne.pass);
  EXPECT_EQ(ne.teams[0].max_gain, 0.0);
  EXPECT_EQ(ne.teams[1].max_gain, 0.0);

  auto ctme = VerifyEquilibrium(g, p1, p2, Specs(g, p1, p2, JointCorrelation{}), 1e-9);
  EXPECT_FALSE(ctme.pass);
  EXPECT_FALSE(ctme.teams[0].pass);
  EXPECT_DOUBLE_EQ(ctme.teams[0].max_gain, 1.0);
  EXPECT_EQ(ctme.teams[0].witness.joint_action, (JointAction{1, 1}));
  EXPECT_EQ(ctme.teams[0].witness.kind, Witness::Kind::kCorrelated);
}

TEST(VerifyTest, ExampleOneMaxminProfilePassesJoint) {
  Game g(Example1());
  Matrix m(4, 4, g.normal_form().TeamMatrix(Team::kFirst));
  const auto oracle = ref::SupportEnumeration(m);
  auto p1 = TeamPolicy::JointMix(2, oracle.row);
  auto p2 = TeamPolicy::JointMix(2, oracle.col);
  auto r = VerifyEquilibrium(g, p1, p2, Specs(g, p1, p2, JointCorrelation{}), 1e-6);
  EXPECT_TRUE(r.pass);
  EXPECT_NEAR(r.teams[0].candidate_value, 1.25, 1e-12);
}

TEST(VerifyTest, EmptySetAndEpsilon) {
  Game g(Example1());
  auto p1 = Pure(g, Team::kFirst, {0, 0});
  auto p2 = Pure(g, Team::kSecond, {0, 0});
  std::array<DeviationSpec, 2> empty{DeviationSpec{Team::kFirst}, DeviationSpec{Team::kSecond}};
  auto r = VerifyEquilibrium(g, p1, p2, empty, 0.0);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.teams[0].witness.kind, Witness::Kind::kNone);
  EXPECT_THROW(VerifyEquilibrium(g, p1, p2, empty, -1.0), Error);
  Evaluation exact;
  EXPECT_EQ(DefaultEpsilon(exact), 1e-6);
  Evaluation mc{0.0, 0.25, 100};
  EXPECT_EQ(DefaultEpsilon(mc), 0.5);
}

// Superset specs never report a smaller gain; Joint-passing profiles pass
// every other class.
TEST(VerifyProperty, MonotoneStrengthAndSubset) {
  Rng rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    Game g(RandomTeamGame({2, 2}, {2, 2, 2, 2}, -1, 1, 40 + trial));
    auto p1 = Pure(g, Team::kFirst, {static_cast<int>(rng.Below(2)), static_cast<int>(rng.Below(2))});
    auto p2 = Pure(g, Team::kSecond, {static_cast<int>(rng.Below(2)), static_cast<int>(rng.Below(2))});
    auto none = VerifyEquilibrium(g, p1, p2, Specs(g, p1, p2, NoCorrelation{}), 1e-9);
    auto pivot = VerifyEquilibrium(g, p1, p2, Specs(g, p1, p2, PivotFollowers{0}), 1e-9);
    auto joint = VerifyEquilibrium(g, p1, p2, Specs(g, p1, p2, JointCorrelation{}), 1e-9);
    for (int t = 0; t < 2; ++t) {
      EXPECT_GE(joint.teams[t].max_gain, none.teams[t].max_gain);
      EXPECT_GE(joint.teams[t].max_gain, pivot.teams[t].max_gain);
    }
    // Union of NoCorrelation and Pivot sets versus each alone.
    for (int t = 0; t < 2; ++t) {
      const Team team = TeamFromIndex(t);
      const auto& cand = t == 0 ? p1 : p2;
      auto small = BuildDeviationSpec(g, team, cand, NoCorrelation{});
      auto big = small;
      auto piv = BuildDeviationSpec(g, team, cand, PivotFollowers{0});
      big.correlated = piv.correlated;
      std::array<DeviationSpec, 2> s1{DeviationSpec{Team::kFirst}, DeviationSpec{Team::kSecond}};
      auto s2 = s1;
      s1[t] = small;
      s2[t] = big;
      EXPECT_GE(VerifyEquilibrium(g, p1, p2, s2, 1e-9).teams[t].max_gain,
                VerifyEquilibrium(g, p1, p2, s1, 1e-9).teams[t].max_gain);
    }
    // CTME from the LP oracle passes every class.
    Matrix m(4, 4, g.normal_form().TeamMatrix(Team::kFirst));
    const auto sol = ref::SupportEnumeration(m);
    auto c1 = TeamPolicy::JointMix(2, sol.row);
    auto c2 = TeamPolicy::JointMix(2, sol.col);
    ASSERT_TRUE(VerifyEquilibrium(g, c1, c2, Specs(g, c1, c2, JointCorrelation{}), 1e-6).pass);
    SequentialCorrelation seq;
    seq.factor.n_init = 5;
    seq.seed = trial;
    for (const CorrelationClass& cls :
         {CorrelationClass{NoCorrelation{}}, CorrelationClass{PivotFollowers{1}},
          CorrelationClass{seq}}) {
      EXPECT_TRUE(VerifyEquilibrium(g, c1, c2, Specs(g, c1, c2, cls), 1e-6).pass);
    }
  }
}

TEST(DeviationTest, ClassNames) {
  EXPECT_EQ(ClassName(NoCorrelation{}), "NoCorrelation");
  EXPECT_EQ(ClassName(JointCorrelation{}), "Joint");
  EXPECT_EQ(ClassName(PivotFollowers{}), "PivotFollowers");
  EXPECT_EQ(ClassName(SequentialCorrelation{}), "Sequential");
}

}  // namespace
}  // namespace teamcorr
