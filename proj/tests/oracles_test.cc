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

#include <algorithm>
#include <cmath>
#include <limits>
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

TeamPolicy Pure(const Game& g, Team t, std::vector<int> a) {
  return TeamPolicy::PureJoint(g.layout(), t, a);
}

PolicyMixture Opp(const Game& g, Team t, std::vector<int> a) {
  return PolicyMixture::Single(Pure(g, t, a));
}

Matrix ExampleOneMatrix() {
  const auto g = Example1();
  return Matrix(4, 4, g.TeamMatrix(Team::kFirst));
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

// ---- matrix maxmin ----------------------------------------------------

TEST(MatrixMaxminTest, ExampleOne) {
  const auto s = SolveMatrixMaxmin(ExampleOneMatrix());
  EXPECT_NEAR(s.value, 1.25, 1e-12);
  EXPECT_NEAR(s.row_mix[0], 0.75, 1e-12);
  EXPECT_NEAR(s.row_mix[3], 0.25, 1e-12);
  EXPECT_LE(s.gap, 1e-9);
  const auto oracle = ref::SupportEnumeration(ExampleOneMatrix());
  EXPECT_NEAR(s.value, oracle.value, 1e-9);
}

TEST(MatrixMaxminTest, TrivialCases) {
  const auto one = SolveMatrixMaxmin(Matrix(1, 1, 3.5));
  EXPECT_DOUBLE_EQ(one.value, 3.5);
  EXPECT_DOUBLE_EQ(one.gap, 0.0);
  const auto mp = SolveMatrixMaxmin(Matrix::FromRows({{1, -1}, {-1, 1}}));
  EXPECT_NEAR(mp.value, 0.0, 1e-12);
  EXPECT_NEAR(mp.row_mix[0], 0.5, 1e-12);
  EXPECT_NEAR(mp.col_mix[0], 0.5, 1e-12);
  const auto zero = SolveMatrixMaxmin(Matrix(3, 3, 0.0));
  EXPECT_EQ(zero.value, 0.0);
  EXPECT_EQ(zero.gap, 0.0);
}

TEST(MatrixMaxminTest, RejectsNonFinite) {
  Matrix m(2, 2, 0.0);
  m(0, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(SolveMatrixMaxmin(m), Error);
  m(0, 1) = std::numeric_limits<double>::infinity();
  EXPECT_THROW(SolveMatrixMaxmin(m), Error);
  EXPECT_THROW(SolveMatrixMaxmin(Matrix()), Error);
}

TEST(MatrixMaxminTest, PivotCapReportsBestSoFar) {
  Rng rng(1);
  Matrix m(6, 6);
  for (int r = 0; r < 6; ++r)
    for (int c = 0; c < 6; ++c) m(r, c) = rng.Uniform(-1, 1);
  try {
    SolveMatrixMaxmin(m, 1e-9, 1);
    FAIL() << "expected SolverError";
  } catch (const SolverError& e) {
    EXPECT_EQ(e.best().row_mix.size(), 6u);
  }
}

// Duality certificate and agreement with the support-enumeration oracle.
TEST(MatrixMaxminProperty, RandomMatricesMatchOracle) {
  Rng rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const int rows = 1 + static_cast<int>(rng.Below(5));
    const int cols = 1 + static_cast<int>(rng.Below(5));
    Matrix m(rows, cols);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) m(r, c) = rng.Uniform(-3, 3);
    const auto s = SolveMatrixMaxmin(m);
    EXPECT_LE(s.gap, 1e-9);
    EXPECT_NEAR(EquilibriumGap(m, s.row_mix, s.col_mix), s.gap, 1e-12);
    const auto rv = m.RowValues(s.col_mix);
    const auto cv = m.ColumnValues(s.row_mix);
    EXPECT_LE(*std::max_element(rv.begin(), rv.end()) - s.value, 1e-9);
    EXPECT_LE(s.value - *std::min_element(cv.begin(), cv.end()), 1e-9);
    EXPECT_TRUE(IsDistribution(s.row_mix));
    EXPECT_TRUE(IsDistribution(s.col_mix));
    EXPECT_GE(s.value, m.min() - 1e-12);
    EXPECT_LE(s.value, m.max() + 1e-12);
    EXPECT_NEAR(s.value, ref::SupportEnumeration(m).value, 1e-8);
    // Deterministic.
    const auto again = SolveMatrixMaxmin(m);
    EXPECT_EQ(again.row_mix, s.row_mix);
    EXPECT_EQ(again.col_mix, s.col_mix);
  }
}

// ---- joint / individual / shared ---------------------------------------

TEST(BestResponseJointTest, Examples) {
  Game g(Example1());
  auto br = BestResponseJoint(g, Team::kFirst, Opp(g, Team::kSecond, {0, 0}));
  EXPECT_EQ(br.policy.PureJointAction(g.layout(), Team::kFirst), (JointAction{1, 1}));
  EXPECT_DOUBLE_EQ(br.value, 2.0);
  br = BestResponseJoint(g, Team::kFirst, Opp(g, Team::kSecond, {0, 1}));
  EXPECT_EQ(br.policy.PureJointAction(g.layout(), Team::kFirst), (JointAction{0, 0}));
  EXPECT_DOUBLE_EQ(br.value, 2.0);

  Game ac(AntiCoordination());
  for (auto opp : {std::vector<int>{0, 0}, {0, 1}, {1, 1}}) {
    br = BestResponseJoint(ac, Team::kFirst, Opp(ac, Team::kSecond, opp));
    EXPECT_EQ(br.policy.PureJointAction(ac.layout(), Team::kFirst), (JointAction{0, 1}));
  }
  br = BestResponseJoint(ac, Team::kFirst, Opp(ac, Team::kSecond, {0, 0}));
  EXPECT_DOUBLE_EQ(br.value, 1.0);
}

TEST(BestResponseJointTest, BoundExceeded) {
  Game g(Sad({2, 3, 1.0}));
  OracleOptions opts;
  opts.enumeration_bound = 10;
  EXPECT_THROW(BestResponseJoint(g, Team::kFirst, Opp(g, Team::kSecond, {0, 0}), opts),
               BoundError);
}

TEST(BestResponseIndividualTest, Examples) {
  Game g(Example1());
  auto opp = Opp(g, Team::kSecond, {0, 0});
  auto r = BestResponseIndividual(g, Team::kFirst, opp, Pure(g, Team::kFirst, {0, 0}), 10);
  EXPECT_EQ(r.policy.PureJointAction(g.layout(), Team::kFirst), (JointAction{0, 0}));
  EXPECT_DOUBLE_EQ(r.value, 1.0);
  EXPECT_TRUE(r.converged);
  r = BestResponseIndividual(g, Team::kFirst, opp, Pure(g, Team::kFirst, {1, 1}), 10);
  EXPECT_EQ(r.policy.PureJointAction(g.layout(), Team::kFirst), (JointAction{1, 1}));
  EXPECT_DOUBLE_EQ(r.value, 2.0);
  auto start = TeamPolicy::Product({IndividualPolicy(1, 2, {0.3, 0.7}),
                                    IndividualPolicy(1, 2, {0.6, 0.4})});
  r = BestResponseIndividual(g, Team::kFirst, opp, start, 0);
  EXPECT_EQ(r.policy, start);
  EXPECT_TRUE(r.trace.empty());
}

TEST(BestResponseSharedTest, Examples) {
  Game g(Example1());
  auto r = BestResponseShared(g, Team::kFirst, Opp(g, Team::kSecond, {0, 1}));
  EXPECT_EQ(r.policy.kind(), TeamPolicy::Kind::kShared);
  EXPECT_EQ(r.policy.shared().policy.pure_action(0), 0);
  EXPECT_DOUBLE_EQ(r.value, 2.0);
  r = BestResponseShared(g, Team::kFirst, Opp(g, Team::kSecond, {0, 0}));
  EXPECT_EQ(r.policy.shared().policy.pure_action(0), 1);
  EXPECT_DOUBLE_EQ(r.value, 2.0);

  Game ac(AntiCoordination());
  r = BestResponseShared(ac, Team::kFirst, Opp(ac, Team::kSecond, {0, 0}));
  EXPECT_NEAR(r.policy.shared().policy.distribution(0)[0], 0.5, 1e-6);
  EXPECT_NEAR(r.value, 0.5, 1e-9);
}

TEST(BestResponseSharedTest, HeterogeneousRejected) {
  Game g(NormalFormTeamGame({2, 1}, {2, 3, 2}, std::vector<double>(12, 0.0)));
  EXPECT_THROW(BestResponseShared(g, Team::kFirst, Opp(g, Team::kSecond, {0})), Error);
}

TEST(SharedMaxminTest, ExampleOneValueIsOne) {
  Game g(Example1());
  const auto s = SolveSharedMaxmin(g, Team::kFirst);
  EXPECT_NEAR(s.value, 1.0, 1e-4);
  // Independent check: 1-D scan of the worst case over opponent joint actions.
  double best = -1e9;
  for (int i = 0; i <= 100000; ++i) {
    const double q = i / 100000.0;
    const double w = std::min({1 - 3 * q + 4 * q * q, 2 - 3 * q, 3 - 3 * q, 4 - 3 * q});
    best = std::max(best, w);
  }
  EXPECT_NEAR(s.value, best, 1e-6);
}

// Dominance ordering of the oracles and brute-force optimality of the joint
// oracle against random mixed opponents.
TEST(OracleProperty, JointDominatesOthers) {
  Rng rng(4242);
  for (int trial = 0; trial < 40; ++trial) {
    Game g(RandomTeamGame({2, 2}, {2, 2, 3, 2}, -1, 1, 3000 + trial));
    PolicyMixture opp;
    for (int k = 0; k < 2; ++k) opp.policies.push_back(RandomProduct(g, Team::kSecond, rng));
    opp.weights = {0.3, 0.7};
    const auto joint = BestResponseJoint(g, Team::kFirst, opp);
    double brute = -1e9;
    for (const auto& a : ref::JointActions({2, 2})) {
      double v = 0.3 * ref::NormalFormValue(g, Pure(g, Team::kFirst, a), opp.policies[0]) +
                 0.7 * ref::NormalFormValue(g, Pure(g, Team::kFirst, a), opp.policies[1]);
      brute = std::max(brute, v);
    }
    EXPECT_NEAR(joint.value, brute, 1e-12);
    SebrConfig sc;
    sc.seed = trial;
    CommChannel ch;
    const auto seq = Sebr(g, Team::kFirst, opp, sc, ch);
    const auto shared = BestResponseShared(g, Team::kFirst, opp);
    const auto ind = BestResponseIndividual(
        g, Team::kFirst, opp,
        TeamPolicy::AllPure(g.layout(), Team::kFirst, g.ObservationCounts(Team::kFirst)),
        50);
    EXPECT_GE(joint.value, seq.value - 1e-12);
    EXPECT_GE(joint.value, shared.value - 1e-12);
    EXPECT_GE(joint.value, ind.value - 1e-12);
    // Reported values are the true values of the returned policies.
    EXPECT_NEAR(seq.value, ExpectedTeamReward(g, Team::kFirst, seq.policy, opp).mean, 1e-12);
    EXPECT_NEAR(shared.value, ExpectedTeamReward(g, Team::kFirst, shared.policy, opp).mean,
                1e-12);
    for (const auto& u : ind.trace) EXPECT_GE(u.after, u.before - 1e-12);
  }
}

TEST(OracleProperty, StochasticJointMatchesEnumeration) {
  // Tiny game: 2 states, 1 observation per player, so pure joint policies
  // are stationary joint actions and can be enumerated directly.
  for (int trial = 0; trial < 10; ++trial) {
    RandomStochasticConfig cfg;
    cfg.team_sizes = {1, 1};
    cfg.action_counts = {2, 2};
    cfg.num_states = 2;
    cfg.observations_per_player = 1;
    cfg.horizon = 3;
    auto sg = RandomStochasticGame(cfg, 60 + trial);
    Game g(sg);
    auto opp = TeamPolicy::Product({IndividualPolicy::Uniform(1, 2)});
    const auto br = BestResponseJoint(g, Team::kFirst, PolicyMixture::Single(opp));
    double best = -1e9;
    for (int a = 0; a < 2; ++a) {
      ref::BackwardInduction bi(*sg, g, TeamPolicy::Product({IndividualPolicy::Deterministic(1, 2, a)}),
                                opp);
      best = std::max(best, bi.Initial(3));
    }
    EXPECT_NEAR(br.value, best, 1e-12);
  }
}

// ---- advantage decomposition --------------------------------------------

TEST(AdvantageTest, ExampleOneUniform) {
  Game g(Example1());
  auto uni = TeamPolicy::Product({IndividualPolicy::Uniform(1, 2),
                                  IndividualPolicy::Uniform(1, 2)});
  std::vector<int> a{1, 1}, order{0, 1};
  const auto terms =
      AdvantageDecompose(g, Team::kFirst, uni, Opp(g, Team::kSecond, {0, 0}), 0, a, order);
  ASSERT_EQ(terms.size(), 2u);
  // E[R1] over the four outcomes is (1 + 0 - 1 + 2) / 4 = 0.5.
  EXPECT_NEAR(terms[0] + terms[1], 2.0 - 0.5, 1e-12);
}

TEST(AdvantageTest, GreedyOnPolicyActionHasZeroTerms) {
  Game g(Example1());
  auto p = Pure(g, Team::kFirst, {1, 0});
  std::vector<int> a{1, 0}, order{1, 0};
  for (double t : AdvantageDecompose(g, Team::kFirst, p, Opp(g, Team::kSecond, {0, 1}), 0,
                                     a, order)) {
    EXPECT_EQ(t, 0.0);
  }
}

TEST(AdvantageTest, RejectsJointMixAndBadOrder) {
  Game g(Example1());
  auto mix = TeamPolicy::JointMix(2, {0.5, 0, 0, 0.5});
  std::vector<int> a{0, 0}, order{0, 1}, bad{0, 0};
  EXPECT_THROW(AdvantageDecompose(g, Team::kFirst, mix, Opp(g, Team::kSecond, {0, 0}), 0, a,
                                  order),
               Error);
  auto p = Pure(g, Team::kFirst, {0, 0});
  EXPECT_THROW(AdvantageDecompose(g, Team::kFirst, p, Opp(g, Team::kSecond, {0, 0}), 0, a,
                                  bad),
               Error);
}

TEST(AdvantageProperty, SumIdentityOnRandomOneShotGames) {
  Rng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    Game g(RandomTeamGame({2, 2}, {2, 2, 2, 2}, -1, 1, 7000 + trial));
    auto pol = RandomProduct(g, Team::kFirst, rng);
    auto opp = PolicyMixture::Single(RandomProduct(g, Team::kSecond, rng));
    const std::vector<int> a{static_cast<int>(rng.Below(2)), static_cast<int>(rng.Below(2))};
    const std::vector<int> order = rng.Below(2) ? std::vector<int>{0, 1} : std::vector<int>{1, 0};
    const auto terms = AdvantageDecompose(g, Team::kFirst, pol, opp, 0, a, order);
    double q = 0, v = 0;
    const auto dists = ref::MemberDists(pol, {0, 0});
    for (const auto& b : ref::JointActions({2, 2})) {
      const double qb = ref::NormalFormValue(g, Pure(g, Team::kFirst, b), opp.policies[0]);
      v += ref::ProductProb(dists, b) * qb;
      if (b == a) q = qb;
    }
    EXPECT_NEAR(terms[0] + terms[1], q - v, 1e-12);
  }
}

// ---- SeBR -------------------------------------------------------------

// The first member in order sees its teammate on 0 and moves to 1; the
// second then has nothing to gain.
TEST(SebrTest, AntiCoordinationFirstMoverBreaksSymmetry) {
  Game g(AntiCoordination());
  SebrConfig cfg;
  cfg.restarts = 0;
  CommChannel ch;
  const auto r = Sebr(g, Team::kFirst, Opp(g, Team::kSecond, {0, 0}), cfg, ch);
  EXPECT_EQ(r.policy.PureJointAction(g.layout(), Team::kFirst), (JointAction{1, 0}));
  EXPECT_DOUBLE_EQ(r.value, 1.0);
  EXPECT_TRUE(r.converged);
  // Reversed order: member 1 holds 0 and member 2 switches.
  cfg.order = {1, 0};
  CommChannel ch2;
  const auto rev = Sebr(g, Team::kFirst, Opp(g, Team::kSecond, {0, 0}), cfg, ch2);
  EXPECT_EQ(ch2.entries()[0].member, 1);
  EXPECT_EQ(rev.policy.PureJointAction(g.layout(), Team::kFirst), (JointAction{0, 1}));
  EXPECT_DOUBLE_EQ(rev.value, 1.0);
  ASSERT_FALSE(ch.entries().empty());
  EXPECT_EQ(ch.entries()[0].member, 0);
}

TEST(SebrTest, ExampleOneStuckWithoutRestarts) {
  Game g(Example1());
  SebrConfig cfg;
  cfg.restarts = 0;
  CommChannel ch;
  const auto r = Sebr(g, Team::kFirst, Opp(g, Team::kSecond, {0, 0}), cfg, ch);
  EXPECT_EQ(r.policy.PureJointAction(g.layout(), Team::kFirst), (JointAction{0, 0}));
  EXPECT_DOUBLE_EQ(r.value, 1.0);
}

TEST(SebrTest, ExampleOneRestartsFindBonus) {
  Game g(Example1());
  SebrConfig cfg;
  cfg.restarts = 4;
  CommChannel ch;
  const auto r = Sebr(g, Team::kFirst, Opp(g, Team::kSecond, {0, 0}), cfg, ch);
  EXPECT_EQ(r.policy.PureJointAction(g.layout(), Team::kFirst), (JointAction{1, 1}));
  EXPECT_DOUBLE_EQ(r.value, 2.0);
}

TEST(SebrTest, DeterministicForSeed) {
  Game g(RandomTeamGame({3, 2}, {3, 3, 3, 2, 2}, -1, 1, 5));
  SebrConfig cfg;
  cfg.seed = 9;
  cfg.restarts = 3;
  CommChannel a, b;
  auto opp = Opp(g, Team::kSecond, {1, 0});
  const auto r1 = Sebr(g, Team::kFirst, opp, cfg, a);
  const auto r2 = Sebr(g, Team::kFirst, opp, cfg, b);
  EXPECT_EQ(r1.policy, r2.policy);
  EXPECT_EQ(r1.value, r2.value);
  EXPECT_EQ(r1.trace.size(), r2.trace.size());
}

TEST(CommChannelTest, EnforcesOrder) {
  CommChannel ch;
  std::vector<int> order{1, 0};
  ch.Clear(order);
  CommChannel::Entry e;
  e.member = 0;
  EXPECT_THROW(ch.Record(e), Error);
  e.member = 1;
  ch.Record(e);
  e.member = 0;
  ch.Record(e);
  EXPECT_THROW(ch.Record(e), Error);
  ch.Clear(order);
  EXPECT_TRUE(ch.entries().empty());
}

TEST(SebrProperty, MonotoneOnGridSkirmish) {
  SkirmishConfig cfg;
  cfg.horizon = 3;
  Game g(std::make_shared<GridSkirmish>(cfg));
  SebrConfig sc;
  sc.restarts = 1;
  CommChannel ch;
  auto opp = PolicyMixture::Single(
      TeamPolicy::AllPure(g.layout(), Team::kSecond, g.ObservationCounts(Team::kSecond),
                          GridSkirmish::kStay));
  const auto r = Sebr(g, Team::kFirst, opp, sc, ch);
  EXPECT_TRUE(r.exact);
  for (const auto& u : r.trace) EXPECT_GE(u.after, u.before - 1e-9);
  EXPECT_NEAR(r.value, ExpectedTeamReward(g, Team::kFirst, r.policy, opp).mean, 1e-9);
}

}  // namespace
}  // namespace teamcorr
