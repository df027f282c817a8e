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

#include "teamcorr/psro.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "teamcorr/rng.h"

namespace teamcorr {
namespace {

// Per-cell Monte-Carlo seed; depends only on the cell so that extending a
// population never changes existing entries.
EvalConfig CellConfig(const EvalConfig& eval, std::size_t row, std::size_t col) {
  EvalConfig cfg = eval;
  if (cfg.mode == EvalMode::kMonteCarlo && cfg.seed) {
    cfg.seed = SubSeed(SubSeed(*cfg.seed, "cell-row", row), "cell-col", col);
  }
  return cfg;
}

std::string Provenance(const EvalConfig& eval) {
  if (eval.mode == EvalMode::kExact) return "exact";
  return "mc(n=" + std::to_string(eval.samples) + ")";
}

OracleOptions OptionsFor(const PsroConfig& config) {
  OracleOptions options = config.sebr.oracle;
  options.eval = config.eval;
  options.eval.mode = EvalMode::kExact;
  return options;
}

// Entry with the highest value against the opponent; earliest on ties.
// Only factorized entries qualify. Empty when none does.
std::optional<TeamPolicy> BestEntry(const Game& game, Team team,
                                    const std::vector<TeamPolicy>& entries,
                                    const PolicyMixture& opponent,
                                    const OracleOptions& options) {
  std::optional<TeamPolicy> best;
  double value = 0.0;
  for (const TeamPolicy& p : entries) {
    if (!p.factorized()) continue;
    const double v =
        ExpectedTeamReward(game, team, p, opponent, options.eval).mean;
    if (!best || v > value + 1e-12) {
      best = p;
      value = v;
    }
  }
  return best;
}

double MaxEntry(const Matrix& m) {
  return m.rows() == 0 ? 0.0 : m.max();
}

bool DuplicateRow(const Matrix& m, int row, double tol) {
  for (int r = 0; r < m.rows(); ++r) {
    if (r == row) continue;
    bool same = true;
    for (int c = 0; c < m.cols() && same; ++c) {
      same = std::abs(m(r, c) - m(row, c)) <= tol;
    }
    if (same) return true;
  }
  return false;
}

bool DuplicateColumn(const Matrix& m, int col, double tol) {
  for (int c = 0; c < m.cols(); ++c) {
    if (c == col) continue;
    bool same = true;
    for (int r = 0; r < m.rows() && same; ++r) {
      same = std::abs(m(r, c) - m(r, col)) <= tol;
    }
    if (same) return true;
  }
  return false;
}

}  // namespace

PolicyMixture Population::Mixture(Team team, const MetaStrategy& meta) const {
  const auto& pool = entries(team);
  if (meta.weights.size() != pool.size()) {
    throw DimensionError("meta-strategy size does not match the population");
  }
  CheckDistribution(meta.weights, "meta-strategy");
  PolicyMixture mix;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (meta.weights[i] <= 0.0) continue;
    mix.policies.push_back(pool[i]);
    mix.weights.push_back(meta.weights[i]);
  }
  mix.weights = CleanDistribution(mix.weights);
  return mix;
}

Population Population::Evaluate(const Game& game,
                                std::vector<TeamPolicy> team1,
                                std::vector<TeamPolicy> team2,
                                const EvalConfig& eval) {
  if (team1.empty() || team2.empty()) {
    throw DimensionError("populations must be nonempty");
  }
  Population pop;
  const int rows = static_cast<int>(team1.size());
  const int cols = static_cast<int>(team2.size());
  pop.payoff_ = Matrix(rows, cols);
  pop.stderr_ = Matrix(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const auto e = ExpectedTeamReward(game, team1[r], team2[c],
                                        CellConfig(eval, r, c));
      pop.payoff_(r, c) = e.mean;
      pop.stderr_(r, c) = e.std_error;
    }
  }
  pop.entries_ = {std::move(team1), std::move(team2)};
  pop.provenance_ = Provenance(eval);
  return pop;
}

Population Population::FromParts(std::array<std::vector<TeamPolicy>, 2> entries,
                                 Matrix payoff, Matrix std_error,
                                 std::string provenance) {
  if (payoff.rows() != static_cast<int>(entries[0].size()) ||
      payoff.cols() != static_cast<int>(entries[1].size()) ||
      std_error.rows() != payoff.rows() || std_error.cols() != payoff.cols()) {
    throw DimensionError("meta-payoff matrix does not match the populations");
  }
  Population pop;
  pop.entries_ = std::move(entries);
  pop.payoff_ = std::move(payoff);
  pop.stderr_ = std::move(std_error);
  pop.provenance_ = std::move(provenance);
  return pop;
}

MetaSolution MetaSolve(const Matrix& payoff, double tol) {
  const MaxminSolution sol = SolveMatrixMaxmin(payoff, tol);
  return {MetaStrategy{sol.row_mix}, MetaStrategy{sol.col_mix}, sol.value,
          sol.gap};
}

Population ExtendPopulation(const Population& population,
                            const TeamPolicy& entry, Team team,
                            const Game& game, const EvalConfig& eval) {
  Population out = population;
  const Matrix& old = population.payoff_;
  const Matrix& old_se = population.stderr_;
  const int rows = old.rows() + (team == Team::kFirst ? 1 : 0);
  const int cols = old.cols() + (team == Team::kSecond ? 1 : 0);
  Matrix payoff(rows, cols);
  Matrix se(rows, cols);
  for (int r = 0; r < old.rows(); ++r) {
    for (int c = 0; c < old.cols(); ++c) {
      payoff(r, c) = old(r, c);
      se(r, c) = old_se(r, c);
    }
  }
  out.entries_[Index(team)].push_back(entry);
  const auto& t1 = out.entries_[0];
  const auto& t2 = out.entries_[1];
  auto fill = [&](int r, int c) {
    const auto e = ExpectedTeamReward(game, t1[r], t2[c], CellConfig(eval, r, c));
    payoff(r, c) = e.mean;
    se(r, c) = e.std_error;
  };
  if (team == Team::kFirst) {
    for (int c = 0; c < cols; ++c) fill(rows - 1, c);
  } else {
    for (int r = 0; r < rows; ++r) fill(r, cols - 1);
  }
  out.payoff_ = std::move(payoff);
  out.stderr_ = std::move(se);
  return out;
}

std::string OracleName(OracleKind kind) {
  switch (kind) {
    case OracleKind::kSebr:
      return "sebr";
    case OracleKind::kShared:
      return "shared";
    case OracleKind::kIndividual:
      return "individual";
    case OracleKind::kJoint:
      return "joint";
  }
  return "";
}

OracleKind ParseOracle(const std::string& name) {
  for (OracleKind k : {OracleKind::kSebr, OracleKind::kShared,
                       OracleKind::kIndividual, OracleKind::kJoint}) {
    if (OracleName(k) == name) return k;
  }
  throw Error("unknown oracle '" + name +
              "' (expected sebr, shared, individual or joint)");
}

void PsroConfig::Validate() const {
  if (max_iterations < 1) throw Error("max_iterations must be positive");
  if (!(meta_tolerance > 0.0)) throw Error("meta_tolerance must be positive");
  if (!(convergence_tolerance >= 0.0)) {
    throw Error("convergence_tolerance must be nonnegative");
  }
  if (individual_sweeps < 0) throw Error("individual_sweeps must be >= 0");
  if (sebr.max_iter < 0 || sebr.restarts < 0) {
    throw Error("SeBR iteration and restart counts must be >= 0");
  }
  if (eval.mode == EvalMode::kMonteCarlo && !eval.seed) {
    throw Error("Monte-Carlo evaluation requires a seed");
  }
}

BestResponse OracleResponse(const Game& game, Team team,
                            const PolicyMixture& opponent,
                            const std::vector<TeamPolicy>& own_population,
                            const PsroConfig& config, std::uint64_t seed) {
  OracleOptions options = OptionsFor(config);
  options.seed = seed;
  switch (config.oracle) {
    case OracleKind::kJoint:
      return BestResponseJoint(game, team, opponent, options);
    case OracleKind::kShared:
      return BestResponseShared(game, team, opponent, options);
    case OracleKind::kIndividual: {
      auto start = BestEntry(game, team, own_population, opponent, options);
      if (!start) {
        start = TeamPolicy::AllPure(game.layout(), team,
                                    game.ObservationCounts(team));
      }
      auto r = BestResponseIndividual(game, team, opponent, *start,
                                      config.individual_sweeps, options);
      return {std::move(r.policy), r.value, true};
    }
    case OracleKind::kSebr: {
      SebrConfig cfg = config.sebr;
      cfg.oracle = options;
      cfg.seed = seed;
      CommChannel channel;
      const auto start =
          BestEntry(game, team, own_population, opponent, options);
      auto r = Sebr(game, team, opponent, cfg, channel, start);
      return {std::move(r.policy), r.value, r.exact};
    }
  }
  throw Error("unknown oracle");
}

PsroResult RunPsro(const Game& game, const PsroConfig& config) {
  config.Validate();
  const TeamLayout& layout = game.layout();
  PsroResult result;
  result.population = Population::Evaluate(
      game,
      {TeamPolicy::AllPure(layout, Team::kFirst,
                           game.ObservationCounts(Team::kFirst))},
      {TeamPolicy::AllPure(layout, Team::kSecond,
                           game.ObservationCounts(Team::kSecond))},
      config.eval);
  const bool exact = config.eval.mode == EvalMode::kExact || game.is_normal_form();
  auto tolerance = [&] {
    if (config.convergence_tolerance > 0.0) return config.convergence_tolerance;
    return exact ? 1e-6 : 2.0 * MaxEntry(result.population.std_error());
  };
  for (int iter = 1; iter <= config.max_iterations; ++iter) {
    const MetaSolution meta =
        MetaSolve(result.population.payoff(), config.meta_tolerance);
    const double tol = tolerance();
    PsroIteration rec;
    rec.iteration = iter;
    rec.meta_value = meta.value;
    std::vector<BestResponse> responses;
    for (int j = 0; j < 2; ++j) {
      const Team team = TeamFromIndex(j);
      const MetaStrategy& opp_meta = j == 0 ? meta.team2 : meta.team1;
      const auto opponent = result.population.Mixture(Other(team), opp_meta);
      responses.push_back(OracleResponse(
          game, team, opponent, result.population.entries(team), config,
          SubSeed(config.seed, "oracle", static_cast<std::uint64_t>(2 * iter + j))));
      rec.br_value[j] = responses[j].value;
      rec.br_gain[j] = responses[j].value - Sign(team) * meta.value;
    }
    for (int j = 0; j < 2; ++j) {
      if (rec.br_gain[j] <= tol) continue;
      const Team team = TeamFromIndex(j);
      Population grown = ExtendPopulation(result.population,
                                          responses[j].policy, team, game,
                                          config.eval);
      const double dup_tol = std::max(tol, 1e-12);
      const bool duplicate =
          team == Team::kFirst
              ? DuplicateRow(grown.payoff(), grown.payoff().rows() - 1, dup_tol)
              : DuplicateColumn(grown.payoff(), grown.payoff().cols() - 1,
                                dup_tol);
      if (duplicate) continue;
      result.population = std::move(grown);
      rec.appended[j] = true;
    }
    rec.population_size = {result.population.size(Team::kFirst),
                           result.population.size(Team::kSecond)};
    result.history.push_back(rec);
    result.tolerance = tol;
    if (rec.br_gain[0] <= tol && rec.br_gain[1] <= tol) {
      result.converged = true;
      break;
    }
    if (!rec.appended[0] && !rec.appended[1]) break;
    if (iter == config.max_iterations) result.hit_cap = true;
  }
  result.meta = MetaSolve(result.population.payoff(), config.meta_tolerance);
  if (result.tolerance == 0.0) result.tolerance = tolerance();
  return result;
}

}  // namespace teamcorr
