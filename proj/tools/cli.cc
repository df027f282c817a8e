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

#include "cli.h"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <iomanip>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "artifacts.h"
#include "teamcorr/deviation.h"
#include "teamcorr/evaluation.h"
#include "teamcorr/exploitability.h"
#include "teamcorr/games.h"
#include "teamcorr/grid_skirmish.h"
#include "teamcorr/matrix_game.h"
#include "teamcorr/oracles.h"
#include "teamcorr/psro.h"
#include "teamcorr/rng.h"
#include "teamcorr/serialization.h"

#ifndef TEAMCORR_VERSION
#define TEAMCORR_VERSION "0.0.0"
#endif

namespace teamcorr::cli {
namespace {

namespace fs = std::filesystem;

std::string Lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::vector<int> ParseIntList(const std::string& text, const std::string& what) {
  std::vector<int> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error("bad integer list for " + what + ": '" + text + "'");
    }
  }
  return out;
}

std::vector<std::string> SplitList(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// ---- options shared by the subcommands ---------------------------------

struct Common {
  std::string out;
  std::uint64_t seed = 0;
  std::string config_file;  // root --config, if given
};

struct GameOptions {
  std::string game = "example1";
  int sad_players = 2;
  int sad_seeks = 3;
  double sad_bonus = 1.0;
  int grid_width = 3;
  int grid_height = 3;
  int grid_team = 2;
  int grid_horizon = 6;
  double grid_damage = 1.0;
  double grid_discount = 0.95;
  bool grid_mc = false;
  std::string random_sizes = "2,2";
  std::string random_actions = "2,2,2,2";
  double random_lo = -1.0;
  double random_hi = 1.0;
  int horizon = 0;
  std::int64_t mc_samples = 0;
};

void AddCommon(CLI::App* app, Common& c) {
  app->add_option("--out", c.out,
                  "Output directory (default: $TEAMCORR_OUT or ./teamcorr_out)");
  app->add_option("--seed", c.seed, "Root seed for every random stream");
}

void AddGameOptions(CLI::App* app, GameOptions& g) {
  app->add_option("--game", g.game,
                  "Builtin (example1, anti_coordination, sad, grid_skirmish, "
                  "random, random_stochastic) or a game JSON file");
  app->add_option("--sad-players", g.sad_players, "SAD players per team");
  app->add_option("--sad-seeks", g.sad_seeks, "SAD highest seek level A");
  app->add_option("--sad-bonus", g.sad_bonus, "SAD attack bonus B");
  app->add_option("--grid-width", g.grid_width);
  app->add_option("--grid-height", g.grid_height);
  app->add_option("--grid-team", g.grid_team, "Agents per side");
  app->add_option("--grid-horizon", g.grid_horizon);
  app->add_option("--grid-damage", g.grid_damage);
  app->add_option("--grid-discount", g.grid_discount);
  app->add_flag("--grid-mc", g.grid_mc, "Allow grids too large for exact evaluation");
  app->add_option("--random-sizes", g.random_sizes, "Team sizes, e.g. 2,2");
  app->add_option("--random-actions", g.random_actions, "Per-player action counts");
  app->add_option("--random-lo", g.random_lo);
  app->add_option("--random-hi", g.random_hi);
  app->add_option("--horizon", g.horizon, "Evaluation horizon (0: the game's own)");
  app->add_option("--mc-samples", g.mc_samples,
                  "Monte-Carlo episodes per evaluation (0: exact)");
}

struct LoadedGame {
  Game game;
  Json spec;
};

LoadedGame LoadGame(const GameOptions& o, std::uint64_t seed) {
  const std::string name = Lower(o.game);
  if (name == "example1") return {Game(Example1()), Json{{"builtin", "example1"}}};
  if (name == "anti_coordination" || name == "anticoordination") {
    return {Game(AntiCoordination()), Json{{"builtin", "anti_coordination"}}};
  }
  if (name == "sad") {
    SadConfig c{o.sad_players, o.sad_seeks, o.sad_bonus};
    return {Game(Sad(c)),
            Json{{"builtin", "sad"},
                 {"config", {{"players", c.players},
                             {"seek_levels", c.seek_levels},
                             {"attack_bonus", c.attack_bonus}}}}};
  }
  if (name == "grid_skirmish" || name == "grid") {
    SkirmishConfig c;
    c.width = o.grid_width;
    c.height = o.grid_height;
    c.team_size = o.grid_team;
    c.horizon = o.grid_horizon;
    c.damage = o.grid_damage;
    c.discount = o.grid_discount;
    c.allow_monte_carlo = o.grid_mc;
    return {Game(std::make_shared<GridSkirmish>(c)),
            Json{{"builtin", "grid_skirmish"},
                 {"config", {{"width", c.width},
                             {"height", c.height},
                             {"team_size", c.team_size},
                             {"horizon", c.horizon},
                             {"damage", c.damage},
                             {"discount", c.discount},
                             {"allow_monte_carlo", c.allow_monte_carlo}}}}};
  }
  const std::uint64_t game_seed = SubSeed(seed, "game");
  if (name == "random") {
    const auto sizes = ParseIntList(o.random_sizes, "--random-sizes");
    if (sizes.size() != 2) throw Error("--random-sizes needs two team sizes");
    const auto actions = ParseIntList(o.random_actions, "--random-actions");
    return {Game(RandomTeamGame({sizes[0], sizes[1]}, actions, o.random_lo,
                                o.random_hi, game_seed)),
            Json{{"builtin", "random"},
                 {"config", {{"team_sizes", sizes},
                             {"action_counts", actions},
                             {"lo", o.random_lo},
                             {"hi", o.random_hi},
                             {"seed", game_seed}}}}};
  }
  if (name == "random_stochastic") {
    RandomStochasticConfig c;
    return {Game(RandomStochasticGame(c, game_seed)),
            Json{{"builtin", "random_stochastic"}, {"config", {{"seed", game_seed}}}}};
  }
  const fs::path path(o.game);
  if (!fs::is_regular_file(path)) {
    throw Error("unknown game '" + o.game + "' (not a builtin and not a readable file)");
  }
  return {GameFromJson(ReadFile(path)), Json{{"file", path.string()}}};
}

EvalConfig MakeEval(const GameOptions& o, std::uint64_t seed) {
  EvalConfig e;
  if (o.mc_samples < 0) throw Error("--mc-samples must be nonnegative");
  if (o.mc_samples > 0) e = EvalConfig::MonteCarlo(o.mc_samples, SubSeed(seed, "mc"));
  if (o.horizon < 0) throw Error("--horizon must be nonnegative");
  e.horizon = o.horizon;
  return e;
}

fs::path OutputDir(const Common& c) {
  if (!c.out.empty()) return c.out;
  if (const char* env = std::getenv("TEAMCORR_OUT"); env != nullptr && *env) {
    return env;
  }
  return "teamcorr_out";
}

std::string WallClock() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

// Every option of the subcommand with its effective value, after defaults,
// config file and flags have been merged.
Json MergedConfig(const CLI::App* app) {
  Json cfg = Json::object();
  for (const CLI::Option* opt : app->get_options()) {
    const std::string name = opt->get_single_name();
    if (name.empty() || name == "help" || name == "config" || name == "out" ||
        name == "seed") {
      continue;
    }
    std::string value;
    if (opt->count() > 0) {
      const auto& results = opt->results();
      for (std::size_t i = 0; i < results.size(); ++i) {
        value += (i ? "," : "") + results[i];
      }
      if (opt->get_type_size() == 0 && results.empty()) value = "true";
    } else {
      value = opt->get_default_str();
      if (opt->get_type_size() == 0 && value.empty()) value = "false";
    }
    cfg[name] = value;
  }
  return cfg;
}

void WriteManifest(const fs::path& dir, const std::string& command,
                   const std::vector<std::string>& args, const Json& game,
                   const CLI::App* app, const Common& common,
                   std::optional<double> tolerance) {
  Json m;
  m["tool"] = "teamcorr";
  m["version"] = TEAMCORR_VERSION;
  m["command"] = command;
  m["arguments"] = args;
  m["game"] = game;
  m["config_file"] = common.config_file;
  m["config"] = MergedConfig(app);
  m["seed"] = common.seed;
  m["tolerance"] = tolerance ? Json(*tolerance) : Json(nullptr);
  m["output_dir"] = dir.string();
  m["wall_clock"] = WallClock();
  WriteFile(dir / "manifest.json", m.dump(2) + "\n");
}

std::string WitnessLabel(const Witness& w) {
  if (w.kind == Witness::Kind::kNone) return "";
  if (!w.joint_action.empty()) return FormatJointAction(w.joint_action);
  return w.description;
}

std::string ActionLabel(const Game& game, Team team, std::int64_t index) {
  return FormatJointAction(game.layout().DecodeJoint(team, index));
}

// ---- solve ---------------------------------------------------------------

struct SolveOptions {
  Common common;
  GameOptions game;
  std::string matrix;
  int team = 1;
  std::string mode = "ctme";
  double tol = 1e-9;
};

int RunSolve(const SolveOptions& o, const CLI::App* app,
             const std::vector<std::string>& args, std::ostream& out) {
  const fs::path dir = OutputDir(o.common);
  const Team team = TeamFromIndex(o.team - 1);
  const std::string mode = Lower(o.mode);
  if (mode != "ctme" && mode != "shared") throw Error("--mode must be ctme or shared");
  if (!o.matrix.empty() && mode != "ctme") {
    throw Error("--mode shared needs a game, not a matrix");
  }

  std::optional<LoadedGame> loaded;
  Json spec;
  if (o.matrix.empty()) {
    loaded = LoadGame(o.game, o.common.seed);
    spec = loaded->spec;
  } else {
    spec = Json{{"matrix_file", o.matrix}};
  }
  WriteManifest(dir, "solve", args, spec, app, o.common, o.tol);

  RunSummary run;
  run.command = "solve";
  Table table{"solution", {"side", "index", "action", "probability"}, {}};
  if (mode == "shared") {
    if (!loaded->game.is_normal_form()) throw Error("shared maxmin needs a normal-form game");
    const auto s = SolveSharedMaxmin(loaded->game, team);
    run.summary = Json{{"mode", "shared"}, {"team", o.team}, {"value", Number(s.value)}};
    for (std::size_t a = 0; a < s.shared.size(); ++a) {
      table.rows.push_back({"shared", static_cast<int>(a), std::to_string(a),
                            Number(s.shared[a])});
    }
    run.tables.push_back(table);
    WriteRun(dir, run);
    out << "shared maxmin value " << FormatNumber(s.value) << "\n";
    return kExitOk;
  }

  Matrix m;
  std::vector<std::string> row_labels, col_labels;
  if (loaded) {
    const Game& g = loaded->game;
    if (!g.is_normal_form()) throw Error("solve needs a normal-form game or --matrix");
    const auto& nf = g.normal_form();
    const int rows = static_cast<int>(nf.num_joint_actions(team));
    const int cols = static_cast<int>(nf.num_joint_actions(Other(team)));
    m = Matrix(rows, cols, nf.TeamMatrix(team));
    for (int r = 0; r < rows; ++r) row_labels.push_back(ActionLabel(g, team, r));
    for (int c = 0; c < cols; ++c) col_labels.push_back(ActionLabel(g, Other(team), c));
  } else {
    Json j;
    try {
      j = Json::parse(ReadFile(o.matrix));
      m = Matrix::FromRows(j.get<std::vector<std::vector<double>>>());
    } catch (const Json::exception& e) {
      throw Error("bad matrix file: " + std::string(e.what()));
    }
    for (int r = 0; r < m.rows(); ++r) row_labels.push_back(std::to_string(r));
    for (int c = 0; c < m.cols(); ++c) col_labels.push_back(std::to_string(c));
  }
  const auto s = SolveMatrixMaxmin(m, o.tol);
  run.summary = Json{{"mode", "ctme"},   {"team", o.team},
                     {"value", Number(s.value)}, {"gap", Number(s.gap)},
                     {"pivots", s.pivots}, {"rows", m.rows()}, {"cols", m.cols()}};
  for (int r = 0; r < m.rows(); ++r) {
    table.rows.push_back({"row", r, row_labels[r], Number(s.row_mix[r])});
  }
  for (int c = 0; c < m.cols(); ++c) {
    table.rows.push_back({"col", c, col_labels[c], Number(s.col_mix[c])});
  }
  run.tables.push_back(table);
  WriteRun(dir, run);
  WriteFile(dir / "maxmin.json", MaxminToJson(s));

  out << "value " << FormatNumber(s.value) << " (gap " << FormatNumber(s.gap) << ")\n";
  out << "row mix:";
  for (int r = 0; r < m.rows(); ++r) {
    if (s.row_mix[r] > 0) out << " " << row_labels[r] << "=" << FormatNumber(s.row_mix[r]);
  }
  out << "\ncol mix:";
  for (int c = 0; c < m.cols(); ++c) {
    if (s.col_mix[c] > 0) out << " " << col_labels[c] << "=" << FormatNumber(s.col_mix[c]);
  }
  out << "\n";
  return kExitOk;
}

// ---- verify --------------------------------------------------------------

struct VerifyOptions {
  Common common;
  GameOptions game;
  std::string profile = "all-zeros";
  std::string cls = "none";
  int pivot = 0;
  std::string order;
  double f_team = 0.0;
  double f_policy = 0.0;
  std::uint64_t n_init = 0;
  std::uint64_t delta_team = 0;
  std::uint64_t delta_policy = 0;
  double epsilon = -1.0;
};

CorrelationClass ParseClass(const VerifyOptions& o) {
  const std::string c = Lower(o.cls);
  if (c == "none" || c == "nocorrelation" || c == "no-correlation" || c == "ne") {
    return NoCorrelation{};
  }
  if (c == "pivot" || c == "pivotfollowers" || c == "pivot-followers" || c == "shared") {
    return PivotFollowers{o.pivot};
  }
  if (c == "joint" || c == "ctme") return JointCorrelation{};
  if (c == "sequential") {
    SequentialCorrelation s;
    s.order = ParseIntList(o.order, "--order");
    s.factor = {o.f_team, o.f_policy, o.n_init};
    s.factor.Validate();
    s.seed = SubSeed(o.common.seed, "sampling");
    s.delta_team = o.delta_team;
    s.delta_policy = o.delta_policy;
    return s;
  }
  throw Error("unknown correlation class '" + o.cls +
              "' (none, pivot, sequential, joint)");
}

std::pair<TeamPolicy, TeamPolicy> LoadProfile(const Game& g, const std::string& profile) {
  const std::string p = Lower(profile);
  if (p == "all-zeros" || p == "zeros") {
    return {TeamPolicy::AllPure(g.layout(), Team::kFirst, g.ObservationCounts(Team::kFirst)),
            TeamPolicy::AllPure(g.layout(), Team::kSecond, g.ObservationCounts(Team::kSecond))};
  }
  if (p == "maxmin") {
    if (!g.is_normal_form()) throw Error("--profile maxmin needs a normal-form game");
    const auto& nf = g.normal_form();
    Matrix m(static_cast<int>(nf.num_joint_actions(Team::kFirst)),
             static_cast<int>(nf.num_joint_actions(Team::kSecond)),
             nf.TeamMatrix(Team::kFirst));
    const auto s = SolveMatrixMaxmin(m);
    return {TeamPolicy::JointMix(nf.team_size(Team::kFirst), s.row_mix),
            TeamPolicy::JointMix(nf.team_size(Team::kSecond), s.col_mix)};
  }
  if (!fs::is_regular_file(profile)) {
    throw Error("profile '" + profile + "' is not all-zeros, maxmin or a readable file");
  }
  Json j;
  try {
    j = Json::parse(ReadFile(profile));
  } catch (const Json::exception& e) {
    throw Error("bad profile file: " + std::string(e.what()));
  }
  if (!j.contains("team1") || !j.contains("team2")) {
    throw Error("profile file needs 'team1' and 'team2' policies");
  }
  return {PolicyFromJson(j.at("team1").dump()), PolicyFromJson(j.at("team2").dump())};
}

int RunVerify(const VerifyOptions& o, const CLI::App* app,
              const std::vector<std::string>& args, std::ostream& out) {
  const fs::path dir = OutputDir(o.common);
  const CorrelationClass cls = ParseClass(o);
  const auto loaded = LoadGame(o.game, o.common.seed);
  WriteManifest(dir, "verify", args, loaded.spec, app, o.common,
                o.epsilon >= 0 ? std::optional<double>(o.epsilon) : std::nullopt);
  const Game& g = loaded.game;
  const EvalConfig eval = MakeEval(o.game, o.common.seed);
  const auto [p1, p2] = LoadProfile(g, o.profile);

  std::array<DeviationSpec, 2> specs{BuildDeviationSpec(g, Team::kFirst, p1, cls),
                                     BuildDeviationSpec(g, Team::kSecond, p2, cls)};
  const double eps = o.epsilon >= 0 ? o.epsilon
                                    : DefaultEpsilon(ExpectedTeamReward(g, p1, p2, eval));
  const auto report = VerifyEquilibrium(g, p1, p2, specs, eps, eval);

  RunSummary run;
  run.command = "verify";
  run.summary = Json{{"class", ClassName(cls)},
                     {"epsilon", Number(eps)},
                     {"verdict", report.pass ? "PASS" : "FAIL"}};
  Table table{"verification",
              {"team", "class", "budget", "deviations", "cooperative_ability",
               "candidate_value", "max_gain", "witness", "verdict"},
              {}};
  for (int t = 0; t < 2; ++t) {
    const auto& tv = report.teams[t];
    table.rows.push_back({Label(tv.team), tv.class_name, tv.budget, tv.deviations,
                          CooperativeAbility(g, specs[t]), Number(tv.candidate_value),
                          Number(tv.max_gain), WitnessLabel(tv.witness),
                          tv.pass ? "PASS" : "FAIL"});
  }
  run.tables.push_back(table);
  WriteRun(dir, run);
  WriteFile(dir / "verification.json", VerificationToJson(report));

  out << "verdict " << (report.pass ? "PASS" : "FAIL") << " (class " << ClassName(cls)
      << ", epsilon " << FormatNumber(eps) << ")\n";
  for (const auto& tv : report.teams) {
    out << "team " << Label(tv.team) << ": max gain " << FormatNumber(tv.max_gain);
    if (tv.witness.kind != Witness::Kind::kNone) out << ", witness " << WitnessLabel(tv.witness);
    out << ", " << (tv.pass ? "PASS" : "FAIL") << "\n";
  }
  return report.pass ? kExitOk : kExitVerificationFailed;
}

// ---- psro ----------------------------------------------------------------

struct PsroOptions {
  Common common;
  GameOptions game;
  std::string oracle = "joint";
  int max_iter = 50;
  double tol = 0.0;
  double meta_tol = 1e-9;
  int restarts = 4;
  int sebr_iter = 50;
  std::string order;
  int sweeps = 50;
};

int RunPsroCommand(const PsroOptions& o, const CLI::App* app,
                   const std::vector<std::string>& args, std::ostream& out) {
  const fs::path dir = OutputDir(o.common);
  PsroConfig cfg;
  cfg.oracle = ParseOracle(Lower(o.oracle));
  cfg.max_iterations = o.max_iter;
  cfg.convergence_tolerance = o.tol;
  cfg.meta_tolerance = o.meta_tol;
  cfg.seed = o.common.seed;
  cfg.sebr.restarts = o.restarts;
  cfg.sebr.max_iter = o.sebr_iter;
  cfg.sebr.order = ParseIntList(o.order, "--order");
  cfg.individual_sweeps = o.sweeps;
  cfg.eval = MakeEval(o.game, o.common.seed);
  cfg.Validate();
  const auto loaded = LoadGame(o.game, o.common.seed);
  WriteManifest(dir, "psro", args, loaded.spec, app, o.common,
                o.tol > 0 ? std::optional<double>(o.tol) : std::nullopt);

  const auto r = RunPsro(loaded.game, cfg);
  RunSummary run;
  run.command = "psro";
  run.summary = Json{{"oracle", OracleName(cfg.oracle)},
                     {"meta_value", Number(r.meta.value)},
                     {"meta_gap", Number(r.meta.gap)},
                     {"iterations", r.history.size()},
                     {"converged", r.converged},
                     {"hit_cap", r.hit_cap},
                     {"tolerance", Number(r.tolerance)},
                     {"pop_1", r.population.size(Team::kFirst)},
                     {"pop_2", r.population.size(Team::kSecond)}};
  Table history{"history",
                {"iter", "meta_value", "br_gain_1", "br_gain_2", "pop_1", "pop_2"},
                {}};
  for (const auto& h : r.history) {
    history.rows.push_back({h.iteration, Number(h.meta_value), Number(h.br_gain[0]),
                            Number(h.br_gain[1]), h.population_size[0],
                            h.population_size[1]});
  }
  Table meta{"meta", {"team", "entry", "policy", "weight"}, {}};
  for (int t = 0; t < 2; ++t) {
    const Team team = TeamFromIndex(t);
    const auto& w = t == 0 ? r.meta.team1.weights : r.meta.team2.weights;
    const auto& entries = r.population.entries(team);
    for (std::size_t i = 0; i < entries.size(); ++i) {
      meta.rows.push_back({t + 1, static_cast<int>(i),
                           entries[i].Summary(loaded.game.layout(), team), Number(w[i])});
    }
  }
  run.tables = {history, meta};
  WriteRun(dir, run);
  WriteFile(dir / "population.json", PopulationToJson(r.population, &r.meta));

  out << "meta value " << FormatNumber(r.meta.value) << " after " << r.history.size()
      << " iterations (" << (r.converged ? "converged" : r.hit_cap ? "iteration cap" : "stalled")
      << ")\n";
  out << "population sizes " << r.population.size(Team::kFirst) << " / "
      << r.population.size(Team::kSecond) << "\n";
  return kExitOk;
}

// ---- eval ----------------------------------------------------------------

struct ExploitOptions {
  Common common;
  GameOptions game;
  std::string population;
  int team = 1;
  std::string classes = "all";
  std::string id;
  int restarts = 4;
  int sweeps = 50;
};

int RunExploit(const ExploitOptions& o, const CLI::App* app,
               const std::vector<std::string>& args, std::ostream& out) {
  const fs::path dir = OutputDir(o.common);
  const Team team = TeamFromIndex(o.team - 1);
  std::vector<OpponentClass> classes;
  if (Lower(o.classes) == "all") {
    classes.assign(std::begin(kAllOpponentClasses), std::end(kAllOpponentClasses));
  } else {
    for (const auto& c : SplitList(o.classes)) classes.push_back(ParseOpponentClass(c));
  }
  const auto loaded = LoadGame(o.game, o.common.seed);
  WriteManifest(dir, "eval exploit", args, loaded.spec, app, o.common, std::nullopt);
  MetaSolution meta;
  const auto pop = PopulationFromJson(ReadFile(o.population), &meta);
  const auto candidate =
      pop.Mixture(team, team == Team::kFirst ? meta.team1 : meta.team2);

  ExploitConfig cfg;
  cfg.eval = MakeEval(o.game, o.common.seed);
  cfg.oracle.eval = cfg.eval;
  cfg.oracle.seed = SubSeed(o.common.seed, "oracle");
  cfg.sebr.restarts = o.restarts;
  cfg.sebr.seed = SubSeed(o.common.seed, "oracle", 1);
  cfg.sebr.oracle = cfg.oracle;
  cfg.individual_sweeps = o.sweeps;
  const std::string id =
      o.id.empty() ? fs::path(o.population).stem().string() + ":team" + std::to_string(o.team)
                   : o.id;
  const auto report = ExploitabilityProfile(loaded.game, team, candidate, classes, cfg, id);

  RunSummary run;
  run.command = "eval exploit";
  run.summary = Json{{"candidate", id},
                     {"candidate_team", o.team},
                     {"note", report.note}};
  Table wide{"exploit", {"candidate"}, {}};
  std::vector<Json> row{id};
  for (auto c : kAllOpponentClasses) {
    wide.columns.push_back(OpponentClassName(c));
    const auto it = std::find_if(report.entries.begin(), report.entries.end(),
                                 [&](const ExploitEntry& e) { return e.cls == c; });
    if (it == report.entries.end()) {
      row.push_back("");
    } else if (!it->applicable) {
      row.push_back("n/a");
    } else {
      row.push_back(Number(it->opponent_reward));
    }
  }
  wide.rows.push_back(row);
  Table detail{"exploit_detail",
               {"class", "applicable", "opponent_reward", "stderr", "opponent"},
               {}};
  for (const auto& e : report.entries) {
    detail.rows.push_back({OpponentClassName(e.cls), e.applicable,
                           e.applicable ? Number(e.opponent_reward) : Json(""),
                           e.applicable ? Number(e.std_error) : Json(""),
                           e.opponent_summary});
  }
  run.tables = {wide, detail};
  WriteRun(dir, run);
  WriteFile(dir / "exploit.json", ExploitReportToJson(report));

  out << "opponent reward against " << id << ":\n";
  for (const auto& e : report.entries) {
    out << "  " << std::left << std::setw(14) << OpponentClassName(e.cls)
        << (e.applicable ? FormatNumber(e.opponent_reward) : std::string("n/a")) << "\n";
  }
  return kExitOk;
}

struct RppOptions {
  Common common;
  GameOptions game;
  std::string a;
  std::string b;
  double tol = 1e-9;
};

int RunRppCommand(const RppOptions& o, const CLI::App* app,
                  const std::vector<std::string>& args, std::ostream& out) {
  const fs::path dir = OutputDir(o.common);
  const auto loaded = LoadGame(o.game, o.common.seed);
  WriteManifest(dir, "eval rpp", args, loaded.spec, app, o.common, o.tol);
  const auto a = PopulationFromJson(ReadFile(o.a), nullptr);
  const auto b = PopulationFromJson(ReadFile(o.b), nullptr);
  const double v = Rpp(loaded.game, a, b, MakeEval(o.game, o.common.seed), o.tol);
  RunSummary run;
  run.command = "eval rpp";
  run.summary = Json{{"rpp", Number(v)}};
  run.tables.push_back(Table{"rpp", {"a", "b", "rpp"}, {{o.a, o.b, Number(v)}}});
  WriteRun(dir, run);
  out << "rpp " << FormatNumber(v) << "\n";
  return kExitOk;
}

struct EloOptions {
  Common common;
  std::string ledger;
  double k = 32.0;
  double base = 1200.0;
  std::string roster;
};

MatchLedger ReadLedger(const std::string& path) {
  std::istringstream in(ReadFile(path));
  MatchLedger ledger;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ',')) f.push_back(item);
    if (f.size() != 3) {
      throw Error("ledger line " + std::to_string(line_no) + ": expected a,b,score");
    }
    double score = 0;
    try {
      score = std::stod(f[2]);
    } catch (const std::exception&) {
      if (line_no == 1) continue;  // header
      throw Error("ledger line " + std::to_string(line_no) + ": bad score");
    }
    ledger.push_back({f[0], f[1], score});
  }
  return ledger;
}

int RunElo(const EloOptions& o, const CLI::App* app, const std::vector<std::string>& args,
           std::ostream& out) {
  const fs::path dir = OutputDir(o.common);
  WriteManifest(dir, "eval elo", args, Json{{"ledger", o.ledger}}, app, o.common,
                std::nullopt);
  const auto ratings = EloRatings(ReadLedger(o.ledger), o.k, o.base, SplitList(o.roster));
  RunSummary run;
  run.command = "eval elo";
  run.summary = Json{{"players", ratings.size()}};
  Table table{"elo", {"id", "rating"}, {}};
  for (const auto& r : ratings) {
    table.rows.push_back({r.id, Number(r.rating)});
    out << r.id << " " << FormatNumber(r.rating) << "\n";
  }
  run.tables.push_back(table);
  WriteRun(dir, run);
  return kExitOk;
}

// ---- game / emit ---------------------------------------------------------

struct GameCommandOptions {
  Common common;
  GameOptions game;
  std::string file;
};

int RunGameCommand(const GameCommandOptions& o, const CLI::App* app,
                   const std::vector<std::string>& args, std::ostream& out) {
  const fs::path dir = OutputDir(o.common);
  const auto loaded = LoadGame(o.game, o.common.seed);
  WriteManifest(dir, "game", args, loaded.spec, app, o.common, std::nullopt);
  const fs::path file = o.file.empty() ? dir / "game.json" : fs::path(o.file);
  WriteFile(file, GameToJson(loaded.game));
  const auto& layout = loaded.game.layout();
  RunSummary run;
  run.command = "game";
  run.summary = Json{{"kind", loaded.game.kind()},
                     {"team_sizes", layout.team_sizes()},
                     {"action_counts", layout.action_counts()},
                     {"file", file.string()}};
  WriteRun(dir, run);
  out << "wrote " << loaded.game.kind() << " game to " << file.string() << "\n";
  return kExitOk;
}

struct EmitOptions {
  Common common;
  std::string run;
  std::string format = "csv";
};

int RunEmit(const EmitOptions& o, std::ostream& out) {
  const fs::path dir = o.run.empty() ? OutputDir(o.common) : fs::path(o.run);
  for (const auto& p : EmitReport(dir, ParseFormat(Lower(o.format)))) {
    out << "wrote " << p.string() << "\n";
  }
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"teamcorr: equilibria, PSRO and exploitability for two-team zero-sum games"};
  app.name("teamcorr");
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  app.set_version_flag("--version", TEAMCORR_VERSION);
  // Option defaults per subcommand live in sections: [psro], [eval.exploit].
  app.set_config("--config", "", "TOML/INI file of option defaults, one section per command");
  app.fallthrough();

  SolveOptions solve;
  auto* solve_cmd = app.add_subcommand("solve", "Joint-action maxmin (CTME) of a game or matrix");
  AddCommon(solve_cmd, solve.common);
  AddGameOptions(solve_cmd, solve.game);
  solve_cmd->add_option("--matrix", solve.matrix, "JSON file with a payoff matrix (rows)");
  solve_cmd->add_option("--team", solve.team, "Maximising team (1 or 2)")
      ->check(CLI::Range(1, 2));
  solve_cmd->add_option("--mode", solve.mode, "ctme or shared");
  solve_cmd->add_option("--tol", solve.tol, "Duality-gap tolerance");

  VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "Check a profile against a deviation space");
  AddCommon(verify_cmd, verify.common);
  AddGameOptions(verify_cmd, verify.game);
  verify_cmd->add_option("--profile", verify.profile,
                         "all-zeros, maxmin, or a JSON file with team1/team2 policies");
  verify_cmd->add_option("--class", verify.cls, "none, pivot, sequential or joint");
  verify_cmd->add_option("--pivot", verify.pivot, "Pivot member for the pivot class");
  verify_cmd->add_option("--order", verify.order, "Sequential member order, e.g. 1,0");
  verify_cmd->add_option("--f-team", verify.f_team, "Sample factor f_T");
  verify_cmd->add_option("--f-policy", verify.f_policy, "Sample factor f_pi");
  verify_cmd->add_option("--n-init", verify.n_init, "Sample factor N_init");
  verify_cmd->add_option("--delta-team", verify.delta_team);
  verify_cmd->add_option("--delta-policy", verify.delta_policy);
  verify_cmd->add_option("--epsilon", verify.epsilon,
                         "Gain tolerance (negative: 1e-6 exact, 2 stderr Monte-Carlo)");

  PsroOptions psro;
  auto* psro_cmd = app.add_subcommand("psro", "Run the PSRO loop with a chosen oracle");
  AddCommon(psro_cmd, psro.common);
  AddGameOptions(psro_cmd, psro.game);
  psro_cmd->add_option("--oracle", psro.oracle, "sebr, shared, individual or joint");
  psro_cmd->add_option("--max-iter", psro.max_iter);
  psro_cmd->add_option("--tol", psro.tol, "BR-gain threshold (0: automatic)");
  psro_cmd->add_option("--meta-tol", psro.meta_tol);
  psro_cmd->add_option("--restarts", psro.restarts, "SeBR seeded restarts");
  psro_cmd->add_option("--sebr-iter", psro.sebr_iter, "SeBR sweep cap");
  psro_cmd->add_option("--order", psro.order, "SeBR member order, e.g. 1,0");
  psro_cmd->add_option("--sweeps", psro.sweeps, "Individual-oracle sweep cap");

  auto* eval_cmd = app.add_subcommand("eval", "Exploitability, RPP and Elo");
  eval_cmd->require_subcommand(1);
  ExploitOptions exploit;
  auto* exploit_cmd = eval_cmd->add_subcommand(
      "exploit", "Opponent reward against a population's meta-strategy per class");
  AddCommon(exploit_cmd, exploit.common);
  AddGameOptions(exploit_cmd, exploit.game);
  exploit_cmd->add_option("--population", exploit.population, "population.json from psro")
      ->required();
  exploit_cmd->add_option("--team", exploit.team, "Candidate team (1 or 2)")
      ->check(CLI::Range(1, 2));
  exploit_cmd->add_option("--classes", exploit.classes,
                          "all, or a list of Sequential,Joint,Synchronized,NoCorrelation,Random");
  exploit_cmd->add_option("--id", exploit.id, "Candidate id in the report");
  exploit_cmd->add_option("--restarts", exploit.restarts, "SeBR seeded restarts");
  exploit_cmd->add_option("--sweeps", exploit.sweeps, "Individual-oracle sweep cap");

  RppOptions rpp;
  auto* rpp_cmd = eval_cmd->add_subcommand("rpp", "Relative population performance");
  AddCommon(rpp_cmd, rpp.common);
  AddGameOptions(rpp_cmd, rpp.game);
  rpp_cmd->add_option("--a", rpp.a, "First population.json")->required();
  rpp_cmd->add_option("--b", rpp.b, "Second population.json")->required();
  rpp_cmd->add_option("--tol", rpp.tol);

  EloOptions elo;
  auto* elo_cmd = eval_cmd->add_subcommand("elo", "Elo ratings from a match ledger");
  AddCommon(elo_cmd, elo.common);
  elo_cmd->add_option("--ledger", elo.ledger, "CSV with a,b,score rows")->required();
  elo_cmd->add_option("-k,--k", elo.k, "K factor");
  elo_cmd->add_option("--base", elo.base, "Initial rating");
  elo_cmd->add_option("--roster", elo.roster, "Allowed ids, comma separated");

  GameCommandOptions game;
  auto* game_cmd = app.add_subcommand("game", "Write a builtin game as JSON");
  AddCommon(game_cmd, game.common);
  AddGameOptions(game_cmd, game.game);
  game_cmd->add_option("--file", game.file, "Destination (default: <out>/game.json)");

  EmitOptions emit;
  auto* emit_cmd = app.add_subcommand("emit", "Re-render a run's tables");
  AddCommon(emit_cmd, emit.common);
  emit_cmd->add_option("--run", emit.run, "Run directory (default: the output directory)");
  emit_cmd->add_option("--format", emit.format, "csv or jsonl");

  std::vector<std::string> argv_store{"teamcorr"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  if (const auto* cfg = app.get_config_ptr(); cfg != nullptr && cfg->count() > 0) {
    const std::string path = cfg->as<std::string>();
    for (Common* c : {&solve.common, &verify.common, &psro.common, &exploit.common,
                      &rpp.common, &elo.common, &game.common, &emit.common}) {
      c->config_file = path;
    }
  }

  try {
    if (solve_cmd->parsed()) return RunSolve(solve, solve_cmd, args, out);
    if (verify_cmd->parsed()) return RunVerify(verify, verify_cmd, args, out);
    if (psro_cmd->parsed()) return RunPsroCommand(psro, psro_cmd, args, out);
    if (exploit_cmd->parsed()) return RunExploit(exploit, exploit_cmd, args, out);
    if (rpp_cmd->parsed()) return RunRppCommand(rpp, rpp_cmd, args, out);
    if (elo_cmd->parsed()) return RunElo(elo, elo_cmd, args, out);
    if (game_cmd->parsed()) return RunGameCommand(game, game_cmd, args, out);
    if (emit_cmd->parsed()) return RunEmit(emit, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  err << "error: no command\n";
  return kExitError;
}

}  // namespace teamcorr::cli
