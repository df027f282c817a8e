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

#include "teamcorr/grid_skirmish.h"

#include <climits>
#include <cmath>
#include <sstream>
#include <string>

namespace teamcorr {
namespace {

constexpr int kDx[] = {0, 0, -1, 1};
constexpr int kDy[] = {-1, 1, 0, 0};

TeamLayout SkirmishLayout(const SkirmishConfig& c) {
  c.Validate();
  return TeamLayout({c.team_size, c.team_size},
                    std::vector<int>(2 * c.team_size, GridSkirmish::kNumActions));
}

std::vector<int> DefaultStart(const SkirmishConfig& c) {
  std::vector<int> cells(2 * c.team_size);
  for (int i = 0; i < c.team_size; ++i) {
    const int x = i / c.height;
    const int y = i % c.height;
    cells[i] = y * c.width + x;
    cells[c.team_size + i] = y * c.width + (c.width - 1 - x);
  }
  return cells;
}

}  // namespace

void SkirmishConfig::Validate() const {
  if (width < 1 || height < 1 || team_size < 1) {
    throw DimensionError("grid and team sizes must be positive");
  }
  if (width * height < 2 * team_size) {
    throw DimensionError("grid has fewer cells than agents");
  }
  if (horizon < 1) throw DimensionError("horizon must be positive");
  if (!std::isfinite(damage) || damage < 0.0) {
    throw DimensionError("damage must be finite and nonnegative");
  }
  const std::vector<int> cells = start.empty() ? DefaultStart(*this) : start;
  if (static_cast<int>(cells.size()) != 2 * team_size) {
    throw DimensionError("start needs one cell per agent");
  }
  std::vector<char> used(width * height, 0);
  for (int c : cells) {
    if (c < 0 || c >= width * height) throw DimensionError("start cell off grid");
    if (used[c]) {
      throw DimensionError(start.empty()
                               ? "default start overlaps; give explicit cells"
                               : "start cells must be distinct");
    }
    used[c] = 1;
  }
}

GridSkirmish::GridSkirmish(SkirmishConfig config)
    : StochasticTeamGame(SkirmishLayout(config), config.discount,
                         config.team_size * config.damage, config.horizon),
      cfg_(std::move(config)) {
  num_cells_ = cfg_.width * cfg_.height;
  num_agents_ = 2 * cfg_.team_size;
  radix_.assign(num_agents_, 1);
  long double placements = 1;
  for (int i = num_agents_ - 1; i >= 0; --i) {
    if (i + 1 < num_agents_) {
      radix_[i] = static_cast<int>(placements);
    }
    placements *= num_cells_ - i;
    if (placements * (cfg_.horizon + 1) > INT_MAX) {
      throw BoundError("grid skirmish state space does not fit in an int");
    }
  }
  num_placements_ = static_cast<int>(placements);
  num_states_ = num_placements_ * (cfg_.horizon + 1);
  exact_feasible_ = num_placements_ <= kExactStepBound;
  if (!exact_feasible_ && !cfg_.allow_monte_carlo) {
    throw BoundError("grid skirmish has " + std::to_string(num_placements_) +
                     " placements per step; enable Monte-Carlo to build it");
  }
  start_state_ =
      StateOf(0, cfg_.start.empty() ? DefaultStart(cfg_) : cfg_.start);
}

int GridSkirmish::PlacementIndex(const std::vector<int>& cells) const {
  if (static_cast<int>(cells.size()) != num_agents_) {
    throw DimensionError("placement needs one cell per agent");
  }
  std::vector<char> used(num_cells_, 0);
  int index = 0;
  for (int i = 0; i < num_agents_; ++i) {
    const int c = cells[i];
    if (c < 0 || c >= num_cells_ || used[c]) {
      throw DimensionError("invalid placement");
    }
    int digit = 0;
    for (int d = 0; d < c; ++d) digit += used[d] ? 0 : 1;
    used[c] = 1;
    index += digit * radix_[i];
  }
  return index;
}

std::vector<int> GridSkirmish::PlacementCells(int index) const {
  std::vector<char> used(num_cells_, 0);
  std::vector<int> cells(num_agents_);
  for (int i = 0; i < num_agents_; ++i) {
    int digit = index / radix_[i];
    index %= radix_[i];
    for (int c = 0; c < num_cells_; ++c) {
      if (used[c]) continue;
      if (digit-- == 0) {
        cells[i] = c;
        used[c] = 1;
        break;
      }
    }
  }
  return cells;
}

std::vector<int> GridSkirmish::Cells(int state) const {
  if (state < 0 || state >= num_states_) throw DimensionError("state out of range");
  return PlacementCells(state % num_placements_);
}

int GridSkirmish::StateOf(int step, const std::vector<int>& cells) const {
  if (step < 0 || step > cfg_.horizon) throw DimensionError("step out of range");
  return step * num_placements_ + PlacementIndex(cells);
}

std::vector<Outcome> GridSkirmish::initial_distribution() const {
  return {{start_state_, 1.0}};
}

StepResult GridSkirmish::Step(int state, std::span<const int> actions) const {
  if (static_cast<int>(actions.size()) != num_agents_) {
    throw DimensionError("need one action per agent");
  }
  for (int a : actions) {
    if (a < 0 || a >= kNumActions) throw DimensionError("action out of range");
  }
  if (terminal(state)) return {0.0, {{state, 1.0}}};
  const int step = StepIndex(state);
  std::vector<int> cells = Cells(state);
  const int n = cfg_.team_size;
  auto adjacent = [&](int a, int b) {
    const int ax = a % cfg_.width, ay = a / cfg_.width;
    const int bx = b % cfg_.width, by = b / cfg_.width;
    return std::abs(ax - bx) + std::abs(ay - by) == 1;
  };

  double reward = 0.0;
  for (int i = 0; i < num_agents_; ++i) {
    if (actions[i] != kAttack) continue;
    const bool first = i < n;
    const int lo = first ? n : 0;
    for (int j = lo; j < lo + n; ++j) {
      if (adjacent(cells[i], cells[j])) {
        reward += first ? cfg_.damage : -cfg_.damage;
        break;
      }
    }
  }

  std::vector<char> occupied(num_cells_, 0);
  for (int c : cells) occupied[c] = 1;
  for (int i = 0; i < num_agents_; ++i) {
    const int a = actions[i];
    if (a > kRight) continue;
    const int x = cells[i] % cfg_.width + kDx[a];
    const int y = cells[i] / cfg_.width + kDy[a];
    if (x < 0 || x >= cfg_.width || y < 0 || y >= cfg_.height) continue;
    const int target = y * cfg_.width + x;
    if (occupied[target]) continue;
    occupied[cells[i]] = 0;
    occupied[target] = 1;
    cells[i] = target;
  }
  return {reward, {{StateOf(step + 1, cells), 1.0}}};
}

std::string GridSkirmish::Render(int state) const {
  const auto cells = Cells(state);
  std::string grid(num_cells_, '.');
  for (int i = 0; i < num_agents_; ++i) {
    grid[cells[i]] = i < cfg_.team_size ? '1' : '2';
  }
  std::ostringstream out;
  out << "step " << StepIndex(state) << '\n';
  for (int y = 0; y < cfg_.height; ++y) {
    out << grid.substr(static_cast<std::size_t>(y) * cfg_.width, cfg_.width)
        << '\n';
  }
  return out.str();
}

}  // namespace teamcorr
