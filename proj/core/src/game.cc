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

#include "teamcorr/game.h"

namespace teamcorr {

Game::Game(NormalFormTeamGame game)
    : normal_form_(std::make_shared<const NormalFormTeamGame>(std::move(game))) {}

Game::Game(std::shared_ptr<const StochasticTeamGame> game)
    : stochastic_(std::move(game)) {
  if (stochastic_ == nullptr) throw Error("null stochastic game");
}

const NormalFormTeamGame& Game::normal_form() const {
  if (!normal_form_) throw Error("game is not normal-form");
  return *normal_form_;
}

const StochasticTeamGame& Game::stochastic() const {
  if (!stochastic_) throw Error("game is not stochastic");
  return *stochastic_;
}

const TeamLayout& Game::layout() const {
  return normal_form_ ? normal_form_->layout() : stochastic_->layout();
}

int Game::num_observations(int player) const {
  if (player < 0 || player >= layout().num_players()) {
    throw DimensionError("player index out of range");
  }
  return normal_form_ ? 1 : stochastic_->num_observations(player);
}

std::vector<int> Game::ObservationCounts(Team team) const {
  std::vector<int> counts(layout().team_size(team));
  for (int m = 0; m < layout().team_size(team); ++m) {
    counts[m] = num_observations(layout().player_index(team, m));
  }
  return counts;
}

std::string Game::kind() const {
  return normal_form_ ? "normal_form" : stochastic_->kind();
}

}  // namespace teamcorr
