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

#ifndef TEAMCORR_GAME_H_
#define TEAMCORR_GAME_H_

#include <memory>
#include <string>
#include <vector>

#include "teamcorr/layout.h"
#include "teamcorr/normal_form_game.h"
#include "teamcorr/stochastic_game.h"

namespace teamcorr {

// Handle over either game representation. Cheap to copy; the underlying
// game is immutable and shared.
class Game {
 public:
  Game(NormalFormTeamGame game);  // NOLINT(runtime/explicit)
  Game(std::shared_ptr<const StochasticTeamGame> game);  // NOLINT

  bool is_normal_form() const { return normal_form_ != nullptr; }
  const NormalFormTeamGame& normal_form() const;
  const StochasticTeamGame& stochastic() const;
  const TeamLayout& layout() const;

  // A normal-form game has a single observation per player.
  int num_observations(int player) const;
  std::vector<int> ObservationCounts(Team team) const;

  std::string kind() const;

 private:
  std::shared_ptr<const NormalFormTeamGame> normal_form_;
  std::shared_ptr<const StochasticTeamGame> stochastic_;
};

}  // namespace teamcorr

#endif  // TEAMCORR_GAME_H_
