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

#ifndef TEAMCORR_TYPES_H_
#define TEAMCORR_TYPES_H_

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace teamcorr {

// Team 1 is kFirst, team 2 is kSecond. Rewards are stored from kFirst's
// point of view; the second team's reward is always the negation.
enum class Team : int { kFirst = 0, kSecond = 1 };

constexpr int Index(Team team) { return static_cast<int>(team); }
constexpr Team Other(Team team) {
  return team == Team::kFirst ? Team::kSecond : Team::kFirst;
}
constexpr double Sign(Team team) { return team == Team::kFirst ? 1.0 : -1.0; }
inline Team TeamFromIndex(int index) {
  if (index != 0 && index != 1) {
    throw std::invalid_argument("team index must be 0 or 1");
  }
  return static_cast<Team>(index);
}
// 1-based label used in reports and on the command line.
inline int Label(Team team) { return Index(team) + 1; }

using Distribution = std::vector<double>;
using JointAction = std::vector<int>;  // one action per team member

// Probability vectors are accepted when they sum to one within this bound.
inline constexpr double kSimplexTolerance = 1e-12;
// Ties between values closer than this are broken lexicographically.
inline constexpr double kTieTolerance = 1e-12;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when an input does not fit the game (wrong team size, action count,
// observation index, ...).
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Raised when an exact computation would exceed its configured size bound.
class BoundError : public Error {
 public:
  using Error::Error;
};

bool IsDistribution(std::span<const double> probs,
                    double tolerance = kSimplexTolerance);
void CheckDistribution(std::span<const double> probs, const std::string& what);

// Clamps tiny negative entries produced by floating point and renormalises.
Distribution CleanDistribution(std::span<const double> probs);

double Dot(std::span<const double> a, std::span<const double> b);

std::string FormatJointAction(std::span<const int> actions);

}  // namespace teamcorr

#endif  // TEAMCORR_TYPES_H_
