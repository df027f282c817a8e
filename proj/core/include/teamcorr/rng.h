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

#ifndef TEAMCORR_RNG_H_
#define TEAMCORR_RNG_H_

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace teamcorr {

// Portable 64-bit generator (SplitMix64). Unlike std::uniform_*_distribution
// the derived draws are identical across standard libraries, so seeded runs
// reproduce bit-for-bit everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t Next();
  // Uniform in [0, 1) with 53 bits of mantissa.
  double Uniform();
  double Uniform(double lo, double hi);
  // Uniform integer in [0, bound). bound must be positive.
  std::uint64_t Below(std::uint64_t bound);
  // Index drawn from a discrete distribution.
  int Sample(std::span<const double> probs);

 private:
  std::uint64_t state_;
};

// Derives an independent seed for a named sub-stream ("oracle", "mc", ...).
std::uint64_t SubSeed(std::uint64_t seed, std::string_view stream,
                      std::uint64_t index = 0);

// k distinct values from [0, n) in increasing order (Floyd's algorithm).
std::vector<std::uint64_t> SampleWithoutReplacement(std::uint64_t n,
                                                    std::uint64_t k, Rng& rng);

}  // namespace teamcorr

#endif  // TEAMCORR_RNG_H_
