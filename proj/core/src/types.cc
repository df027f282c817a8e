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

#include "teamcorr/types.h"

#include <cmath>
#include <numeric>
#include <sstream>

namespace teamcorr {

bool IsDistribution(std::span<const double> probs, double tolerance) {
  if (probs.empty()) return false;
  double total = 0.0;
  for (double p : probs) {
    if (!std::isfinite(p) || p < -tolerance) return false;
    total += p;
  }
  return std::abs(total - 1.0) <= tolerance * std::max<double>(1.0, probs.size());
}

void CheckDistribution(std::span<const double> probs, const std::string& what) {
  if (!IsDistribution(probs)) {
    throw DimensionError(what + " is not a probability distribution");
  }
}

Distribution CleanDistribution(std::span<const double> probs) {
  Distribution out(probs.begin(), probs.end());
  double total = 0.0;
  for (double& p : out) {
    if (p < 0.0) p = 0.0;
    total += p;
  }
  if (total <= 0.0) throw Error("cannot normalise an all-zero vector");
  for (double& p : out) p /= total;
  return out;
}

double Dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DimensionError("dot product size mismatch");
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

std::string FormatJointAction(std::span<const int> actions) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < actions.size(); ++i) {
    if (i > 0) out << ',';
    out << actions[i];
  }
  out << ')';
  return out.str();
}

}  // namespace teamcorr
