// Copyright 2026 The Quell Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "quell/random.hpp"

#include <cmath>

namespace quell {

double RandomSource::normal(double mean, double std_dev) {
  const double u1 = uniform01();
  const double u2 = uniform01();
  const double z = std::sqrt(-2.0 * std::log(u1)) *
                   std::cos(2.0 * 3.14159265358979323846 * u2);
  return mean + std_dev * z;
}

double RandomSource::laplace(double location, double scale) {
  const double u = uniform01();
  if (u < 0.5) {
    return location + scale * std::log(2.0 * u);
  }
  return location - scale * std::log(2.0 * (1.0 - u));
}

int64_t RandomSource::uniform_int(int64_t low, int64_t high) {
  const uint64_t span = uint64_t(high - low) + 1;
  return low + int64_t(engine_() % span);
}

}  // namespace quell
