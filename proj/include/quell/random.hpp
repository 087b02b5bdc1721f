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

#pragma once

#include <cstdint>
#include <random>

namespace quell {

// Deterministic sample source: one seed, one stream. A source is single-owner
// state; give each in-flight request its own instance and never share one
// across threads. The samplers are implemented here rather than with
// std::*_distribution so that identical seeds produce identical streams on
// every standard library.
class RandomSource {
 public:
  explicit RandomSource(uint64_t seed) : engine_(seed) {}

  uint64_t next_bits() { return engine_(); }

  // Strictly inside (0, 1); half-step offset keeps both endpoints out.
  double uniform01() {
    return (double((engine_() >> 11)) + 0.5) * 0x1.0p-53;
  }

  double uniform(double low, double high) {
    return low + uniform01() * (high - low);
  }

  // Box-Muller, one value per two uniforms; no spare is cached so the draw
  // count per call is fixed.
  double normal(double mean, double std_dev);

  // Inverse CDF.
  double laplace(double location, double scale);

  // Uniform integer in [low, high] by rejection-free scaling; used by the
  // dataset generator, not by the noise transforms.
  int64_t uniform_int(int64_t low, int64_t high);

 private:
  std::mt19937_64 engine_;
};

}  // namespace quell
