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
//
// Information-reduction transforms over scalar values. Everything in this
// header is a pure function of its arguments (plus the caller-owned random
// source for the noise family) and is usable without the gateway around it.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "quell/random.hpp"
#include "quell/scalar.hpp"

namespace quell {

enum class DateUnit { second, minute, hour, day, month, year };

const char* date_unit_name(DateUnit unit);
std::optional<DateUnit> date_unit_from_name(const std::string& name);
int64_t date_unit_seconds(DateUnit unit);  // month/year are not fixed-length

// Parameters for the generalize transform. Which member applies depends on
// the value being generalized: step for numbers, unit for dates,
// visible_count/mask_char for text. mask_char is one Unicode scalar value,
// stored UTF-8 encoded.
struct GeneralizationParams {
  std::optional<double> step;
  std::optional<DateUnit> unit;
  std::optional<int64_t> visible_count;
  std::string mask_char = "*";

  // Checks the context-free invariants (step > 0, visible_count >= 0,
  // mask_char a single character). Throws ErrorKind::parameter.
  void validate() const;
};

struct NoiseParams {
  std::string distribution;                   // key into noise_distributions()
  std::map<std::string, double> dist_params;  // named per distribution
  DateUnit date_unit = DateUnit::second;      // date targets only

  void validate() const;
};

struct HashParams {
  int output_bits = 256;  // 224 | 256 | 384 | 512

  void validate() const;
};

// A sampling distribution usable by the noise transform. New entries only
// need a name, the ordered parameter list, a constraint check, and a sampler.
struct NoiseDistribution {
  std::vector<std::string> required_params;
  // Returns an error message for bad parameters, empty string when fine.
  std::string (*check)(const std::map<std::string, double>&);
  double (*sample)(const std::map<std::string, double>&, RandomSource&);
  double (*variance)(const std::map<std::string, double>&);
  double (*mean)(const std::map<std::string, double>&);
};

const std::map<std::string, NoiseDistribution>& noise_distributions();

// --- transforms -----------------------------------------------------------
//
// All of them throw ErrorKind::parameter for invalid parameters and
// ErrorKind::range when a result cannot be represented. Value/parameter
// shape mismatches (e.g. generalize_number on text) are the caller's bug and
// throw ErrorKind::execution.

// Buckets a number onto the largest multiple of step not above it, so one
// number stands for the whole range [r, r + step). Integer inputs keep their
// integer variant and require an integral step.
ScalarValue generalize_number(const ScalarValue& value,
                              const GeneralizationParams& params);

// Keeps the first visible_count characters and masks the rest; length and
// prefix are preserved (counted in Unicode scalar values).
ScalarValue generalize_string(const ScalarValue& value,
                              const GeneralizationParams& params);

// Truncates the timestamp down to the start of its containing unit.
ScalarValue generalize_date(const ScalarValue& value,
                            const GeneralizationParams& params);

// Adds one sample from the configured distribution. Integer targets round to
// the nearest integer, ties away from zero; float targets stay unrounded.
ScalarValue noise_number(const ScalarValue& value, const NoiseParams& params,
                         RandomSource& rng);

// Adds sample * date_unit seconds, rounded to whole seconds. The result must
// stay inside [1970-01-01, 9999-12-31].
ScalarValue noise_date(const ScalarValue& value, const NoiseParams& params,
                       RandomSource& rng);

// Lowercase hex SHA3 digest of the UTF-8 bytes.
ScalarValue hash_value(const ScalarValue& value, const HashParams& params);

// The constant-Null function.
ScalarValue suppress(const ScalarValue& value);

// One-shot SHA3 helper; bits must be 224, 256, 384 or 512.
std::string sha3_hex(const std::string& bytes, int bits);

// Number of Unicode scalar values in a UTF-8 string (invalid bytes count as
// one each).
size_t utf8_length(const std::string& text);

}  // namespace quell
