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

#include "quell/reduce.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "quell/error.hpp"

namespace quell {

namespace {

[[noreturn]] void param_error(const std::string& msg) {
  throw Error(ErrorKind::parameter, msg);
}

[[noreturn]] void shape_error(const char* op, const ScalarValue& v) {
  throw Error(ErrorKind::execution,
              std::string(op) + " cannot take a " +
                  scalar_kind_name(scalar_kind(v)) + " value");
}

std::string check_laplace(const std::map<std::string, double>& p) {
  if (!p.count("location") || !p.count("scale")) {
    return "laplace needs location and scale";
  }
  if (!(p.at("scale") > 0)) return "laplace scale must be > 0";
  return "";
}

std::string check_normal(const std::map<std::string, double>& p) {
  if (!p.count("mean") || !p.count("std_dev")) {
    return "normal needs mean and std_dev";
  }
  if (p.at("std_dev") < 0) return "normal std_dev must be >= 0";
  return "";
}

std::string check_uniform(const std::map<std::string, double>& p) {
  if (!p.count("low") || !p.count("high")) return "uniform needs low and high";
  if (p.at("low") > p.at("high")) return "uniform needs low <= high";
  return "";
}

// Number of bytes in the UTF-8 sequence starting with lead byte b; 1 for
// invalid leads so malformed input degrades to byte-wise masking.
size_t utf8_seq_len(unsigned char b) {
  if (b < 0x80) return 1;
  if ((b >> 5) == 0x6) return 2;
  if ((b >> 4) == 0xe) return 3;
  if ((b >> 3) == 0x1e) return 4;
  return 1;
}

}  // namespace

const char* date_unit_name(DateUnit unit) {
  switch (unit) {
    case DateUnit::second: return "second";
    case DateUnit::minute: return "minute";
    case DateUnit::hour: return "hour";
    case DateUnit::day: return "day";
    case DateUnit::month: return "month";
    case DateUnit::year: return "year";
  }
  return "unknown";
}

std::optional<DateUnit> date_unit_from_name(const std::string& name) {
  if (name == "second") return DateUnit::second;
  if (name == "minute") return DateUnit::minute;
  if (name == "hour") return DateUnit::hour;
  if (name == "day") return DateUnit::day;
  if (name == "month") return DateUnit::month;
  if (name == "year") return DateUnit::year;
  return std::nullopt;
}

int64_t date_unit_seconds(DateUnit unit) {
  switch (unit) {
    case DateUnit::second: return 1;
    case DateUnit::minute: return 60;
    case DateUnit::hour: return 3600;
    case DateUnit::day: return 86400;
    default:
      throw Error(ErrorKind::parameter,
                  std::string(date_unit_name(unit)) +
                      " has no fixed length in seconds");
  }
}

const std::map<std::string, NoiseDistribution>& noise_distributions() {
  static const std::map<std::string, NoiseDistribution> registry = {
      {"laplace",
       {{"location", "scale"},
        &check_laplace,
        [](const std::map<std::string, double>& p, RandomSource& rng) {
          return rng.laplace(p.at("location"), p.at("scale"));
        },
        [](const std::map<std::string, double>& p) {
          return 2.0 * p.at("scale") * p.at("scale");
        },
        [](const std::map<std::string, double>& p) {
          return p.at("location");
        }}},
      {"normal",
       {{"mean", "std_dev"},
        &check_normal,
        [](const std::map<std::string, double>& p, RandomSource& rng) {
          return rng.normal(p.at("mean"), p.at("std_dev"));
        },
        [](const std::map<std::string, double>& p) {
          return p.at("std_dev") * p.at("std_dev");
        },
        [](const std::map<std::string, double>& p) { return p.at("mean"); }}},
      {"uniform",
       {{"low", "high"},
        &check_uniform,
        [](const std::map<std::string, double>& p, RandomSource& rng) {
          return rng.uniform(p.at("low"), p.at("high"));
        },
        [](const std::map<std::string, double>& p) {
          const double w = p.at("high") - p.at("low");
          return w * w / 12.0;
        },
        [](const std::map<std::string, double>& p) {
          return (p.at("low") + p.at("high")) / 2.0;
        }}},
  };
  return registry;
}

void GeneralizationParams::validate() const {
  if (step && !(*step > 0)) param_error("generalization step must be > 0");
  if (visible_count && *visible_count < 0) {
    param_error("visible_count must be >= 0");
  }
  if (mask_char.empty() || utf8_length(mask_char) != 1) {
    param_error("mask_char must be a single character");
  }
}

void NoiseParams::validate() const {
  auto it = noise_distributions().find(distribution);
  if (it == noise_distributions().end()) {
    param_error("unknown noise distribution '" + distribution + "'");
  }
  for (const auto& [key, _] : dist_params) {
    const auto& req = it->second.required_params;
    if (std::find(req.begin(), req.end(), key) == req.end()) {
      param_error("distribution " + distribution +
                  " does not take parameter " + key);
    }
  }
  const std::string problem = it->second.check(dist_params);
  if (!problem.empty()) param_error(problem);
  if (date_unit != DateUnit::second && date_unit != DateUnit::minute &&
      date_unit != DateUnit::hour && date_unit != DateUnit::day) {
    param_error("noise date_unit must be second, minute, hour or day");
  }
}

void HashParams::validate() const {
  if (output_bits != 224 && output_bits != 256 && output_bits != 384 &&
      output_bits != 512) {
    param_error("hash output_bits must be 224, 256, 384 or 512");
  }
}

size_t utf8_length(const std::string& text) {
  size_t n = 0;
  for (size_t i = 0; i < text.size(); i += utf8_seq_len(text[i])) ++n;
  return n;
}

ScalarValue generalize_number(const ScalarValue& value,
                              const GeneralizationParams& params) {
  params.validate();
  if (!params.step) param_error("generalize on a number needs step");
  const double step = *params.step;

  if (const int64_t* iv = std::get_if<int64_t>(&value)) {
    if (step != std::floor(step) || step > double(std::numeric_limits<int64_t>::max())) {
      param_error("generalize step must be a whole number for integer values");
    }
    const int64_t s = int64_t(step);
    // Floored modulus; C++ % truncates toward zero.
    int64_t m = *iv % s;
    if (m < 0) m += s;
    if (m != 0 && *iv < std::numeric_limits<int64_t>::min() + m) {
      throw Error(ErrorKind::range, "generalized value below integer range");
    }
    return ScalarValue{*iv - m};
  }
  if (const double* fv = std::get_if<double>(&value)) {
    return ScalarValue{std::floor(*fv / step) * step};
  }
  shape_error("generalize_number", value);
}

ScalarValue generalize_string(const ScalarValue& value,
                              const GeneralizationParams& params) {
  params.validate();
  if (!params.visible_count) {
    param_error("generalize on text needs visible_count");
  }
  const std::string* text = std::get_if<std::string>(&value);
  if (!text) shape_error("generalize_string", value);

  std::string out;
  out.reserve(text->size());
  int64_t remaining = *params.visible_count;
  for (size_t i = 0; i < text->size();) {
    const size_t len = utf8_seq_len((*text)[i]);
    if (remaining > 0) {
      out.append(*text, i, len);
      --remaining;
    } else {
      out += params.mask_char;
    }
    i += len;
  }
  return ScalarValue{std::move(out)};
}

ScalarValue generalize_date(const ScalarValue& value,
                            const GeneralizationParams& params) {
  params.validate();
  if (!params.unit) param_error("generalize on a date needs unit");
  const Date* date = std::get_if<Date>(&value);
  if (!date) shape_error("generalize_date", value);

  const int64_t t = date->seconds;
  auto floor_to = [&](int64_t size) {
    int64_t m = t % size;
    if (m < 0) m += size;
    return t - m;
  };
  switch (*params.unit) {
    case DateUnit::second: return ScalarValue{Date{t}};
    case DateUnit::minute: return ScalarValue{Date{floor_to(60)}};
    case DateUnit::hour: return ScalarValue{Date{floor_to(3600)}};
    case DateUnit::day: return ScalarValue{Date{floor_to(86400)}};
    case DateUnit::month: {
      CivilTime c = civil_from_seconds(t);
      c.day = 1;
      c.hour = c.minute = c.second = 0;
      return ScalarValue{Date{seconds_from_civil(c)}};
    }
    case DateUnit::year: {
      CivilTime c = civil_from_seconds(t);
      c.month = 1;
      c.day = 1;
      c.hour = c.minute = c.second = 0;
      return ScalarValue{Date{seconds_from_civil(c)}};
    }
  }
  param_error("unknown date unit");
}

namespace {

double draw_sample(const NoiseParams& params, RandomSource& rng) {
  params.validate();
  return noise_distributions().at(params.distribution).sample(
      params.dist_params, rng);
}

// Rounds ties away from zero, like llround, with an explicit range check.
int64_t round_checked(double x, const char* what) {
  if (!std::isfinite(x) || x >= 9.3e18 || x <= -9.3e18) {
    throw Error(ErrorKind::range,
                std::string(what) + " left the representable range");
  }
  return std::llround(x);
}

}  // namespace

ScalarValue noise_number(const ScalarValue& value, const NoiseParams& params,
                         RandomSource& rng) {
  if (const int64_t* iv = std::get_if<int64_t>(&value)) {
    const double noised = double(*iv) + draw_sample(params, rng);
    return ScalarValue{round_checked(noised, "noised integer")};
  }
  if (const double* fv = std::get_if<double>(&value)) {
    return ScalarValue{*fv + draw_sample(params, rng)};
  }
  shape_error("noise_number", value);
}

ScalarValue noise_date(const ScalarValue& value, const NoiseParams& params,
                       RandomSource& rng) {
  const Date* date = std::get_if<Date>(&value);
  if (!date) shape_error("noise_date", value);
  const double sample = draw_sample(params, rng);
  const int64_t shift = round_checked(
      sample * double(date_unit_seconds(params.date_unit)), "date noise");
  int64_t result = 0;
  if (__builtin_add_overflow(date->seconds, shift, &result) || result < 0 ||
      result > max_date_seconds) {
    throw Error(ErrorKind::range,
                "noised date outside 1970-01-01..9999-12-31");
  }
  return ScalarValue{Date{result}};
}

ScalarValue hash_value(const ScalarValue& value, const HashParams& params) {
  params.validate();
  const std::string* text = std::get_if<std::string>(&value);
  if (!text) shape_error("hash_value", value);
  return ScalarValue{sha3_hex(*text, params.output_bits)};
}

ScalarValue suppress(const ScalarValue&) { return ScalarValue{}; }

std::string sha3_hex(const std::string& bytes, int bits) {
  const EVP_MD* md = nullptr;
  switch (bits) {
    case 224: md = EVP_sha3_224(); break;
    case 256: md = EVP_sha3_256(); break;
    case 384: md = EVP_sha3_384(); break;
    case 512: md = EVP_sha3_512(); break;
    default:
      throw Error(ErrorKind::parameter,
                  "hash output_bits must be 224, 256, 384 or 512");
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int digest_len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &digest_len, md,
                 nullptr) != 1) {
    throw Error(ErrorKind::execution, "SHA3 digest failed");
  }
  static const char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(digest_len * 2);
  for (unsigned int i = 0; i < digest_len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xf];
  }
  return out;
}

}  // namespace quell
