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
#include <string>
#include <variant>

namespace quell {

// UTC timestamp with second granularity. Kept distinct from Int so the
// reduction pipeline can tell dates from plain numbers; there is no
// timezone-bearing variant anywhere in the value model.
struct Date {
  int64_t seconds = 0;  // since 1970-01-01T00:00:00Z

  friend bool operator==(const Date&, const Date&) = default;
  friend auto operator<=>(const Date&, const Date&) = default;
};

// Latest timestamp the pipeline accepts: 9999-12-31T23:59:59Z.
inline constexpr int64_t max_date_seconds = 253402300799;

// Leaf value flowing through resolvers and reduction transforms. Null is an
// explicit variant, not an absent value.
using ScalarValue =
    std::variant<std::monostate, int64_t, double, std::string, Date, bool>;

enum class ScalarKind { null, integer, real, text, date, boolean };

inline ScalarKind scalar_kind(const ScalarValue& v) {
  return static_cast<ScalarKind>(v.index());
}

inline bool is_null(const ScalarValue& v) {
  return std::holds_alternative<std::monostate>(v);
}

const char* scalar_kind_name(ScalarKind kind);

// RFC 3339 in the profile "YYYY-MM-DDTHH:MM:SSZ"; a bare date is accepted on
// input as midnight UTC. Throws ErrorKind::parse on anything else.
int64_t parse_rfc3339(const std::string& text);
std::string format_rfc3339(int64_t seconds);

// Calendar pieces of a timestamp, used by date generalization.
struct CivilTime {
  int year;
  unsigned month;  // 1..12
  unsigned day;    // 1..31
  int hour;
  int minute;
  int second;
};

CivilTime civil_from_seconds(int64_t seconds);
int64_t seconds_from_civil(const CivilTime& c);

}  // namespace quell
