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

#include "quell/scalar.hpp"

#include <chrono>
#include <cstdio>

#include "quell/error.hpp"

namespace quell {

namespace {

bool all_digits(const std::string& s, size_t from, size_t count) {
  if (from + count > s.size()) return false;
  for (size_t i = from; i < from + count; ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  return true;
}

int num(const std::string& s, size_t from, size_t count) {
  int v = 0;
  for (size_t i = from; i < from + count; ++i) v = v * 10 + (s[i] - '0');
  return v;
}

}  // namespace

const char* scalar_kind_name(ScalarKind kind) {
  switch (kind) {
    case ScalarKind::null: return "null";
    case ScalarKind::integer: return "integer";
    case ScalarKind::real: return "float";
    case ScalarKind::text: return "text";
    case ScalarKind::date: return "date";
    case ScalarKind::boolean: return "boolean";
  }
  return "unknown";
}

CivilTime civil_from_seconds(int64_t seconds) {
  using namespace std::chrono;
  const sys_seconds tp{std::chrono::seconds{seconds}};
  const auto dp = floor<days>(tp);
  const year_month_day ymd{dp};
  const auto tod = tp - dp;
  const auto h = duration_cast<hours>(tod);
  const auto m = duration_cast<minutes>(tod - h);
  const auto s = duration_cast<std::chrono::seconds>(tod - h - m);
  return CivilTime{int(ymd.year()), unsigned(ymd.month()), unsigned(ymd.day()),
                   int(h.count()), int(m.count()), int(s.count())};
}

int64_t seconds_from_civil(const CivilTime& c) {
  using namespace std::chrono;
  const year_month_day ymd{year{c.year}, month{c.month}, day{c.day}};
  if (!ymd.ok()) {
    throw Error(ErrorKind::parse, "invalid calendar date");
  }
  const sys_days dp{ymd};
  return duration_cast<std::chrono::seconds>(dp.time_since_epoch()).count() +
         c.hour * 3600 + c.minute * 60 + c.second;
}

int64_t parse_rfc3339(const std::string& text) {
  // "YYYY-MM-DD" or "YYYY-MM-DDTHH:MM:SSZ", UTC only.
  const bool date_only = text.size() == 10;
  if (!date_only && text.size() != 20) {
    throw Error(ErrorKind::parse, "invalid RFC 3339 timestamp: '" + text + "'");
  }
  if (!all_digits(text, 0, 4) || text[4] != '-' || !all_digits(text, 5, 2) ||
      text[7] != '-' || !all_digits(text, 8, 2)) {
    throw Error(ErrorKind::parse, "invalid RFC 3339 timestamp: '" + text + "'");
  }
  CivilTime c{num(text, 0, 4), unsigned(num(text, 5, 2)),
              unsigned(num(text, 8, 2)), 0, 0, 0};
  if (!date_only) {
    if (text[10] != 'T' || !all_digits(text, 11, 2) || text[13] != ':' ||
        !all_digits(text, 14, 2) || text[16] != ':' ||
        !all_digits(text, 17, 2) || text[19] != 'Z') {
      throw Error(ErrorKind::parse,
                  "invalid RFC 3339 timestamp: '" + text + "'");
    }
    c.hour = num(text, 11, 2);
    c.minute = num(text, 14, 2);
    c.second = num(text, 17, 2);
    if (c.hour > 23 || c.minute > 59 || c.second > 59) {
      throw Error(ErrorKind::parse,
                  "invalid RFC 3339 timestamp: '" + text + "'");
    }
  }
  return seconds_from_civil(c);
}

std::string format_rfc3339(int64_t seconds) {
  const CivilTime c = civil_from_seconds(seconds);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02d:%02d:%02dZ", c.year,
                c.month, c.day, c.hour, c.minute, c.second);
  return buf;
}

}  // namespace quell
