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

#include "quell/json.hpp"

#include "quell/error.hpp"

namespace quell {

ojson scalar_to_json(const ScalarValue& value) {
  switch (scalar_kind(value)) {
    case ScalarKind::null: return nullptr;
    case ScalarKind::integer: return std::get<int64_t>(value);
    case ScalarKind::real: return std::get<double>(value);
    case ScalarKind::text: return std::get<std::string>(value);
    case ScalarKind::date: return format_rfc3339(std::get<Date>(value).seconds);
    case ScalarKind::boolean: return std::get<bool>(value);
  }
  return nullptr;
}

ScalarValue scalar_from_json(const ojson& value,
                             const std::string& scalar_name) {
  if (value.is_null()) return ScalarValue{};
  auto mismatch = [&]() -> ScalarValue {
    throw Error(ErrorKind::parse, "JSON value " + value.dump() +
                                      " does not fit scalar " + scalar_name);
  };
  if (scalar_name == "Int") {
    if (!value.is_number_integer()) return mismatch();
    return ScalarValue{value.get<int64_t>()};
  }
  if (scalar_name == "Float") {
    if (!value.is_number()) return mismatch();
    return ScalarValue{value.get<double>()};
  }
  if (scalar_name == "String" || scalar_name == "ID") {
    if (!value.is_string()) return mismatch();
    return ScalarValue{value.get<std::string>()};
  }
  if (scalar_name == "Boolean") {
    if (!value.is_boolean()) return mismatch();
    return ScalarValue{value.get<bool>()};
  }
  if (scalar_name == "Date") {
    if (!value.is_string()) return mismatch();
    return ScalarValue{Date{parse_rfc3339(value.get<std::string>())}};
  }
  throw Error(ErrorKind::parse, "unknown scalar " + scalar_name);
}

}  // namespace quell
