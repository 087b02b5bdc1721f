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
#include <optional>
#include <string>
#include <vector>

#include "quell/schema.hpp"

namespace quell {

// One selected field, validated against the schema at parse time. List
// fields accept the built-in `first` argument (a non-negative truncation
// bound); nothing else takes arguments.
struct Selection {
  std::string field;
  std::string parent_type;
  TypeRef type;
  std::optional<int64_t> first;
  std::vector<Selection> subs;  // empty for scalar leaves
};

struct Query {
  std::string root_type;
  std::vector<Selection> roots;
};

// Parses `{ ... }` (an optional leading `query [Name]` is accepted) and
// validates every selection: unknown fields, arguments on non-list fields,
// negative `first`, scalar sub-selections and missing object sub-selections
// are all parse errors.
Query parse_query(const std::string& query_text, const Schema& schema);

}  // namespace quell
