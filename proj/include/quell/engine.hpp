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
// Query execution: resolve raw values from the store, then run every
// directive-annotated leaf through its reduction pipeline under the
// requester's role.

#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "quell/data.hpp"
#include "quell/json.hpp"
#include "quell/policy.hpp"
#include "quell/query.hpp"
#include "quell/random.hpp"
#include "quell/schema.hpp"

namespace quell {

// A response tree mirroring the query's selection set. Field order equals
// selection order; list order is the store's insertion order.
struct ResponseNode {
  using Object = std::vector<std::pair<std::string, ResponseNode>>;
  using List = std::vector<ResponseNode>;

  std::variant<ScalarValue, Object, List> value;

  ResponseNode() : value(ScalarValue{}) {}
  explicit ResponseNode(ScalarValue v) : value(std::move(v)) {}
  explicit ResponseNode(Object v) : value(std::move(v)) {}
  explicit ResponseNode(List v) : value(std::move(v)) {}

  bool is_scalar() const { return value.index() == 0; }
  ojson to_json() const;
};

struct ResponseDocument {
  ResponseNode::Object roots;

  ojson to_json() const;
};

// Fetches raw, unreduced values. List order is insertion order truncated by
// `first`; a 1:1 link with no target resolves to Null.
ResponseDocument resolve(const Query& query, const DataSource& source);

// Transforms every annotated leaf in place: directives run in declaration
// order, each under the verdict resolve_verdict gives for (role, field,
// directive). Suppress short-circuits the rest of the field's pipeline; Null
// leaves pass through everything except suppress; unannotated fields are
// untouched. Shape never changes. Throws ErrorKind::execution on
// parameter/type mismatches that schema and policy validation would have
// caught.
void apply_pipeline(ResponseDocument& raw, const Schema& schema,
                    const Policy& policy, const std::string& role,
                    RandomSource& rng);

// parse_query -> resolve -> apply_pipeline; the one public entry point.
ResponseDocument execute(const std::string& query_text, const Schema& schema,
                         const DataSource& source, const Policy& policy,
                         const std::string& role, RandomSource& rng);

}  // namespace quell
