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

#include "quell/engine.hpp"

#include <unordered_map>

#include "quell/reduce.hpp"

namespace quell {

ojson ResponseNode::to_json() const {
  if (const ScalarValue* sv = std::get_if<ScalarValue>(&value)) {
    return scalar_to_json(*sv);
  }
  if (const Object* obj = std::get_if<Object>(&value)) {
    ojson out = ojson::object();
    for (const auto& [name, child] : *obj) out[name] = child.to_json();
    return out;
  }
  ojson out = ojson::array();
  for (const ResponseNode& child : std::get<List>(value)) {
    out.push_back(child.to_json());
  }
  return out;
}

ojson ResponseDocument::to_json() const {
  ojson out = ojson::object();
  for (const auto& [name, child] : roots) out[name] = child.to_json();
  return out;
}

namespace {

ResponseNode resolve_object(const Selection& sel, const DataSource& source,
                            size_t row);

ResponseNode resolve_field(const Selection& sel, const DataSource& source,
                           const Record& record, size_t row) {
  if (sel.subs.empty()) {
    const ScalarValue* value = record.find(sel.field);
    return ResponseNode(value ? *value : ScalarValue{});
  }
  const std::string link_key = sel.parent_type + "." + sel.field;
  const std::vector<size_t>& targets = source.linked(link_key, row);
  if (sel.type.list) {
    ResponseNode::List list;
    size_t limit = targets.size();
    if (sel.first && size_t(*sel.first) < limit) limit = size_t(*sel.first);
    list.reserve(limit);
    for (size_t i = 0; i < limit; ++i) {
      list.push_back(resolve_object(sel, source, targets[i]));
    }
    return ResponseNode(std::move(list));
  }
  if (targets.empty()) return ResponseNode(ScalarValue{});
  return resolve_object(sel, source, targets.front());
}

ResponseNode resolve_object(const Selection& sel, const DataSource& source,
                            size_t row) {
  const Record& record = source.rows(sel.type.name)[row];
  ResponseNode::Object obj;
  obj.reserve(sel.subs.size());
  for (const Selection& sub : sel.subs) {
    obj.emplace_back(sub.field, resolve_field(sub, source, record, row));
  }
  return ResponseNode(std::move(obj));
}

}  // namespace

ResponseDocument resolve(const Query& query, const DataSource& source) {
  ResponseDocument doc;
  for (const Selection& sel : query.roots) {
    // Root fields are whole-table scans of their target type.
    if (sel.subs.empty() || !sel.type.list) {
      throw Error(ErrorKind::parse,
                  "root field " + sel.field +
                      " must be a list of objects to be resolvable");
    }
    const std::vector<Record>& table = source.rows(sel.type.name);
    size_t limit = table.size();
    if (sel.first && size_t(*sel.first) < limit) limit = size_t(*sel.first);
    ResponseNode::List list;
    list.reserve(limit);
    for (size_t row = 0; row < limit; ++row) {
      list.push_back(resolve_object(sel, source, row));
    }
    doc.roots.emplace_back(sel.field, ResponseNode(std::move(list)));
  }
  return doc;
}

namespace {

// One directive of a field's pipeline with its verdict already resolved.
// Verdicts depend on (role, field, directive) but never on the record, so
// they are computed once per field and reused across every row.
struct CompiledStep {
  Verdict::Kind kind;
  const std::string* directive;
  const Verdict* verdict;
};

struct PipelineCache {
  const Schema& schema;
  const Policy& policy;
  const std::string& role;
  std::unordered_map<const FieldDef*, std::vector<CompiledStep>> steps;

  const std::vector<CompiledStep>& for_field(const ObjectType& type,
                                             const FieldDef& field) {
    auto it = steps.find(&field);
    if (it != steps.end()) return it->second;
    std::vector<CompiledStep> compiled;
    compiled.reserve(field.directives.size());
    const std::string qualified = type.name + "." + field.name;
    for (const DirectiveUse& d : field.directives) {
      const Verdict& v = policy.resolve(role, qualified, d.name);
      compiled.push_back({v.kind, &d.name, &v});
    }
    return steps.emplace(&field, std::move(compiled)).first->second;
  }
};

[[noreturn]] void pipeline_bug(const std::string& what) {
  // Reaching this after validate_directive_placement and validate_policy
  // both passed means a validation gap, not a request problem.
  throw Error(ErrorKind::execution, what);
}

ScalarValue apply_directive(const std::string& directive,
                            const Verdict& verdict, ScalarValue value,
                            bool non_null_field, RandomSource& rng) {
  if (directive == "noop") return value;
  if (directive == "suppress") {
    if (non_null_field) {
      pipeline_bug("suppress applied to a non-null field");
    }
    return suppress(value);
  }
  if (is_null(value)) return value;  // nothing left to reduce
  if (directive == "generalize") {
    const auto* params = std::get_if<GeneralizationParams>(&verdict.params);
    if (!params) pipeline_bug("generalize verdict carries no parameters");
    switch (scalar_kind(value)) {
      case ScalarKind::integer:
      case ScalarKind::real: return generalize_number(value, *params);
      case ScalarKind::text: return generalize_string(value, *params);
      case ScalarKind::date: return generalize_date(value, *params);
      default:
        pipeline_bug("generalize on an incompatible value");
    }
  }
  if (directive == "noise") {
    const auto* params = std::get_if<NoiseParams>(&verdict.params);
    if (!params) pipeline_bug("noise verdict carries no parameters");
    switch (scalar_kind(value)) {
      case ScalarKind::integer:
      case ScalarKind::real: return noise_number(value, *params, rng);
      case ScalarKind::date: return noise_date(value, *params, rng);
      default:
        pipeline_bug("noise on an incompatible value");
    }
  }
  if (directive == "hash") {
    const auto* params = std::get_if<HashParams>(&verdict.params);
    if (!params) pipeline_bug("hash verdict carries no parameters");
    if (scalar_kind(value) != ScalarKind::text) {
      pipeline_bug("hash on a non-text value");
    }
    return hash_value(value, *params);
  }
  pipeline_bug("directive @" + directive + " has no registered reduction");
}

void reduce_leaf(ScalarValue& value, const FieldDef& field,
                 const std::vector<CompiledStep>& steps, RandomSource& rng) {
  for (const CompiledStep& step : steps) {
    switch (step.kind) {
      case Verdict::Kind::pass:
        break;
      case Verdict::Kind::suppress:
        if (field.type.non_null) {
          pipeline_bug("suppress verdict reached non-null field " + field.name);
        }
        value = ScalarValue{};
        return;  // short-circuits the rest of the pipeline
      case Verdict::Kind::apply:
        value = apply_directive(*step.directive, *step.verdict,
                                std::move(value), field.type.non_null, rng);
        break;
    }
  }
}

void walk(ResponseNode& node, const ObjectType& type, PipelineCache& cache,
          RandomSource& rng) {
  auto* obj = std::get_if<ResponseNode::Object>(&node.value);
  if (obj == nullptr) return;
  for (auto& [name, child] : *obj) {
    const FieldDef* field = type.field(name);
    if (field == nullptr) {
      pipeline_bug("response field " + name + " missing from type " +
                   type.name);
    }
    if (child.is_scalar()) {
      if (field->directives.empty()) continue;
      const std::vector<CompiledStep>& steps = cache.for_field(type, *field);
      reduce_leaf(std::get<ScalarValue>(child.value), *field, steps, rng);
    } else if (auto* list = std::get_if<ResponseNode::List>(&child.value)) {
      const ObjectType* target = cache.schema.type(field->type.name);
      if (target == nullptr) pipeline_bug("unknown type " + field->type.name);
      for (ResponseNode& element : *list) walk(element, *target, cache, rng);
    } else {
      const ObjectType* target = cache.schema.type(field->type.name);
      if (target == nullptr) pipeline_bug("unknown type " + field->type.name);
      walk(child, *target, cache, rng);
    }
  }
}

}  // namespace

void apply_pipeline(ResponseDocument& raw, const Schema& schema,
                    const Policy& policy, const std::string& role,
                    RandomSource& rng) {
  const ObjectType* root = schema.type(schema.query_root);
  if (root == nullptr) {
    throw Error(ErrorKind::execution,
                "schema lost its query root " + schema.query_root);
  }
  PipelineCache cache{schema, policy, role, {}};
  for (auto& [name, node] : raw.roots) {
    const FieldDef* field = root->field(name);
    if (field == nullptr) pipeline_bug("unknown root field " + name);
    const ObjectType* target = schema.type(field->type.name);
    if (target == nullptr) pipeline_bug("unknown type " + field->type.name);
    if (auto* list = std::get_if<ResponseNode::List>(&node.value)) {
      for (ResponseNode& element : *list) walk(element, *target, cache, rng);
    }
  }
}

ResponseDocument execute(const std::string& query_text, const Schema& schema,
                         const DataSource& source, const Policy& policy,
                         const std::string& role, RandomSource& rng) {
  const Query query = parse_query(query_text, schema);
  ResponseDocument doc = resolve(query, source);
  apply_pipeline(doc, schema, policy, role, rng);
  return doc;
}

}  // namespace quell
