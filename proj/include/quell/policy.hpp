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
// The declarative role -> field -> directive configuration. Policies are
// immutable after load and shared read-only across requests.
//
// File format (line oriented, '#' comments):
//
//   default_verdict = suppress          # optional; suppress when omitted
//
//   [role researcher]
//   field = Symptom.pain, directive = noise, distribution = laplace,
//       ... one entry per line: comma-separated key=value pairs ...
//   field = User.name, directive = suppress
//   field = Cycle.startDate, directive = generalize, verdict = pass
//
// Keys `field` and `directive` are required; `verdict` is pass, suppress or
// apply (the default); every other key is a parameter of the directive.
// Unknown roles and missing entries fall through to default_verdict, so the
// shipped default keeps annotated fields suppressed (fail-closed).

#pragma once

#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "quell/reduce.hpp"
#include "quell/schema.hpp"

namespace quell {

struct Verdict {
  enum class Kind { pass, suppress, apply };

  Kind kind = Kind::suppress;
  std::variant<std::monostate, GeneralizationParams, NoiseParams, HashParams>
      params;

  static Verdict pass() { return {Kind::pass, {}}; }
  static Verdict suppressed() { return {Kind::suppress, {}}; }
};

struct PolicyEntry {
  std::string role;
  std::string field;      // TypeName.fieldName
  std::string directive;  // suppress | generalize | noise | hash | noop
  Verdict verdict;
  int line = 0;
};

class Policy {
 public:
  std::vector<PolicyEntry> entries;
  Verdict::Kind default_verdict = Verdict::Kind::suppress;

  // Exact-match entry for (role, field, directive), else the default. Total
  // and deterministic.
  const Verdict& resolve(const std::string& role, const std::string& field,
                         const std::string& directive) const;

  void index();  // rebuilds the lookup table from entries

 private:
  std::unordered_map<std::string, size_t> by_key_;
  Verdict default_as_verdict_;
};

// Parses and eagerly validates a policy document. Errors carry the line
// number of the offending entry.
Policy load_policy(const std::string& config_text);

// Cross-checks a loaded policy against a schema: referenced fields must
// exist and carry the named directive, parameter sets must match the field's
// scalar type, and no annotated non-null field may be reachable by a
// Suppress verdict (explicit or via the default). Service startup treats any
// diagnostic as fatal.
std::vector<Diagnostic> validate_policy(const Policy& policy,
                                        const Schema& schema);

}  // namespace quell
