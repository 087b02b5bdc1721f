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
// Parser for the SDL subset: object types with scalar or object fields,
// non-null and list wrappers, field-level directives without arguments, and
// `directive @name on FIELD_DEFINITION` declarations. Anything else from the
// full language (interfaces, unions, enums, inputs, mutations, fragments,
// descriptions) is rejected with an "unsupported" diagnostic.

#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "quell/error.hpp"

namespace quell {

bool is_builtin_scalar(const std::string& name);  // Int Float String ID Boolean Date

struct TypeRef {
  std::string name;
  bool list = false;
  bool non_null = false;          // outer wrapper
  bool element_non_null = false;  // inner wrapper, lists only

  bool operator==(const TypeRef& o) const {
    return name == o.name && list == o.list && non_null == o.non_null &&
           element_non_null == o.element_non_null;
  }
  std::string to_string() const;
};

struct DirectiveUse {
  std::string name;
  int line = 0;
  int col = 0;

  bool operator==(const DirectiveUse& o) const { return name == o.name; }
};

struct FieldDef {
  std::string name;
  TypeRef type;
  std::vector<DirectiveUse> directives;  // source order, preserved exactly
  int line = 0;
  int col = 0;

  bool operator==(const FieldDef& o) const {
    return name == o.name && type == o.type && directives == o.directives;
  }
  bool is_scalar() const { return is_builtin_scalar(type.name); }
};

struct ObjectType {
  std::string name;
  std::vector<FieldDef> fields;
  int line = 0;
  int col = 0;

  bool operator==(const ObjectType& o) const {
    return name == o.name && fields == o.fields;
  }
  const FieldDef* field(const std::string& field_name) const;
};

class Schema {
 public:
  // Declaration order is kept so the canonical printer round-trips.
  std::vector<ObjectType> types;
  std::vector<std::string> directives;  // declared names, source order
  std::string query_root = "Query";

  const ObjectType* type(const std::string& name) const;
  bool directive_declared(const std::string& name) const;

  // Positions are ignored: two schemas are equal when they declare the same
  // things in the same order.
  bool operator==(const Schema& o) const {
    return types == o.types && directives == o.directives &&
           query_root == o.query_root;
  }
};

// Throws ErrorKind::parse with a line:col prefix for syntax errors, duplicate
// declarations, undeclared directives and dangling type references.
Schema parse_schema(const std::string& sdl_text);

// Canonical SDL; parse(print_schema(s)) == s.
std::string print_schema(const Schema& schema);

// Type-compatibility of every directive attachment. Directives apply to
// scalar leaves only: generalize on Int/Float/String/Date, noise on
// Int/Float/Date, hash on String/ID, suppress on any nullable leaf, noop
// anywhere. An empty result means the schema is runnable.
std::vector<Diagnostic> validate_directive_placement(const Schema& schema);

}  // namespace quell
