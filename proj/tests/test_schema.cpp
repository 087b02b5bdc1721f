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

#include <doctest.h>

#include "quell/data.hpp"
#include "quell/random.hpp"
#include "quell/schema.hpp"

using namespace quell;

TEST_CASE("a noise-annotated float field parses as attached") {
  const Schema schema = parse_schema(R"(
directive @noise on FIELD_DEFINITION

type Symptom {
    pain: Float @noise
}
)");
  const ObjectType* symptom = schema.type("Symptom");
  REQUIRE(symptom != nullptr);
  const FieldDef* pain = symptom->field("pain");
  REQUIRE(pain != nullptr);
  REQUIRE(pain->directives.size() == 1);
  CHECK(pain->directives[0].name == "noise");
  CHECK(pain->type.name == "Float");
  CHECK_FALSE(pain->type.non_null);
  CHECK(validate_directive_placement(schema).empty());
}

TEST_CASE("empty input is an explicit error") {
  CHECK_THROWS_WITH_AS(parse_schema(""), "empty schema", Error);
  CHECK_THROWS_AS(parse_schema("   # just a comment\n"), Error);
}

TEST_CASE("undeclared directives are rejected with a position") {
  try {
    parse_schema("type T { pain: Float @undeclared }");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("undeclared") != std::string::npos);
    CHECK(std::string(e.what()).find("1:") != std::string::npos);
  }
}

TEST_CASE("duplicates and dangling references are rejected") {
  CHECK_THROWS_AS(parse_schema("type T { a: Int }\ntype T { b: Int }"), Error);
  CHECK_THROWS_AS(parse_schema("type T { a: Int a: Float }"), Error);
  CHECK_THROWS_AS(parse_schema("type T { a: Missing }"), Error);
  CHECK_THROWS_AS(parse_schema(
      "directive @x on FIELD_DEFINITION\ndirective @x on FIELD_DEFINITION\n"
      "type T { a: Int }"), Error);
}

TEST_CASE("unsupported constructs fail loudly") {
  CHECK_THROWS_AS(parse_schema("interface I { a: Int }"), Error);
  CHECK_THROWS_AS(parse_schema("union U = A | B"), Error);
  CHECK_THROWS_AS(parse_schema("enum E { A B }"), Error);
  CHECK_THROWS_AS(parse_schema("input In { a: Int }"), Error);
  CHECK_THROWS_AS(parse_schema("type T { f(first: Int): Int }"), Error);
  CHECK_THROWS_AS(parse_schema("scalar JSON\ntype T { a: Int }"), Error);
  CHECK_THROWS_AS(
      parse_schema("directive @d on OBJECT\ntype T { a: Int }"), Error);
  CHECK_THROWS_AS(parse_schema("schema { mutation: M }\ntype M { a: Int }"),
                  Error);
}

TEST_CASE("scalar Date declarations and schema blocks are accepted") {
  const Schema schema = parse_schema(R"(
scalar Date
schema { query: Root }
type Root { things: [Thing!] }
type Thing { when: Date! }
)");
  CHECK(schema.query_root == "Root");
  CHECK(schema.type("Thing")->field("when")->type.non_null);
}

TEST_CASE("type wrappers parse and print") {
  const Schema schema = parse_schema(
      "type T { a: Int b: Int! c: [Int] d: [Int!] e: [Int!]! f: [T] }");
  const ObjectType* t = schema.type("T");
  CHECK(t->field("a")->type.to_string() == "Int");
  CHECK(t->field("b")->type.to_string() == "Int!");
  CHECK(t->field("c")->type.to_string() == "[Int]");
  CHECK(t->field("d")->type.to_string() == "[Int!]");
  CHECK(t->field("e")->type.to_string() == "[Int!]!");
  CHECK(t->field("f")->type.to_string() == "[T]");
}

TEST_CASE("the canonical printer round-trips") {
  const Schema schema = parse_schema(default_schema_sdl());
  const Schema reparsed = parse_schema(print_schema(schema));
  CHECK(schema == reparsed);
  CHECK(print_schema(schema) == print_schema(reparsed));
}

TEST_CASE("round-trip holds for randomized schemas and directive orders") {
  RandomSource rng(20220318);
  static const char* scalars[] = {"Int", "Float", "String", "ID", "Boolean",
                                  "Date"};
  for (int iteration = 0; iteration < 50; ++iteration) {
    std::string sdl;
    const int n_dirs = int(rng.uniform_int(1, 4));
    std::vector<std::string> dirs;
    for (int d = 0; d < n_dirs; ++d) {
      dirs.push_back("d" + std::to_string(d));
      sdl += "directive @" + dirs.back() + " on FIELD_DEFINITION\n";
    }
    const int n_types = int(rng.uniform_int(1, 4));
    for (int t = 0; t < n_types; ++t) {
      sdl += "type T" + std::to_string(t) + " {\n";
      const int n_fields = int(rng.uniform_int(1, 5));
      for (int f = 0; f < n_fields; ++f) {
        sdl += "  f" + std::to_string(f) + ": ";
        const bool object_field = rng.uniform01() < 0.3;
        std::string name = object_field
                               ? "T" + std::to_string(rng.uniform_int(0, n_types - 1))
                               : scalars[rng.uniform_int(0, 5)];
        if (rng.uniform01() < 0.3) {
          name = "[" + name + (rng.uniform01() < 0.5 ? "!]" : "]");
        }
        if (rng.uniform01() < 0.3) name += "!";
        sdl += name;
        // random directive pipeline; order must survive the round-trip
        std::vector<std::string> order(dirs);
        for (size_t i = order.size(); i > 1; --i) {
          std::swap(order[i - 1], order[size_t(rng.uniform_int(0, int64_t(i) - 1))]);
        }
        const int attach = int(rng.uniform_int(0, int64_t(order.size())));
        for (int a = 0; a < attach; ++a) sdl += " @" + order[size_t(a)];
        sdl += "\n";
      }
      sdl += "}\n";
    }
    const Schema schema = parse_schema(sdl);
    const Schema reparsed = parse_schema(print_schema(schema));
    CHECK(schema == reparsed);
  }
}

TEST_CASE("directive order matches source order") {
  const Schema schema = parse_schema(R"(
directive @a on FIELD_DEFINITION
directive @b on FIELD_DEFINITION
directive @c on FIELD_DEFINITION
type T { x: Int @c @a @b }
)");
  const auto& ds = schema.type("T")->field("x")->directives;
  REQUIRE(ds.size() == 3);
  CHECK(ds[0].name == "c");
  CHECK(ds[1].name == "a");
  CHECK(ds[2].name == "b");
}

TEST_CASE("placement validation enforces the compatibility matrix") {
  const Schema schema = parse_schema(R"(
directive @suppress on FIELD_DEFINITION
directive @generalize on FIELD_DEFINITION
directive @noise on FIELD_DEFINITION
directive @hash on FIELD_DEFINITION
directive @noop on FIELD_DEFINITION
type Query { things: [Thing!] }
type Thing {
  id: ID!
  count: Int @generalize @noise
  score: Float @noise
  label: String @generalize @hash
  when: Date @generalize @noise
  flag: Boolean @noop
  anything: String @suppress
}
)");
  CHECK(validate_directive_placement(schema).empty());

  struct Bad {
    const char* field;
    const char* needle;
  };
  const Bad bad_cases[] = {
      {"x: Float @hash", "incompatible"},
      {"x: String @noise", "incompatible"},
      {"x: Boolean @generalize", "incompatible"},
      {"x: ID @noise", "incompatible"},
      {"x: ID! @suppress", "non-null"},
      {"x: [Int] @noise", "scalar leaves"},
      {"x: Other @suppress", "scalar leaves"},
  };
  for (const Bad& bad : bad_cases) {
    const std::string sdl = std::string(R"(
directive @suppress on FIELD_DEFINITION
directive @generalize on FIELD_DEFINITION
directive @noise on FIELD_DEFINITION
directive @hash on FIELD_DEFINITION
type Other { y: Int }
type T { )") + bad.field + " }";
    const std::vector<Diagnostic> diags =
        validate_directive_placement(parse_schema(sdl));
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].message.find(bad.needle) != std::string::npos);
    CHECK(diags[0].line > 0);
    CHECK(diags[0].col > 0);
  }
}
