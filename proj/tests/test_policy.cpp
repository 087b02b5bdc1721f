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
#include "quell/policy.hpp"

using namespace quell;

namespace {

const char* researcher_policy = R"(
default_verdict = suppress

[role researcher]
field = Symptom.pain, directive = noise, distribution = laplace, location = 0, scale = 1
)";

}  // namespace

TEST_CASE("a noise entry materializes as an apply verdict") {
  const Policy policy = load_policy(researcher_policy);
  const Verdict& v = policy.resolve("researcher", "Symptom.pain", "noise");
  REQUIRE(v.kind == Verdict::Kind::apply);
  const auto& params = std::get<NoiseParams>(v.params);
  CHECK(params.distribution == "laplace");
  CHECK(params.dist_params.at("scale") == 1.0);
  CHECK(params.dist_params.at("location") == 0.0);
}

TEST_CASE("unknown roles fall through to the shipped suppress default") {
  const Policy policy = load_policy(researcher_policy);
  CHECK(policy.resolve("unknownrole", "Symptom.pain", "noise").kind ==
        Verdict::Kind::suppress);
  CHECK(policy.resolve("researcher", "Symptom.mood", "generalize").kind ==
        Verdict::Kind::suppress);
}

TEST_CASE("an empty config is just the default verdict") {
  const Policy policy = load_policy("");
  CHECK(policy.entries.empty());
  CHECK(policy.default_verdict == Verdict::Kind::suppress);
  CHECK(policy.resolve("anyone", "Any.field", "noise").kind ==
        Verdict::Kind::suppress);

  const Policy open = load_policy("default_verdict = pass\n");
  CHECK(open.resolve("anyone", "Any.field", "noise").kind ==
        Verdict::Kind::pass);
}

TEST_CASE("validation errors carry the offending line") {
  auto expect_error = [](const std::string& config, const char* needle,
                         const char* line_tag) {
    try {
      load_policy(config);
      FAIL_CHECK("expected an error for: " << config);
    } catch (const Error& e) {
      const std::string what = e.what();
      CHECK(what.find(needle) != std::string::npos);
      CHECK(what.find(line_tag) != std::string::npos);
    }
  };
  expect_error("[role r]\nfield = S.pain, directive = generalize, step = -1\n",
               "step", "line 2");
  expect_error("[role r]\nfield = S.pain, directive = blur\n",
               "unknown directive", "line 2");
  expect_error("[role r]\nfield = pain, directive = noise\n",
               "TypeName.fieldName", "line 2");
  expect_error("[role r]\nfield = S.pain, directive = noise\n",
               "distribution", "line 2");
  expect_error(
      "[role r]\nfield = S.pain, directive = noise, distribution = laplace, "
      "location = 0, scale = 0\n",
      "scale", "line 2");
  expect_error("[role r]\nfield = S.x, directive = hash, output_bits = 100\n",
               "output_bits", "line 2");
  expect_error("[role r]\nfield = S.x, directive = noop, extra = 1\n",
               "no parameters", "line 2");
  expect_error(
      "[role r]\nfield = S.x, directive = noise, verdict = pass, scale = 1\n",
      "takes no parameters", "line 2");
  expect_error("[role r]\ndirective = noise\n", "missing field", "line 2");
  expect_error("[role r]\nfield = S.x\n", "missing directive", "line 2");
  expect_error("[role r]\nnonsense\n", "key = value", "line 2");
  expect_error("[role two words]\nfield = S.x, directive = noop\n", "token",
               "line 1");
  expect_error("field = S.x, directive = noop\n", "default_verdict", "line 1");
  expect_error(
      "[role r]\nfield = S.x, directive = noop\nfield = S.x, directive = noop\n",
      "duplicate entry", "line 3");
  expect_error("[role r]\nfield = S.x, directive = generalize\n",
               "needs step, unit or visible_count", "line 2");
  expect_error("[role r]\nfield = S.d, directive = generalize, unit = fortnight\n",
               "unknown unit", "line 2");
  expect_error(
      "[role r]\nfield = S.d, directive = noise, distribution = laplace, "
      "location = 0, scale = 1, date_unit = month\n",
      "date_unit", "line 2");
}

TEST_CASE("entries for one role never leak into another") {
  const Policy policy = load_policy(R"(
[role a]
field = T.x, directive = noop

[role b]
field = T.x, directive = noop, verdict = pass
)");
  CHECK(policy.resolve("a", "T.x", "noop").kind == Verdict::Kind::apply);
  CHECK(policy.resolve("b", "T.x", "noop").kind == Verdict::Kind::pass);
  CHECK(policy.resolve("c", "T.x", "noop").kind == Verdict::Kind::suppress);
}

TEST_CASE("policy cross-validation against the schema") {
  const Schema schema = parse_schema(default_schema_sdl());

  SUBCASE("the shipped demo policy is clean") {
    const Policy policy = load_policy(R"(
[role r]
field = Symptom.pain, directive = noise, distribution = laplace, location = 0, scale = 1
field = Symptom.mood, directive = generalize, visible_count = 2
field = Symptom.recordedAt, directive = generalize, unit = day
field = User.email, directive = hash, output_bits = 256
)");
    CHECK(validate_policy(policy, schema).empty());
  }

  SUBCASE("unknown types and fields are flagged") {
    const Policy policy = load_policy(
        "[role r]\nfield = Nope.x, directive = noise, distribution = laplace, "
        "location = 0, scale = 1\nfield = User.nope, directive = suppress\n");
    const auto diags = validate_policy(policy, schema);
    REQUIRE(diags.size() == 2);
    CHECK(diags[0].message.find("unknown type") != std::string::npos);
    CHECK(diags[1].message.find("unknown field") != std::string::npos);
  }

  SUBCASE("entries must match an attached directive") {
    const Policy policy = load_policy(
        "[role r]\nfield = Symptom.pain, directive = hash, output_bits = 256\n");
    const auto diags = validate_policy(policy, schema);
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].message.find("does not attach") != std::string::npos);
  }

  SUBCASE("parameter kinds must fit the field type") {
    const Policy policy = load_policy(R"(
[role r]
field = Symptom.pain, directive = noise, distribution = laplace, location = 0, scale = 1, date_unit = day
field = Symptom.mood, directive = generalize, step = 10
field = Symptom.recordedAt, directive = generalize, visible_count = 3
field = Profile.heightCm, directive = noise, distribution = uniform, low = 0, high = 1
field = Cycle.lengthDays, directive = noise, distribution = laplace, location = 0, scale = 0.5
)");
    const auto diags = validate_policy(policy, schema);
    // pain: date_unit on Float; mood: step on String + missing visible_count;
    // recordedAt: visible_count on Date + missing unit
    CHECK(diags.size() == 5);
  }

  SUBCASE("non-null annotated fields must not be reachable by suppress") {
    const Schema strict = parse_schema(R"(
directive @hash on FIELD_DEFINITION
type Query { things: [Thing!] }
type Thing { id: ID! @hash }
)");
    CHECK(validate_directive_placement(strict).empty());
    const Policy closed = load_policy(
        "[role r]\nfield = Thing.id, directive = hash, output_bits = 256\n");
    const auto diags = validate_policy(closed, strict);
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].message.find("non-null") != std::string::npos);

    const Policy open = load_policy(
        "default_verdict = pass\n[role r]\nfield = Thing.id, directive = "
        "hash, output_bits = 256\n");
    CHECK(validate_policy(open, strict).empty());

    const Policy explicit_suppress = load_policy(
        "default_verdict = pass\n[role r]\nfield = Thing.id, directive = "
        "hash, verdict = suppress\n");
    REQUIRE(validate_policy(explicit_suppress, strict).size() == 1);
  }
}
