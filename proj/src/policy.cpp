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

#include "quell/policy.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <sstream>

namespace quell {

namespace {

[[noreturn]] void fail(int line, const std::string& why) {
  throw Error(ErrorKind::parse, "policy line " + std::to_string(line) + ": " + why);
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

bool is_role_token(const std::string& s) {
  if (s.empty()) return false;
  return std::none_of(s.begin(), s.end(),
                      [](unsigned char c) { return std::isspace(c); });
}

double parse_number(const std::string& text, int line, const std::string& key) {
  try {
    size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    fail(line, key + " = '" + text + "' is not a number");
  }
}

int64_t parse_int(const std::string& text, int line, const std::string& key) {
  int64_t v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    fail(line, key + " = '" + text + "' is not an integer");
  }
  return v;
}

bool is_qualified_field(const std::string& s) {
  const size_t dot = s.find('.');
  if (dot == std::string::npos || dot == 0 || dot + 1 >= s.size()) return false;
  if (s.find('.', dot + 1) != std::string::npos) return false;
  auto ident = [](const std::string& part) {
    if (!std::isalpha(uint8_t(part[0])) && part[0] != '_') return false;
    return std::all_of(part.begin(), part.end(), [](unsigned char c) {
      return std::isalnum(c) || c == '_';
    });
  };
  return ident(s.substr(0, dot)) && ident(s.substr(dot + 1));
}

std::string entry_key(const std::string& role, const std::string& field,
                      const std::string& directive) {
  std::string key;
  key.reserve(role.size() + field.size() + directive.size() + 2);
  key += role;
  key += '\x1f';
  key += field;
  key += '\x1f';
  key += directive;
  return key;
}

// Splits "k = v, k = v" into pairs; values may not contain commas.
std::vector<std::pair<std::string, std::string>> split_pairs(
    const std::string& text, int line) {
  std::vector<std::pair<std::string, std::string>> pairs;
  std::stringstream ss(text);
  std::string piece;
  while (std::getline(ss, piece, ',')) {
    piece = trim(piece);
    if (piece.empty()) fail(line, "empty key=value pair");
    const size_t eq = piece.find('=');
    if (eq == std::string::npos) {
      fail(line, "expected key = value, got '" + piece + "'");
    }
    const std::string key = trim(piece.substr(0, eq));
    const std::string value = trim(piece.substr(eq + 1));
    if (key.empty() || value.empty()) {
      fail(line, "expected key = value, got '" + piece + "'");
    }
    pairs.emplace_back(key, value);
  }
  return pairs;
}

Verdict build_apply_verdict(
    const std::string& directive,
    const std::vector<std::pair<std::string, std::string>>& params, int line) {
  Verdict verdict{Verdict::Kind::apply, {}};
  if (directive == "suppress" || directive == "noop") {
    if (!params.empty()) {
      fail(line, directive + " takes no parameters (got " + params[0].first + ")");
    }
    return verdict;
  }
  if (directive == "generalize") {
    GeneralizationParams g;
    for (const auto& [key, value] : params) {
      if (key == "step") {
        g.step = parse_number(value, line, key);
      } else if (key == "unit") {
        const auto unit = date_unit_from_name(value);
        if (!unit) fail(line, "unknown unit '" + value + "'");
        g.unit = unit;
      } else if (key == "visible_count") {
        g.visible_count = parse_int(value, line, key);
      } else if (key == "mask_char") {
        g.mask_char = value;
      } else {
        fail(line, "generalize does not take parameter " + key);
      }
    }
    if (!g.step && !g.unit && !g.visible_count) {
      fail(line, "generalize needs step, unit or visible_count");
    }
    try {
      g.validate();
    } catch (const Error& e) {
      fail(line, e.what());
    }
    verdict.params = std::move(g);
    return verdict;
  }
  if (directive == "noise") {
    NoiseParams n;
    for (const auto& [key, value] : params) {
      if (key == "distribution") {
        n.distribution = value;
      } else if (key == "date_unit") {
        const auto unit = date_unit_from_name(value);
        if (!unit) fail(line, "unknown date_unit '" + value + "'");
        n.date_unit = *unit;
      } else {
        n.dist_params[key] = parse_number(value, line, key);
      }
    }
    if (n.distribution.empty()) fail(line, "noise needs a distribution");
    try {
      n.validate();
    } catch (const Error& e) {
      fail(line, e.what());
    }
    verdict.params = std::move(n);
    return verdict;
  }
  if (directive == "hash") {
    HashParams h;
    for (const auto& [key, value] : params) {
      if (key != "output_bits") fail(line, "hash does not take parameter " + key);
      h.output_bits = int(parse_int(value, line, key));
    }
    try {
      h.validate();
    } catch (const Error& e) {
      fail(line, e.what());
    }
    verdict.params = h;
    return verdict;
  }
  fail(line, "unknown directive '" + directive + "'");
}

}  // namespace

void Policy::index() {
  by_key_.clear();
  by_key_.reserve(entries.size());
  for (size_t i = 0; i < entries.size(); ++i) {
    const PolicyEntry& e = entries[i];
    by_key_[entry_key(e.role, e.field, e.directive)] = i;
  }
  default_as_verdict_ =
      default_verdict == Verdict::Kind::pass ? Verdict::pass()
                                             : Verdict::suppressed();
}

const Verdict& Policy::resolve(const std::string& role,
                               const std::string& field,
                               const std::string& directive) const {
  const auto it = by_key_.find(entry_key(role, field, directive));
  if (it == by_key_.end()) return default_as_verdict_;
  return entries[it->second].verdict;
}

Policy load_policy(const std::string& config_text) {
  Policy policy;
  std::set<std::string> seen_keys;
  std::string current_role;
  bool default_seen = false;

  std::stringstream ss(config_text);
  std::string raw;
  int line_no = 0;
  while (std::getline(ss, raw)) {
    ++line_no;
    const size_t hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') fail(line_no, "unterminated section header");
      const std::string inner = trim(line.substr(1, line.size() - 2));
      if (inner.rfind("role", 0) != 0) {
        fail(line_no, "expected [role NAME], got '" + line + "'");
      }
      const std::string role = trim(inner.substr(4));
      if (!is_role_token(role)) {
        fail(line_no, "role name must be a non-empty token without spaces");
      }
      current_role = role;
      continue;
    }

    if (current_role.empty()) {
      // Top-level assignments before the first section.
      const auto pairs = split_pairs(line, line_no);
      if (pairs.size() != 1 || pairs[0].first != "default_verdict") {
        fail(line_no, "only `default_verdict = pass|suppress` may appear "
                      "before the first [role ...] section");
      }
      if (default_seen) fail(line_no, "duplicate default_verdict");
      default_seen = true;
      if (pairs[0].second == "pass") {
        policy.default_verdict = Verdict::Kind::pass;
      } else if (pairs[0].second == "suppress") {
        policy.default_verdict = Verdict::Kind::suppress;
      } else {
        fail(line_no, "default_verdict must be pass or suppress");
      }
      continue;
    }

    auto pairs = split_pairs(line, line_no);
    std::string field;
    std::string directive;
    std::string verdict_text = "apply";
    std::vector<std::pair<std::string, std::string>> params;
    for (auto& [key, value] : pairs) {
      if (key == "field") {
        field = value;
      } else if (key == "directive") {
        directive = value;
      } else if (key == "verdict") {
        verdict_text = value;
      } else if (key == "role") {
        fail(line_no, "role is set by the enclosing [role ...] section");
      } else {
        params.emplace_back(key, value);
      }
    }
    if (field.empty()) fail(line_no, "entry is missing field=");
    if (!is_qualified_field(field)) {
      fail(line_no, "field must be TypeName.fieldName, got '" + field + "'");
    }
    if (directive.empty()) fail(line_no, "entry is missing directive=");
    if (directive != "suppress" && directive != "generalize" &&
        directive != "noise" && directive != "hash" && directive != "noop") {
      fail(line_no, "unknown directive '" + directive + "'");
    }

    PolicyEntry entry;
    entry.role = current_role;
    entry.field = field;
    entry.directive = directive;
    entry.line = line_no;
    if (verdict_text == "pass" || verdict_text == "suppress") {
      if (!params.empty()) {
        fail(line_no, "verdict " + verdict_text + " takes no parameters");
      }
      entry.verdict = verdict_text == "pass" ? Verdict::pass()
                                             : Verdict::suppressed();
    } else if (verdict_text == "apply") {
      entry.verdict = build_apply_verdict(directive, params, line_no);
    } else {
      fail(line_no, "verdict must be pass, suppress or apply");
    }

    if (!seen_keys.insert(entry_key(entry.role, entry.field, entry.directive))
             .second) {
      fail(line_no, "duplicate entry for (" + entry.role + ", " + entry.field +
                        ", " + entry.directive + ")");
    }
    policy.entries.push_back(std::move(entry));
  }

  policy.index();
  return policy;
}

namespace {

void check_apply_params(const PolicyEntry& entry, const FieldDef& field,
                        std::vector<Diagnostic>& diags) {
  const std::string& scalar = field.type.name;
  auto diag = [&](const std::string& msg) {
    diags.push_back({entry.line, 0,
                     "policy entry (" + entry.role + ", " + entry.field +
                         ", " + entry.directive + "): " + msg});
  };
  if (entry.directive == "generalize") {
    const auto& g = std::get<GeneralizationParams>(entry.verdict.params);
    if (scalar == "Int" || scalar == "Float") {
      if (!g.step) diag("needs step for a " + scalar + " field");
      if (g.unit || g.visible_count) {
        diag("unit/visible_count do not apply to a " + scalar + " field");
      }
      if (g.step && scalar == "Int" && *g.step != int64_t(*g.step)) {
        diag("step must be a whole number for an Int field");
      }
    } else if (scalar == "String") {
      if (!g.visible_count) diag("needs visible_count for a String field");
      if (g.step || g.unit) diag("step/unit do not apply to a String field");
    } else if (scalar == "Date") {
      if (!g.unit) diag("needs unit for a Date field");
      if (g.step || g.visible_count) {
        diag("step/visible_count do not apply to a Date field");
      }
    }
  } else if (entry.directive == "noise") {
    const auto& n = std::get<NoiseParams>(entry.verdict.params);
    if (scalar != "Date" && n.date_unit != DateUnit::second) {
      diag("date_unit does not apply to a " + scalar + " field");
    }
  }
}

}  // namespace

std::vector<Diagnostic> validate_policy(const Policy& policy,
                                        const Schema& schema) {
  std::vector<Diagnostic> diags;
  for (const PolicyEntry& entry : policy.entries) {
    const size_t dot = entry.field.find('.');
    const std::string type_name = entry.field.substr(0, dot);
    const std::string field_name = entry.field.substr(dot + 1);
    const ObjectType* type = schema.type(type_name);
    if (type == nullptr) {
      diags.push_back({entry.line, 0,
                       "policy references unknown type " + type_name});
      continue;
    }
    const FieldDef* field = type->field(field_name);
    if (field == nullptr) {
      diags.push_back({entry.line, 0,
                       "policy references unknown field " + entry.field});
      continue;
    }
    const bool attached =
        std::any_of(field->directives.begin(), field->directives.end(),
                    [&](const DirectiveUse& d) { return d.name == entry.directive; });
    if (!attached) {
      diags.push_back({entry.line, 0,
                       "policy entry for @" + entry.directive + " on " +
                           entry.field +
                           " but the schema does not attach that directive"});
      continue;
    }
    if (entry.verdict.kind == Verdict::Kind::apply) {
      check_apply_params(entry, *field, diags);
    }
  }

  // A Suppress verdict must never reach a non-null leaf at runtime: with a
  // fail-closed default every annotated non-null field is reachable, and with
  // a pass default only explicit suppress entries are.
  for (const ObjectType& type : schema.types) {
    for (const FieldDef& field : type.fields) {
      if (field.directives.empty() || !field.type.non_null) continue;
      const std::string qualified = type.name + "." + field.name;
      if (policy.default_verdict == Verdict::Kind::suppress) {
        diags.push_back({field.line, field.col,
                         qualified + " is non-null but annotated; the suppress "
                                     "default would null it for unlisted roles"});
        continue;
      }
      for (const PolicyEntry& entry : policy.entries) {
        if (entry.field != qualified) continue;
        const bool suppresses =
            entry.verdict.kind == Verdict::Kind::suppress ||
            (entry.verdict.kind == Verdict::Kind::apply &&
             entry.directive == "suppress");
        if (suppresses) {
          diags.push_back({entry.line, 0,
                           "policy suppresses non-null field " + qualified});
        }
      }
    }
  }
  return diags;
}

}  // namespace quell
