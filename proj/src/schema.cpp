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

#include "quell/schema.hpp"

#include <set>

#include "lexer.hpp"

namespace quell {

using detail::Lexer;
using detail::parse_fail;
using detail::Token;
using detail::TokenKind;

bool is_builtin_scalar(const std::string& name) {
  return name == "Int" || name == "Float" || name == "String" ||
         name == "ID" || name == "Boolean" || name == "Date";
}

std::string TypeRef::to_string() const {
  std::string s = name;
  if (list) {
    s = "[" + s + (element_non_null ? "!" : "") + "]";
  }
  if (non_null) s += "!";
  return s;
}

const FieldDef* ObjectType::field(const std::string& field_name) const {
  for (const FieldDef& f : fields) {
    if (f.name == field_name) return &f;
  }
  return nullptr;
}

const ObjectType* Schema::type(const std::string& name) const {
  for (const ObjectType& t : types) {
    if (t.name == name) return &t;
  }
  return nullptr;
}

bool Schema::directive_declared(const std::string& name) const {
  for (const std::string& d : directives) {
    if (d == name) return true;
  }
  return false;
}

namespace {

const Token& expect(Lexer& lex, TokenKind kind, const std::string& what) {
  const Token& tok = lex.next();
  if (tok.kind != kind) parse_fail(tok, "expected " + what);
  return tok;
}

void expect_punct(Lexer& lex, const std::string& p) {
  const Token& tok = lex.next();
  if (tok.kind != TokenKind::punct || tok.text != p) {
    parse_fail(tok, "expected '" + p + "'");
  }
}

bool peek_punct(Lexer& lex, const std::string& p) {
  return lex.peek().kind == TokenKind::punct && lex.peek().text == p;
}

TypeRef parse_type_ref(Lexer& lex) {
  TypeRef ref;
  if (peek_punct(lex, "[")) {
    lex.next();
    ref.list = true;
    ref.name = expect(lex, TokenKind::name, "type name").text;
    if (peek_punct(lex, "!")) {
      lex.next();
      ref.element_non_null = true;
    }
    expect_punct(lex, "]");
  } else {
    ref.name = expect(lex, TokenKind::name, "type name").text;
  }
  if (peek_punct(lex, "!")) {
    lex.next();
    ref.non_null = true;
  }
  return ref;
}

ObjectType parse_object_type(Lexer& lex, const Schema& partial) {
  const Token& name_tok = expect(lex, TokenKind::name, "type name");
  ObjectType type{name_tok.text, {}, name_tok.line, name_tok.col};
  expect_punct(lex, "{");
  while (!peek_punct(lex, "}")) {
    const Token& field_tok = expect(lex, TokenKind::name, "field name");
    if (peek_punct(lex, "(")) {
      parse_fail(lex.peek(),
                 "unsupported: field arguments are not part of the SDL "
                 "subset (list fields accept `first` at query time)");
    }
    expect_punct(lex, ":");
    FieldDef field;
    field.name = field_tok.text;
    field.line = field_tok.line;
    field.col = field_tok.col;
    field.type = parse_type_ref(lex);
    while (peek_punct(lex, "@")) {
      lex.next();
      const Token& dir = expect(lex, TokenKind::name, "directive name");
      if (!partial.directive_declared(dir.text)) {
        parse_fail(dir, "directive @" + dir.text +
                            " used before being declared with `directive @" +
                            dir.text + " on FIELD_DEFINITION`");
      }
      field.directives.push_back({dir.text, dir.line, dir.col});
    }
    if (type.field(field.name) != nullptr) {
      parse_fail(field_tok,
                 "duplicate field " + type.name + "." + field.name);
    }
    type.fields.push_back(std::move(field));
  }
  expect_punct(lex, "}");
  if (type.fields.empty()) {
    parse_fail(name_tok, "type " + type.name + " declares no fields");
  }
  return type;
}

}  // namespace

Schema parse_schema(const std::string& sdl_text) {
  Lexer lex(sdl_text);
  if (lex.at_end()) throw Error(ErrorKind::parse, "empty schema");

  Schema schema;
  bool query_root_set = false;
  while (!lex.at_end()) {
    const Token& kw = expect(lex, TokenKind::name, "definition keyword");
    if (kw.text == "directive") {
      expect_punct(lex, "@");
      const Token& name = expect(lex, TokenKind::name, "directive name");
      const Token& on = expect(lex, TokenKind::name, "'on'");
      if (on.text != "on") parse_fail(on, "expected 'on'");
      const Token& loc = expect(lex, TokenKind::name, "directive location");
      if (loc.text != "FIELD_DEFINITION") {
        parse_fail(loc, "unsupported directive location " + loc.text +
                            "; only FIELD_DEFINITION is supported");
      }
      if (schema.directive_declared(name.text)) {
        parse_fail(name, "duplicate directive @" + name.text);
      }
      schema.directives.push_back(name.text);
    } else if (kw.text == "scalar") {
      const Token& name = expect(lex, TokenKind::name, "scalar name");
      if (!is_builtin_scalar(name.text)) {
        parse_fail(name, "unsupported scalar " + name.text +
                             "; only the built-in scalars (Int, Float, "
                             "String, ID, Boolean, Date) exist");
      }
    } else if (kw.text == "type") {
      ObjectType type = parse_object_type(lex, schema);
      if (is_builtin_scalar(type.name) || schema.type(type.name) != nullptr) {
        throw Error(ErrorKind::parse,
                    std::to_string(type.line) + ":" + std::to_string(type.col) +
                        ": duplicate type " + type.name);
      }
      schema.types.push_back(std::move(type));
    } else if (kw.text == "schema") {
      expect_punct(lex, "{");
      while (!peek_punct(lex, "}")) {
        const Token& op = expect(lex, TokenKind::name, "operation kind");
        if (op.text != "query") {
          parse_fail(op, "unsupported operation " + op.text +
                             "; only query roots exist");
        }
        expect_punct(lex, ":");
        schema.query_root = expect(lex, TokenKind::name, "type name").text;
        query_root_set = true;
      }
      expect_punct(lex, "}");
    } else if (kw.text == "interface" || kw.text == "union" ||
               kw.text == "enum" || kw.text == "input" ||
               kw.text == "fragment" || kw.text == "extend" ||
               kw.text == "subscription" || kw.text == "mutation") {
      parse_fail(kw, "unsupported construct '" + kw.text + "'");
    } else {
      parse_fail(kw, "unexpected '" + kw.text + "'");
    }
  }

  if (schema.types.empty()) {
    throw Error(ErrorKind::parse, "empty schema: no object types declared");
  }

  // Every referenced type must now exist.
  for (const ObjectType& type : schema.types) {
    for (const FieldDef& field : type.fields) {
      if (!is_builtin_scalar(field.type.name) &&
          schema.type(field.type.name) == nullptr) {
        throw Error(ErrorKind::parse,
                    std::to_string(field.line) + ":" +
                        std::to_string(field.col) + ": field " + type.name +
                        "." + field.name + " references unknown type " +
                        field.type.name);
      }
    }
  }
  if (query_root_set && schema.type(schema.query_root) == nullptr) {
    throw Error(ErrorKind::parse,
                "schema block names unknown query root " + schema.query_root);
  }
  return schema;
}

std::string print_schema(const Schema& schema) {
  std::string out;
  for (const std::string& d : schema.directives) {
    out += "directive @" + d + " on FIELD_DEFINITION\n";
  }
  if (!schema.directives.empty()) out += "\n";
  if (schema.query_root != "Query") {
    out += "schema {\n  query: " + schema.query_root + "\n}\n\n";
  }
  for (const ObjectType& type : schema.types) {
    out += "type " + type.name + " {\n";
    for (const FieldDef& field : type.fields) {
      out += "  " + field.name + ": " + field.type.to_string();
      for (const DirectiveUse& d : field.directives) out += " @" + d.name;
      out += "\n";
    }
    out += "}\n\n";
  }
  return out;
}

std::vector<Diagnostic> validate_directive_placement(const Schema& schema) {
  std::vector<Diagnostic> diags;
  for (const ObjectType& type : schema.types) {
    for (const FieldDef& field : type.fields) {
      if (field.directives.empty()) continue;
      const std::string where = type.name + "." + field.name;
      if (!field.is_scalar() || field.type.list) {
        for (const DirectiveUse& d : field.directives) {
          diags.push_back({d.line, d.col,
                           "@" + d.name + " on " + where +
                               ": directives apply to scalar leaves, not " +
                               field.type.to_string()});
        }
        continue;
      }
      const std::string& scalar = field.type.name;
      for (const DirectiveUse& d : field.directives) {
        bool ok;
        if (d.name == "generalize") {
          ok = scalar == "Int" || scalar == "Float" || scalar == "String" ||
               scalar == "Date";
        } else if (d.name == "noise") {
          ok = scalar == "Int" || scalar == "Float" || scalar == "Date";
        } else if (d.name == "hash") {
          ok = scalar == "String" || scalar == "ID";
        } else if (d.name == "suppress") {
          ok = !field.type.non_null;
          if (!ok) {
            diags.push_back({d.line, d.col,
                             "@suppress on " + where +
                                 ": null cannot inhabit non-null " +
                                 field.type.to_string()});
            continue;
          }
        } else if (d.name == "noop") {
          ok = true;
        } else {
          diags.push_back({d.line, d.col,
                           "@" + d.name + " on " + where +
                               ": no reduction is registered under this name"});
          continue;
        }
        if (!ok) {
          diags.push_back({d.line, d.col, "@" + d.name + " on " + where +
                                              ": incompatible with " + scalar});
        }
      }
    }
  }
  return diags;
}

}  // namespace quell
