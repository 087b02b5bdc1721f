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

#include "quell/query.hpp"

#include <charconv>

#include "lexer.hpp"

namespace quell {

using detail::Lexer;
using detail::parse_fail;
using detail::Token;
using detail::TokenKind;

namespace {

bool peek_punct(Lexer& lex, const std::string& p) {
  return lex.peek().kind == TokenKind::punct && lex.peek().text == p;
}

void expect_punct(Lexer& lex, const std::string& p) {
  const Token& tok = lex.next();
  if (tok.kind != TokenKind::punct || tok.text != p) {
    parse_fail(tok, "expected '" + p + "'");
  }
}

std::vector<Selection> parse_selection_set(Lexer& lex, const Schema& schema,
                                           const ObjectType& parent);

Selection parse_selection(Lexer& lex, const Schema& schema,
                          const ObjectType& parent) {
  const Token& name_tok = lex.next();
  if (name_tok.kind != TokenKind::name) {
    parse_fail(name_tok, "expected a field name");
  }
  const FieldDef* field = parent.field(name_tok.text);
  if (field == nullptr) {
    parse_fail(name_tok,
               "unknown field " + parent.name + "." + name_tok.text);
  }

  Selection sel;
  sel.field = field->name;
  sel.parent_type = parent.name;
  sel.type = field->type;

  if (peek_punct(lex, "(")) {
    lex.next();
    const Token& arg = lex.next();
    if (arg.kind != TokenKind::name || arg.text != "first") {
      parse_fail(arg, "the only supported argument is first");
    }
    if (!field->type.list) {
      parse_fail(arg, "first applies to list fields only, and " +
                          parent.name + "." + field->name + " is " +
                          field->type.to_string());
    }
    expect_punct(lex, ":");
    const Token& value = lex.next();
    if (value.kind != TokenKind::integer) {
      parse_fail(value, "first takes an integer");
    }
    int64_t n = 0;
    std::from_chars(value.text.data(), value.text.data() + value.text.size(), n);
    if (n < 0) parse_fail(value, "first must be >= 0");
    sel.first = n;
    expect_punct(lex, ")");
  }

  const bool is_object = !is_builtin_scalar(field->type.name);
  if (is_object) {
    if (!peek_punct(lex, "{")) {
      parse_fail(lex.peek(), parent.name + "." + field->name +
                                 " is an object field and needs a selection "
                                 "set");
    }
    sel.subs = parse_selection_set(lex, schema, *schema.type(field->type.name));
  } else if (peek_punct(lex, "{")) {
    parse_fail(lex.peek(), parent.name + "." + field->name +
                               " is a scalar and takes no selection set");
  }
  return sel;
}

std::vector<Selection> parse_selection_set(Lexer& lex, const Schema& schema,
                                           const ObjectType& parent) {
  expect_punct(lex, "{");
  std::vector<Selection> out;
  while (!peek_punct(lex, "}")) {
    if (lex.peek().kind == TokenKind::end) {
      parse_fail(lex.peek(), "unterminated selection set");
    }
    Selection sel = parse_selection(lex, schema, parent);
    for (const Selection& prev : out) {
      if (prev.field == sel.field) {
        parse_fail(lex.peek(), "duplicate selection of " + parent.name + "." +
                                   sel.field);
      }
    }
    out.push_back(std::move(sel));
  }
  lex.next();  // '}'
  if (out.empty()) {
    parse_fail(lex.peek(), "empty selection set on " + parent.name);
  }
  return out;
}

}  // namespace

Query parse_query(const std::string& query_text, const Schema& schema) {
  Lexer lex(query_text);
  if (lex.peek().kind == TokenKind::name) {
    const Token& kw = lex.next();
    if (kw.text != "query") {
      parse_fail(kw, "unsupported operation '" + kw.text +
                         "'; only queries are supported");
    }
    if (lex.peek().kind == TokenKind::name) lex.next();  // operation name
  }
  const ObjectType* root = schema.type(schema.query_root);
  if (root == nullptr) {
    throw Error(ErrorKind::parse,
                "schema has no query root type " + schema.query_root);
  }
  Query query;
  query.root_type = root->name;
  query.roots = parse_selection_set(lex, schema, *root);
  if (!lex.at_end()) {
    parse_fail(lex.peek(), "trailing input after the selection set");
  }
  return query;
}

}  // namespace quell
