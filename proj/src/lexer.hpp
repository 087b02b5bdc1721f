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
// Shared tokenizer for the SDL and query grammars. Commas count as
// whitespace, '#' starts a line comment.

#pragma once

#include <string>
#include <vector>

#include "quell/error.hpp"

namespace quell::detail {

enum class TokenKind { name, integer, punct, end };

struct Token {
  TokenKind kind;
  std::string text;
  int line;
  int col;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) {
    int line = 1;
    int col = 1;
    size_t i = 0;
    auto advance = [&](size_t n) {
      for (size_t k = 0; k < n; ++k, ++i) {
        if (text[i] == '\n') {
          ++line;
          col = 1;
        } else {
          ++col;
        }
      }
    };
    while (i < text.size()) {
      const char c = text[i];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == ',') {
        advance(1);
        continue;
      }
      if (c == '#') {
        while (i < text.size() && text[i] != '\n') advance(1);
        continue;
      }
      const int tline = line;
      const int tcol = col;
      if (std::isalpha(uint8_t(c)) || c == '_') {
        size_t n = 1;
        while (i + n < text.size() &&
               (std::isalnum(uint8_t(text[i + n])) || text[i + n] == '_')) {
          ++n;
        }
        tokens_.push_back({TokenKind::name, text.substr(i, n), tline, tcol});
        advance(n);
        continue;
      }
      if (std::isdigit(uint8_t(c)) ||
          (c == '-' && i + 1 < text.size() && std::isdigit(uint8_t(text[i + 1])))) {
        size_t n = 1;
        while (i + n < text.size() && std::isdigit(uint8_t(text[i + n]))) ++n;
        tokens_.push_back({TokenKind::integer, text.substr(i, n), tline, tcol});
        advance(n);
        continue;
      }
      if (std::string("{}[]()!@:").find(c) != std::string::npos) {
        tokens_.push_back({TokenKind::punct, std::string(1, c), tline, tcol});
        advance(1);
        continue;
      }
      throw Error(ErrorKind::parse, std::to_string(tline) + ":" +
                                        std::to_string(tcol) +
                                        ": unexpected character '" +
                                        std::string(1, c) + "'");
    }
    tokens_.push_back({TokenKind::end, "", line, col});
  }

  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_ == tokens_.size() - 1 ? pos_ : pos_++]; }
  bool at_end() const { return peek().kind == TokenKind::end; }

 private:
  std::vector<Token> tokens_;
  size_t pos_ = 0;
};

[[noreturn]] inline void parse_fail(const Token& tok, const std::string& why) {
  throw Error(ErrorKind::parse, std::to_string(tok.line) + ":" +
                                    std::to_string(tok.col) + ": " + why);
}

}  // namespace quell::detail
