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

#pragma once

#include <stdexcept>
#include <string>

namespace quell {

// Error taxonomy shared across the library. The HTTP layer maps kinds to
// status codes, so every throw site must pick the kind deliberately.
enum class ErrorKind {
  parse,       // malformed schema / query / policy / date text
  parameter,   // structurally valid input with invalid parameter values
  auth,        // token rejected
  range,       // result left the representable domain
  execution,   // pipeline hit a state that validation should have excluded
  config,      // bad runtime configuration (files, flags, sizes)
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::parse: return "parse";
    case ErrorKind::parameter: return "parameter";
    case ErrorKind::auth: return "auth";
    case ErrorKind::range: return "range";
    case ErrorKind::execution: return "execution";
    case ErrorKind::config: return "config";
  }
  return "unknown";
}

// A non-fatal finding produced by the schema / policy validators. Positions
// are 1-based; col 0 means "whole line", line 0 "whole document".
struct Diagnostic {
  int line = 0;
  int col = 0;
  std::string message;
};

}  // namespace quell
