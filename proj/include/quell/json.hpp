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

#include <json.hpp>

#include <string>

#include "quell/scalar.hpp"

namespace quell {

// Insertion-ordered JSON is the serialization vocabulary everywhere:
// response objects mirror selection order and must be byte-stable.
using ojson = nlohmann::ordered_json;

// Dates become RFC 3339 strings, Null becomes JSON null.
ojson scalar_to_json(const ScalarValue& value);

// Re-types a JSON leaf against a schema scalar (Int, Float, String, ID,
// Boolean, Date). Throws ErrorKind::parse on a mismatch.
ScalarValue scalar_from_json(const ojson& value, const std::string& scalar_name);

}  // namespace quell
