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
// Reference HS256 token verifier built on libsodium, kept independent of the
// production path (different HMAC implementation, different base64 decoder).

#pragma once

#include <string>

namespace jwt_ref {

struct Classification {
  bool accepted = false;
  std::string role;    // set when accepted
  std::string reason;  // set when rejected
};

Classification verify(const std::string& token, const std::string& secret,
                      const std::string& role_claim, long long now_seconds);

}  // namespace jwt_ref
