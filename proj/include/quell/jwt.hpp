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

#include <cstdint>
#include <optional>
#include <string>

namespace quell {

// HS256 verification settings. The secret must never appear in logs or
// responses; treat instances as sensitive.
struct AuthConfig {
  std::string hmac_secret;            // >= 32 bytes
  std::string role_claim = "role";
  std::optional<std::string> anonymous_role;

  void validate() const;  // throws ErrorKind::config on a short secret
};

// Verifies an HS256 bearer token and returns the value of the role claim.
// `exp`, when present, is the only registered claim checked. An empty token
// yields the configured anonymous role; without one it is an auth error, as
// is any malformed, tampered or expired token.
std::string extract_role(const std::string& bearer_token,
                         const AuthConfig& auth, int64_t now_seconds);

// Signs a payload the same way extract_role expects it; used by the token
// CLI. A missing expires_at leaves the exp claim out.
std::string make_token(const std::string& role, const AuthConfig& auth,
                       std::optional<int64_t> expires_at);

// Building blocks, exposed for the tools and tests.
std::string base64url_encode(const std::string& bytes);
std::string base64url_decode(const std::string& text);  // throws on bad input
std::string hmac_sha256(const std::string& key, const std::string& message);

}  // namespace quell
