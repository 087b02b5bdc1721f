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

#include "quell/jwt.hpp"

#include <openssl/crypto.h>
#include <openssl/hmac.h>

#include <array>
#include <cmath>

#include <json.hpp>
#include "quell/error.hpp"

namespace quell {

namespace {

constexpr char alphabet[] =
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789-_";

[[noreturn]] void reject(const std::string& why) {
  throw Error(ErrorKind::auth, why);
}

std::array<int8_t, 256> decode_table() {
  std::array<int8_t, 256> t{};
  t.fill(-1);
  for (int i = 0; i < 64; ++i) t[uint8_t(alphabet[i])] = int8_t(i);
  return t;
}

nlohmann::json parse_json_part(const std::string& bytes, const char* what) {
  nlohmann::json doc = nlohmann::json::parse(bytes, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    reject(std::string("token ") + what + " is not a JSON object");
  }
  return doc;
}

}  // namespace

void AuthConfig::validate() const {
  if (hmac_secret.size() < 32) {
    throw Error(ErrorKind::config, "HMAC secret must be at least 32 bytes");
  }
  if (role_claim.empty()) {
    throw Error(ErrorKind::config, "role claim name must not be empty");
  }
}

std::string base64url_encode(const std::string& bytes) {
  std::string out;
  out.reserve((bytes.size() + 2) / 3 * 4);
  size_t i = 0;
  for (; i + 3 <= bytes.size(); i += 3) {
    const uint32_t n = uint32_t(uint8_t(bytes[i])) << 16 |
                       uint32_t(uint8_t(bytes[i + 1])) << 8 |
                       uint32_t(uint8_t(bytes[i + 2]));
    out += alphabet[n >> 18];
    out += alphabet[(n >> 12) & 63];
    out += alphabet[(n >> 6) & 63];
    out += alphabet[n & 63];
  }
  const size_t rest = bytes.size() - i;
  if (rest == 1) {
    const uint32_t n = uint32_t(uint8_t(bytes[i]));
    out += alphabet[n >> 2];
    out += alphabet[(n << 4) & 63];
  } else if (rest == 2) {
    const uint32_t n = uint32_t(uint8_t(bytes[i])) << 8 |
                       uint32_t(uint8_t(bytes[i + 1]));
    out += alphabet[n >> 10];
    out += alphabet[(n >> 4) & 63];
    out += alphabet[(n << 2) & 63];
  }
  return out;
}

std::string base64url_decode(const std::string& text) {
  static const std::array<int8_t, 256> table = decode_table();
  if (text.size() % 4 == 1) reject("invalid base64url length");
  std::string out;
  out.reserve(text.size() / 4 * 3 + 2);
  uint32_t acc = 0;
  int bits = 0;
  for (const char c : text) {
    const int8_t v = table[uint8_t(c)];
    if (v < 0) reject("invalid base64url character");
    acc = acc << 6 | uint32_t(v);
    bits += 6;
    if (bits >= 8) {
      bits -= 8;
      out += char(uint8_t(acc >> bits));
    }
  }
  // Leftover bits must be zero padding.
  if (bits > 0 && (acc & ((1u << bits) - 1)) != 0) {
    reject("invalid base64url trailing bits");
  }
  return out;
}

std::string hmac_sha256(const std::string& key, const std::string& message) {
  unsigned char mac[32];
  unsigned int mac_len = 0;
  if (HMAC(EVP_sha256(), key.data(), int(key.size()),
           reinterpret_cast<const unsigned char*>(message.data()),
           message.size(), mac, &mac_len) == nullptr ||
      mac_len != 32) {
    throw Error(ErrorKind::execution, "HMAC-SHA256 failed");
  }
  return std::string(reinterpret_cast<char*>(mac), mac_len);
}

std::string extract_role(const std::string& bearer_token,
                         const AuthConfig& auth, int64_t now_seconds) {
  auth.validate();
  if (bearer_token.empty()) {
    if (auth.anonymous_role) return *auth.anonymous_role;
    reject("missing bearer token");
  }

  const size_t dot1 = bearer_token.find('.');
  const size_t dot2 =
      dot1 == std::string::npos ? std::string::npos
                                : bearer_token.find('.', dot1 + 1);
  if (dot1 == std::string::npos || dot2 == std::string::npos ||
      bearer_token.find('.', dot2 + 1) != std::string::npos) {
    reject("token is not three dot-separated parts");
  }
  const std::string header_b64 = bearer_token.substr(0, dot1);
  const std::string payload_b64 = bearer_token.substr(dot1 + 1, dot2 - dot1 - 1);
  const std::string signature = base64url_decode(bearer_token.substr(dot2 + 1));

  const nlohmann::json header =
      parse_json_part(base64url_decode(header_b64), "header");
  if (!header.contains("alg") || !header["alg"].is_string() ||
      header["alg"].get<std::string>() != "HS256") {
    reject("unsupported token algorithm");
  }

  const std::string expected =
      hmac_sha256(auth.hmac_secret, header_b64 + "." + payload_b64);
  if (signature.size() != expected.size() ||
      CRYPTO_memcmp(signature.data(), expected.data(), expected.size()) != 0) {
    reject("bad token signature");
  }

  const nlohmann::json payload =
      parse_json_part(base64url_decode(payload_b64), "payload");
  if (payload.contains("exp")) {
    if (!payload["exp"].is_number()) reject("exp claim is not a number");
    // RFC 7519: the current time must be strictly before exp.
    if (double(now_seconds) >= payload["exp"].get<double>()) {
      reject("token expired");
    }
  }
  if (!payload.contains(auth.role_claim) ||
      !payload[auth.role_claim].is_string()) {
    reject("token is missing the " + auth.role_claim + " claim");
  }
  return payload[auth.role_claim].get<std::string>();
}

std::string make_token(const std::string& role, const AuthConfig& auth,
                       std::optional<int64_t> expires_at) {
  auth.validate();
  nlohmann::json payload;
  payload[auth.role_claim] = role;
  if (expires_at) payload["exp"] = *expires_at;
  const std::string signing_input =
      base64url_encode(R"({"alg":"HS256","typ":"JWT"})") + "." +
      base64url_encode(payload.dump());
  return signing_input + "." +
         base64url_encode(hmac_sha256(auth.hmac_secret, signing_input));
}

}  // namespace quell
