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

#include "keccak_ref.hpp"

#include <cstdint>
#include <cstring>
#include <stdexcept>

namespace keccak_ref {

namespace {

constexpr uint64_t round_constants[24] = {
    0x0000000000000001ull, 0x0000000000008082ull, 0x800000000000808aull,
    0x8000000080008000ull, 0x000000000000808bull, 0x0000000080000001ull,
    0x8000000080008081ull, 0x8000000000008009ull, 0x000000000000008aull,
    0x0000000000000088ull, 0x0000000080008009ull, 0x000000008000000aull,
    0x000000008000808bull, 0x800000000000008bull, 0x8000000000008089ull,
    0x8000000000008003ull, 0x8000000000008002ull, 0x8000000000000080ull,
    0x000000000000800aull, 0x800000008000000aull, 0x8000000080008081ull,
    0x8000000000008080ull, 0x0000000080000001ull, 0x8000000080008008ull};

constexpr int pi_lanes[24] = {10, 7,  11, 17, 18, 3,  5,  16, 8,  21, 24, 4,
                              15, 23, 19, 13, 12, 2,  20, 14, 22, 9,  6,  1};

constexpr int rho_offsets[24] = {1,  3,  6,  10, 15, 21, 28, 36, 45, 55, 2, 14,
                                 27, 41, 56, 8,  25, 43, 62, 18, 39, 61, 20, 44};

uint64_t rotl(uint64_t x, int s) { return (x << s) | (x >> (64 - s)); }

void keccak_f(uint64_t state[25]) {
  for (int round = 0; round < 24; ++round) {
    uint64_t parity[5];
    for (int i = 0; i < 5; ++i) {
      parity[i] = state[i] ^ state[i + 5] ^ state[i + 10] ^ state[i + 15] ^
                  state[i + 20];
    }
    for (int i = 0; i < 5; ++i) {
      const uint64_t t = parity[(i + 4) % 5] ^ rotl(parity[(i + 1) % 5], 1);
      for (int j = 0; j < 25; j += 5) state[j + i] ^= t;
    }
    uint64_t lane = state[1];
    for (int i = 0; i < 24; ++i) {
      const int j = pi_lanes[i];
      const uint64_t next = state[j];
      state[j] = rotl(lane, rho_offsets[i]);
      lane = next;
    }
    for (int j = 0; j < 25; j += 5) {
      uint64_t row[5];
      for (int i = 0; i < 5; ++i) row[i] = state[j + i];
      for (int i = 0; i < 5; ++i) {
        state[j + i] = row[i] ^ (~row[(i + 1) % 5] & row[(i + 2) % 5]);
      }
    }
    state[0] ^= round_constants[round];
  }
}

void xor_byte(uint64_t state[25], size_t index, uint8_t byte) {
  state[index / 8] ^= uint64_t(byte) << (8 * (index % 8));
}

uint8_t state_byte(const uint64_t state[25], size_t index) {
  return uint8_t(state[index / 8] >> (8 * (index % 8)));
}

}  // namespace

std::string sha3_hex(const std::string& msg, int bits) {
  if (bits != 224 && bits != 256 && bits != 384 && bits != 512) {
    throw std::invalid_argument("sha3 bits");
  }
  const size_t rate = size_t(1600 - 2 * bits) / 8;
  uint64_t state[25] = {0};

  size_t offset = 0;
  for (const char c : msg) {
    xor_byte(state, offset++, uint8_t(c));
    if (offset == rate) {
      keccak_f(state);
      offset = 0;
    }
  }
  xor_byte(state, offset, 0x06);
  xor_byte(state, rate - 1, 0x80);
  keccak_f(state);

  static const char hex[] = "0123456789abcdef";
  std::string out;
  const size_t digest_bytes = size_t(bits) / 8;  // always <= rate here
  out.reserve(digest_bytes * 2);
  for (size_t i = 0; i < digest_bytes; ++i) {
    const uint8_t b = state_byte(state, i);
    out += hex[b >> 4];
    out += hex[b & 0xf];
  }
  return out;
}

}  // namespace keccak_ref
