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

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <thread>

#include "quell/data.hpp"
#include "quell/jwt.hpp"
#include "quell/policy.hpp"
#include "quell/schema.hpp"

namespace quell {

struct ServiceConfig {
  std::string host = "127.0.0.1";
  int port = 8380;
  std::string schema_path;
  std::string policy_path;
  std::optional<std::string> dataset_path;  // load instead of generating
  int64_t dataset_users = 50;
  uint64_t seed = 1;
  bool fixed_rng = false;  // every request reuses `seed` (test/bench mode)
  AuthConfig auth;
};

// The HTTP front end: POST /graphql with a bearer token, GET /healthz.
// Schema, policy and store are immutable once constructed; each request gets
// its own RandomSource, seeded from the service-start seed XOR a per-request
// counter (or pinned to the configured seed in fixed-rng mode).
class GatewayServer {
 public:
  using LogSink = std::function<void(const std::string&)>;

  GatewayServer(ServiceConfig config, Schema schema, Policy policy,
                DataSource source, LogSink log = nullptr);
  ~GatewayServer();

  GatewayServer(const GatewayServer&) = delete;
  GatewayServer& operator=(const GatewayServer&) = delete;
  GatewayServer(GatewayServer&&) noexcept;
  GatewayServer& operator=(GatewayServer&&) noexcept;

  // Serves on config.host:config.port until stop(); returns false when the
  // port cannot be bound.
  bool run();

  // Binds an ephemeral port and serves from a background thread; returns the
  // port. Used by tests and the in-process bench.
  int start_background();
  void stop();

  const DataSource& source() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::thread server_thread_;
};

// Reads, parses and validates everything the server needs; any diagnostic is
// fatal (ErrorKind::config lists them all). The JWT secret comes from
// config.auth, which the CLI fills from the environment.
GatewayServer make_server(const ServiceConfig& config,
                          GatewayServer::LogSink log = nullptr);

}  // namespace quell
