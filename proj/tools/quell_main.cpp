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

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include "quell/bench.hpp"
#include "quell/data.hpp"
#include "quell/error.hpp"
#include "quell/jwt.hpp"
#include "quell/service.hpp"

namespace {

constexpr const char* secret_env = "QUELL_JWT_SECRET";

std::string secret_from_env() {
  const char* secret = std::getenv(secret_env);
  if (secret == nullptr || *secret == '\0') {
    throw quell::Error(quell::ErrorKind::config,
                       std::string(secret_env) + " is not set");
  }
  return secret;
}

std::pair<std::string, int> split_listen(const std::string& listen) {
  const size_t colon = listen.rfind(':');
  if (colon == std::string::npos) {
    throw quell::Error(quell::ErrorKind::config,
                       "--listen must be HOST:PORT, got '" + listen + "'");
  }
  return {listen.substr(0, colon), std::stoi(listen.substr(colon + 1))};
}

int64_t now_seconds() {
  return std::chrono::duration_cast<std::chrono::seconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

int cmd_serve(const std::string& listen, quell::ServiceConfig config) {
  const auto [host, port] = split_listen(listen);
  config.host = host;
  config.port = port;
  config.auth.hmac_secret = secret_from_env();
  quell::GatewayServer server = quell::make_server(config);
  std::fprintf(stderr, "serving %s on http://%s:%d (dataset: %s)\n",
               config.schema_path.c_str(), host.c_str(), port,
               config.dataset_path ? config.dataset_path->c_str()
                                   : "generated in memory");
  if (!server.run()) {
    std::fprintf(stderr, "could not bind %s:%d\n", host.c_str(), port);
    return 1;
  }
  return 0;
}

int cmd_gen(int64_t users, uint64_t seed, const std::string& out_path) {
  const quell::DataSource ds = quell::generate_dataset(users, seed);
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    throw quell::Error(quell::ErrorKind::config, "cannot write " + out_path);
  }
  ds.write_jsonl(out);
  std::fprintf(stderr, "wrote %zu users, %zu cycles, %zu symptoms to %s\n",
               ds.rows("User").size(), ds.rows("Cycle").size(),
               ds.rows("Symptom").size(), out_path.c_str());
  return 0;
}

int cmd_bench(quell::BenchConfig config, const std::string& token_file,
              const std::string& format) {
  if (!token_file.empty()) {
    std::ifstream in(token_file, std::ios::binary);
    if (!in) {
      throw quell::Error(quell::ErrorKind::config,
                         "cannot read " + token_file);
    }
    std::getline(in, config.token);
  }
  quell::BenchReport report;
  report.cells.push_back(quell::run_bench(config));
  std::cout << quell::emit_report(report, format);
  return 0;
}

int cmd_token(const std::string& role, const std::string& claim, int64_t ttl) {
  quell::AuthConfig auth;
  auth.hmac_secret = secret_from_env();
  auth.role_claim = claim;
  std::optional<int64_t> exp;
  if (ttl > 0) exp = now_seconds() + ttl;
  std::cout << quell::make_token(role, auth, exp) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "quell - role-aware GraphQL-style gateway with per-field information "
      "reduction"};
  app.require_subcommand(1);

  // serve
  auto* serve = app.add_subcommand("serve", "run the gateway");
  std::string schema_path, policy_path;
  std::string listen = "127.0.0.1:8380";
  quell::ServiceConfig service_config;
  std::string dataset_path, anonymous_role;
  serve->add_option("--schema", schema_path, "SDL schema file")->required();
  serve->add_option("--policy", policy_path, "policy file")->required();
  serve->add_option("--listen", listen, "HOST:PORT (default 127.0.0.1:8380)");
  serve->add_option("--seed", service_config.seed,
                    "dataset seed, and the request-noise seed with --fixed-rng");
  serve->add_option("--dataset-users", service_config.dataset_users,
                    "users to generate for the in-memory store");
  serve->add_option("--dataset", dataset_path,
                    "load records from a JSONL file instead of generating");
  serve->add_flag("--fixed-rng", service_config.fixed_rng,
                  "pin every request's noise stream to --seed");
  serve->add_option("--role-claim", service_config.auth.role_claim,
                    "JWT claim carrying the role (default: role)");
  serve->add_option("--anonymous-role", anonymous_role,
                    "role assumed for requests without a token");

  // gen
  auto* gen = app.add_subcommand("gen", "emit a deterministic dataset");
  int64_t gen_users = 50;
  uint64_t gen_seed = 1;
  std::string gen_out;
  gen->add_option("--users", gen_users, "number of users")->required();
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("--out", gen_out, "output JSONL path")->required();

  // bench
  auto* bench = app.add_subcommand("bench", "measure latency and throughput");
  quell::BenchConfig bench_config;
  std::string token_file, format = "table";
  bench->add_option("--target", bench_config.target, "service base URL")
      ->required();
  bench->add_option("--variant", bench_config.variant,
                    "baseline|noop|generalize|noise|hash");
  bench->add_option("--objects", bench_config.object_count,
                    "objects per request: 100|1000|10000");
  bench->add_option("--requests", bench_config.measured_requests,
                    "measured requests (>= 30)");
  bench->add_option("--concurrency", bench_config.concurrency,
                    "concurrent workers (1 for latency runs)");
  bench->add_option("--warmup", bench_config.warmup_requests,
                    "unmeasured warmup requests");
  bench->add_option("--format", format, "table|csv");
  bench->add_option("--token-file", token_file,
                    "file holding the bearer token to send");

  // token
  auto* token = app.add_subcommand("token", "mint an HS256 bearer token");
  std::string token_role, token_claim = "role";
  int64_t token_ttl = 3600;
  token->add_option("--role", token_role, "role claim value")->required();
  token->add_option("--claim", token_claim, "claim name (default: role)");
  token->add_option("--ttl", token_ttl,
                    "seconds until expiry; 0 mints a non-expiring token");

  CLI11_PARSE(app, argc, argv);

  try {
    if (serve->parsed()) {
      service_config.schema_path = schema_path;
      service_config.policy_path = policy_path;
      if (!dataset_path.empty()) service_config.dataset_path = dataset_path;
      if (!anonymous_role.empty()) {
        service_config.auth.anonymous_role = anonymous_role;
      }
      return cmd_serve(listen, std::move(service_config));
    }
    if (gen->parsed()) return cmd_gen(gen_users, gen_seed, gen_out);
    if (bench->parsed()) return cmd_bench(bench_config, token_file, format);
    if (token->parsed()) return cmd_token(token_role, token_claim, token_ttl);
  } catch (const quell::Error& e) {
    std::fprintf(stderr, "error (%s): %s\n", quell::error_kind_name(e.kind()),
                 e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
