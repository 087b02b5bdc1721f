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

#include "quell/service.hpp"

#include <chrono>
#include <fstream>
#include <random>
#include <sstream>

#include <httplib.h>
#include "quell/engine.hpp"
#include "quell/json.hpp"

namespace quell {

namespace {

int status_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::auth: return 401;
    case ErrorKind::parse:
    case ErrorKind::parameter:
    case ErrorKind::range: return 400;
    default: return 500;
  }
}

void send_error(httplib::Response& res, int status, const std::string& message) {
  ojson body;
  body["errors"] = ojson::array({ojson{{"message", message}}});
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

// The Authorization header must be `Bearer <token>`; an absent header is the
// anonymous case, anything else malformed.
std::optional<std::string> bearer_from(const httplib::Request& req) {
  if (!req.has_header("Authorization")) return std::string{};
  const std::string header = req.get_header_value("Authorization");
  const std::string prefix = "Bearer ";
  if (header.rfind(prefix, 0) != 0 || header.size() == prefix.size()) {
    return std::nullopt;
  }
  return header.substr(prefix.size());
}

int64_t now_seconds() {
  return std::chrono::duration_cast<std::chrono::seconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

}  // namespace

struct GatewayServer::Impl {
  ServiceConfig config;
  Schema schema;
  Policy policy;
  DataSource source;
  LogSink log;
  uint64_t start_seed = 0;
  std::atomic<uint64_t> request_counter{0};
  httplib::Server server;

  void log_line(const std::string& line) {
    if (log) {
      log(line);
    } else {
      std::fputs((line + "\n").c_str(), stderr);
    }
  }

  void handle_graphql(const httplib::Request& req, httplib::Response& res) {
    const auto started = std::chrono::steady_clock::now();
    handle_graphql_inner(req, res);
    const double ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - started)
                          .count();
    char buf[160];
    std::snprintf(buf, sizeof(buf), "POST /graphql %d %.2fms", res.status, ms);
    log_line(buf);
  }

  void handle_graphql_inner(const httplib::Request& req,
                            httplib::Response& res) {
    std::string role;
    try {
      const std::optional<std::string> token = bearer_from(req);
      if (!token) {
        send_error(res, 401, "Authorization header is not a bearer token");
        return;
      }
      role = extract_role(*token, config.auth, now_seconds());
    } catch (const Error& e) {
      send_error(res, 401, e.what());
      return;
    }

    const ojson body = ojson::parse(req.body, nullptr, false);
    if (body.is_discarded() || !body.is_object() || !body.contains("query") ||
        !body["query"].is_string()) {
      send_error(res, 400, "body must be a JSON object with a string `query`");
      return;
    }

    const uint64_t seed =
        config.fixed_rng
            ? config.seed
            : start_seed ^ request_counter.fetch_add(1, std::memory_order_relaxed);
    RandomSource rng(seed);
    try {
      const ResponseDocument doc = execute(body["query"].get<std::string>(),
                                           schema, source, policy, role, rng);
      ojson out;
      out["data"] = doc.to_json();
      res.status = 200;
      res.set_content(out.dump(), "application/json");
    } catch (const Error& e) {
      send_error(res, status_for(e.kind()), e.what());
    } catch (const std::exception&) {
      send_error(res, 500, "internal error");
    }
  }

  void wire_routes() {
    server.Post("/graphql",
                [this](const httplib::Request& req, httplib::Response& res) {
                  handle_graphql(req, res);
                });
    server.Get("/healthz",
               [](const httplib::Request&, httplib::Response& res) {
                 res.status = 200;
                 res.set_content("ok", "text/plain");
               });
  }
};

GatewayServer::GatewayServer(ServiceConfig config, Schema schema,
                             Policy policy, DataSource source, LogSink log)
    : impl_(std::make_unique<Impl>()) {
  impl_->config = std::move(config);
  impl_->schema = std::move(schema);
  impl_->policy = std::move(policy);
  impl_->source = std::move(source);
  impl_->log = std::move(log);
  impl_->policy.index();
  if (impl_->config.fixed_rng) {
    impl_->start_seed = impl_->config.seed;
  } else {
    // Independent noise across service runs; the dataset seed must not pin
    // the request streams.
    impl_->start_seed = std::random_device{}();
    impl_->start_seed = impl_->start_seed << 32 | std::random_device{}();
  }
  impl_->wire_routes();
}

GatewayServer::~GatewayServer() { stop(); }

GatewayServer::GatewayServer(GatewayServer&&) noexcept = default;
GatewayServer& GatewayServer::operator=(GatewayServer&&) noexcept = default;

bool GatewayServer::run() {
  return impl_->server.listen(impl_->config.host, impl_->config.port);
}

int GatewayServer::start_background() {
  const int port = impl_->server.bind_to_any_port(impl_->config.host);
  if (port <= 0) {
    throw Error(ErrorKind::config, "could not bind an ephemeral port");
  }
  server_thread_ = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return port;
}

void GatewayServer::stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
  if (server_thread_.joinable()) server_thread_.join();
}

const DataSource& GatewayServer::source() const { return impl_->source; }

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::config, "cannot read " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace

GatewayServer make_server(const ServiceConfig& config,
                          GatewayServer::LogSink log) {
  config.auth.validate();

  Schema schema = parse_schema(read_file(config.schema_path));
  std::string problems;
  for (const Diagnostic& d : validate_directive_placement(schema)) {
    problems += config.schema_path + ":" + std::to_string(d.line) + ":" +
                std::to_string(d.col) + ": " + d.message + "\n";
  }
  Policy policy = load_policy(read_file(config.policy_path));
  for (const Diagnostic& d : validate_policy(policy, schema)) {
    problems += config.policy_path + ":" + std::to_string(d.line) + ": " +
                d.message + "\n";
  }
  if (!problems.empty()) {
    throw Error(ErrorKind::config, "validation failed\n" + problems);
  }
  if (schema.type(schema.query_root) == nullptr) {
    throw Error(ErrorKind::config,
                "schema declares no query root type " + schema.query_root);
  }

  DataSource source;
  if (config.dataset_path) {
    std::ifstream in(*config.dataset_path, std::ios::binary);
    if (!in) {
      throw Error(ErrorKind::config, "cannot read " + *config.dataset_path);
    }
    source = DataSource::read_jsonl(in, schema);
  } else {
    source = generate_dataset(config.dataset_users, config.seed);
  }
  return GatewayServer(config, std::move(schema), std::move(policy),
                       std::move(source), std::move(log));
}

}  // namespace quell
