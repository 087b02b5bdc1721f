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

#include <doctest.h>
#include <httplib.h>

#include <mutex>
#include <thread>

#include "quell/data.hpp"
#include "quell/engine.hpp"
#include "quell/service.hpp"

using namespace quell;

namespace {

const std::string secret = "unit-test-secret-0123456789abcdef";

struct LogCapture {
  std::mutex mutex;
  std::vector<std::string> lines;

  GatewayServer::LogSink sink() {
    return [this](const std::string& line) {
      std::lock_guard<std::mutex> lock(mutex);
      lines.push_back(line);
    };
  }

  bool contains(const std::string& needle) {
    std::lock_guard<std::mutex> lock(mutex);
    for (const std::string& line : lines) {
      if (line.find(needle) != std::string::npos) return true;
    }
    return false;
  }
};

struct RunningServer {
  std::unique_ptr<GatewayServer> server;
  std::unique_ptr<httplib::Client> client;
  LogCapture logs;
  std::string token;

  explicit RunningServer(bool fixed_rng = true, int64_t users = 6) {
    ServiceConfig config;
    config.auth.hmac_secret = secret;
    config.fixed_rng = fixed_rng;
    config.seed = 7;
    config.dataset_users = users;

    Schema schema = parse_schema(default_schema_sdl());
    Policy policy = load_policy(R"(
[role researcher]
field = User.name, directive = suppress
field = User.email, directive = hash, output_bits = 256
field = User.birthDate, directive = generalize, unit = year
field = Profile.heightCm, directive = noise, distribution = normal, mean = 0, std_dev = 2
field = Profile.weightKg, directive = noise, distribution = normal, mean = 0, std_dev = 1.5
field = Profile.contraception, directive = suppress
field = Cycle.startDate, directive = generalize, unit = month
field = Cycle.lengthDays, directive = noise, distribution = laplace, location = 0, scale = 1
field = Symptom.pain, directive = noise, distribution = laplace, location = 0, scale = 1
field = Symptom.mood, directive = generalize, visible_count = 2
field = Symptom.recordedAt, directive = generalize, unit = day
field = Symptom.recordedAt, directive = noise, distribution = uniform, low = -2, high = 2, date_unit = day
)");
    DataSource source = generate_dataset(config.dataset_users, config.seed);
    server = std::make_unique<GatewayServer>(config, std::move(schema),
                                             std::move(policy),
                                             std::move(source), logs.sink());
    const int port = server->start_background();
    client = std::make_unique<httplib::Client>("127.0.0.1", port);
    AuthConfig auth;
    auth.hmac_secret = secret;
    token = make_token("researcher", auth, std::nullopt);
  }

  httplib::Result post(const std::string& query_json,
                       const std::string& bearer = "") {
    httplib::Headers headers;
    if (!bearer.empty()) headers.emplace("Authorization", "Bearer " + bearer);
    return client->Post("/graphql", headers, query_json, "application/json");
  }
};

}  // namespace

TEST_CASE("health endpoint is constant") {
  RunningServer rs;
  for (int i = 0; i < 3; ++i) {
    const auto res = rs.client->Get("/healthz");
    REQUIRE(res);
    CHECK(res->status == 200);
    CHECK(res->body == "ok");
  }
}

TEST_CASE("a valid researcher request returns reduced data") {
  RunningServer rs;
  const auto res = rs.post(
      R"({"query":"{ users(first: 2) { id name email } }"})", rs.token);
  REQUIRE(res);
  REQUIRE(res->status == 200);
  const ojson body = ojson::parse(res->body);
  REQUIRE(body.contains("data"));
  REQUIRE(body["data"]["users"].size() == 2);
  for (const auto& user : body["data"]["users"]) {
    CHECK(user["name"].is_null());
    CHECK(user["email"].is_string());
    CHECK(user["email"].get<std::string>().size() == 64);
  }
  // response shape mirrors the selection set
  CHECK(body["data"].size() == 1);
  std::vector<std::string> keys;
  for (const auto& [k, _] : body["data"]["users"][0].items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"id", "name", "email"});
}

TEST_CASE("authentication failures map to 401") {
  RunningServer rs;
  const auto missing = rs.post(R"({"query":"{ users { id } }"})");
  REQUIRE(missing);
  CHECK(missing->status == 401);
  CHECK(ojson::parse(missing->body).contains("errors"));

  std::string bad = rs.token;
  bad[bad.size() / 2] = bad[bad.size() / 2] == 'a' ? 'b' : 'a';
  const auto tampered = rs.post(R"({"query":"{ users { id } }"})", bad);
  REQUIRE(tampered);
  CHECK(tampered->status == 401);

  httplib::Headers weird{{"Authorization", "Basic dXNlcjpwdw=="}};
  const auto basic =
      rs.client->Post("/graphql", weird, R"({"query":"{ users { id } }"})",
                      "application/json");
  REQUIRE(basic);
  CHECK(basic->status == 401);
}

TEST_CASE("malformed bodies and queries map to 400") {
  RunningServer rs;
  for (const char* body : {"{}", "not json", R"({"query": 42})", "[1,2]"}) {
    const auto res = rs.post(body, rs.token);
    REQUIRE(res);
    CHECK(res->status == 400);
    CHECK(ojson::parse(res->body).contains("errors"));
  }
  const auto unknown = rs.post(R"({"query":"{ nosuch }"})", rs.token);
  REQUIRE(unknown);
  CHECK(unknown->status == 400);
  const auto negative =
      rs.post(R"({"query":"{ users(first: -2) { id } }"})", rs.token);
  REQUIRE(negative);
  CHECK(negative->status == 400);
}

TEST_CASE("fixed-rng mode makes responses reproducible") {
  RunningServer rs(/*fixed_rng=*/true);
  const std::string q = R"({"query":"{ symptoms(first: 5) { pain } }"})";
  const auto a = rs.post(q, rs.token);
  const auto b = rs.post(q, rs.token);
  REQUIRE(a);
  REQUIRE(b);
  CHECK(a->body == b->body);
}

TEST_CASE("concurrent requests differ only in noised leaves without fixed rng") {
  RunningServer rs(/*fixed_rng=*/false);
  const std::string q =
      R"({"query":"{ symptoms(first: 4) { id pain mood } }"})";
  constexpr int n = 8;
  std::vector<std::string> bodies(n);
  std::vector<std::thread> threads;
  for (int i = 0; i < n; ++i) {
    threads.emplace_back([&, i] {
      const auto res = rs.post(q, rs.token);
      if (res && res->status == 200) bodies[size_t(i)] = res->body;
    });
  }
  for (auto& t : threads) t.join();

  bool any_pain_differs = false;
  const ojson first = ojson::parse(bodies[0]);
  for (int i = 0; i < n; ++i) {
    REQUIRE_FALSE(bodies[size_t(i)].empty());
    const ojson doc = ojson::parse(bodies[size_t(i)]);
    REQUIRE(doc["data"]["symptoms"].size() == 4);
    for (size_t s = 0; s < 4; ++s) {
      // non-noised leaves are identical across requests
      CHECK(doc["data"]["symptoms"][s]["id"] ==
            first["data"]["symptoms"][s]["id"]);
      CHECK(doc["data"]["symptoms"][s]["mood"] ==
            first["data"]["symptoms"][s]["mood"]);
      if (doc["data"]["symptoms"][s]["pain"] !=
          first["data"]["symptoms"][s]["pain"]) {
        any_pain_differs = true;
      }
    }
  }
  CHECK(any_pain_differs);
}

TEST_CASE("neither the secret nor suppressed values leak anywhere") {
  RunningServer rs;
  const std::string sentinel = "SENTINEL_d41d8cd9";
  // plant sentinels, restart not needed: mutate through a fresh server
  ServiceConfig config;
  config.auth.hmac_secret = secret;
  config.fixed_rng = true;
  Schema schema = parse_schema(default_schema_sdl());
  Policy policy = load_policy(
      "[role researcher]\nfield = User.name, directive = suppress\n");
  DataSource source = generate_dataset(4, 9);
  for (auto& row : source.mutable_rows("User")) row.set("name", sentinel);
  LogCapture logs;
  GatewayServer server(config, std::move(schema), std::move(policy),
                       std::move(source), logs.sink());
  const int port = server.start_background();
  httplib::Client client("127.0.0.1", port);
  AuthConfig auth;
  auth.hmac_secret = secret;
  const std::string token = make_token("researcher", auth, std::nullopt);

  httplib::Headers headers{{"Authorization", "Bearer " + token}};
  const auto ok = client.Post("/graphql", headers,
                              R"({"query":"{ users { id name } }"})",
                              "application/json");
  const auto unauth = client.Post("/graphql", "{}", "application/json");
  REQUIRE(ok);
  REQUIRE(unauth);
  CHECK(ok->status == 200);
  CHECK(ok->body.find(sentinel) == std::string::npos);
  CHECK(ok->body.find(secret) == std::string::npos);
  CHECK(unauth->body.find(secret) == std::string::npos);
  CHECK_FALSE(logs.contains(sentinel));
  CHECK_FALSE(logs.contains(secret));
  CHECK(logs.contains("POST /graphql 200"));
  server.stop();
}
