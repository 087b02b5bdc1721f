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

#include "quell/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <thread>

#include <httplib.h>
#include "quell/error.hpp"
#include "quell/json.hpp"

namespace quell {

void BenchConfig::validate() const {
  if (target.empty()) throw Error(ErrorKind::config, "bench target is empty");
  if (std::find(bench_variants().begin(), bench_variants().end(), variant) ==
      bench_variants().end()) {
    throw Error(ErrorKind::config, "unknown bench variant '" + variant + "'");
  }
  if (object_count != 100 && object_count != 1000 && object_count != 10000) {
    throw Error(ErrorKind::config, "object count must be 100, 1000 or 10000");
  }
  if (measured_requests < 30) {
    throw Error(ErrorKind::config,
                "need at least 30 measured requests for reportable statistics");
  }
  if (warmup_requests < 0) throw Error(ErrorKind::config, "negative warmup");
  if (concurrency < 1) throw Error(ErrorKind::config, "concurrency must be >= 1");
}

std::string BenchConfig::query() const {
  return "{ symptoms(first: " + std::to_string(object_count) +
         ") { id pain mood recordedAt } }";
}

namespace {

ojson graphql_body(const BenchConfig& config) {
  ojson body;
  body["query"] = config.query();
  return body;
}

httplib::Headers auth_headers(const BenchConfig& config) {
  httplib::Headers headers;
  if (!config.token.empty()) {
    headers.emplace("Authorization", "Bearer " + config.token);
  }
  return headers;
}

void check_object_count(const std::string& body, const BenchConfig& config) {
  const ojson doc = ojson::parse(body, nullptr, false);
  if (doc.is_discarded() || !doc.contains("data") ||
      !doc["data"].contains("symptoms") || !doc["data"]["symptoms"].is_array()) {
    throw Error(ErrorKind::config,
                "bench response has no data.symptoms array: " + body.substr(0, 200));
  }
  const size_t n = doc["data"]["symptoms"].size();
  if (n != size_t(config.object_count)) {
    throw Error(ErrorKind::config,
                "bench response returned " + std::to_string(n) +
                    " objects, expected " + std::to_string(config.object_count) +
                    "; grow the service dataset");
  }
}

}  // namespace

BenchCell run_bench(const BenchConfig& config) {
  config.validate();

  {
    httplib::Client probe(config.target);
    probe.set_connection_timeout(5, 0);
    bool healthy = false;
    for (int attempt = 0; attempt < 50 && !healthy; ++attempt) {
      const httplib::Result res = probe.Get("/healthz");
      healthy = res && res->status == 200;
      if (!healthy) std::this_thread::sleep_for(std::chrono::milliseconds(100));
    }
    if (!healthy) {
      throw Error(ErrorKind::config,
                  "target " + config.target + " never became healthy");
    }
  }

  const std::string body = graphql_body(config).dump();
  const httplib::Headers headers = auth_headers(config);

  std::mutex mutex;
  std::vector<double> latencies;
  latencies.reserve(size_t(config.measured_requests));
  std::string failure;
  std::atomic<bool> failed{false};

  auto worker = [&](int quota, bool measure) {
    httplib::Client client(config.target);
    client.set_connection_timeout(10, 0);
    client.set_read_timeout(60, 0);
    bool first = true;
    for (int i = 0; i < quota && !failed.load(std::memory_order_relaxed); ++i) {
      const auto started = std::chrono::steady_clock::now();
      const httplib::Result res =
          client.Post("/graphql", headers, body, "application/json");
      const double elapsed =
          std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                        started)
              .count();
      std::string problem;
      if (!res) {
        problem = "request failed: " + httplib::to_string(res.error());
      } else if (res->status != 200) {
        problem = "status " + std::to_string(res->status) + ": " +
                  res->body.substr(0, 200);
      }
      if (problem.empty() && measure && first) {
        try {
          check_object_count(res->body, config);
        } catch (const Error& e) {
          problem = e.what();
        }
        first = false;
      }
      std::lock_guard<std::mutex> lock(mutex);
      if (!problem.empty()) {
        if (failure.empty()) failure = problem;
        failed.store(true, std::memory_order_relaxed);
        return;
      }
      if (measure) latencies.push_back(elapsed);
    }
  };

  auto run_phase = [&](int total, bool measure) {
    const int workers = config.concurrency;
    std::vector<std::thread> pool;
    pool.reserve(size_t(workers));
    for (int w = 0; w < workers; ++w) {
      const int quota = total / workers + (w < total % workers ? 1 : 0);
      if (quota > 0) pool.emplace_back(worker, quota, measure);
    }
    for (std::thread& t : pool) t.join();
    if (!failure.empty()) {
      throw Error(ErrorKind::config, "bench run aborted: " + failure);
    }
  };

  run_phase(config.warmup_requests, false);
  const auto wall_start = std::chrono::steady_clock::now();
  run_phase(config.measured_requests, true);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                    wall_start)
          .count();

  BenchCell cell;
  cell.variant = config.variant;
  cell.object_count = config.object_count;
  cell.samples = int(latencies.size());
  double sum = 0;
  for (const double v : latencies) sum += v;
  cell.mean_latency_s = sum / double(latencies.size());
  double sq = 0;
  for (const double v : latencies) {
    sq += (v - cell.mean_latency_s) * (v - cell.mean_latency_s);
  }
  cell.stddev_s = latencies.size() > 1
                      ? std::sqrt(sq / double(latencies.size() - 1))
                      : 0.0;
  cell.throughput_rps = double(latencies.size()) / wall;
  return cell;
}

std::string emit_report(const BenchReport& report, const std::string& format) {
  if (format == "csv") {
    std::string out =
        "variant,object_count,mean_latency_s,stddev_s,throughput_rps,samples\n";
    for (const BenchCell& c : report.cells) {
      char line[256];
      std::snprintf(line, sizeof(line), "%s,%d,%.9g,%.9g,%.9g,%d\n",
                    c.variant.c_str(), c.object_count, c.mean_latency_s,
                    c.stddev_s, c.throughput_rps, c.samples);
      out += line;
    }
    return out;
  }
  if (format != "table") {
    throw Error(ErrorKind::config, "report format must be table or csv");
  }
  std::string out;
  char line[256];
  std::snprintf(line, sizeof(line), "%-12s %8s %14s %12s %12s %8s\n", "variant",
                "objects", "mean_ms", "stddev_ms", "rps", "samples");
  out += line;
  for (const BenchCell& c : report.cells) {
    std::snprintf(line, sizeof(line), "%-12s %8d %14.3f %12.3f %12.1f %8d\n",
                  c.variant.c_str(), c.object_count, c.mean_latency_s * 1e3,
                  c.stddev_s * 1e3, c.throughput_rps, c.samples);
    out += line;
  }
  return out;
}

}  // namespace quell
