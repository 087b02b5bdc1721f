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
// Load harness for the overhead experiments: baseline vs. no-op directive
// vs. generalization vs. noise vs. hashing at 100 / 1000 / 10000 objects.
// Absolute numbers are host-bound; the interesting outputs are the
// ordering between methods and the no-op-vs-baseline gap.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace quell {

inline const std::vector<std::string>& bench_variants() {
  static const std::vector<std::string> v = {"baseline", "noop", "generalize",
                                             "noise", "hash"};
  return v;
}

struct BenchConfig {
  std::string target;  // e.g. http://127.0.0.1:8380
  std::string variant = "baseline";
  int object_count = 1000;      // 100 | 1000 | 10000
  int warmup_requests = 50;
  int measured_requests = 200;  // >= 30 for reportable statistics
  int concurrency = 1;          // 1 for latency runs, 8 for throughput runs
  std::string token;

  void validate() const;  // throws ErrorKind::config
  std::string query() const;
};

struct BenchCell {
  std::string variant;
  int object_count = 0;
  double mean_latency_s = 0;
  double stddev_s = 0;
  double throughput_rps = 0;
  int samples = 0;
};

struct BenchReport {
  std::vector<BenchCell> cells;
};

// Waits for /healthz, runs warmup then the measured requests across the
// configured workers, and aggregates wall-clock per-request times. Any
// non-200 during measurement aborts the run; the first response per worker
// is checked for the expected object count.
BenchCell run_bench(const BenchConfig& config);

// `table` aligns columns for humans; `csv` emits
// variant,object_count,mean_latency_s,stddev_s,throughput_rps,samples.
std::string emit_report(const BenchReport& report, const std::string& format);

}  // namespace quell
