// Copyright 2026 The Stepfuzz Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Resource accounting for instrumented targets: per-edge 8-bit saturating
// counters, count bucketing, and the scalar score derived from them.

#ifndef STEPFUZZ_PROBES_HPP_
#define STEPFUZZ_PROBES_HPP_

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <vector>

namespace stepfuzz {

// Thrown when a running execution exceeds its deadline. Targets are
// interruptible at probe boundaries: probe_hit checks the deadline once
// every 2^16 hits, so a stuck execution is abandoned cooperatively.
struct ExecutionTimeout {};

// Maps raw 8-bit edge counts onto the ranges 1, 2, 3, 4-7, 8-15, 16-31,
// 32-127, 128+. Bucket 0 means the edge was never taken.
inline int Bucketize(uint32_t count) {
  if (count <= 3) return static_cast<int>(count);
  if (count <= 7) return 4;
  if (count <= 15) return 5;
  if (count <= 31) return 6;
  if (count <= 127) return 7;
  return 8;
}

// Lower bound of each bucket's range; the per-edge score contribution.
inline uint32_t BucketFloor(int bucket) {
  static constexpr uint32_t kFloors[9] = {0, 1, 2, 3, 4, 8, 16, 32, 128};
  return kFloors[bucket];
}

// One execution's scored usage. bucketed_score is the guidance signal;
// steps_exact is the target's exact step counter, used only for
// ground-truth slowdown reporting, never for fitness.
struct UsageReport {
  int64_t bucketed_score = 0;
  int64_t edges_hit = 0;
  std::vector<uint8_t> edge_buckets;  // highest bucket index per edge
  int64_t wall_time_ns = 0;
  std::optional<int64_t> aux_metric;  // target-specific, e.g. collision count
  uint64_t steps_exact = 0;
  bool timed_out = false;
};

// Dense array of 8-bit saturating counters, one per registered edge id.
// Exclusively owned by one running execution; reset between runs.
class UsageMap {
 public:
  explicit UsageMap(size_t edge_count) : counters_(edge_count, 0) {}

  size_t edge_count() const { return counters_.size(); }

  void reset() {
    std::fill(counters_.begin(), counters_.end(), uint8_t{0});
    hits_since_check_ = 0;
  }

  void set_deadline(std::optional<std::chrono::steady_clock::time_point> d) {
    deadline_ = d;
    hits_since_check_ = 0;
  }

  void probe_hit(size_t edge_id) {
    if (edge_id >= counters_.size()) {
      std::fprintf(stderr,
                   "fatal: probe_hit edge id %zu out of range (edge count %zu); "
                   "target instrumentation bug\n",
                   edge_id, counters_.size());
      std::abort();
    }
    uint8_t& c = counters_[edge_id];
    if (c != 0xff) ++c;
    if ((++hits_since_check_ & 0xffff) == 0 && deadline_ &&
        std::chrono::steady_clock::now() > *deadline_) {
      throw ExecutionTimeout{};
    }
  }

  uint8_t counter(size_t edge_id) const { return counters_[edge_id]; }

  // Scores one completed execution: sum of bucket floors over all edges.
  UsageReport score() const {
    UsageReport report;
    report.edge_buckets.resize(counters_.size());
    for (size_t e = 0; e < counters_.size(); ++e) {
      const int bucket = Bucketize(counters_[e]);
      report.edge_buckets[e] = static_cast<uint8_t>(bucket);
      report.bucketed_score += BucketFloor(bucket);
      if (counters_[e] > 0) ++report.edges_hit;
    }
    return report;
  }

 private:
  std::vector<uint8_t> counters_;
  uint64_t hits_since_check_ = 0;
  std::optional<std::chrono::steady_clock::time_point> deadline_;
};

}  // namespace stepfuzz

#endif  // STEPFUZZ_PROBES_HPP_
