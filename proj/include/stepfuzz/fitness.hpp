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
// Admission policies: slow-unit guidance plus the two baselines it is
// evaluated against (edge-coverage guidance and wall-clock guidance).

#ifndef STEPFUZZ_FITNESS_HPP_
#define STEPFUZZ_FITNESS_HPP_

#include <algorithm>
#include <cstdint>
#include <string_view>
#include <vector>

#include "stepfuzz/probes.hpp"

namespace stepfuzz {

enum class FitnessPolicy { kSlow, kCoverage, kTime };

inline std::string_view ToString(FitnessPolicy p) {
  switch (p) {
    case FitnessPolicy::kSlow: return "slow";
    case FitnessPolicy::kCoverage: return "coverage";
    case FitnessPolicy::kTime: return "time";
  }
  return "?";
}

struct GlobalState {
  FitnessPolicy policy = FitnessPolicy::kSlow;
  int64_t best_bucketed_score = 0;
  std::vector<uint8_t> seen_edge_buckets;  // element-wise max, per edge
  int64_t best_wall_time_ns = 0;
};

// Admit iff the bucketed step score strictly exceeds the best seen so far.
// Ties are not admitted, which keeps admitted scores strictly increasing.
inline bool SlowUnit(const UsageReport& report, GlobalState& state) {
  if (report.bucketed_score > state.best_bucketed_score) {
    state.best_bucketed_score = report.bucketed_score;
    return true;
  }
  return false;
}

// Admit iff any edge reached a higher bucket than ever before (new edge or
// new bucket for a known edge). The naive coverage baseline.
inline bool CoverageUnit(const UsageReport& report, GlobalState& state) {
  if (state.seen_edge_buckets.size() < report.edge_buckets.size()) {
    state.seen_edge_buckets.resize(report.edge_buckets.size(), 0);
  }
  bool admit = false;
  for (size_t e = 0; e < report.edge_buckets.size(); ++e) {
    if (report.edge_buckets[e] > state.seen_edge_buckets[e]) {
      state.seen_edge_buckets[e] = report.edge_buckets[e];
      admit = true;
    }
  }
  return admit;
}

// Admit iff this execution was slower, by wall clock, than all previous
// ones. Measured once per execution; noisy by construction.
inline bool TimeUnit(const UsageReport& report, GlobalState& state) {
  if (report.wall_time_ns > state.best_wall_time_ns) {
    state.best_wall_time_ns = report.wall_time_ns;
    return true;
  }
  return false;
}

inline bool AdmitUnit(const UsageReport& report, GlobalState& state) {
  switch (state.policy) {
    case FitnessPolicy::kSlow: return SlowUnit(report, state);
    case FitnessPolicy::kCoverage: return CoverageUnit(report, state);
    case FitnessPolicy::kTime: return TimeUnit(report, state);
  }
  return false;
}

}  // namespace stepfuzz

#endif  // STEPFUZZ_FITNESS_HPP_
