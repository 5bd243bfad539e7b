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
// Separately-chained hash table keyed by the DJBX33A string hash, sized at
// 64 buckets with at most 64 insertions per run. The auxiliary metric is
// the collision count; chain walks dominate the step count.

#ifndef STEPFUZZ_TARGETS_HASHTABLE_HPP_
#define STEPFUZZ_TARGETS_HASHTABLE_HPP_

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stepfuzz/targets/target.hpp"

namespace stepfuzz {

// DJBX33A: h = 33*h + byte with h0 = 5381, 32-bit wraparound.
inline uint32_t DjbHash(std::span<const uint8_t> key) {
  uint32_t hash = 5381;
  for (uint8_t byte : key) {
    hash = ((hash << 5) + hash) + byte;
  }
  return hash;
}

inline uint32_t DjbHash(const std::string& key) {
  return DjbHash(std::span<const uint8_t>(
      reinterpret_cast<const uint8_t*>(key.data()), key.size()));
}

// Builds a colliding 2-byte key pair ("ab", "cd") with c = a + n and
// d = b - 33*n. Returns nothing when either derived byte leaves 0..255 or
// when n = 0 (the degenerate identical pair).
inline std::optional<std::pair<std::string, std::string>> CollisionPair(
    uint8_t a, uint8_t b, int n) {
  if (n == 0) return std::nullopt;
  const int c = int(a) + n;
  const int d = int(b) - 33 * n;
  if (c < 0 || c > 255 || d < 0 || d > 255) return std::nullopt;
  std::string first{char(a), char(b)};
  std::string second{char(c), char(d)};
  return std::make_pair(first, second);
}

namespace hashtable_internal {

inline constexpr size_t kBuckets = 64;
inline constexpr size_t kMaxInsertions = 64;
// Edge layout mirrors the sorting targets: one edge per loop iteration
// index. 0 entry, [1, 1+kMaxParseEdges) per parse position,
// [.., +kMaxInsertions) per insertion index, then one chain-step edge per
// bucket.
inline constexpr size_t kEntryEdge = 0;
inline constexpr size_t kMaxParseEdges = 256;
inline constexpr size_t kParseEdgeBase = 1;
inline constexpr size_t kInsertEdgeBase = kParseEdgeBase + kMaxParseEdges;
inline constexpr size_t kChainEdgeBase = kInsertEdgeBase + kMaxInsertions;
inline constexpr size_t kEdgeCount = kChainEdgeBase + kBuckets;

inline size_t ParseEdge(size_t position) {
  return kParseEdgeBase + std::min(position, kMaxParseEdges - 1);
}

inline size_t InsertEdge(size_t index) {
  return kInsertEdgeBase + std::min(index, kMaxInsertions - 1);
}

}  // namespace hashtable_internal

struct HashtableRun {
  int64_t collisions = 0;
  uint64_t steps = 0;
  size_t insertions = 0;
};

// Parses the input as newline-separated keys, drops exact-byte duplicates,
// and inserts at most 64 keys into a 64-bucket chained table. A collision
// is an insertion landing on an already-occupied bucket.
inline HashtableRun HashtableInsertRun(std::span<const uint8_t> input,
                                       UsageMap* map = nullptr) {
  using namespace hashtable_internal;
  HashtableRun result;
  result.steps = 1;  // entry
  if (map != nullptr) map->probe_hit(kEntryEdge);

  std::vector<std::vector<uint8_t>> keys;
  std::vector<uint8_t> current;
  auto flush = [&] {
    if (current.empty()) return;
    for (const auto& k : keys) {
      if (k == current) {
        current.clear();
        return;
      }
    }
    keys.push_back(std::move(current));
    current.clear();
  };
  size_t position = 0;
  for (uint8_t byte : input) {
    ++result.steps;
    if (map != nullptr) map->probe_hit(ParseEdge(position++));
    if (byte == '\n') flush();
    else current.push_back(byte);
  }
  flush();
  if (keys.size() > kMaxInsertions) keys.resize(kMaxInsertions);

  std::vector<std::vector<const std::vector<uint8_t>*>> table(kBuckets);
  for (const auto& key : keys) {
    ++result.steps;
    if (map != nullptr) map->probe_hit(InsertEdge(result.insertions));
    ++result.insertions;
    const size_t bucket = DjbHash(key) % kBuckets;
    if (!table[bucket].empty()) ++result.collisions;
    // Walk the chain to the tail, one probe per node.
    for (size_t i = 0; i < table[bucket].size(); ++i) {
      ++result.steps;
      if (map != nullptr) map->probe_hit(kChainEdgeBase + bucket);
    }
    table[bucket].push_back(&key);
  }
  return result;
}

class HashtableTarget : public Target {
 public:
  const std::string& name() const override { return name_; }
  size_t edge_count() const override { return hashtable_internal::kEdgeCount; }
  RunResult run(std::span<const uint8_t> input, UsageMap& map) const override {
    const HashtableRun r = HashtableInsertRun(input, &map);
    return {.steps = r.steps, .aux = r.collisions};
  }

 private:
  std::string name_ = "php_hashtable";
};

}  // namespace stepfuzz

#endif  // STEPFUZZ_TARGETS_HASHTABLE_HPP_
