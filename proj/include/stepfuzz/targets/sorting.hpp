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
// Sorting targets. Bytes are sorted by unsigned value; the step proxy is
// the comparison count for insertion sort and partition-loop iterations
// (plus one per call) for the quicksorts.

#ifndef STEPFUZZ_TARGETS_SORTING_HPP_
#define STEPFUZZ_TARGETS_SORTING_HPP_

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "stepfuzz/rng.hpp"
#include "stepfuzz/targets/target.hpp"

namespace stepfuzz {

namespace sorting_internal {

// Edge layout shared by the sorting targets:
//   edge 0                       entry
//   edges [1, 1+kDepthEdges)     one per outer index / recursion depth
//   edges [1+kDepthEdges, ...)   one per inner-loop depth (insertion path)
// Splitting the probes across outer position and inner depth keeps the
// bucketed counters well below saturation for 64-byte inputs, so the
// fitness signal keeps a gradient all the way to the quadratic worst case.
inline constexpr size_t kDepthEdges = 64;
inline constexpr size_t kEntryEdge = 0;
inline constexpr size_t kSortEdgeCount = 1 + 2 * kDepthEdges;

inline size_t OuterEdge(size_t i) { return 1 + std::min(i, kDepthEdges - 1); }
inline size_t InnerEdge(size_t j) {
  return 1 + kDepthEdges + std::min(j, kDepthEdges - 1);
}

// The quicksorts probe one edge per (recursion depth, loop iteration) pair.
// Counters then stay in the exact low buckets, so the bucketed score tracks
// the step count almost one to one and strict-increase admission never
// stalls on quantization.
inline constexpr size_t kQsortEdgeCount = 1 + kDepthEdges * kDepthEdges;

inline size_t QsortEdge(size_t depth, size_t iteration) {
  return 1 + std::min(depth, kDepthEdges - 1) * kDepthEdges +
         std::min(iteration, kDepthEdges - 1);
}

}  // namespace sorting_internal

// Sorts in place, returning the inner-loop comparison count. One probe per
// comparison: the outer-index edge and the inner-depth edge.
inline uint64_t InsertionSortSteps(std::vector<uint8_t>& data,
                                   UsageMap* map = nullptr) {
  uint64_t comparisons = 0;
  for (size_t i = 1; i < data.size(); ++i) {
    const uint8_t key = data[i];
    size_t j = i;
    while (j > 0) {
      ++comparisons;
      if (map != nullptr) {
        map->probe_hit(sorting_internal::OuterEdge(i));
        map->probe_hit(sorting_internal::InnerEdge(i - j));
      }
      if (data[j - 1] <= key) break;
      data[j] = data[j - 1];
      --j;
    }
    data[j] = key;
  }
  return comparisons;
}

enum class PivotStrategy { kFirst, kMedian3, kRandom, kNinther };

namespace sorting_internal {

inline uint8_t Median3(uint8_t a, uint8_t b, uint8_t c) {
  return std::max(std::min(a, b), std::min(std::max(a, b), c));
}

// Three-way partition quicksort: split into smaller/equal/greater, recurse
// on greater then smaller, concatenate. Steps: one per partition-loop
// iteration plus a per-call overhead of one. The insertion-sort cutoff
// (<= 7 elements) applies to every strategy except kFirst, which follows
// the plain first-element scheme with no cutoff.
struct QuickSorter {
  PivotStrategy strategy;
  UsageMap* map = nullptr;
  Rng* rng = nullptr;  // only for kRandom
  uint64_t steps = 0;

  static constexpr size_t kInsertionCutoff = 7;

  uint8_t PickPivot(const std::vector<uint8_t>& a) {
    switch (strategy) {
      case PivotStrategy::kFirst:
        return a.front();
      case PivotStrategy::kMedian3:
        return Median3(a.front(), a[a.size() / 2], a.back());
      case PivotStrategy::kRandom:
        return a[rng->below(a.size())];
      case PivotStrategy::kNinther: {
        const size_t n = a.size();
        const uint8_t m1 = Median3(a[0], a[n / 8], a[n / 4]);
        const uint8_t m2 = Median3(a[3 * n / 8], a[n / 2], a[5 * n / 8]);
        const uint8_t m3 = Median3(a[3 * n / 4], a[7 * n / 8], a[n - 1]);
        return Median3(m1, m2, m3);
      }
    }
    return a.front();
  }

  std::vector<uint8_t> Sort(std::vector<uint8_t> array, size_t depth) {
    ++steps;  // per-call overhead
    if (array.size() <= 1) return array;
    if (strategy != PivotStrategy::kFirst &&
        array.size() <= kInsertionCutoff) {
      // Small ranges fall through to the insertion path.
      for (size_t i = 1; i < array.size(); ++i) {
        const uint8_t key = array[i];
        size_t j = i;
        while (j > 0) {
          ++steps;
          if (map != nullptr) map->probe_hit(QsortEdge(depth, i - j));
          if (array[j - 1] <= key) break;
          array[j] = array[j - 1];
          --j;
        }
        array[j] = key;
      }
      return array;
    }
    const uint8_t pivot = PickPivot(array);
    std::vector<uint8_t> smaller, equal, greater;
    size_t iteration = 0;
    for (uint8_t x : array) {
      ++steps;
      if (map != nullptr) map->probe_hit(QsortEdge(depth, iteration++));
      if (x > pivot) {
        greater.push_back(x);
      } else if (x == pivot) {
        equal.push_back(x);
      } else {
        smaller.push_back(x);
      }
    }
    greater = Sort(std::move(greater), depth + 1);
    smaller = Sort(std::move(smaller), depth + 1);
    std::vector<uint8_t> out;
    out.reserve(array.size());
    out.insert(out.end(), smaller.begin(), smaller.end());
    out.insert(out.end(), equal.begin(), equal.end());
    out.insert(out.end(), greater.begin(), greater.end());
    return out;
  }
};

}  // namespace sorting_internal

// Runs the three-way quicksort with the given pivot strategy; returns the
// step count and leaves the sorted bytes in `data`.
inline uint64_t QuicksortSteps(std::vector<uint8_t>& data,
                               PivotStrategy strategy, UsageMap* map = nullptr,
                               Rng* rng = nullptr) {
  sorting_internal::QuickSorter sorter{strategy, map, rng};
  data = sorter.Sort(std::move(data), 0);
  return sorter.steps;
}

class InsertionSortTarget : public Target {
 public:
  const std::string& name() const override { return name_; }
  size_t edge_count() const override {
    return sorting_internal::kSortEdgeCount;
  }
  RunResult run(std::span<const uint8_t> input, UsageMap& map) const override {
    map.probe_hit(sorting_internal::kEntryEdge);
    std::vector<uint8_t> data(input.begin(), input.end());
    RunResult r;
    r.steps = 1 + InsertionSortSteps(data, &map);
    return r;
  }

 private:
  std::string name_ = "insertion_sort";
};

class QuicksortTarget : public Target {
 public:
  QuicksortTarget(std::string name, PivotStrategy strategy,
                  uint64_t campaign_seed)
      : name_(std::move(name)), strategy_(strategy), seed_(campaign_seed) {}

  const std::string& name() const override { return name_; }
  size_t edge_count() const override {
    return sorting_internal::kQsortEdgeCount;
  }
  RunResult run(std::span<const uint8_t> input, UsageMap& map) const override {
    map.probe_hit(sorting_internal::kEntryEdge);
    std::vector<uint8_t> data(input.begin(), input.end());
    // Reseeded per execution so identical inputs replay identically.
    Rng rng(seed_);
    RunResult r;
    r.steps = 1 + QuicksortSteps(data, strategy_, &map, &rng);
    return r;
  }

 private:
  std::string name_;
  PivotStrategy strategy_;
  uint64_t seed_;
};

}  // namespace stepfuzz

#endif  // STEPFUZZ_TARGETS_SORTING_HPP_
