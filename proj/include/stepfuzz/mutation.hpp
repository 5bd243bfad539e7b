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
// The six byte-level mutation operations and the four scheduling strategies
// (random, mutation priority, offset priority, hybrid) with their
// success-statistics bookkeeping.

#ifndef STEPFUZZ_MUTATION_HPP_
#define STEPFUZZ_MUTATION_HPP_

#include <algorithm>
#include <array>
#include <cstdint>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "stepfuzz/rng.hpp"

namespace stepfuzz {

using Bytes = std::vector<uint8_t>;
using Dictionary = std::vector<Bytes>;

enum class MutationOp : int {
  kAddRemoveByte = 0,
  kFlipBitOrByte = 1,
  kShuffleSubset = 2,
  kDigitChange = 3,
  kCrossover = 4,
  kDictionaryReplace = 5,
};

inline constexpr int kNumMutationOps = 6;

inline std::string_view ToString(MutationOp op) {
  switch (op) {
    case MutationOp::kAddRemoveByte: return "add_remove_byte";
    case MutationOp::kFlipBitOrByte: return "flip_bit_or_byte";
    case MutationOp::kShuffleSubset: return "shuffle_subset";
    case MutationOp::kDigitChange: return "digit_change";
    case MutationOp::kCrossover: return "crossover";
    case MutationOp::kDictionaryReplace: return "dictionary_replace";
  }
  return "?";
}

// What a mutation did: the operation, the offset it targeted, and the byte
// range it affected in the output.
struct MutationPlan {
  MutationOp op = MutationOp::kAddRemoveByte;
  size_t offset = 0;
  size_t range_start = 0;
  size_t range_len = 0;
};

enum class Scheduler { kRandom, kMutationPriority, kOffsetPriority, kHybrid };

inline std::string_view ToString(Scheduler s) {
  switch (s) {
    case Scheduler::kRandom: return "random";
    case Scheduler::kMutationPriority: return "mutation";
    case Scheduler::kOffsetPriority: return "offset";
    case Scheduler::kHybrid: return "hybrid";
  }
  return "?";
}

// Success/selection tallies per operation, per offset, and per
// (offset, operation) pair. Offsets are indexed by absolute byte position
// 0..max_len (an insertion point may equal the input length).
struct SchedulerStats {
  explicit SchedulerStats(size_t max_len = 0, double eps = 0.5)
      : epsilon(eps),
        off_selected(max_len + 1, 0),
        off_succeeded(max_len + 1, 0),
        pair_selected(max_len + 1),
        pair_succeeded(max_len + 1) {}

  double epsilon;
  std::array<uint64_t, kNumMutationOps> op_selected{};
  std::array<uint64_t, kNumMutationOps> op_succeeded{};
  std::vector<uint64_t> off_selected;
  std::vector<uint64_t> off_succeeded;
  std::vector<std::array<uint64_t, kNumMutationOps>> pair_selected;
  std::vector<std::array<uint64_t, kNumMutationOps>> pair_succeeded;

  size_t max_offset() const { return off_selected.size() - 1; }

  static double Score(uint64_t succeeded, uint64_t selected) {
    return selected == 0 ? 0.0 : static_cast<double>(succeeded) /
                                     static_cast<double>(selected);
  }
};

// Ops that can act on a zero-length input (they insert bytes rather than
// modify existing ones).
inline std::vector<MutationOp> EligibleOps(size_t input_len, bool has_dict) {
  std::vector<MutationOp> ops;
  if (input_len == 0) {
    ops.push_back(MutationOp::kAddRemoveByte);
    if (has_dict) ops.push_back(MutationOp::kDictionaryReplace);
    return ops;
  }
  for (int i = 0; i < kNumMutationOps; ++i) {
    const auto op = static_cast<MutationOp>(i);
    if (op == MutationOp::kDictionaryReplace && !has_dict) continue;
    ops.push_back(op);
  }
  return ops;
}

// --- Mutation application -------------------------------------------------

struct MutationResult {
  Bytes output;
  MutationPlan plan;
};

// Applies one mutation operation at (around) the given offset.
// The output never exceeds max_len. Degenerate inputs may yield a no-op
// (e.g. shuffling a single byte, digit change with no digit present).
inline MutationResult ApplyMutation(MutationOp op, const Bytes& input,
                                    size_t offset, Rng& rng,
                                    const Dictionary* dict, size_t max_len) {
  MutationResult r;
  r.output = input;
  r.plan.op = op;
  const size_t len = input.size();

  switch (op) {
    case MutationOp::kAddRemoveByte: {
      const bool can_add = len < max_len;
      const bool can_remove = len > 0;
      const bool add = can_add && (!can_remove || rng.coin());
      if (add) {
        const size_t at = std::min(offset, len);
        r.output.insert(r.output.begin() + at, rng.byte());
        r.plan.offset = at;
        r.plan.range_start = at;
        r.plan.range_len = 1;
      } else if (can_remove) {
        const size_t at = std::min(offset, len - 1);
        r.output.erase(r.output.begin() + at);
        r.plan.offset = at;
        r.plan.range_start = std::min(at, r.output.size());
        r.plan.range_len = 0;
      }
      break;
    }
    case MutationOp::kFlipBitOrByte: {
      if (len == 0) break;
      const size_t at = std::min(offset, len - 1);
      if (rng.coin()) {
        r.output[at] ^= static_cast<uint8_t>(1u << rng.below(8));
      } else {
        // XOR with a nonzero value so the byte always changes.
        r.output[at] ^= static_cast<uint8_t>(rng.between(1, 255));
      }
      r.plan.offset = at;
      r.plan.range_start = at;
      r.plan.range_len = 1;
      break;
    }
    case MutationOp::kShuffleSubset: {
      if (len == 0) break;
      const size_t at = std::min(offset, len - 1);
      const size_t sub = rng.between(1, len - at);
      // Fisher-Yates over [at, at+sub).
      for (size_t i = sub; i > 1; --i) {
        const size_t j = rng.below(i);
        std::swap(r.output[at + i - 1], r.output[at + j]);
      }
      r.plan.offset = at;
      r.plan.range_start = at;
      r.plan.range_len = sub;
      break;
    }
    case MutationOp::kDigitChange: {
      std::vector<size_t> digits;
      for (size_t i = 0; i < len; ++i) {
        if (input[i] >= 0x30 && input[i] <= 0x39) digits.push_back(i);
      }
      if (digits.empty()) break;  // no digit anywhere: no-op
      size_t at;
      if (offset < len && input[offset] >= 0x30 && input[offset] <= 0x39) {
        at = offset;
      } else {
        at = digits[rng.below(digits.size())];
      }
      // Replace with a different digit.
      const uint8_t old = input[at];
      uint8_t next = static_cast<uint8_t>(0x30 + rng.below(9));
      if (next >= old) ++next;
      r.output[at] = next;
      r.plan.offset = at;
      r.plan.range_start = at;
      r.plan.range_len = 1;
      break;
    }
    case MutationOp::kCrossover: {
      if (len == 0) break;
      // Mix one part of the input into another: copy a source range over
      // a destination range within the same buffer.
      const size_t dst = std::min(offset, len - 1);
      const size_t src = rng.below(len);
      const size_t span = rng.between(1, len - std::max(src, dst));
      const Bytes snapshot = input;  // copy from the unmutated bytes
      std::copy(snapshot.begin() + src, snapshot.begin() + src + span,
                r.output.begin() + dst);
      r.plan.offset = dst;
      r.plan.range_start = dst;
      r.plan.range_len = span;
      break;
    }
    case MutationOp::kDictionaryReplace: {
      if (dict == nullptr || dict->empty()) {
        throw std::invalid_argument("dictionary_replace requires a dictionary");
      }
      const Bytes& token = (*dict)[rng.below(dict->size())];
      const size_t at = std::min(offset, len);
      size_t wrote = 0;
      for (size_t i = 0; i < token.size() && at + i < max_len; ++i) {
        if (at + i < r.output.size()) {
          r.output[at + i] = token[i];
        } else {
          r.output.push_back(token[i]);
        }
        ++wrote;
      }
      r.plan.offset = at;
      r.plan.range_start = at;
      r.plan.range_len = wrote;
      break;
    }
  }
  return r;
}

// --- Scheduling strategies -------------------------------------------------

struct ScheduleChoice {
  MutationOp op;
  size_t offset;
};

inline MutationOp UniformOp(const std::vector<MutationOp>& eligible, Rng& rng) {
  return eligible[rng.below(eligible.size())];
}

// Offset is drawn uniformly over 0..input_len; the insertion point may
// equal the length.
inline size_t UniformOffset(size_t input_len, Rng& rng) {
  return rng.below(input_len + 1);
}

inline ScheduleChoice ScheduleRandom(const SchedulerStats&, Rng& rng,
                                     size_t input_len, bool has_dict) {
  const auto eligible = EligibleOps(input_len, has_dict);
  return {UniformOp(eligible, rng), UniformOffset(input_len, rng)};
}

namespace mutation_internal {

// Exploit choice among ops: highest success ratio wins (lowest enum index
// on ties); with no positive score, a never-selected op is preferred over a
// 0-scored selected one (uniformly among the never-selected).
inline MutationOp ExploitOp(
    const std::vector<MutationOp>& eligible, Rng& rng,
    const std::array<uint64_t, kNumMutationOps>& succeeded,
    const std::array<uint64_t, kNumMutationOps>& selected) {
  std::optional<MutationOp> best;
  double best_score = 0.0;
  for (MutationOp op : eligible) {
    const int i = static_cast<int>(op);
    const double s = SchedulerStats::Score(succeeded[i], selected[i]);
    if (s > best_score) {
      best_score = s;
      best = op;
    }
  }
  if (best) return *best;
  std::vector<MutationOp> untried;
  bool any_tried = false;
  for (MutationOp op : eligible) {
    if (selected[static_cast<int>(op)] == 0) untried.push_back(op);
    else any_tried = true;
  }
  if (any_tried && !untried.empty()) return untried[rng.below(untried.size())];
  // All tried (all score 0) or none tried: lowest index / first eligible.
  if (untried.size() == eligible.size()) return eligible[rng.below(eligible.size())];
  return eligible.front();
}

}  // namespace mutation_internal

inline ScheduleChoice ScheduleMutationPriority(const SchedulerStats& stats,
                                               Rng& rng, size_t input_len,
                                               bool has_dict) {
  const auto eligible = EligibleOps(input_len, has_dict);
  const size_t offset = UniformOffset(input_len, rng);
  if (rng.chance(stats.epsilon)) {
    // All-zero selected stats must tie-break to the lowest enum index, so
    // resolve the fully-cold case deterministically here.
    bool all_cold = true;
    for (MutationOp op : eligible) {
      if (stats.op_selected[static_cast<int>(op)] != 0) all_cold = false;
    }
    bool any_positive = false;
    for (MutationOp op : eligible) {
      const int i = static_cast<int>(op);
      if (SchedulerStats::Score(stats.op_succeeded[i], stats.op_selected[i]) >
          0.0) {
        any_positive = true;
      }
    }
    if (all_cold && !any_positive) return {eligible.front(), offset};
    return {mutation_internal::ExploitOp(eligible, rng, stats.op_succeeded,
                                         stats.op_selected),
            offset};
  }
  return {UniformOp(eligible, rng), offset};
}

inline ScheduleChoice ScheduleOffsetPriority(const SchedulerStats& stats,
                                             Rng& rng, size_t input_len,
                                             bool has_dict) {
  const auto eligible = EligibleOps(input_len, has_dict);
  const MutationOp op = UniformOp(eligible, rng);
  if (rng.chance(stats.epsilon)) {
    std::optional<size_t> best;
    double best_score = 0.0;
    for (size_t o = 0; o < stats.off_selected.size(); ++o) {
      const double s = SchedulerStats::Score(stats.off_succeeded[o],
                                             stats.off_selected[o]);
      if (s > best_score) {
        best_score = s;
        best = o;
      }
    }
    // No history, or the best offset lies beyond the current input: clamp
    // by a uniform re-draw over the valid range.
    if (best && *best <= input_len) return {op, *best};
    return {op, UniformOffset(input_len, rng)};
  }
  return {op, UniformOffset(input_len, rng)};
}

inline ScheduleChoice ScheduleHybrid(const SchedulerStats& stats, Rng& rng,
                                     size_t input_len, bool has_dict) {
  const auto eligible = EligibleOps(input_len, has_dict);
  if (rng.chance(stats.epsilon)) {
    // Offset score = mean over operations of the pair success probability.
    std::optional<size_t> best_off;
    double best_mean = 0.0;
    for (size_t o = 0; o < stats.pair_selected.size(); ++o) {
      double sum = 0.0;
      for (int i = 0; i < kNumMutationOps; ++i) {
        sum += SchedulerStats::Score(stats.pair_succeeded[o][i],
                                     stats.pair_selected[o][i]);
      }
      const double mean = sum / kNumMutationOps;
      if (mean > best_mean) {
        best_mean = mean;
        best_off = o;
      }
    }
    size_t offset;
    if (best_off && *best_off <= input_len) {
      offset = *best_off;
    } else {
      offset = UniformOffset(input_len, rng);
    }
    // Best operation at that offset.
    std::optional<MutationOp> best_op;
    double best_score = 0.0;
    for (MutationOp op : eligible) {
      const int i = static_cast<int>(op);
      const double s = SchedulerStats::Score(stats.pair_succeeded[offset][i],
                                             stats.pair_selected[offset][i]);
      if (s > best_score) {
        best_score = s;
        best_op = op;
      }
    }
    return {best_op ? *best_op : UniformOp(eligible, rng), offset};
  }
  return {UniformOp(eligible, rng), UniformOffset(input_len, rng)};
}

inline ScheduleChoice Schedule(Scheduler scheduler, const SchedulerStats& stats,
                               Rng& rng, size_t input_len, bool has_dict) {
  switch (scheduler) {
    case Scheduler::kRandom:
      return ScheduleRandom(stats, rng, input_len, has_dict);
    case Scheduler::kMutationPriority:
      return ScheduleMutationPriority(stats, rng, input_len, has_dict);
    case Scheduler::kOffsetPriority:
      return ScheduleOffsetPriority(stats, rng, input_len, has_dict);
    case Scheduler::kHybrid:
      return ScheduleHybrid(stats, rng, input_len, has_dict);
  }
  return ScheduleRandom(stats, rng, input_len, has_dict);
}

// Bumps selection counters for the plan's op, offset, and pair; success
// counters only when the unit was admitted by the active fitness policy.
inline void RecordOutcome(SchedulerStats& stats, const MutationPlan& plan,
                          bool admitted) {
  const int op = static_cast<int>(plan.op);
  const size_t off = std::min(plan.offset, stats.max_offset());
  stats.op_selected[op] += 1;
  stats.off_selected[off] += 1;
  stats.pair_selected[off][op] += 1;
  if (admitted) {
    stats.op_succeeded[op] += 1;
    stats.off_succeeded[off] += 1;
    stats.pair_succeeded[off][op] += 1;
  }
}

// Dictionary file: one token per line; lines beginning with '#' ignored.
inline Dictionary LoadDictionary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open dictionary: " + path);
  Dictionary dict;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    dict.emplace_back(line.begin(), line.end());
  }
  return dict;
}

}  // namespace stepfuzz

#endif  // STEPFUZZ_MUTATION_HPP_
