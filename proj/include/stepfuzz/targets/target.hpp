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

#ifndef STEPFUZZ_TARGETS_TARGET_HPP_
#define STEPFUZZ_TARGETS_TARGET_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "stepfuzz/probes.hpp"

namespace stepfuzz {

// An instrumented program under test. The entry point is deterministic and
// total for all byte inputs (given cooperative cancellation through the
// UsageMap deadline). `steps` is the exact step counter, a per-target proxy
// for executed instructions; it is reported for ground truth but never
// feeds the fitness signal.
class Target {
 public:
  struct RunResult {
    uint64_t steps = 0;
    std::optional<int64_t> aux;  // e.g. hash collision count
  };

  virtual ~Target() = default;
  virtual const std::string& name() const = 0;
  virtual size_t edge_count() const = 0;
  virtual RunResult run(std::span<const uint8_t> input, UsageMap& map) const = 0;
};

}  // namespace stepfuzz

#endif  // STEPFUZZ_TARGETS_TARGET_HPP_
