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

#ifndef STEPFUZZ_TARGETS_REGISTRY_HPP_
#define STEPFUZZ_TARGETS_REGISTRY_HPP_

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "stepfuzz/targets/hashtable.hpp"
#include "stepfuzz/targets/regex.hpp"
#include "stepfuzz/targets/sorting.hpp"

namespace stepfuzz {

inline std::vector<std::string> TargetNames() {
  return {"insertion_sort",  "qsort_first",   "qsort_median3",
          "qsort_random",    "qsort_ninther", "php_hashtable",
          "regex_fixed_pattern:<pattern>",    "regex_mutate_pattern"};
}

// Instantiates a built-in target by name. The campaign seed feeds targets
// with internal randomness (random pivot, fixed regex subject) so the whole
// campaign stays reproducible.
inline std::unique_ptr<Target> MakeTarget(const std::string& name,
                                          uint64_t campaign_seed) {
  if (name == "insertion_sort") return std::make_unique<InsertionSortTarget>();
  if (name == "qsort_first") {
    return std::make_unique<QuicksortTarget>(name, PivotStrategy::kFirst,
                                             campaign_seed);
  }
  if (name == "qsort_median3") {
    return std::make_unique<QuicksortTarget>(name, PivotStrategy::kMedian3,
                                             campaign_seed);
  }
  if (name == "qsort_random") {
    return std::make_unique<QuicksortTarget>(name, PivotStrategy::kRandom,
                                             campaign_seed);
  }
  if (name == "qsort_ninther") {
    return std::make_unique<QuicksortTarget>(name, PivotStrategy::kNinther,
                                             campaign_seed);
  }
  if (name == "php_hashtable") return std::make_unique<HashtableTarget>();
  if (name == "regex_mutate_pattern") {
    return std::make_unique<RegexMutatePatternTarget>(campaign_seed);
  }
  static constexpr std::string_view kFixedPrefix = "regex_fixed_pattern:";
  if (name.starts_with(kFixedPrefix)) {
    return std::make_unique<RegexFixedPatternTarget>(
        name.substr(kFixedPrefix.size()));
  }
  throw std::invalid_argument("unknown target: " + name);
}

}  // namespace stepfuzz

#endif  // STEPFUZZ_TARGETS_REGISTRY_HPP_
