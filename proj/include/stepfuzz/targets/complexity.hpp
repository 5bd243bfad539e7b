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
// Empirical complexity classifier for toy-grammar regexes: measures the
// matcher's step growth on adversarial pumped subjects and labels the
// pattern linear, superlinear, or exponential.

#ifndef STEPFUZZ_TARGETS_COMPLEXITY_HPP_
#define STEPFUZZ_TARGETS_COMPLEXITY_HPP_

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "stepfuzz/targets/regex.hpp"

namespace stepfuzz {

enum class ComplexityClass { kLinear, kSuperlinear, kExponential, kInvalid };

inline std::string_view ToString(ComplexityClass c) {
  switch (c) {
    case ComplexityClass::kLinear: return "linear";
    case ComplexityClass::kSuperlinear: return "superlinear";
    case ComplexityClass::kExponential: return "exponential";
    case ComplexityClass::kInvalid: return "invalid";
  }
  return "?";
}

struct ClassifierConfig {
  // Strictly increasing; spaced by 1.5x so a polynomial's successive-length
  // step ratio stays under the exponential threshold (a cubic reaches
  // 1.5^3 = 3.375) while exponential growth sails past it.
  std::vector<size_t> probe_lengths = {8, 12, 18, 27};
  std::string pump_alphabet = "abc";
  uint64_t step_budget = 100'000'000;  // per length; exceeding => exponential
  double exponential_ratio = 3.5;      // successive ratio, top two intervals
  double superlinear_slope = 1.5;      // log-log fit threshold
};

// Worst-case step count at one subject length: the max over pump
// candidates (each alphabet character repeated), with and without a
// trailing mismatch byte. Sets `exceeded` if any probe blows the budget.
inline uint64_t AdversarialSteps(const regex::Ast& ast, size_t length,
                                 const ClassifierConfig& config,
                                 bool& exceeded) {
  uint64_t worst = 1;
  for (char pump : config.pump_alphabet) {
    for (bool mismatch_tail : {false, true}) {
      std::string subject(length, pump);
      if (mismatch_tail) subject.push_back('z');  // never matches a literal
      const auto outcome = regex::Search(ast, subject, config.step_budget);
      if (outcome.budget_exceeded) {
        exceeded = true;
        return config.step_budget;
      }
      worst = std::max(worst, outcome.visits);
    }
  }
  return worst;
}

inline ComplexityClass ClassifyComplexity(
    std::string_view pattern, const ClassifierConfig& config = {}) {
  const auto ast = regex::Parse(pattern);
  if (!ast) return ComplexityClass::kInvalid;

  const auto& lengths = config.probe_lengths;
  std::vector<uint64_t> steps;
  steps.reserve(lengths.size());
  for (size_t len : lengths) {
    bool exceeded = false;
    steps.push_back(AdversarialSteps(*ast, len, config, exceeded));
    if (exceeded) return ComplexityClass::kExponential;
  }

  // Exponential rule first: both of the two topmost successive ratios high.
  const size_t n = steps.size();
  if (n >= 3) {
    const double r1 = double(steps[n - 1]) / double(steps[n - 2]);
    const double r2 = double(steps[n - 2]) / double(steps[n - 3]);
    if (r1 >= config.exponential_ratio && r2 >= config.exponential_ratio) {
      return ComplexityClass::kExponential;
    }
  }

  // Least-squares slope of log(steps) against log(length).
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    const double x = std::log(double(lengths[i]));
    const double y = std::log(double(steps[i]));
    sx += x; sy += y; sxx += x * x; sxy += x * y;
  }
  const double slope =
      (double(n) * sxy - sx * sy) / (double(n) * sxx - sx * sx);
  return slope > config.superlinear_slope ? ComplexityClass::kSuperlinear
                                          : ComplexityClass::kLinear;
}

}  // namespace stepfuzz

#endif  // STEPFUZZ_TARGETS_COMPLEXITY_HPP_
