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
// Experiment runner: slowdown statistics, scheduler/fitness A-B comparison
// campaigns, regex session summaries, and report emission.

#ifndef STEPFUZZ_HARNESS_HPP_
#define STEPFUZZ_HARNESS_HPP_

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <future>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "stepfuzz/driver.hpp"
#include "stepfuzz/targets/complexity.hpp"

namespace stepfuzz {

// Slowdown of the best (slowest) unit over the fastest unit seen during
// the campaign. The entry probe guarantees a baseline of at least one step.
inline double Slowdown(uint64_t best_steps, uint64_t baseline_steps) {
  if (baseline_steps < 1) {
    throw std::invalid_argument("slowdown baseline must be >= 1 step");
  }
  return static_cast<double>(best_steps) / static_cast<double>(baseline_steps);
}

struct CompareRow {
  size_t config_id = 0;
  size_t repetition = 0;
  double final_slowdown = 1.0;
  int64_t final_score = 0;
  uint64_t generations = 0;
};

struct CompareOutcome {
  std::vector<CompareRow> rows;  // ordered by (config_id, repetition)
  std::vector<double> mean_final_slowdown;  // per config
  std::vector<double> max_final_slowdown;   // per config
  // Per-config mean best-slowdown curve, sampled at every checkpoint
  // generation, averaged across repetitions.
  std::vector<std::vector<double>> mean_curve;
  std::vector<CampaignResult> results;      // ordered like rows
};

namespace harness_internal {

// Best slowdown at or before each checkpoint generation.
inline std::vector<double> CurveAtCheckpoints(
    const std::vector<CampaignRecord>& records, uint64_t interval,
    uint64_t generations) {
  std::vector<double> curve;
  double best = 1.0;
  size_t i = 0;
  for (uint64_t g = interval; g <= generations; g += interval) {
    while (i < records.size() && records[i].generation <= g) {
      best = std::max(best, records[i].slowdown);
      ++i;
    }
    curve.push_back(best);
  }
  return curve;
}

}  // namespace harness_internal

// Runs repetitions x |configs| campaigns with derived seeds
// (config.rng_seed + repetition index). Campaigns are independent, so they
// run as parallel workers; results are merged in (config, repetition) order
// and per-campaign determinism is unaffected.
inline CompareOutcome Compare(const std::vector<CampaignConfig>& configs,
                              size_t repetitions,
                              const std::vector<Bytes>& seeds = {},
                              bool parallel = true) {
  if (repetitions < 1) throw std::invalid_argument("repetitions must be >= 1");
  CompareOutcome outcome;
  std::vector<std::future<CampaignResult>> futures;
  futures.reserve(configs.size() * repetitions);
  for (size_t c = 0; c < configs.size(); ++c) {
    for (size_t rep = 0; rep < repetitions; ++rep) {
      CampaignConfig config = configs[c];
      config.rng_seed += rep;
      if (!config.out_dir.empty()) {
        config.out_dir = config.out_dir /
                         ("config" + std::to_string(c) + "_rep" +
                          std::to_string(rep));
      }
      futures.push_back(std::async(
          parallel ? std::launch::async : std::launch::deferred,
          [config, &seeds] { return RunCampaign(config, seeds); }));
    }
  }
  outcome.mean_final_slowdown.assign(configs.size(), 0.0);
  outcome.max_final_slowdown.assign(configs.size(), 0.0);
  outcome.mean_curve.resize(configs.size());
  size_t index = 0;
  for (size_t c = 0; c < configs.size(); ++c) {
    for (size_t rep = 0; rep < repetitions; ++rep, ++index) {
      CampaignResult result = futures[index].get();
      outcome.rows.push_back({.config_id = c,
                              .repetition = rep,
                              .final_slowdown = result.final_slowdown,
                              .final_score = result.best_score,
                              .generations = configs[c].generations});
      outcome.mean_final_slowdown[c] += result.final_slowdown;
      outcome.max_final_slowdown[c] =
          std::max(outcome.max_final_slowdown[c], result.final_slowdown);
      const auto curve = harness_internal::CurveAtCheckpoints(
          result.records, std::max<uint64_t>(configs[c].checkpoint_interval, 1),
          configs[c].generations);
      auto& mean = outcome.mean_curve[c];
      if (mean.size() < curve.size()) mean.resize(curve.size(), 0.0);
      for (size_t i = 0; i < curve.size(); ++i) mean[i] += curve[i];
      outcome.results.push_back(std::move(result));
    }
    outcome.mean_final_slowdown[c] /= static_cast<double>(repetitions);
    for (double& v : outcome.mean_curve[c]) {
      v /= static_cast<double>(repetitions);
    }
  }
  return outcome;
}

inline void WriteCompareCsv(const CompareOutcome& outcome,
                            const std::filesystem::path& path) {
  std::ofstream out(path);
  out << "config_id,repetition,final_slowdown,final_score,generations\n";
  for (const CompareRow& r : outcome.rows) {
    out << r.config_id << ',' << r.repetition << ',' << r.final_slowdown
        << ',' << r.final_score << ',' << r.generations << '\n';
  }
}

// --- Regex session summaries ------------------------------------------------

struct RegexSessionSummary {
  size_t invalid = 0;
  size_t slowdown_causing = 0;  // valid patterns admitted as slow units
  size_t superlinear = 0;
  size_t exponential = 0;
  // inverse_cdf[kind][n] = probability that a session yields >= n findings.
  std::map<std::string, std::vector<double>> inverse_cdf;
  size_t sessions_with_nonlinear = 0;
  size_t sessions = 0;
};

// Classifies every admitted pattern of each regex_mutate_pattern session
// and aggregates counts plus the P(>= n findings per session) table.
inline RegexSessionSummary SummarizeRegexSessions(
    const std::vector<CampaignResult>& sessions,
    const ClassifierConfig& classifier = {}) {
  RegexSessionSummary summary;
  summary.sessions = sessions.size();
  std::vector<size_t> per_session_slow, per_session_super, per_session_expo;
  for (const CampaignResult& session : sessions) {
    size_t slow = 0, super = 0, expo = 0, invalid = 0;
    for (const Unit& unit : session.report_units) {
      const std::string pattern(unit.bytes.begin(), unit.bytes.end());
      switch (ClassifyComplexity(pattern, classifier)) {
        case ComplexityClass::kInvalid: ++invalid; break;
        case ComplexityClass::kLinear: ++slow; break;
        case ComplexityClass::kSuperlinear: ++slow; ++super; break;
        case ComplexityClass::kExponential: ++slow; ++expo; break;
      }
    }
    summary.invalid += invalid;
    summary.slowdown_causing += slow;
    summary.superlinear += super;
    summary.exponential += expo;
    if (super + expo > 0) ++summary.sessions_with_nonlinear;
    per_session_slow.push_back(slow);
    per_session_super.push_back(super);
    per_session_expo.push_back(expo);
  }
  auto inverse_cdf = [&](std::vector<size_t> counts) {
    std::vector<double> cdf;
    if (counts.empty()) return cdf;
    const size_t max_n = *std::max_element(counts.begin(), counts.end());
    for (size_t n = 0; n <= max_n; ++n) {
      const size_t at_least =
          std::count_if(counts.begin(), counts.end(),
                        [&](size_t c) { return c >= n; });
      cdf.push_back(static_cast<double>(at_least) /
                    static_cast<double>(counts.size()));
    }
    return cdf;
  };
  summary.inverse_cdf["slowdown"] = inverse_cdf(per_session_slow);
  summary.inverse_cdf["superlinear"] = inverse_cdf(per_session_super);
  summary.inverse_cdf["exponential"] = inverse_cdf(per_session_expo);
  return summary;
}

// --- stats.csv reading and plotting ----------------------------------------

inline std::vector<CampaignRecord> ReadStatsCsv(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<CampaignRecord> records;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    CampaignRecord r;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    row >> r.generation >> r.best_score >> r.best_steps_exact >> r.slowdown >>
        r.corpus_size >> r.elapsed_ms;
    records.push_back(r);
  }
  return records;
}

// Minimal SVG line chart of slowdown against generation.
inline void WriteSlowdownSvg(const std::vector<CampaignRecord>& records,
                             const std::filesystem::path& path) {
  constexpr int kW = 800, kH = 400, kPad = 40;
  double max_gen = 1.0, max_slowdown = 1.0;
  for (const auto& r : records) {
    max_gen = std::max(max_gen, double(r.generation));
    max_slowdown = std::max(max_slowdown, r.slowdown);
  }
  std::ofstream out(path);
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kW
      << "' height='" << kH << "'>\n"
      << "<rect width='100%' height='100%' fill='white'/>\n"
      << "<text x='10' y='20' font-size='12'>best slowdown vs generation "
         "(max "
      << max_slowdown << "x)</text>\n<polyline fill='none' stroke='steelblue' "
                         "stroke-width='1.5' points='";
  for (const auto& r : records) {
    const double x =
        kPad + (double(r.generation) / max_gen) * (kW - 2 * kPad);
    const double y =
        kH - kPad - (r.slowdown / max_slowdown) * (kH - 2 * kPad);
    out << x << ',' << y << ' ';
  }
  out << "'/>\n</svg>\n";
}

}  // namespace stepfuzz

#endif  // STEPFUZZ_HARNESS_HPP_
