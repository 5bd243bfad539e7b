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
// The generation loop: select, mutate, execute, score, admit. Binds the
// corpus, mutation scheduling, targets, probes and fitness together and
// emits per-generation campaign records.

#ifndef STEPFUZZ_DRIVER_HPP_
#define STEPFUZZ_DRIVER_HPP_

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "stepfuzz/corpus.hpp"
#include "stepfuzz/fitness.hpp"
#include "stepfuzz/mutation.hpp"
#include "stepfuzz/probes.hpp"
#include "stepfuzz/sha256.hpp"
#include "stepfuzz/targets/registry.hpp"

namespace stepfuzz {

struct CampaignConfig {
  std::string target_name;
  size_t max_len = 64;
  uint64_t generations = 1000;
  uint64_t rng_seed = 0;
  Scheduler scheduler = Scheduler::kRandom;
  FitnessPolicy fitness = FitnessPolicy::kSlow;
  double epsilon = 0.5;
  std::optional<std::string> dict_path;
  int64_t timeout_per_exec_ms = 1000;
  std::filesystem::path out_dir;    // empty: keep everything in memory
  uint64_t wall_clock_cap_ms = 0;   // secondary stop condition; 0 = none
  uint64_t checkpoint_interval = 1000;

  void Validate() const {
    if (generations < 1) throw std::invalid_argument("generations must be >= 1");
    if (max_len < 1) throw std::invalid_argument("max_len must be >= 1");
    if (epsilon < 0.0 || epsilon > 1.0) {
      throw std::invalid_argument("epsilon must lie in [0, 1]");
    }
  }
};

// One row of the per-generation time series. elapsed_ms and anything
// derived from wall time are outside the determinism contract.
struct CampaignRecord {
  uint64_t generation = 0;
  int64_t best_score = 0;
  uint64_t best_steps_exact = 0;
  double slowdown = 1.0;
  size_t corpus_size = 0;
  int64_t elapsed_ms = 0;
};

struct CampaignResult {
  std::vector<Unit> report_units;      // admitted slow units, in order
  std::vector<CampaignRecord> records;
  SchedulerStats stats{0};
  uint64_t executions = 0;
  uint64_t timeouts = 0;
  uint64_t min_steps_exact = 0;        // fastest completed execution
  uint64_t best_steps_exact = 0;       // slowest admitted unit
  int64_t best_score = 0;
  std::vector<int64_t> admitted_aux;   // aux metric per admitted unit (0 if none)
  double final_slowdown = 1.0;
};

// Runs the target once on a fresh UsageMap under a wall-clock deadline.
// A timed-out report is flagged and meant to be discarded by the caller.
inline UsageReport ExecuteOnce(const Target& target,
                               std::span<const uint8_t> input,
                               int64_t timeout_ms) {
  UsageMap map(target.edge_count());
  if (timeout_ms > 0) {
    map.set_deadline(std::chrono::steady_clock::now() +
                     std::chrono::milliseconds(timeout_ms));
  }
  const auto t0 = std::chrono::steady_clock::now();
  UsageReport report;
  try {
    const Target::RunResult run = target.run(input, map);
    report = map.score();
    report.steps_exact = run.steps;
    report.aux_metric = run.aux;
  } catch (const ExecutionTimeout&) {
    report = map.score();
    report.timed_out = true;
  }
  report.wall_time_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
  return report;
}

namespace driver_internal {

inline void WriteConfigSnapshot(const CampaignConfig& config,
                                const std::filesystem::path& path) {
  std::ofstream out(path);
  out << "target=" << config.target_name << "\n"
      << "max_len=" << config.max_len << "\n"
      << "generations=" << config.generations << "\n"
      << "rng_seed=" << config.rng_seed << "\n"
      << "scheduler=" << ToString(config.scheduler) << "\n"
      << "fitness=" << ToString(config.fitness) << "\n"
      << "epsilon=" << config.epsilon << "\n"
      << "dict=" << (config.dict_path ? *config.dict_path : "") << "\n"
      << "timeout_per_exec_ms=" << config.timeout_per_exec_ms << "\n";
}

inline void PersistBytes(const Bytes& bytes,
                         const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const auto path = dir / Sha256Hex(bytes);
  if (std::filesystem::exists(path)) return;
  std::ofstream out(path, std::ios::binary);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

inline void WriteStatsCsv(const std::vector<CampaignRecord>& records,
                          const std::filesystem::path& path) {
  std::ofstream out(path);
  out << "generation,best_score,best_steps_exact,slowdown,corpus_size,"
         "elapsed_ms\n";
  for (const CampaignRecord& r : records) {
    out << r.generation << ',' << r.best_score << ',' << r.best_steps_exact
        << ',' << r.slowdown << ',' << r.corpus_size << ',' << r.elapsed_ms
        << '\n';
  }
}

inline void WriteSchedulerStats(const SchedulerStats& stats,
                                const std::filesystem::path& path) {
  std::ofstream out(path);
  out << "op,selected,succeeded\n";
  for (int i = 0; i < kNumMutationOps; ++i) {
    out << ToString(static_cast<MutationOp>(i)) << ','
        << stats.op_selected[i] << ',' << stats.op_succeeded[i] << '\n';
  }
}

}  // namespace driver_internal

inline CampaignResult RunCampaign(const CampaignConfig& config,
                                  const std::vector<Bytes>& seeds) {
  config.Validate();

  Rng rng(config.rng_seed);
  const auto target = MakeTarget(config.target_name, config.rng_seed);
  std::optional<Dictionary> dict;
  if (config.dict_path) dict = LoadDictionary(*config.dict_path);
  const bool has_dict = dict && !dict->empty();

  Corpus corpus(seeds, config.max_len);
  SchedulerStats stats(config.max_len, config.epsilon);
  GlobalState state;
  state.policy = config.fitness;

  CampaignResult result;
  result.min_steps_exact = UINT64_MAX;

  const bool has_out = !config.out_dir.empty();
  if (has_out) {
    std::filesystem::create_directories(config.out_dir);
    driver_internal::WriteConfigSnapshot(config, config.out_dir / "config.txt");
  }

  const auto campaign_start = std::chrono::steady_clock::now();
  auto elapsed_ms = [&] {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - campaign_start)
        .count();
  };
  auto current_slowdown = [&]() -> double {
    if (result.best_steps_exact == 0 ||
        result.min_steps_exact == UINT64_MAX) {
      return 1.0;
    }
    return static_cast<double>(result.best_steps_exact) /
           static_cast<double>(result.min_steps_exact);
  };
  auto append_record = [&](uint64_t generation) {
    result.records.push_back({.generation = generation,
                              .best_score = result.best_score,
                              .best_steps_exact = result.best_steps_exact,
                              .slowdown = current_slowdown(),
                              .corpus_size = corpus.size(),
                              .elapsed_ms = elapsed_ms()});
  };

  for (uint64_t generation = 1; generation <= config.generations;
       ++generation) {
    if (config.wall_clock_cap_ms > 0 &&
        elapsed_ms() > static_cast<int64_t>(config.wall_clock_cap_ms)) {
      break;
    }
    const Unit& parent = corpus.random_choice(rng);
    const ScheduleChoice choice = Schedule(config.scheduler, stats, rng,
                                           parent.bytes.size(), has_dict);
    MutationResult mutation =
        ApplyMutation(choice.op, parent.bytes, choice.offset, rng,
                      has_dict ? &*dict : nullptr, config.max_len);

    const UsageReport report =
        ExecuteOnce(*target, mutation.output, config.timeout_per_exec_ms);
    ++result.executions;

    if (report.timed_out) {
      // Suspected extreme slowdown: keep the input, skip admission. The
      // mutation was attempted, so it still counts as selected.
      ++result.timeouts;
      if (has_out) {
        driver_internal::PersistBytes(mutation.output,
                                      config.out_dir / "timeouts");
      }
      RecordOutcome(stats, mutation.plan, /*admitted=*/false);
      continue;
    }

    result.min_steps_exact =
        std::min(result.min_steps_exact, report.steps_exact);

    const bool admitted = AdmitUnit(report, state);
    RecordOutcome(stats, mutation.plan, admitted);

    if (admitted) {
      Unit unit;
      unit.bytes = std::move(mutation.output);
      unit.score = report.bucketed_score;
      unit.generation_admitted = generation;
      unit.parent_id = parent.id;
      unit.mutation_applied = mutation.plan;
      const Unit& stored = corpus.admit(std::move(unit));
      result.report_units.push_back(stored);
      result.admitted_aux.push_back(report.aux_metric.value_or(0));
      result.best_score = std::max(result.best_score, report.bucketed_score);
      result.best_steps_exact =
          std::max(result.best_steps_exact, report.steps_exact);
      append_record(generation);
    } else if (config.checkpoint_interval > 0 &&
               generation % config.checkpoint_interval == 0) {
      append_record(generation);
    }
  }

  if (result.min_steps_exact == UINT64_MAX) result.min_steps_exact = 1;
  result.final_slowdown = current_slowdown();
  result.stats = stats;

  if (has_out) {
    corpus.persist(config.out_dir / "corpus");
    driver_internal::WriteStatsCsv(result.records,
                                   config.out_dir / "stats.csv");
    driver_internal::WriteSchedulerStats(
        stats, config.out_dir / "scheduler_stats.csv");
  }
  return result;
}

}  // namespace stepfuzz

#endif  // STEPFUZZ_DRIVER_HPP_
