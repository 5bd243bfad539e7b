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
// Command-line front end: fuzz / classify / compare / stats.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "stepfuzz/driver.hpp"
#include "stepfuzz/harness.hpp"

namespace {

using stepfuzz::CampaignConfig;

stepfuzz::Scheduler ParseScheduler(const std::string& s) {
  if (s == "random") return stepfuzz::Scheduler::kRandom;
  if (s == "mutation") return stepfuzz::Scheduler::kMutationPriority;
  if (s == "offset") return stepfuzz::Scheduler::kOffsetPriority;
  if (s == "hybrid") return stepfuzz::Scheduler::kHybrid;
  throw CLI::ValidationError("scheduler must be random|mutation|offset|hybrid");
}

stepfuzz::FitnessPolicy ParseFitness(const std::string& s) {
  if (s == "slow") return stepfuzz::FitnessPolicy::kSlow;
  if (s == "coverage") return stepfuzz::FitnessPolicy::kCoverage;
  if (s == "time") return stepfuzz::FitnessPolicy::kTime;
  throw CLI::ValidationError("fitness must be slow|coverage|time");
}

CampaignConfig ConfigFromJson(const nlohmann::json& j) {
  CampaignConfig config;
  config.target_name = j.at("target").get<std::string>();
  config.generations = j.value("generations", uint64_t{1000});
  config.max_len = j.value("max_len", size_t{64});
  config.rng_seed = j.value("seed", uint64_t{0});
  config.scheduler = ParseScheduler(j.value("scheduler", "random"));
  config.fitness = ParseFitness(j.value("fitness", "slow"));
  config.epsilon = j.value("epsilon", 0.5);
  config.timeout_per_exec_ms = j.value("timeout_ms", int64_t{1000});
  if (j.contains("dict")) config.dict_path = j.at("dict").get<std::string>();
  return config;
}

int RunFuzz(const CampaignConfig& config, const std::string& seeds_dir) {
  std::vector<stepfuzz::Bytes> seeds;
  if (!seeds_dir.empty()) seeds = stepfuzz::LoadSeedDir(seeds_dir);
  const auto result = stepfuzz::RunCampaign(config, seeds);
  std::cout << "executions=" << result.executions
            << " admitted=" << result.report_units.size()
            << " timeouts=" << result.timeouts
            << " best_score=" << result.best_score
            << " best_steps=" << result.best_steps_exact
            << " slowdown=" << result.final_slowdown << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"evolutionary search for inputs that maximize step counts"};
  app.require_subcommand(1);

  // fuzz
  CampaignConfig config;
  std::string scheduler = "random", fitness = "slow", seeds_dir, dict, out_dir;
  auto* fuzz = app.add_subcommand("fuzz", "run one fuzzing campaign");
  fuzz->add_option("--target", config.target_name, "target name")->required();
  fuzz->add_option("--generations", config.generations, "generation budget");
  fuzz->add_option("--max-len", config.max_len, "maximum input length");
  fuzz->add_option("--seed", config.rng_seed, "campaign RNG seed");
  fuzz->add_option("--dict", dict, "dictionary file (one token per line)");
  fuzz->add_option("--scheduler", scheduler, "random|mutation|offset|hybrid");
  fuzz->add_option("--fitness", fitness, "slow|coverage|time");
  fuzz->add_option("--epsilon", config.epsilon, "exploitation probability");
  fuzz->add_option("--timeout-ms", config.timeout_per_exec_ms,
                   "per-execution timeout");
  fuzz->add_option("--seeds", seeds_dir, "seed corpus directory");
  fuzz->add_option("--out", out_dir, "output directory")->required();

  // classify
  std::string pattern;
  auto* classify =
      app.add_subcommand("classify", "empirical regex complexity class");
  classify->add_option("--pattern", pattern, "toy-grammar regex")->required();

  // compare
  std::string spec_path, compare_out;
  size_t reps = 1;
  auto* compare = app.add_subcommand(
      "compare", "A-B comparison over a list of campaign configs");
  compare->add_option("--spec", spec_path, "JSON file with a configs array")
      ->required();
  compare->add_option("--reps", reps, "repetitions per config");
  compare->add_option("--out", compare_out, "output directory")->required();

  // stats
  std::string stats_dir;
  auto* stats = app.add_subcommand("stats", "summarize a campaign directory");
  stats->add_option("--in", stats_dir, "campaign output directory")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (fuzz->parsed()) {
      config.scheduler = ParseScheduler(scheduler);
      config.fitness = ParseFitness(fitness);
      if (!dict.empty()) config.dict_path = dict;
      config.out_dir = out_dir;
      return RunFuzz(config, seeds_dir);
    }
    if (classify->parsed()) {
      std::cout << stepfuzz::ToString(stepfuzz::ClassifyComplexity(pattern))
                << "\n";
      return 0;
    }
    if (compare->parsed()) {
      std::ifstream in(spec_path);
      if (!in) throw std::runtime_error("cannot open spec: " + spec_path);
      const auto j = nlohmann::json::parse(in);
      std::vector<CampaignConfig> configs;
      for (const auto& jc : j.at("configs")) {
        auto c = ConfigFromJson(jc);
        if (j.contains("base_seed")) c.rng_seed = j.at("base_seed");
        c.out_dir = std::filesystem::path(compare_out) / "campaigns";
        configs.push_back(std::move(c));
      }
      const auto outcome = stepfuzz::Compare(configs, reps);
      std::filesystem::create_directories(compare_out);
      stepfuzz::WriteCompareCsv(
          outcome, std::filesystem::path(compare_out) / "compare.csv");
      for (size_t c = 0; c < configs.size(); ++c) {
        std::cout << "config " << c << " (" << configs[c].target_name
                  << "): mean_final_slowdown="
                  << outcome.mean_final_slowdown[c]
                  << " max_final_slowdown=" << outcome.max_final_slowdown[c]
                  << "\n";
      }
      return 0;
    }
    if (stats->parsed()) {
      const auto records = stepfuzz::ReadStatsCsv(
          std::filesystem::path(stats_dir) / "stats.csv");
      double best = 1.0;
      for (const auto& r : records) best = std::max(best, r.slowdown);
      std::cout << "rows=" << records.size() << " best_slowdown=" << best
                << "\n";
      stepfuzz::WriteSlowdownSvg(
          records, std::filesystem::path(stats_dir) / "slowdown.svg");
      std::cout << "wrote " << stats_dir << "/slowdown.svg\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
