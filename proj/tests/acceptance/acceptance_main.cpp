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
// End-to-end acceptance checks. Each criterion is an independent experiment
// with a pinned threshold; run one with --criterion N or everything with
// --criterion all. Prints one PASS/FAIL line per criterion.

#include <unistd.h>

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "stepfuzz/driver.hpp"
#include "stepfuzz/harness.hpp"
#include "regex_oracle.hpp"

namespace {

using namespace stepfuzz;

double Median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const size_t n = values.size();
  return n % 2 == 1 ? values[n / 2]
                    : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

double Mean(const std::vector<double>& values) {
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

std::filesystem::path ScratchDir(const std::string& tag) {
  const auto dir = std::filesystem::temp_directory_path() /
                   ("stepfuzz_acceptance_" + tag + "_" +
                    std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

Bytes BytesOf(std::string_view s) { return Bytes(s.begin(), s.end()); }

// --- criterion 1: bucketing exactness ---------------------------------------

bool Criterion1() {
  bool ok = true;
  for (uint32_t count = 0; count < 256; ++count) {
    int expected;
    if (count == 0) expected = 0;
    else if (count == 1) expected = 1;
    else if (count == 2) expected = 2;
    else if (count == 3) expected = 3;
    else if (count >= 4 && count <= 7) expected = 4;
    else if (count >= 8 && count <= 15) expected = 5;
    else if (count >= 16 && count <= 31) expected = 6;
    else if (count >= 32 && count <= 127) expected = 7;
    else expected = 8;
    if (Bucketize(count) != expected) {
      std::printf("  count %u: got bucket %d, want %d\n", count,
                  Bucketize(count), expected);
      ok = false;
    }
  }
  return ok;
}

// --- criterion 2: hash oracle ------------------------------------------------

// Reference evaluator written against the published loop, using plain
// multiplication instead of the shift-add form.
uint32_t ReferenceDjb(const std::vector<uint8_t>& key) {
  uint32_t h = 5381;
  for (uint8_t byte : key) h = h * 33u + byte;
  return h;
}

bool Criterion2() {
  std::mt19937_64 gen(0xacce97ed);
  for (int i = 0; i < 10'000; ++i) {
    std::vector<uint8_t> key(gen() % 24);
    for (auto& b : key) b = static_cast<uint8_t>(gen());
    if (DjbHash(key) != ReferenceDjb(key)) {
      std::printf("  hash mismatch on a %zu-byte key\n", key.size());
      return false;
    }
  }
  uint64_t pairs = 0;
  for (int a = 0; a < 256; ++a) {
    for (int b = 0; b < 256; ++b) {
      for (int n = -8; n <= 8; ++n) {
        const auto pair =
            CollisionPair(static_cast<uint8_t>(a), static_cast<uint8_t>(b), n);
        if (!pair) continue;
        ++pairs;
        if (pair->first == pair->second ||
            DjbHash(pair->first) != DjbHash(pair->second)) {
          std::printf("  bad pair at a=%d b=%d n=%d\n", a, b, n);
          return false;
        }
      }
    }
  }
  std::printf("  verified %" PRIu64 " collision pairs\n", pairs);
  return pairs > 100'000;
}

// --- criterion 3: insertion-sort worst case ----------------------------------

bool Criterion3() {
  CampaignConfig config;
  config.target_name = "insertion_sort";
  config.max_len = 64;
  config.generations = 200'000;
  config.rng_seed = 1001;
  config.scheduler = Scheduler::kHybrid;
  config.fitness = FitnessPolicy::kSlow;
  const std::vector<Bytes> seeds = {Bytes(64, 0)};
  const auto outcome = Compare({config}, 10, seeds);
  std::vector<double> comparisons;
  for (const auto& result : outcome.results) {
    // The target counts one entry step on top of the comparisons.
    comparisons.push_back(double(result.best_steps_exact) - 1.0);
  }
  const double median = Median(comparisons);
  const double worst =
      *std::min_element(comparisons.begin(), comparisons.end());
  std::printf("  best comparisons per rep:");
  for (double c : comparisons) std::printf(" %.0f", c);
  std::printf("\n  median %.0f (need >= %.0f), min %.0f (need >= %.0f) of 2016\n",
              median, 0.70 * 2016, worst, 0.50 * 2016);
  return median >= 0.70 * 2016 && worst >= 0.50 * 2016;
}

// --- criterion 4: quicksort first-pivot slowdown ------------------------------

bool Criterion4() {
  CampaignConfig config;
  config.target_name = "qsort_first";
  config.max_len = 64;
  config.generations = 200'000;
  config.rng_seed = 2001;
  config.scheduler = Scheduler::kHybrid;
  config.fitness = FitnessPolicy::kSlow;
  Bytes seed(64);
  for (size_t i = 0; i < seed.size(); ++i) {
    seed[i] = static_cast<uint8_t>(i * 37 + 11);
  }
  const auto outcome = Compare({config}, 10, {seed});
  std::vector<double> slowdowns;
  for (const auto& result : outcome.results) {
    slowdowns.push_back(result.final_slowdown);
  }
  std::printf("  final slowdowns:");
  for (double s : slowdowns) std::printf(" %.2f", s);
  const double median = Median(slowdowns);
  std::printf("\n  median %.2f (need >= 3.0)\n", median);
  return median >= 3.0;
}

// --- criterion 5: fitness ablation -------------------------------------------

bool Criterion5() {
  CampaignConfig base;
  base.target_name = "qsort_median3";
  base.max_len = 64;
  base.generations = 100'000;
  base.rng_seed = 3001;
  base.scheduler = Scheduler::kHybrid;
  Bytes seed(64);
  for (size_t i = 0; i < seed.size(); ++i) {
    seed[i] = static_cast<uint8_t>(i * 53 + 7);
  }
  // A one-byte seed pins the fastest-unit denominator to the same trivial
  // execution for every policy, so the slowdown ratio compares the policies'
  // best units rather than their corpus length drift.
  CampaignConfig slow = base, coverage = base, time = base;
  slow.fitness = FitnessPolicy::kSlow;
  coverage.fitness = FitnessPolicy::kCoverage;
  time.fitness = FitnessPolicy::kTime;
  const auto outcome = Compare({slow, coverage, time}, 10, {seed, Bytes{42}});
  const double m_slow = outcome.mean_final_slowdown[0];
  const double m_cov = outcome.mean_final_slowdown[1];
  const double m_time = outcome.mean_final_slowdown[2];
  std::printf("  mean final slowdown: slow %.2f, coverage %.2f, time %.2f\n",
              m_slow, m_cov, m_time);
  const bool ord_cov = m_slow > m_cov;
  const bool ord_time = m_slow > m_time;
  const bool margin = m_slow >= 1.5 * m_cov;
  std::printf("  slow > coverage: %s\n", ord_cov ? "yes" : "NO");
  std::printf("  slow > time: %s\n", ord_time ? "yes" : "NO");
  std::printf("  slow >= 1.5 * coverage: %s (ratio %.2f)\n",
              margin ? "yes" : "NO", m_cov > 0 ? m_slow / m_cov : 0.0);
  return ord_cov && ord_time && margin;
}

// --- criterion 6: scheduler ablation -----------------------------------------

bool Criterion6() {
  CampaignConfig base;
  base.target_name = "insertion_sort";
  base.max_len = 64;
  base.generations = 100'000;
  base.rng_seed = 4001;
  base.fitness = FitnessPolicy::kSlow;
  std::vector<CampaignConfig> configs;
  const Scheduler schedulers[] = {Scheduler::kRandom,
                                  Scheduler::kMutationPriority,
                                  Scheduler::kOffsetPriority,
                                  Scheduler::kHybrid};
  for (Scheduler s : schedulers) {
    CampaignConfig c = base;
    c.scheduler = s;
    configs.push_back(c);
  }
  const auto outcome = Compare(configs, 10, {Bytes(64, 0)});
  double best = 0.0;
  for (size_t i = 0; i < configs.size(); ++i) {
    std::printf("  %s: mean final slowdown %.2f\n",
                std::string(ToString(schedulers[i])).c_str(),
                outcome.mean_final_slowdown[i]);
    best = std::max(best, outcome.mean_final_slowdown[i]);
  }
  const double random_mean = outcome.mean_final_slowdown[0];
  const double hybrid_mean = outcome.mean_final_slowdown[3];
  bool ok = hybrid_mean >= random_mean;
  if (!ok) std::printf("  hybrid mean fell below random's\n");
  for (size_t i = 0; i < configs.size(); ++i) {
    if (outcome.mean_final_slowdown[i] < 0.60 * best) {
      std::printf("  %s fell below 60%% of the best scheduler\n",
                  std::string(ToString(schedulers[i])).c_str());
      ok = false;
    }
  }
  return ok;
}

// --- criterion 7: regex generation -------------------------------------------

bool Criterion7() {
  bool ok = true;
  const std::pair<const char*, ComplexityClass> fixtures[] = {
      {"c*ca*b*a*b", ComplexityClass::kSuperlinear},
      {"a+b+b+b+a+", ComplexityClass::kSuperlinear},
      {"c*c+ccbc+", ComplexityClass::kSuperlinear},
      {"(b+)+c", ComplexityClass::kExponential},
      {"c*(b+b)+c", ComplexityClass::kExponential},
      {"a(a|a*)+a", ComplexityClass::kExponential},
  };
  for (const auto& [pattern, expected] : fixtures) {
    const auto got = ClassifyComplexity(pattern);
    if (got != expected) {
      std::printf("  %s: classified %s, want %s\n", pattern,
                  std::string(ToString(got)).c_str(),
                  std::string(ToString(expected)).c_str());
      ok = false;
    }
  }
  if (!ok) return false;

  const auto dir = ScratchDir("regex");
  const auto dict_path = dir / "regex.dict";
  {
    std::ofstream out(dict_path);
    for (const char* token : {"a", "b", "c", "(", ")", "|", "+", "*"}) {
      out << token << "\n";
    }
  }
  CampaignConfig config;
  config.target_name = "regex_mutate_pattern";
  config.max_len = 10;
  config.generations = 100'000;
  config.rng_seed = 5001;
  config.scheduler = Scheduler::kHybrid;
  config.fitness = FitnessPolicy::kSlow;
  config.dict_path = dict_path.string();
  config.timeout_per_exec_ms = 5;
  // Seed patterns are trivially linear; "b+" supplies quantifier syntax as
  // raw material for the mutator.
  const auto outcome =
      Compare({config}, 20, {BytesOf("a"), BytesOf("b+"), BytesOf("abc")});
  const auto summary = SummarizeRegexSessions(outcome.results);
  std::printf("  %zu/%zu sessions found a superlinear or exponential pattern "
              "(need >= 6)\n",
              summary.sessions_with_nonlinear, summary.sessions);
  std::printf("  total findings: %zu superlinear, %zu exponential\n",
              summary.superlinear, summary.exponential);
  std::filesystem::remove_all(dir);
  return summary.sessions_with_nonlinear * 10 >= summary.sessions * 3;
}

// --- criterion 8: hash-flood search -------------------------------------------

bool Criterion8() {
  CampaignConfig config;
  config.target_name = "php_hashtable";
  config.max_len = 256;
  config.generations = 200'000;
  config.rng_seed = 6001;
  config.scheduler = Scheduler::kHybrid;
  config.fitness = FitnessPolicy::kSlow;
  // Three 2-byte keys in one bucket: "Ez", "FY" (+1,-33), "G8" (+2,-66).
  const auto result = RunCampaign(config, {BytesOf("Ez\nFY\nG8")});
  int64_t best = 0;
  bool non_decreasing = true;
  int64_t prev = 0;
  for (int64_t aux : result.admitted_aux) {
    best = std::max(best, aux);
    if (best < prev) non_decreasing = false;
    prev = best;
  }
  std::printf("  best collision count %" PRId64 " (need >= 8), curve %s\n",
              best, non_decreasing ? "non-decreasing" : "DECREASED");
  return best >= 8 && non_decreasing;
}

// --- criterion 9: determinism --------------------------------------------------

bool ReadFileBytes(const std::filesystem::path& path, std::string* out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream buf;
  buf << in.rdbuf();
  *out = buf.str();
  return true;
}

bool SameCorpusDir(const std::filesystem::path& a,
                   const std::filesystem::path& b) {
  std::map<std::string, std::string> files_a, files_b;
  for (const auto& entry : std::filesystem::directory_iterator(a)) {
    std::string content;
    if (!ReadFileBytes(entry.path(), &content)) return false;
    files_a[entry.path().filename().string()] = content;
  }
  for (const auto& entry : std::filesystem::directory_iterator(b)) {
    std::string content;
    if (!ReadFileBytes(entry.path(), &content)) return false;
    files_b[entry.path().filename().string()] = content;
  }
  return files_a == files_b;
}

// stats.csv comparison with the wall-clock column (the last one) dropped.
bool SameStatsModuloElapsed(const std::filesystem::path& a,
                            const std::filesystem::path& b) {
  std::ifstream in_a(a), in_b(b);
  std::string line_a, line_b;
  while (true) {
    const bool more_a = bool(std::getline(in_a, line_a));
    const bool more_b = bool(std::getline(in_b, line_b));
    if (more_a != more_b) return false;
    if (!more_a) return true;
    const auto cut_a = line_a.rfind(',');
    const auto cut_b = line_b.rfind(',');
    if (line_a.substr(0, cut_a) != line_b.substr(0, cut_b)) return false;
  }
}

bool Criterion9() {
  const auto dir = ScratchDir("determinism");
  CampaignConfig config;
  config.target_name = "qsort_median3";
  config.max_len = 48;
  config.generations = 30'000;
  config.rng_seed = 7001;
  config.scheduler = Scheduler::kHybrid;
  config.fitness = FitnessPolicy::kSlow;
  Bytes seed(48);
  for (size_t i = 0; i < seed.size(); ++i) {
    seed[i] = static_cast<uint8_t>(i * 29 + 3);
  }
  config.out_dir = dir / "run_a";
  RunCampaign(config, {seed});
  config.out_dir = dir / "run_b";
  RunCampaign(config, {seed});
  const bool corpus_ok =
      SameCorpusDir(dir / "run_a" / "corpus", dir / "run_b" / "corpus");
  const bool stats_ok = SameStatsModuloElapsed(dir / "run_a" / "stats.csv",
                                               dir / "run_b" / "stats.csv");
  std::printf("  corpus byte-identical: %s; stats.csv identical modulo "
              "elapsed_ms: %s\n",
              corpus_ok ? "yes" : "NO", stats_ok ? "yes" : "NO");
  std::filesystem::remove_all(dir);
  return corpus_ok && stats_ok;
}

// --- criterion 10: property suites ---------------------------------------------

bool SortingProperties(std::mt19937_64& gen) {
  for (int trial = 0; trial < 400; ++trial) {
    std::vector<uint8_t> input(gen() % 65);
    for (auto& b : input) b = static_cast<uint8_t>(gen());
    std::vector<uint8_t> expected = input;
    std::sort(expected.begin(), expected.end());
    for (int variant = 0; variant < 5; ++variant) {
      std::vector<uint8_t> data = input;
      if (variant == 0) {
        InsertionSortSteps(data);
      } else {
        Rng rng(trial);
        QuicksortSteps(data, static_cast<PivotStrategy>(variant - 1), nullptr,
                       &rng);
      }
      if (data != expected) {
        std::printf("  sorting variant %d broke sortedness/permutation\n",
                    variant);
        return false;
      }
    }
  }
  return true;
}

bool ShuffleProperties(std::mt19937_64& gen) {
  Rng rng(99);
  for (int trial = 0; trial < 2000; ++trial) {
    Bytes input(1 + gen() % 32);
    for (auto& b : input) b = static_cast<uint8_t>(gen());
    const auto result = ApplyMutation(MutationOp::kShuffleSubset, input,
                                      gen() % (input.size() + 1), rng,
                                      nullptr, 64);
    Bytes a = input, b = result.output;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) {
      std::printf("  shuffle_subset changed the byte histogram\n");
      return false;
    }
  }
  return true;
}

bool DigitProperties(std::mt19937_64& gen) {
  Rng rng(77);
  for (int trial = 0; trial < 2000; ++trial) {
    Bytes input(1 + gen() % 32);
    for (auto& b : input) {
      b = gen() % 3 == 0 ? static_cast<uint8_t>('0' + gen() % 10)
                         : static_cast<uint8_t>(gen());
    }
    const auto result = ApplyMutation(MutationOp::kDigitChange, input,
                                      gen() % (input.size() + 1), rng,
                                      nullptr, 64);
    size_t diffs = 0;
    for (size_t i = 0; i < input.size(); ++i) {
      if (input[i] == result.output[i]) continue;
      ++diffs;
      const bool old_digit = input[i] >= 0x30 && input[i] <= 0x39;
      const bool new_digit =
          result.output[i] >= 0x30 && result.output[i] <= 0x39;
      if (!old_digit || !new_digit) {
        std::printf("  digit_change touched a non-digit byte\n");
        return false;
      }
    }
    if (diffs > 1) {
      std::printf("  digit_change altered more than one byte\n");
      return false;
    }
  }
  return true;
}

bool EpsilonZeroEquivalence() {
  constexpr size_t kLen = 10;
  constexpr int kDraws = 60'000;
  const Scheduler schedulers[] = {Scheduler::kRandom,
                                  Scheduler::kMutationPriority,
                                  Scheduler::kOffsetPriority,
                                  Scheduler::kHybrid};
  std::array<std::array<int, kNumMutationOps>, 4> op_counts{};
  for (size_t s = 0; s < 4; ++s) {
    SchedulerStats stats(kLen, /*eps=*/0.0);
    Rng rng(1234 + s);
    for (int i = 0; i < kDraws; ++i) {
      const auto choice =
          Schedule(schedulers[s], stats, rng, kLen, /*has_dict=*/true);
      op_counts[s][static_cast<int>(choice.op)] += 1;
    }
  }
  const double expected = double(kDraws) / kNumMutationOps;
  for (size_t s = 0; s < 4; ++s) {
    for (int op = 0; op < kNumMutationOps; ++op) {
      const double deviation =
          std::abs(op_counts[s][op] - expected) / expected;
      if (deviation > 0.20) {
        std::printf("  scheduler %zu op %d off by %.0f%% at eps=0\n", s, op,
                    deviation * 100);
        return false;
      }
    }
  }
  return true;
}

bool RegexOracleGrid() {
  const char kPatternAlphabet[] = {'a', 'b', 'c', '(', ')', '|', '+', '*'};
  const char kSubjectAlphabet[] = {'a', 'b', 'c'};
  std::vector<std::string> subjects = {""};
  for (int len = 1; len <= 4; ++len) {
    const size_t start = subjects.size();
    for (size_t i = 0; i < start; ++i) {
      if (subjects[i].size() != size_t(len - 1)) continue;
      for (char c : kSubjectAlphabet) subjects.push_back(subjects[i] + c);
    }
  }
  uint64_t checked = 0;
  std::string pattern;
  // Exhaustive grid over every pattern up to length 3.
  const auto visit = [&](const auto& self, int remaining) -> bool {
    if (!pattern.empty()) {
      const auto ast = regex::Parse(pattern);
      if (ast) {
        for (const std::string& subject : subjects) {
          const auto outcome = regex::Search(*ast, subject);
          const bool expected = oracle::ScanMatch(*ast, subject);
          ++checked;
          if (outcome.matched != expected) {
            std::printf("  engine/oracle disagree: /%s/ on \"%s\"\n",
                        pattern.c_str(), subject.c_str());
            return false;
          }
        }
      }
    }
    if (remaining == 0) return true;
    for (char c : kPatternAlphabet) {
      pattern.push_back(c);
      if (!self(self, remaining - 1)) return false;
      pattern.pop_back();
    }
    return true;
  };
  if (!visit(visit, 3)) return false;
  std::printf("  regex engine agreed with the derivative oracle on %" PRIu64
              " cases\n",
              checked);
  return true;
}

bool Criterion10() {
  std::mt19937_64 gen(0x10c4e5);
  bool ok = true;
  ok = SortingProperties(gen) && ok;
  ok = ShuffleProperties(gen) && ok;
  ok = DigitProperties(gen) && ok;
  ok = EpsilonZeroEquivalence() && ok;
  ok = RegexOracleGrid() && ok;
  return ok;
}

bool RunCriterion(int n) {
  switch (n) {
    case 1: return Criterion1();
    case 2: return Criterion2();
    case 3: return Criterion3();
    case 4: return Criterion4();
    case 5: return Criterion5();
    case 6: return Criterion6();
    case 7: return Criterion7();
    case 8: return Criterion8();
    case 9: return Criterion9();
    case 10: return Criterion10();
    default:
      std::printf("unknown criterion %d\n", n);
      return false;
  }
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> to_run;
  if (argc == 3 && std::strcmp(argv[1], "--criterion") == 0) {
    if (std::strcmp(argv[2], "all") == 0) {
      for (int n = 1; n <= 10; ++n) to_run.push_back(n);
    } else {
      to_run.push_back(std::atoi(argv[2]));
    }
  } else {
    std::fprintf(stderr, "usage: acceptance --criterion <1..10|all>\n");
    return 2;
  }
  bool all_ok = true;
  for (int n : to_run) {
    const bool ok = RunCriterion(n);
    std::printf("CRITERION %d: %s\n", n, ok ? "PASS" : "FAIL");
    std::fflush(stdout);
    all_ok = all_ok && ok;
  }
  return all_ok ? 0 : 1;
}
