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
// The evolving set of inputs: seed loading, uniform random selection, and
// content-addressed on-disk persistence of slow units.

#ifndef STEPFUZZ_CORPUS_HPP_
#define STEPFUZZ_CORPUS_HPP_

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <vector>

#include "stepfuzz/mutation.hpp"
#include "stepfuzz/rng.hpp"
#include "stepfuzz/sha256.hpp"

namespace stepfuzz {

// A candidate input with its recorded fitness and lineage. The score is the
// bucketed step score at the execution that admitted the unit, immutable
// afterward.
struct Unit {
  size_t id = 0;
  Bytes bytes;
  int64_t score = 0;
  uint64_t generation_admitted = 0;
  std::optional<size_t> parent_id;
  std::optional<MutationPlan> mutation_applied;
};

class Corpus {
 public:
  // One unit per seed (score 0, generation 0), truncating over-long seeds
  // to the max_len prefix. An empty seed list materializes as one
  // zero-length unit so the generation loop always has something to pick.
  Corpus(const std::vector<Bytes>& seeds, size_t max_len) {
    if (max_len < 1) throw std::invalid_argument("max_len must be >= 1");
    for (const Bytes& seed : seeds) {
      Bytes bytes = seed;
      if (bytes.size() > max_len) {
        std::fprintf(stderr,
                     "warning: seed of %zu bytes truncated to max_len %zu\n",
                     bytes.size(), max_len);
        bytes.resize(max_len);
      }
      Unit u;
      u.id = units_.size();
      u.bytes = std::move(bytes);
      units_.push_back(std::move(u));
    }
    if (units_.empty()) {
      Unit u;
      u.id = 0;
      units_.push_back(std::move(u));
    }
  }

  const std::vector<Unit>& units() const { return units_; }
  size_t size() const { return units_.size(); }

  const Unit& random_choice(Rng& rng) const {
    return units_[rng.below(units_.size())];
  }

  // Adds a unit that passed the slow-unit test; it also joins the report
  // set of slow units, which only grows over a campaign.
  const Unit& admit(Unit unit) {
    unit.id = units_.size();
    units_.push_back(std::move(unit));
    report_.push_back(units_.back().id);
    return units_.back();
  }

  // Ids of units admitted during the campaign (seeds excluded).
  const std::vector<size_t>& report() const { return report_; }

  // Writes every unit as a raw byte file named by the hex SHA-256 of its
  // content. Content addressing makes re-persisting a no-op. Returns the
  // number of new files written.
  size_t persist(const std::filesystem::path& dir) const {
    std::filesystem::create_directories(dir);
    size_t written = 0;
    for (const Unit& u : units_) {
      const auto path = dir / Sha256Hex(u.bytes);
      if (std::filesystem::exists(path)) continue;
      std::ofstream out(path, std::ios::binary);
      if (!out) {
        throw std::runtime_error("cannot write corpus file: " + path.string());
      }
      out.write(reinterpret_cast<const char*>(u.bytes.data()),
                static_cast<std::streamsize>(u.bytes.size()));
      if (!out) {
        throw std::runtime_error("corpus write failed: " + path.string());
      }
      ++written;
    }
    return written;
  }

 private:
  std::vector<Unit> units_;
  std::vector<size_t> report_;
};

// Reads a flat directory of raw byte files as seeds, in filename order so
// campaign initialization is deterministic.
inline std::vector<Bytes> LoadSeedDir(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> paths;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file()) paths.push_back(entry.path());
  }
  std::sort(paths.begin(), paths.end());
  std::vector<Bytes> seeds;
  for (const auto& p : paths) {
    std::ifstream in(p, std::ios::binary);
    seeds.emplace_back(std::istreambuf_iterator<char>(in),
                       std::istreambuf_iterator<char>());
  }
  return seeds;
}

}  // namespace stepfuzz

#endif  // STEPFUZZ_CORPUS_HPP_
