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

#include <catch_amalgamated.hpp>

#include "stepfuzz/probes.hpp"
#include "stepfuzz/rng.hpp"

using namespace stepfuzz;

namespace {

// Independent transcription of the bucket ranges 1, 2, 3, 4-7, 8-15,
// 16-31, 32-127, 128+.
int BucketOracle(int count) {
  if (count == 0) return 0;
  if (count == 1) return 1;
  if (count == 2) return 2;
  if (count == 3) return 3;
  if (count >= 4 && count <= 7) return 4;
  if (count >= 8 && count <= 15) return 5;
  if (count >= 16 && count <= 31) return 6;
  if (count >= 32 && count <= 127) return 7;
  return 8;
}

}  // namespace

TEST_CASE("bucketize reproduces the range table for every counter value") {
  for (int c = 0; c <= 255; ++c) {
    CAPTURE(c);
    CHECK(Bucketize(static_cast<uint32_t>(c)) == BucketOracle(c));
  }
  CHECK(Bucketize(1) == 1);
  CHECK(Bucketize(5) == 4);
  CHECK(Bucketize(200) == 8);
  CHECK(Bucketize(0) == 0);
}

TEST_CASE("bucket floors are the range lower bounds") {
  const uint32_t floors[9] = {0, 1, 2, 3, 4, 8, 16, 32, 128};
  for (int b = 0; b <= 8; ++b) CHECK(BucketFloor(b) == floors[b]);
}

TEST_CASE("bucket soundness: floor(bucketize(c)) <= c") {
  for (uint32_t c = 0; c <= 255; ++c) {
    CHECK(BucketFloor(Bucketize(c)) <= c);
  }
}

TEST_CASE("probe_hit saturates at 255") {
  UsageMap map(4);
  map.probe_hit(2);
  CHECK(map.counter(2) == 1);
  for (int i = 0; i < 299; ++i) map.probe_hit(2);
  CHECK(map.counter(2) == 255);
  map.probe_hit(2);
  CHECK(map.counter(2) == 255);
}

TEST_CASE("score sums bucket floors") {
  UsageMap map(8);
  SECTION("all zero") {
    CHECK(map.score().bucketed_score == 0);
    CHECK(map.score().edges_hit == 0);
  }
  SECTION("count 6 and count 1 score 4 + 1") {
    for (int i = 0; i < 6; ++i) map.probe_hit(0);
    map.probe_hit(5);
    const auto report = map.score();
    CHECK(report.bucketed_score == 5);
    CHECK(report.edges_hit == 2);
  }
  SECTION("saturated edge scores the 128+ floor") {
    for (int i = 0; i < 400; ++i) map.probe_hit(3);
    CHECK(map.score().bucketed_score == 128);
  }
}

TEST_CASE("reset zeroes all counters") {
  UsageMap map(16);
  for (size_t e = 0; e < 16; ++e)
    for (size_t k = 0; k <= e; ++k) map.probe_hit(e);
  map.reset();
  CHECK(map.score().bucketed_score == 0);
}

TEST_CASE("raising one edge's count never decreases the score") {
  Rng rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    UsageMap map(16);
    for (size_t e = 0; e < 16; ++e) {
      const auto hits = rng.below(300);
      for (uint64_t k = 0; k < hits; ++k) map.probe_hit(e);
    }
    const int64_t before = map.score().bucketed_score;
    map.probe_hit(rng.below(16));
    CHECK(map.score().bucketed_score >= before);
  }
}

TEST_CASE("identical per-edge buckets quantize to identical scores") {
  UsageMap a(4), b(4);
  // Counts 9 and 14 share the 8-15 bucket.
  for (int i = 0; i < 9; ++i) a.probe_hit(1);
  for (int i = 0; i < 14; ++i) b.probe_hit(1);
  CHECK(a.score().bucketed_score == b.score().bucketed_score);
}
