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

#include <string>

#include <catch_amalgamated.hpp>

#include "stepfuzz/mutation.hpp"
#include "stepfuzz/rng.hpp"
#include "stepfuzz/targets/hashtable.hpp"

using namespace stepfuzz;

namespace {

// Independent evaluator: unsigned long accumulator with shift-add, as the
// original C source spells it.
uint32_t DjbOracle(const std::string& key) {
  unsigned long hash = 5381;
  for (unsigned char c : key) {
    hash = ((hash << 5) + hash) + c;
  }
  return static_cast<uint32_t>(hash & 0xffffffffUL);
}

Bytes ToBytes(std::string_view s) { return Bytes(s.begin(), s.end()); }

}  // namespace

TEST_CASE("djb hash fixed values") {
  CHECK(DjbHash(std::string("")) == 5381u);
  CHECK(DjbHash(std::string("a")) == 177670u);  // 5381*33 + 97
  CHECK(DjbHash(std::string("Ez")) == DjbHash(std::string("FY")));
}

TEST_CASE("djb hash agrees with an independent evaluator on random keys") {
  Rng rng(2024);
  for (int i = 0; i < 10000; ++i) {
    std::string key(rng.below(16), '\0');
    for (auto& c : key) c = char(rng.byte());
    CHECK(DjbHash(key) == DjbOracle(key));
  }
}

TEST_CASE("collision pairs from the additive identity always collide") {
  CHECK(CollisionPair('E', 'z', 1) ==
        std::make_pair(std::string("Ez"), std::string("FY")));
  CHECK_FALSE(CollisionPair('E', 'z', 0).has_value());  // degenerate
  CHECK_FALSE(CollisionPair(250, 'z', 10).has_value()); // c out of range

  size_t valid = 0;
  for (int a = 0; a <= 255; ++a) {
    for (int b = 0; b <= 255; ++b) {
      for (int n = -8; n <= 8; ++n) {
        const auto pair = CollisionPair(uint8_t(a), uint8_t(b), n);
        if (!pair) continue;
        ++valid;
        CHECK(DjbHash(pair->first) == DjbHash(pair->second));
      }
    }
  }
  CHECK(valid > 100000);
}

TEST_CASE("colliding pairs stay colliding under common prefix and suffix") {
  CHECK(DjbHash(std::string("xEzy")) == DjbHash(std::string("xFYy")));
}

TEST_CASE("hashtable run counts collisions") {
  SECTION("no keys") {
    CHECK(HashtableInsertRun(ToBytes("")).collisions == 0);
  }
  SECTION("one key") {
    CHECK(HashtableInsertRun(ToBytes("abc")).collisions == 0);
  }
  SECTION("two distinct non-colliding one-byte keys") {
    // 'a' -> 177670 % 64 = 6, 'b' -> 177671 % 64 = 7: distinct slots.
    const auto r = HashtableInsertRun(ToBytes("a\nb"));
    CHECK(r.insertions == 2);
    CHECK(r.collisions == 0);
  }
  SECTION("the Ez/FY pair collides once") {
    const auto r = HashtableInsertRun(ToBytes("Ez\nFY"));
    CHECK(r.insertions == 2);
    CHECK(r.collisions == 1);
  }
  SECTION("duplicate keys are dropped before insertion") {
    const auto r = HashtableInsertRun(ToBytes("qq\nqq\nqq"));
    CHECK(r.insertions == 1);
    CHECK(r.collisions == 0);
  }
  SECTION("at most 64 keys are consumed") {
    std::string input;
    for (int i = 0; i < 100; ++i) input += std::to_string(i) + "\n";
    const auto r = HashtableInsertRun(ToBytes(input));
    CHECK(r.insertions == 64);
  }
}

TEST_CASE("chain walks dominate steps when keys collide") {
  // All valid n around the Ez base give 2-byte keys with equal hashes;
  // 8 keys in one bucket walk 0+1+...+7 = 28 chain steps.
  std::string input = "Ez\n";
  size_t keys = 1;
  for (int n = -69; n <= 69; ++n) {
    const auto pair = CollisionPair('E', 'z', n);
    if (!pair) continue;
    input += pair->second + "\n";
    ++keys;
  }
  REQUIRE(keys == 8);
  const auto r = HashtableInsertRun(ToBytes(input));
  CHECK(r.insertions == 8);
  CHECK(r.collisions == 7);
  // steps = entry(1) + bytes + insertions(8) + chain walks(28)
  CHECK(r.steps == 1 + input.size() + 8 + 28);
}
