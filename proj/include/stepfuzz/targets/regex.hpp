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
// A deliberately naive backtracking regex engine over the alphabet {a,b,c}
// with concatenation, '|', '+', '*' and grouping. Its worst cases are the
// whole point: super-linear and exponential backtracking are preserved,
// not optimized away. Steps are backtracking-search node visits.

#ifndef STEPFUZZ_TARGETS_REGEX_HPP_
#define STEPFUZZ_TARGETS_REGEX_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stepfuzz/rng.hpp"
#include "stepfuzz/targets/target.hpp"

namespace stepfuzz {
namespace regex {

inline constexpr int kMaxAstDepth = 32;

struct Node {
  enum Kind { kEmpty, kLiteral, kConcat, kAlt, kStar, kPlus };
  Kind kind = kEmpty;
  uint8_t literal = 0;
  int left = -1;
  int right = -1;
};

struct Ast {
  std::vector<Node> nodes;
  int root = -1;
};

namespace internal {

// Recursive-descent parser for: alt := concat ('|' concat)*;
// concat := repeat*; repeat := atom ('+'|'*')*; atom := a|b|c | '(' alt ')'.
class Parser {
 public:
  explicit Parser(std::string_view pattern) : pattern_(pattern) {}

  std::optional<Ast> Parse() {
    const int root = ParseAlt(0);
    if (root < 0 || pos_ != pattern_.size()) return std::nullopt;
    ast_.root = root;
    return std::move(ast_);
  }

 private:
  int Add(Node node) {
    ast_.nodes.push_back(node);
    return static_cast<int>(ast_.nodes.size()) - 1;
  }

  int ParseAlt(int depth) {
    if (depth > kMaxAstDepth) return -1;
    int left = ParseConcat(depth);
    if (left < 0) return -1;
    while (pos_ < pattern_.size() && pattern_[pos_] == '|') {
      ++pos_;
      const int right = ParseConcat(depth);
      if (right < 0) return -1;
      left = Add({.kind = Node::kAlt, .left = left, .right = right});
    }
    return left;
  }

  int ParseConcat(int depth) {
    if (depth > kMaxAstDepth) return -1;
    int left = -1;
    while (pos_ < pattern_.size() && pattern_[pos_] != '|' &&
           pattern_[pos_] != ')') {
      const int atom = ParseRepeat(depth);
      if (atom < 0) return -1;
      left = left < 0 ? atom
                      : Add({.kind = Node::kConcat, .left = left, .right = atom});
    }
    // An empty branch (e.g. "a|" or "()") matches the empty string.
    return left < 0 ? Add({.kind = Node::kEmpty}) : left;
  }

  int ParseRepeat(int depth) {
    int atom = ParseAtom(depth);
    if (atom < 0) return -1;
    while (pos_ < pattern_.size() &&
           (pattern_[pos_] == '+' || pattern_[pos_] == '*')) {
      const auto kind = pattern_[pos_] == '+' ? Node::kPlus : Node::kStar;
      ++pos_;
      atom = Add({.kind = kind, .left = atom});
    }
    return atom;
  }

  int ParseAtom(int depth) {
    if (pos_ >= pattern_.size()) return -1;
    const char c = pattern_[pos_];
    if (c == 'a' || c == 'b' || c == 'c') {
      ++pos_;
      return Add({.kind = Node::kLiteral, .literal = static_cast<uint8_t>(c)});
    }
    if (c == '(') {
      ++pos_;
      const int inner = ParseAlt(depth + 1);
      if (inner < 0 || pos_ >= pattern_.size() || pattern_[pos_] != ')') {
        return -1;
      }
      ++pos_;
      return inner;
    }
    return -1;  // quantifier with no atom, stray ')', or foreign byte
  }

  std::string_view pattern_;
  size_t pos_ = 0;
  Ast ast_;
};

}  // namespace internal

inline std::optional<Ast> Parse(std::string_view pattern) {
  return internal::Parser(pattern).Parse();
}

struct MatchOutcome {
  bool matched = false;
  uint64_t visits = 0;
  bool budget_exceeded = false;
};

namespace internal {

// Backtracking matcher in continuation-passing style. Every node visit
// counts one step and fires one probe (edge id = AST node index, capped).
class Matcher {
 public:
  Matcher(const Ast& ast, std::span<const uint8_t> subject, uint64_t budget,
          UsageMap* map, size_t edge_base, size_t edge_cap)
      : ast_(ast), subject_(subject), budget_(budget), map_(map),
        edge_base_(edge_base), edge_cap_(edge_cap) {}

  MatchOutcome Search() {
    MatchOutcome out;
    // An attempt at a start position must consume through the end of the
    // subject; the scan tries every start until one succeeds.
    const auto accept = [this](size_t p) { return p == subject_.size(); };
    for (size_t start = 0; start <= subject_.size() && !exceeded_; ++start) {
      if (Match(ast_.root, start, accept)) {
        out.matched = true;
        break;
      }
    }
    out.visits = visits_;
    out.budget_exceeded = exceeded_;
    return out;
  }

 private:
  using Cont = std::function<bool(size_t)>;

  bool Match(int node_id, size_t pos, const Cont& k) {
    if (exceeded_) return false;
    if (++visits_ > budget_) {
      exceeded_ = true;
      return false;
    }
    if (map_ != nullptr) {
      map_->probe_hit(edge_base_ +
                      std::min<size_t>(static_cast<size_t>(node_id), edge_cap_));
    }
    const Node& node = ast_.nodes[static_cast<size_t>(node_id)];
    switch (node.kind) {
      case Node::kEmpty:
        return k(pos);
      case Node::kLiteral:
        return pos < subject_.size() && subject_[pos] == node.literal &&
               k(pos + 1);
      case Node::kConcat:
        return Match(node.left, pos,
                     [&](size_t p) { return Match(node.right, p, k); });
      case Node::kAlt:
        return Match(node.left, pos, k) || Match(node.right, pos, k);
      case Node::kStar:
        return MatchStar(node.left, pos, k);
      case Node::kPlus:
        return Match(node.left, pos,
                     [&](size_t p) { return MatchStar(node.left, p, k); });
    }
    return false;
  }

  // Greedy star: try one more (non-empty) iteration first, then fall back
  // to the continuation. Requiring progress per iteration prevents
  // divergence on nullable bodies like (a*)*.
  bool MatchStar(int body, size_t pos, const Cont& k) {
    if (Match(body, pos,
              [&](size_t p) { return p > pos && MatchStar(body, p, k); })) {
      return true;
    }
    return !exceeded_ && k(pos);
  }

  const Ast& ast_;
  std::span<const uint8_t> subject_;
  uint64_t budget_;
  UsageMap* map_;
  size_t edge_base_;
  size_t edge_cap_;
  uint64_t visits_ = 0;
  bool exceeded_ = false;
};

}  // namespace internal

// Anchored full-scan search: the pattern must match some subject[start..end)
// slice that extends to the end of the subject; every start position is
// tried until one succeeds. `map`, when given, receives one probe per visit
// on edges [edge_base, edge_base+edge_cap].
inline MatchOutcome Search(const Ast& ast, std::span<const uint8_t> subject,
                           uint64_t budget = UINT64_MAX, UsageMap* map = nullptr,
                           size_t edge_base = 0, size_t edge_cap = 255) {
  internal::Matcher matcher(ast, subject, budget, map, edge_base, edge_cap);
  return matcher.Search();
}

inline MatchOutcome Search(const Ast& ast, std::string_view subject,
                           uint64_t budget = UINT64_MAX, UsageMap* map = nullptr,
                           size_t edge_base = 0, size_t edge_cap = 255) {
  return Search(ast,
                std::span<const uint8_t>(
                    reinterpret_cast<const uint8_t*>(subject.data()),
                    subject.size()),
                budget, map, edge_base, edge_cap);
}

}  // namespace regex

namespace regex_internal {

// Edge layout for the regex targets: 0 entry, [1, 257) per AST node
// (capped), 257 invalid-pattern edge (mutate-pattern harness only).
inline constexpr size_t kEntryEdge = 0;
inline constexpr size_t kNodeEdgeBase = 1;
inline constexpr size_t kNodeEdgeCap = 255;
inline constexpr size_t kInvalidEdge = 257;
inline constexpr size_t kEdgeCount = 258;
inline constexpr size_t kMutateSubjectLen = 64;

}  // namespace regex_internal

// Fixed pattern, fuzzed subject.
class RegexFixedPatternTarget : public Target {
 public:
  explicit RegexFixedPatternTarget(std::string pattern)
      : name_("regex_fixed_pattern:" + pattern) {
    auto ast = regex::Parse(pattern);
    if (!ast) throw std::invalid_argument("invalid regex pattern: " + pattern);
    ast_ = std::move(*ast);
  }

  const std::string& name() const override { return name_; }
  size_t edge_count() const override { return regex_internal::kEdgeCount; }
  RunResult run(std::span<const uint8_t> input, UsageMap& map) const override {
    map.probe_hit(regex_internal::kEntryEdge);
    const auto outcome =
        regex::Search(ast_, input, UINT64_MAX, &map,
                      regex_internal::kNodeEdgeBase,
                      regex_internal::kNodeEdgeCap);
    return {.steps = 1 + outcome.visits, .aux = outcome.matched ? 1 : 0};
  }

 private:
  std::string name_;
  regex::Ast ast_;
};

// Fuzzed pattern, fixed subject: a 64-byte pseudo-random string over
// {a,b,c} derived from the campaign seed. Unparseable patterns are counted
// (aux = -1) but execute almost nothing, so they are never admitted.
class RegexMutatePatternTarget : public Target {
 public:
  explicit RegexMutatePatternTarget(uint64_t campaign_seed) {
    Rng rng(campaign_seed ^ 0x7265676578ULL);
    static constexpr char kAlphabet[] = {'a', 'b', 'c'};
    for (size_t i = 0; i < regex_internal::kMutateSubjectLen; ++i) {
      subject_.push_back(static_cast<uint8_t>(kAlphabet[rng.below(3)]));
    }
  }

  const std::string& name() const override { return name_; }
  size_t edge_count() const override { return regex_internal::kEdgeCount; }
  std::span<const uint8_t> subject() const { return subject_; }

  RunResult run(std::span<const uint8_t> input, UsageMap& map) const override {
    map.probe_hit(regex_internal::kEntryEdge);
    const std::string_view pattern(reinterpret_cast<const char*>(input.data()),
                                   input.size());
    const auto ast = regex::Parse(pattern);
    if (!ast) {
      map.probe_hit(regex_internal::kInvalidEdge);
      return {.steps = 1, .aux = -1};
    }
    const auto outcome =
        regex::Search(*ast, std::span<const uint8_t>(subject_), UINT64_MAX,
                      &map, regex_internal::kNodeEdgeBase,
                      regex_internal::kNodeEdgeCap);
    return {.steps = 1 + outcome.visits, .aux = outcome.matched ? 1 : 0};
  }

 private:
  std::string name_ = "regex_mutate_pattern";
  std::vector<uint8_t> subject_;
};

}  // namespace stepfuzz

#endif  // STEPFUZZ_TARGETS_REGEX_HPP_
