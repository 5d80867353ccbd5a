#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rexmine/core_types.hpp"

namespace rexmine {

/// A set of scalar values, stored as sorted disjoint ranges.
struct CharSet {
  std::vector<std::pair<char32_t, char32_t>> ranges;
  bool negated = false;

  bool matches(char32_t c) const;
  void add(char32_t lo, char32_t hi);
  void normalize();

  /// Number of scalar values enumerated by the ranges (ignores negation).
  std::uint64_t cardinality() const;
  /// The idx-th scalar value of the ranges in ascending order.
  char32_t at(std::uint64_t idx) const;
};

inline constexpr std::uint32_t kUnbounded =
    std::numeric_limits<std::uint32_t>::max();

struct PatternAtom {
  CharSet cls;
  std::uint32_t min = 1;
  std::uint32_t max = 1;
  bool lazy = false;
};

/// Executes patterns from the emitted dialect: a concatenation of quantified
/// character-class atoms. Supported syntax: literals, backslash-escaped
/// metacharacters, \d \w \s, '.', bracket classes (ranges, escapes, leading
/// '^' negation), and the quantifiers * + ? {n} {m,n} {m,} with an optional
/// lazy '?'. Alternation, groups, anchors, backreferences and lookaround are
/// rejected at compile time.
class CompiledPattern {
 public:
  static CompiledPattern compile(std::string_view pattern);  // CompileError

  struct Match {
    std::size_t pos = 0;  // scalar-value index
    std::size_t len = 0;
  };

  bool full_match(std::u32string_view text) const;
  bool full_match(std::string_view utf8) const;

  /// Leftmost non-empty match. At the leftmost viable start, greedy extent
  /// reports the longest reachable end and lazy the shortest non-empty one.
  std::optional<Match> search(std::u32string_view text,
                              MatchMode extent = MatchMode::greedy) const;

  const std::string& source() const { return source_; }
  const std::vector<PatternAtom>& atoms() const { return atoms_; }

 private:
  std::vector<PatternAtom> atoms_;
  std::string source_;
};

}  // namespace rexmine
