#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace rexmine {

// --- character classification (Unicode scalar values) ---

inline bool is_ascii_digit(char32_t c) { return c >= U'0' && c <= U'9'; }
inline bool is_ascii_lower(char32_t c) { return c >= U'a' && c <= U'z'; }
inline bool is_ascii_upper(char32_t c) { return c >= U'A' && c <= U'Z'; }

inline constexpr char32_t kCjkFirst = U'一';
inline constexpr char32_t kCjkLast = U'鿿';
inline bool is_cjk(char32_t c) { return c >= kCjkFirst && c <= kCjkLast; }

inline bool is_whitespace_char(char32_t c) {
  return c == U' ' || c == U'\t' || c == U'\n' || c == U'\r' || c == U'\f' ||
         c == U'\v';
}

enum class Label { positive, negative };

/// One input string, optionally annotated for evaluation datasets.
struct Example {
  std::string raw;  // UTF-8
  std::optional<Label> label;
  std::optional<std::string> span;
  std::optional<std::string> context_left;
  std::optional<std::string> context_right;
  std::optional<bool> outlier;  // ground-truth noise tag, when known

  /// Full document text an extractor searches: the span embedded in its
  /// context when annotations are present, the raw string otherwise.
  std::string document() const {
    if (span || context_left || context_right) {
      std::string doc = context_left.value_or("");
      doc += span.value_or("");
      doc += context_right.value_or("");
      return doc;
    }
    return raw;
  }
};

/// Run-compressed abstract pattern over {z, x, X, d} plus reserved literal
/// characters; the clustering key.
class MetaParam {
 public:
  MetaParam() = default;

  /// Canonicalizes: collapses maximal runs of identical scalar values.
  static MetaParam from_pattern(std::string_view pattern);

  const std::string& str() const { return pattern_; }
  bool empty() const { return pattern_.empty(); }

  friend auto operator<=>(const MetaParam&, const MetaParam&) = default;

 private:
  std::string pattern_;  // UTF-8, canonical form
};

struct ClusterEntry {
  std::vector<std::string> members;  // sorted; duplicates kept
  std::uint64_t frequency = 0;       // == members.size()
};

struct ClusterTable {
  std::map<MetaParam, ClusterEntry> entries;
  std::uint64_t total = 0;  // == number of ingested examples

  bool empty() const { return entries.empty(); }
};

struct CdfPoint {
  std::size_t rank = 0;              // 1-based, descending-frequency order
  double cumulative_fraction = 0.0;  // in (0, 1]
};

/// Alternating anchors (shared literal runs) and slots, plus the per-member
/// substrings each slot absorbed. Invariant: interleaving anchors with a
/// member's fillings in element order reproduces the member exactly.
struct Template {
  struct Anchor {
    std::string text;  // UTF-8
  };
  struct SlotRef {
    std::size_t index = 0;
  };
  using Element = std::variant<Anchor, SlotRef>;

  std::vector<Element> elements;
  std::vector<std::string> members;
  std::vector<std::vector<std::string>> fillings;  // [member][slot]
  std::size_t slot_count = 0;

  /// Fillings regrouped per slot: result[s][m] = member m's text for slot s.
  std::vector<std::vector<std::string>> slot_fillings() const;

  std::string reconstruct(std::size_t member_index) const;
};

/// Node of the character-class lattice used to generalize slot atoms.
struct Atom {
  enum class Kind {
    literal,     // level 0: a single character from a filling
    digits,      // level 1: [0-9]
    lower,       // level 1: [a-z]
    upper,       // level 1: [A-Z]
    cjk,         // level 1: the CJK ideograph block
    whitespace,  // level 1: \s
    singleton,   // level 1: one reserved character as its own class
    word,        // level 2: \w
    any,         // level 3: top, "."
  };

  Kind kind = Kind::literal;
  char32_t ch = 0;  // used by literal/singleton

  friend auto operator<=>(const Atom&, const Atom&) = default;
};

/// The class lattice: every literal lifts through at most three parents to
/// the unique top node, so abstract-until-valid always terminates.
class AbstractionTree {
 public:
  static const AbstractionTree& standard();

  Atom parent(const Atom& a) const;
  int level(const Atom& a) const;
  Atom top() const { return Atom{Atom::Kind::any, 0}; }
  int depth() const { return 3; }

  /// Whether the class denoted by `a` contains the character `c`.
  bool contains(const Atom& a, char32_t c) const;
};

struct Quantifier {
  enum class Kind { exact, range, star };
  Kind kind = Kind::exact;
  std::uint32_t min = 1;
  std::uint32_t max = 1;

  static Quantifier exact(std::uint32_t n) { return {Kind::exact, n, n}; }
  static Quantifier range(std::uint32_t m, std::uint32_t n) {
    return {Kind::range, m, n};
  }
  static Quantifier star(std::uint32_t observed_max) {
    return {Kind::star, 0, observed_max};
  }

  friend bool operator==(const Quantifier&, const Quantifier&) = default;
};

enum class MatchMode { greedy, lazy };

struct Slot {
  std::vector<Atom> atoms;  // canonical order, |atoms| in [1, 3]
  Quantifier quantifier;
  MatchMode mode = MatchMode::greedy;
};

struct RegexArtifact {
  MetaParam source_metaparam;
  std::string regex;
  std::uint64_t n_training_examples = 0;
  Template tmpl;
};

struct EvalReport {
  std::uint64_t extractions = 0;
  std::uint64_t correct = 0;
  std::uint64_t positives = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f_measure = 0.0;
  std::optional<double> noisy_precision;
  bool noisy_clamped = false;
};

}  // namespace rexmine
