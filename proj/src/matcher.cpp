#include "rexmine/matcher.hpp"

#include <algorithm>
#include <string>

#include "rexmine/errors.hpp"
#include "rexmine/unicode.hpp"

namespace rexmine {

bool CharSet::matches(char32_t c) const {
  auto it = std::upper_bound(
      ranges.begin(), ranges.end(), c,
      [](char32_t v, const auto& r) { return v < r.first; });
  bool in = false;
  if (it != ranges.begin()) {
    --it;
    in = c >= it->first && c <= it->second;
  }
  return in != negated;
}

void CharSet::add(char32_t lo, char32_t hi) { ranges.emplace_back(lo, hi); }

void CharSet::normalize() {
  if (ranges.empty()) return;
  std::sort(ranges.begin(), ranges.end());
  std::vector<std::pair<char32_t, char32_t>> merged;
  merged.push_back(ranges.front());
  for (std::size_t i = 1; i < ranges.size(); ++i) {
    auto& last = merged.back();
    if (ranges[i].first <= last.second ||
        (last.second != U'\U0010FFFF' && ranges[i].first == last.second + 1)) {
      last.second = std::max(last.second, ranges[i].second);
    } else {
      merged.push_back(ranges[i]);
    }
  }
  ranges = std::move(merged);
}

std::uint64_t CharSet::cardinality() const {
  std::uint64_t n = 0;
  for (const auto& [lo, hi] : ranges) n += static_cast<std::uint64_t>(hi - lo) + 1;
  return n;
}

char32_t CharSet::at(std::uint64_t idx) const {
  for (const auto& [lo, hi] : ranges) {
    const std::uint64_t width = static_cast<std::uint64_t>(hi - lo) + 1;
    if (idx < width) return static_cast<char32_t>(lo + idx);
    idx -= width;
  }
  throw InternalError("CharSet index out of range");
}

namespace {

const std::u32string_view kMetachars = U".^$*+?()[]{}|\\/-";

CharSet shorthand_class(char32_t c) {
  CharSet set;
  switch (c) {
    case U'd':
      set.add(U'0', U'9');
      break;
    case U'w':
      set.add(U'0', U'9');
      set.add(U'A', U'Z');
      set.add(U'_', U'_');
      set.add(U'a', U'z');
      break;
    case U's':
      set.add(U'\t', U'\r');  // \t \n \v \f \r
      set.add(U' ', U' ');
      break;
    default:
      throw InternalError("not a shorthand class");
  }
  set.normalize();
  return set;
}

class Parser {
 public:
  explicit Parser(std::u32string_view pattern) : pat_(pattern) {}

  std::vector<PatternAtom> parse() {
    std::vector<PatternAtom> atoms;
    while (pos_ < pat_.size()) {
      PatternAtom atom;
      atom.cls = parse_atom_class();
      parse_quantifier(atom);
      atoms.push_back(std::move(atom));
    }
    return atoms;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw CompileError("regex compile error at offset " +
                       std::to_string(pos_) + ": " + why);
  }

  char32_t peek() const { return pat_[pos_]; }
  bool done() const { return pos_ >= pat_.size(); }

  CharSet parse_atom_class() {
    const char32_t c = peek();
    switch (c) {
      case U'.': {
        ++pos_;
        CharSet set;
        set.negated = true;
        set.add(U'\n', U'\n');
        set.add(U'\r', U'\r');
        set.normalize();
        return set;
      }
      case U'\\':
        return parse_escape(false);
      case U'[':
        return parse_bracket_class();
      case U'(':
      case U')':
      case U'|':
        fail("alternation and groups are not part of the dialect");
      case U'^':
      case U'$':
        fail("anchors are not part of the dialect");
      case U'*':
      case U'+':
      case U'?':
        fail("quantifier with no preceding atom");
      case U'{':
        fail("counted quantifier with no preceding atom");
      case U']':
      case U'}':
        fail("unmatched closing bracket");
      default: {
        ++pos_;
        CharSet set;
        set.add(c, c);
        return set;
      }
    }
  }

  // inside_class controls which escapes are legal.
  CharSet parse_escape(bool inside_class) {
    ++pos_;  // consume '\'
    if (done()) fail("dangling backslash");
    const char32_t c = peek();
    ++pos_;
    if (c == U'd' || c == U'w' || c == U's') return shorthand_class(c);
    const bool is_meta = kMetachars.find(c) != std::u32string_view::npos;
    const bool is_class_meta = c == U']' || c == U'\\' || c == U'-' ||
                               c == U'^' || c == U'[';
    if ((inside_class && (is_class_meta || is_meta)) ||
        (!inside_class && is_meta)) {
      CharSet set;
      set.add(c, c);
      return set;
    }
    if (c == U'n' || c == U't' || c == U'r') {
      const char32_t real = c == U'n' ? U'\n' : (c == U't' ? U'\t' : U'\r');
      CharSet set;
      set.add(real, real);
      return set;
    }
    fail("unknown escape");
  }

  CharSet parse_bracket_class() {
    ++pos_;  // consume '['
    CharSet set;
    if (!done() && peek() == U'^') {
      set.negated = true;
      ++pos_;
    }
    bool saw_item = false;
    while (true) {
      if (done()) fail("unterminated character class");
      if (peek() == U']' && saw_item) break;
      char32_t lo;
      bool lo_is_char = true;
      if (peek() == U'\\') {
        CharSet sub = parse_escape(true);
        if (sub.ranges.size() == 1 && sub.ranges[0].first == sub.ranges[0].second) {
          lo = sub.ranges[0].first;
        } else {
          // shorthand inside a class: contributes its ranges, no range syntax
          for (const auto& r : sub.ranges) set.add(r.first, r.second);
          saw_item = true;
          lo = 0;
          lo_is_char = false;
        }
      } else {
        lo = peek();
        ++pos_;
      }
      if (!lo_is_char) continue;

      if (!done() && peek() == U'-' && pos_ + 1 < pat_.size() &&
          pat_[pos_ + 1] != U']') {
        ++pos_;  // consume '-'
        char32_t hi;
        if (peek() == U'\\') {
          CharSet sub = parse_escape(true);
          if (sub.ranges.size() != 1 ||
              sub.ranges[0].first != sub.ranges[0].second) {
            fail("shorthand class cannot bound a range");
          }
          hi = sub.ranges[0].first;
        } else {
          hi = peek();
          ++pos_;
        }
        if (hi < lo) fail("inverted range in character class");
        set.add(lo, hi);
      } else {
        set.add(lo, lo);
      }
      saw_item = true;
    }
    ++pos_;  // consume ']'
    if (set.ranges.empty()) fail("empty character class");
    set.normalize();
    return set;
  }

  void parse_quantifier(PatternAtom& atom) {
    if (done()) return;
    const char32_t c = peek();
    if (c == U'*') {
      atom.min = 0;
      atom.max = kUnbounded;
      ++pos_;
    } else if (c == U'+') {
      atom.min = 1;
      atom.max = kUnbounded;
      ++pos_;
    } else if (c == U'?') {
      atom.min = 0;
      atom.max = 1;
      ++pos_;
    } else if (c == U'{') {
      parse_counted(atom);
    } else {
      return;
    }
    if (!done() && peek() == U'?') {
      atom.lazy = true;
      ++pos_;
    }
  }

  void parse_counted(PatternAtom& atom) {
    ++pos_;  // consume '{'
    const auto first = parse_number();
    if (done()) fail("unterminated counted quantifier");
    if (peek() == U'}') {
      ++pos_;
      atom.min = atom.max = first;
      return;
    }
    if (peek() != U',') fail("malformed counted quantifier");
    ++pos_;
    if (done()) fail("unterminated counted quantifier");
    if (peek() == U'}') {
      ++pos_;
      atom.min = first;
      atom.max = kUnbounded;
      return;
    }
    const auto second = parse_number();
    if (done() || peek() != U'}') fail("unterminated counted quantifier");
    ++pos_;
    if (second < first) fail("counted quantifier with max < min");
    atom.min = first;
    atom.max = second;
  }

  std::uint32_t parse_number() {
    if (done() || !is_ascii_digit(peek())) fail("expected number");
    std::uint64_t value = 0;
    while (!done() && is_ascii_digit(peek())) {
      value = value * 10 + (peek() - U'0');
      if (value > 1000000) fail("quantifier bound too large");
      ++pos_;
    }
    return static_cast<std::uint32_t>(value);
  }

  std::u32string_view pat_;
  std::size_t pos_ = 0;
};

// run[i] = length of the maximal run of characters in `cls` starting at i.
std::vector<std::uint32_t> class_runs(std::u32string_view text,
                                      const CharSet& cls) {
  std::vector<std::uint32_t> run(text.size() + 1, 0);
  for (std::size_t i = text.size(); i-- > 0;) {
    run[i] = cls.matches(text[i]) ? run[i + 1] + 1 : 0;
  }
  return run;
}

// Marks every end position reachable from the start positions in `cur`
// after consuming one quantified atom. Positions are absolute text indices.
void step_atom(const PatternAtom& atom,
               const std::vector<std::uint32_t>& run,
               const std::vector<char>& cur, std::vector<char>& next,
               std::size_t lo, std::size_t hi) {
  std::fill(next.begin() + static_cast<std::ptrdiff_t>(lo),
            next.begin() + static_cast<std::ptrdiff_t>(hi) + 1, 0);
  std::size_t painted_to = lo;  // exclusive upper edge of painted area
  for (std::size_t p = lo; p <= hi; ++p) {
    if (!cur[p]) continue;
    const std::uint64_t cap =
        std::min<std::uint64_t>(atom.max, run[p]);
    if (cap < atom.min) continue;
    const std::size_t from = p + atom.min;
    const std::size_t to = p + static_cast<std::size_t>(cap);
    // `from` is monotone in p, so everything in [from, painted_to) is
    // already painted and each position is written at most once.
    for (std::size_t q = std::max(from, painted_to); q <= to; ++q) next[q] = 1;
    painted_to = std::max(painted_to, to + 1);
  }
}

}  // namespace

CompiledPattern CompiledPattern::compile(std::string_view pattern) {
  const std::u32string scalars = uni::decode_utf8(pattern);
  Parser parser{std::u32string_view(scalars)};
  CompiledPattern compiled;
  compiled.atoms_ = parser.parse();
  compiled.source_ = std::string(pattern);
  return compiled;
}

bool CompiledPattern::full_match(std::u32string_view text) const {
  const std::size_t n = text.size();
  std::vector<char> cur(n + 1, 0);
  std::vector<char> next(n + 1, 0);
  cur[0] = 1;
  std::size_t lo = 0;
  for (const auto& atom : atoms_) {
    const auto run = class_runs(text, atom.cls);
    step_atom(atom, run, cur, next, lo, n);
    cur.swap(next);
  }
  return cur[n] != 0;
}

bool CompiledPattern::full_match(std::string_view utf8) const {
  return full_match(std::u32string_view(uni::decode_utf8(utf8)));
}

std::optional<CompiledPattern::Match> CompiledPattern::search(
    std::u32string_view text, MatchMode extent) const {
  const std::size_t n = text.size();

  std::vector<std::vector<std::uint32_t>> runs;
  runs.reserve(atoms_.size());
  for (const auto& atom : atoms_) runs.push_back(class_runs(text, atom.cls));

  std::vector<char> cur(n + 1, 0);
  std::vector<char> next(n + 1, 0);

  for (std::size_t start = 0; start <= n; ++start) {
    // cheap skip: a mandatory first atom needs its class at `start`
    if (!atoms_.empty() && atoms_.front().min > 0 && start < n &&
        runs.front()[start] == 0) {
      continue;
    }
    if (!atoms_.empty() && atoms_.front().min > 0 && start == n) break;

    std::fill(cur.begin() + static_cast<std::ptrdiff_t>(start), cur.end(), 0);
    cur[start] = 1;
    bool alive = true;
    for (std::size_t a = 0; a < atoms_.size(); ++a) {
      step_atom(atoms_[a], runs[a], cur, next, start, n);
      cur.swap(next);
      alive = false;
      for (std::size_t q = start; q <= n; ++q) {
        if (cur[q]) {
          alive = true;
          break;
        }
      }
      if (!alive) break;
    }
    if (!alive) continue;

    // non-empty ends only
    std::optional<std::size_t> chosen;
    if (extent == MatchMode::greedy) {
      for (std::size_t q = n + 1; q-- > start + 1;) {
        if (cur[q]) {
          chosen = q;
          break;
        }
      }
    } else {
      for (std::size_t q = start + 1; q <= n; ++q) {
        if (cur[q]) {
          chosen = q;
          break;
        }
      }
    }
    if (chosen) return Match{start, *chosen - start};
  }
  return std::nullopt;
}

}  // namespace rexmine
