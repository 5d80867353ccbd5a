#include "rexmine/core_types.hpp"

#include "rexmine/errors.hpp"
#include "rexmine/unicode.hpp"

namespace rexmine {

MetaParam MetaParam::from_pattern(std::string_view pattern) {
  const std::u32string scalars = uni::decode_utf8(pattern);
  std::u32string compressed;
  compressed.reserve(scalars.size());
  for (char32_t c : scalars) {
    if (compressed.empty() || compressed.back() != c) compressed.push_back(c);
  }
  MetaParam mp;
  mp.pattern_ = uni::encode_utf8(compressed);
  return mp;
}

std::vector<std::vector<std::string>> Template::slot_fillings() const {
  std::vector<std::vector<std::string>> by_slot(slot_count);
  for (auto& v : by_slot) v.reserve(members.size());
  for (const auto& member_fill : fillings) {
    for (std::size_t s = 0; s < slot_count; ++s) {
      by_slot[s].push_back(member_fill[s]);
    }
  }
  return by_slot;
}

std::string Template::reconstruct(std::size_t member_index) const {
  const auto& fill = fillings.at(member_index);
  std::string out;
  for (const auto& el : elements) {
    if (const auto* anchor = std::get_if<Anchor>(&el)) {
      out += anchor->text;
    } else {
      out += fill.at(std::get<SlotRef>(el).index);
    }
  }
  return out;
}

const AbstractionTree& AbstractionTree::standard() {
  static const AbstractionTree tree;
  return tree;
}

Atom AbstractionTree::parent(const Atom& a) const {
  switch (a.kind) {
    case Atom::Kind::literal: {
      const char32_t c = a.ch;
      if (is_ascii_digit(c)) return {Atom::Kind::digits, 0};
      if (is_ascii_lower(c)) return {Atom::Kind::lower, 0};
      if (is_ascii_upper(c)) return {Atom::Kind::upper, 0};
      if (is_cjk(c)) return {Atom::Kind::cjk, 0};
      if (is_whitespace_char(c)) return {Atom::Kind::whitespace, 0};
      return {Atom::Kind::singleton, c};
    }
    case Atom::Kind::digits:
    case Atom::Kind::lower:
    case Atom::Kind::upper:
      return {Atom::Kind::word, 0};
    case Atom::Kind::cjk:
    case Atom::Kind::whitespace:
    case Atom::Kind::singleton:
    case Atom::Kind::word:
      return top();
    case Atom::Kind::any:
      return top();  // fixpoint
  }
  throw InternalError("unreachable atom kind");
}

int AbstractionTree::level(const Atom& a) const {
  switch (a.kind) {
    case Atom::Kind::literal:
      return 0;
    case Atom::Kind::digits:
    case Atom::Kind::lower:
    case Atom::Kind::upper:
    case Atom::Kind::cjk:
    case Atom::Kind::whitespace:
    case Atom::Kind::singleton:
      return 1;
    case Atom::Kind::word:
      return 2;
    case Atom::Kind::any:
      return 3;
  }
  throw InternalError("unreachable atom kind");
}

bool AbstractionTree::contains(const Atom& a, char32_t c) const {
  switch (a.kind) {
    case Atom::Kind::literal:
    case Atom::Kind::singleton:
      return a.ch == c;
    case Atom::Kind::digits:
      return is_ascii_digit(c);
    case Atom::Kind::lower:
      return is_ascii_lower(c);
    case Atom::Kind::upper:
      return is_ascii_upper(c);
    case Atom::Kind::cjk:
      return is_cjk(c);
    case Atom::Kind::whitespace:
      return is_whitespace_char(c);
    case Atom::Kind::word:
      return is_ascii_digit(c) || is_ascii_lower(c) || is_ascii_upper(c) ||
             c == U'_';
    case Atom::Kind::any:
      return c != U'\n' && c != U'\r';
  }
  throw InternalError("unreachable atom kind");
}

}  // namespace rexmine
