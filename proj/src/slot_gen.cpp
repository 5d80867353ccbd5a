#include "rexmine/slot_gen.hpp"

#include <algorithm>
#include <limits>

#include "rexmine/errors.hpp"
#include "rexmine/matcher.hpp"
#include "rexmine/unicode.hpp"

namespace rexmine {

namespace {

// Escapes a single character for use inside a bracket expression.
std::string class_escape(char32_t c) {
  std::string out;
  if (c == U']' || c == U'\\' || c == U'-' || c == U'^' || c == U'[') {
    out.push_back('\\');
  }
  uni::append_utf8(out, c);
  return out;
}

// The body an atom contributes inside a bracket expression.
std::string class_body(const Atom& a) {
  switch (a.kind) {
    case Atom::Kind::literal:
    case Atom::Kind::singleton:
      return class_escape(a.ch);
    case Atom::Kind::digits:
      return "0-9";
    case Atom::Kind::lower:
      return "a-z";
    case Atom::Kind::upper:
      return "A-Z";
    case Atom::Kind::cjk: {
      std::string out;
      uni::append_utf8(out, kCjkFirst);
      out.push_back('-');
      uni::append_utf8(out, kCjkLast);
      return out;
    }
    case Atom::Kind::whitespace:
      return "\\s";
    case Atom::Kind::word:
      return "\\w";
    case Atom::Kind::any:
      throw InternalError("top node has no bracket form");
  }
  throw InternalError("unreachable atom kind");
}

// A lone atom rendered as a standalone regex fragment.
std::string bare_form(const Atom& a) {
  switch (a.kind) {
    case Atom::Kind::literal:
    case Atom::Kind::singleton: {
      std::string ch;
      uni::append_utf8(ch, a.ch);
      return escape_literal(ch);
    }
    case Atom::Kind::whitespace:
      return "\\s";
    case Atom::Kind::word:
      return "\\w";
    case Atom::Kind::any:
      return ".";
    default:
      return "[" + class_body(a) + "]";
  }
}

}  // namespace

DedupResult dedup_and_lengths(std::span<const std::string> fillings) {
  if (fillings.empty()) {
    throw InternalError("slot pipeline received no fillings");
  }
  DedupResult result;
  result.unique.assign(fillings.begin(), fillings.end());
  std::sort(result.unique.begin(), result.unique.end());
  result.unique.erase(
      std::unique(result.unique.begin(), result.unique.end()),
      result.unique.end());

  result.min_len = std::numeric_limits<std::size_t>::max();
  result.max_len = 0;
  for (const auto& s : result.unique) {
    const std::size_t len = uni::decode_utf8(s).size();
    result.min_len = std::min(result.min_len, len);
    result.max_len = std::max(result.max_len, len);
  }
  return result;
}

std::set<Atom> coarse_class(std::span<const std::string> unique) {
  std::set<Atom> atoms;
  for (const auto& s : unique) {
    for (char32_t c : uni::decode_utf8(s)) {
      atoms.insert(Atom{Atom::Kind::literal, c});
    }
  }
  return atoms;
}

bool is_valid(const std::set<Atom>& atoms) { return atoms.size() < 4; }

std::set<Atom> abstract_up(const std::set<Atom>& atoms,
                           const AbstractionTree& tree) {
  int min_level = std::numeric_limits<int>::max();
  for (const auto& a : atoms) min_level = std::min(min_level, tree.level(a));

  std::set<Atom> lifted;
  for (const auto& a : atoms) {
    lifted.insert(tree.level(a) == min_level ? tree.parent(a) : a);
  }
  return lifted;
}

std::vector<Atom> consolidate_order(const std::set<Atom>& atoms) {
  const auto& tree = AbstractionTree::standard();
  std::vector<Atom> ordered(atoms.begin(), atoms.end());
  std::stable_sort(ordered.begin(), ordered.end(),
                   [&](const Atom& a, const Atom& b) {
                     const int la = tree.level(a);
                     const int lb = tree.level(b);
                     if (la != lb) return la > lb;
                     return class_body(a) < class_body(b);
                   });
  return ordered;
}

std::string consolidate(const std::set<Atom>& atoms) {
  if (atoms.empty()) throw InternalError("consolidate of an empty atom set");
  for (const auto& a : atoms) {
    if (a.kind == Atom::Kind::any) return ".";  // top absorbs everything
  }
  if (atoms.size() == 1) return bare_form(*atoms.begin());

  std::string out = "[";
  for (const auto& a : consolidate_order(atoms)) out += class_body(a);
  out += "]";
  return out;
}

Quantifier gen_quantifier(std::size_t min_len, std::size_t max_len) {
  if (min_len > max_len || max_len == 0) {
    throw InternalError("quantifier over degenerate lengths");
  }
  const auto mn = static_cast<std::uint32_t>(min_len);
  const auto mx = static_cast<std::uint32_t>(max_len);
  if (mn == 0) return Quantifier::star(mx);
  if (mn == mx) return Quantifier::exact(mn);
  return Quantifier::range(mn, mx);
}

std::string render_quantifier(const Quantifier& q, const SlotGenOptions& opts) {
  std::string rendered;
  bool variable_width = false;
  switch (q.kind) {
    case Quantifier::Kind::exact:
      rendered = q.min == 1 ? "" : "{" + std::to_string(q.min) + "}";
      break;
    case Quantifier::Kind::range:
      rendered = "{" + std::to_string(q.min) + "," + std::to_string(q.max) + "}";
      variable_width = true;
      break;
    case Quantifier::Kind::star:
      rendered = opts.bounded_star ? "{0," + std::to_string(q.max) + "}" : "*";
      variable_width = true;
      break;
  }
  // a lazy marker on a fixed-width piece would be inert (or, on a bare atom,
  // would change its meaning), so it only follows variable-width quantifiers
  if (opts.mode == MatchMode::lazy && variable_width) rendered += "?";
  return rendered;
}

SlotPipelineState run_slot_pipeline(std::span<const std::string> fillings,
                                    const AbstractionTree& tree,
                                    const SlotGenOptions& opts) {
  SlotPipelineState state;
  state.lengths = dedup_and_lengths(fillings);
  if (state.lengths.max_len == 0) {
    throw InternalError("slot with only empty fillings reached the pipeline");
  }

  std::set<Atom> atoms = coarse_class(state.lengths.unique);
  while (!is_valid(atoms)) {
    atoms = abstract_up(atoms, tree);
    ++state.lifts;
  }

  state.slot.atoms = consolidate_order(atoms);
  state.slot.quantifier =
      gen_quantifier(state.lengths.min_len, state.lengths.max_len);
  state.slot.mode = opts.mode;
  state.atom_fragment = consolidate(atoms);
  state.final_fragment =
      state.atom_fragment + render_quantifier(state.slot.quantifier, opts);
  return state;
}

std::string generate_slot_fragment(std::span<const std::string> fillings,
                                   const AbstractionTree& tree,
                                   const SlotGenOptions& opts) {
  return run_slot_pipeline(fillings, tree, opts).final_fragment;
}

std::string escape_literal(std::string_view s) {
  static constexpr std::string_view kMeta = ".^$*+?()[]{}|\\/-";
  std::string out;
  out.reserve(s.size());
  for (char byte : s) {
    // metacharacters are ASCII; UTF-8 continuation bytes never collide
    if (kMeta.find(byte) != std::string_view::npos) out.push_back('\\');
    out.push_back(byte);
  }
  return out;
}

RegexArtifact assemble_regex(const Template& tmpl,
                             std::span<const std::string> slot_fragments,
                             const MetaParam& source_metaparam) {
  if (slot_fragments.size() != tmpl.slot_count) {
    throw InternalError("fragment count does not match slot count");
  }
  std::string regex;
  for (const auto& el : tmpl.elements) {
    if (const auto* anchor = std::get_if<Template::Anchor>(&el)) {
      regex += escape_literal(anchor->text);
    } else {
      regex += slot_fragments[std::get<Template::SlotRef>(el).index];
    }
  }

  const CompiledPattern pattern = CompiledPattern::compile(regex);
  for (const auto& member : tmpl.members) {
    if (!pattern.full_match(std::string_view(member))) {
      throw InternalError("emitted regex does not match training member '" +
                          member + "': " + regex);
    }
  }

  RegexArtifact artifact;
  artifact.source_metaparam = source_metaparam;
  artifact.regex = std::move(regex);
  artifact.n_training_examples = tmpl.members.size();
  artifact.tmpl = tmpl;
  return artifact;
}

}  // namespace rexmine
