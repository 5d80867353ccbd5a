#pragma once

#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rexmine/core_types.hpp"

namespace rexmine {

struct SlotGenOptions {
  MatchMode mode = MatchMode::greedy;
  bool bounded_star = false;  // render Star as {0,max} instead of *
};

struct DedupResult {
  std::vector<std::string> unique;  // sorted distinct fillings
  std::size_t min_len = 0;          // scalar-value lengths
  std::size_t max_len = 0;
};

/// Everything the staged slot pipeline produced, stage by stage.
struct SlotPipelineState {
  DedupResult lengths;
  Slot slot;               // final atoms, quantifier, mode
  std::size_t lifts = 0;   // abstraction steps taken to reach validity
  std::string atom_fragment;   // rendered atom set, no quantifier
  std::string final_fragment;  // atom set + quantifier (+ lazy marker)
};

DedupResult dedup_and_lengths(std::span<const std::string> fillings);

/// Union of the characters occurring in any filling, as literal leaves.
std::set<Atom> coarse_class(std::span<const std::string> unique);

/// The validity rule: fewer than 4 distinct atoms.
bool is_valid(const std::set<Atom>& atoms);

/// One abstraction step: every atom at the minimum level present in the set
/// is replaced by its parent, then the set is deduplicated.
std::set<Atom> abstract_up(const std::set<Atom>& atoms,
                           const AbstractionTree& tree);

/// Atoms in canonical emission order: lattice level descending, then the
/// rendered class body lexicographically.
std::vector<Atom> consolidate_order(const std::set<Atom>& atoms);

/// Renders the atom set as one regex fragment: a lone literal is emitted
/// bare (escaped), a lone class by itself, several atoms as one bracket
/// expression. A top node absorbs the whole set into ".".
std::string consolidate(const std::set<Atom>& atoms);

Quantifier gen_quantifier(std::size_t min_len, std::size_t max_len);

std::string render_quantifier(const Quantifier& q, const SlotGenOptions& opts);

SlotPipelineState run_slot_pipeline(std::span<const std::string> fillings,
                                    const AbstractionTree& tree,
                                    const SlotGenOptions& opts = {});

std::string generate_slot_fragment(std::span<const std::string> fillings,
                                   const AbstractionTree& tree,
                                   const SlotGenOptions& opts = {});

/// Backslash-escapes every regex metacharacter: . ^ $ * + ? ( ) [ ] { } | \ / -
std::string escape_literal(std::string_view s);

/// Concatenates escaped anchors with slot fragments, compiles the result and
/// verifies it fully matches every training member.
RegexArtifact assemble_regex(const Template& tmpl,
                             std::span<const std::string> slot_fragments,
                             const MetaParam& source_metaparam);
// errors: CompileError (pattern does not compile), InternalError (a member
// fails the full-match invariant) — both signal pipeline bugs

}  // namespace rexmine
