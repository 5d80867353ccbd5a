#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rexmine/core_types.hpp"

namespace rexmine {

/// Maps every character through the transform rules (CJK ideograph -> z,
/// ASCII lowercase -> x, uppercase -> X, digit -> d, anything else kept as a
/// literal), then collapses runs of identical symbols.
MetaParam transform_and_compress(std::string_view raw);  // InvalidExampleError on empty

/// Longest common subsequence of two strings over scalar values. Among all
/// LCS of maximal length the one whose match positions in `a` (then in `b`)
/// are lexicographically smallest is returned, so output is deterministic.
std::string lcs_pair(std::string_view a, std::string_view b);
std::u32string lcs_pair(std::u32string_view a, std::u32string_view b);

/// Left-fold of lcs_pair over the list in input order. May be shorter than
/// the true multi-string LCS; always a common subsequence of every input.
std::string common_subsequence(std::span<const std::string> strings);

/// Leftmost greedy embedding of `needle` as a subsequence of `hay`; nullopt
/// when no embedding exists.
std::optional<std::vector<std::size_t>> subsequence_positions(
    std::u32string_view hay, std::u32string_view needle);

/// Groups examples by MetaParam. The map stage may run on several threads
/// (threads == 0 picks the hardware count); the merge is associative and the
/// final table is canonically ordered, so the result does not depend on input
/// order or partitioning.
ClusterTable build_cluster_table(std::span<const Example> examples,
                                 unsigned threads = 0);

}  // namespace rexmine
