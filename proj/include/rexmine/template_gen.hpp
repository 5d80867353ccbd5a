#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rexmine/core_types.hpp"

namespace rexmine {

/// Builds the anchor/slot template for one cluster. Anchors are the maximal
/// runs of the fold LCS that stay adjacent in every member under the
/// leftmost alignment; a slot is placed wherever any member shows a gap, and
/// at the boundaries when any member has residue there. The fold order is
/// the order of `members`, so callers pass the canonical (sorted) member
/// list for deterministic output.
Template build_template(std::span<const std::string> members);
// errors: EmptyClusterError, InvalidExampleError (empty member)

/// Extracts the slot fillings of `member` against a template layout by a
/// fresh leftmost subsequence match of the concatenated anchors. Throws
/// AlignmentError when the member cannot be reconstructed — impossible for
/// the cluster members the template was built from.
std::vector<std::string> align_member(std::string_view member,
                                      const Template& layout);

}  // namespace rexmine
