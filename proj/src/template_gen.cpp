#include "rexmine/template_gen.hpp"

#include <algorithm>

#include "rexmine/abstraction.hpp"
#include "rexmine/errors.hpp"
#include "rexmine/unicode.hpp"

namespace rexmine {

namespace {

std::u32string concatenated_anchors(const Template& tmpl) {
  std::u32string seq;
  for (const auto& el : tmpl.elements) {
    if (const auto* anchor = std::get_if<Template::Anchor>(&el)) {
      seq += uni::decode_utf8(anchor->text);
    }
  }
  return seq;
}

std::vector<std::string> extract_fillings(std::u32string_view member,
                                          const Template& layout,
                                          std::u32string_view anchor_seq) {
  const auto positions = subsequence_positions(member, anchor_seq);
  if (!positions) {
    throw AlignmentError("anchors are not a subsequence of the member");
  }

  std::vector<std::string> fillings(layout.slot_count);
  std::size_t seq_idx = 0;  // index into anchor_seq / positions
  std::size_t cursor = 0;   // index into member
  for (const auto& el : layout.elements) {
    if (const auto* anchor = std::get_if<Template::Anchor>(&el)) {
      const std::size_t len = uni::decode_utf8(anchor->text).size();
      // anchor characters must sit consecutively at their aligned positions
      for (std::size_t k = 0; k < len; ++k) {
        const std::size_t pos = (*positions)[seq_idx + k];
        if (k > 0 && pos != (*positions)[seq_idx + k - 1] + 1) {
          throw AlignmentError("member splits inside an anchor");
        }
      }
      if ((*positions)[seq_idx] != cursor) {
        throw AlignmentError("member has residue where the layout has none");
      }
      cursor = (*positions)[seq_idx + len - 1] + 1;
      seq_idx += len;
    } else {
      const std::size_t slot = std::get<Template::SlotRef>(el).index;
      const std::size_t end =
          seq_idx < anchor_seq.size() ? (*positions)[seq_idx] : member.size();
      fillings[slot] = uni::encode_utf8(member.substr(cursor, end - cursor));
      cursor = end;
    }
  }
  if (cursor != member.size()) {
    throw AlignmentError("member has trailing residue where the layout has none");
  }
  return fillings;
}

}  // namespace

Template build_template(std::span<const std::string> members) {
  if (members.empty()) throw EmptyClusterError();

  std::vector<std::u32string> decoded;
  decoded.reserve(members.size());
  for (const auto& m : members) {
    if (m.empty()) throw InvalidExampleError("empty cluster member");
    decoded.push_back(uni::decode_utf8(m));
  }

  std::u32string lcs = decoded.front();
  for (std::size_t k = 1; k < decoded.size() && !lcs.empty(); ++k) {
    lcs = lcs_pair(std::u32string_view(lcs), std::u32string_view(decoded[k]));
  }

  Template tmpl;
  tmpl.members.assign(members.begin(), members.end());

  if (lcs.empty()) {
    // no common anchor: the whole member is one slot
    tmpl.elements.push_back(Template::SlotRef{0});
    tmpl.slot_count = 1;
    for (const auto& d : decoded) {
      tmpl.fillings.push_back({uni::encode_utf8(d)});
    }
    return tmpl;
  }

  std::vector<std::vector<std::size_t>> positions;
  positions.reserve(decoded.size());
  for (const auto& d : decoded) {
    auto pos = subsequence_positions(std::u32string_view(d),
                                     std::u32string_view(lcs));
    if (!pos) throw AlignmentError("fold LCS is not a subsequence of a member");
    positions.push_back(std::move(*pos));
  }

  const std::size_t lcs_len = lcs.size();
  std::vector<char> split_after(lcs_len, 0);  // split between k and k+1
  bool leading_slot = false;
  bool trailing_slot = false;
  for (std::size_t m = 0; m < decoded.size(); ++m) {
    const auto& pos = positions[m];
    if (pos.front() > 0) leading_slot = true;
    if (pos.back() + 1 < decoded[m].size()) trailing_slot = true;
    for (std::size_t k = 0; k + 1 < lcs_len; ++k) {
      if (pos[k + 1] != pos[k] + 1) split_after[k] = 1;
    }
  }

  std::size_t slot_count = 0;
  if (leading_slot) tmpl.elements.push_back(Template::SlotRef{slot_count++});
  std::size_t run_start = 0;
  for (std::size_t k = 0; k < lcs_len; ++k) {
    const bool run_ends = k + 1 == lcs_len || split_after[k];
    if (!run_ends) continue;
    tmpl.elements.push_back(Template::Anchor{
        uni::encode_utf8(std::u32string_view(lcs).substr(run_start, k + 1 - run_start))});
    run_start = k + 1;
    if (k + 1 < lcs_len) {
      tmpl.elements.push_back(Template::SlotRef{slot_count++});
    }
  }
  if (trailing_slot) tmpl.elements.push_back(Template::SlotRef{slot_count++});
  tmpl.slot_count = slot_count;

  tmpl.fillings.reserve(decoded.size());
  for (const auto& d : decoded) {
    tmpl.fillings.push_back(extract_fillings(std::u32string_view(d), tmpl,
                                             std::u32string_view(lcs)));
  }
  return tmpl;
}

std::vector<std::string> align_member(std::string_view member,
                                      const Template& layout) {
  const std::u32string decoded = uni::decode_utf8(member);
  const std::u32string anchors = concatenated_anchors(layout);
  auto fillings = extract_fillings(std::u32string_view(decoded), layout,
                                   std::u32string_view(anchors));

  // reconstruction check: interleaving must reproduce the member exactly
  std::string rebuilt;
  for (const auto& el : layout.elements) {
    if (const auto* anchor = std::get_if<Template::Anchor>(&el)) {
      rebuilt += anchor->text;
    } else {
      rebuilt += fillings[std::get<Template::SlotRef>(el).index];
    }
  }
  if (rebuilt != member) {
    throw AlignmentError("reconstruction mismatch");
  }
  return fillings;
}

}  // namespace rexmine
