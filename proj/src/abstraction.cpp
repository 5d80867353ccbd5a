#include "rexmine/abstraction.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <stdexcept>
#include <thread>
#include <utility>

#include "rexmine/errors.hpp"
#include "rexmine/unicode.hpp"

namespace rexmine {

MetaParam transform_and_compress(std::string_view raw) {
  if (raw.empty()) {
    throw InvalidExampleError("empty string has no abstract pattern");
  }
  const std::u32string scalars = uni::decode_utf8(raw);
  std::u32string symbols;
  symbols.reserve(scalars.size());
  for (char32_t c : scalars) {
    char32_t sym;
    if (is_cjk(c)) {
      sym = U'z';
    } else if (is_ascii_lower(c)) {
      sym = U'x';
    } else if (is_ascii_upper(c)) {
      sym = U'X';
    } else if (is_ascii_digit(c)) {
      sym = U'd';
    } else {
      sym = c;  // reserved literal
    }
    if (symbols.empty() || symbols.back() != sym) symbols.push_back(sym);
  }
  return MetaParam::from_pattern(uni::encode_utf8(symbols));
}

std::u32string lcs_pair(std::u32string_view a, std::u32string_view b) {
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  if (n == 0 || m == 0) return {};

  // suffix[i][j] = LCS length of a[i..) and b[j..)
  std::vector<std::uint32_t> suffix((n + 1) * (m + 1), 0);
  const auto at = [&](std::size_t i, std::size_t j) -> std::uint32_t& {
    return suffix[i * (m + 1) + j];
  };
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = m; j-- > 0;) {
      if (a[i] == b[j]) {
        at(i, j) = at(i + 1, j + 1) + 1;
      } else {
        at(i, j) = std::max(at(i + 1, j), at(i, j + 1));
      }
    }
  }

  // Forward greedy walk: take the smallest usable position in `a`, then the
  // smallest matching position in `b`, which yields the leftmost alignment.
  std::u32string out;
  out.reserve(at(0, 0));
  std::size_t i = 0;
  std::size_t j = 0;
  while (at(i, j) > 0) {
    const std::uint32_t target = at(i, j);
    bool advanced = false;
    for (std::size_t ii = i; ii < n && at(ii, j) == target; ++ii) {
      for (std::size_t jj = j; jj < m && at(ii, jj) == target; ++jj) {
        if (a[ii] == b[jj] && at(ii + 1, jj + 1) + 1 == target) {
          out.push_back(a[ii]);
          i = ii + 1;
          j = jj + 1;
          advanced = true;
          break;
        }
      }
      if (advanced) break;
    }
    if (!advanced) throw InternalError("LCS walk failed to advance");
  }
  return out;
}

std::string lcs_pair(std::string_view a, std::string_view b) {
  return uni::encode_utf8(lcs_pair(std::u32string_view(uni::decode_utf8(a)),
                                   std::u32string_view(uni::decode_utf8(b))));
}

std::string common_subsequence(std::span<const std::string> strings) {
  if (strings.empty()) {
    throw std::invalid_argument("common_subsequence of an empty list");
  }
  std::u32string acc = uni::decode_utf8(strings.front());
  for (std::size_t k = 1; k < strings.size() && !acc.empty(); ++k) {
    acc = lcs_pair(std::u32string_view(acc),
                   std::u32string_view(uni::decode_utf8(strings[k])));
  }
  return uni::encode_utf8(acc);
}

std::optional<std::vector<std::size_t>> subsequence_positions(
    std::u32string_view hay, std::u32string_view needle) {
  std::vector<std::size_t> positions;
  positions.reserve(needle.size());
  std::size_t h = 0;
  for (char32_t c : needle) {
    while (h < hay.size() && hay[h] != c) ++h;
    if (h == hay.size()) return std::nullopt;
    positions.push_back(h++);
  }
  return positions;
}

namespace {

using LocalTable = std::map<MetaParam, std::vector<std::string>>;

LocalTable map_chunk(std::span<const Example> chunk) {
  LocalTable local;
  for (const auto& ex : chunk) {
    local[transform_and_compress(ex.raw)].push_back(ex.raw);
  }
  return local;
}

}  // namespace

ClusterTable build_cluster_table(std::span<const Example> examples,
                                 unsigned threads) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());

  LocalTable merged;
  if (threads <= 1 || examples.size() < 2 * threads) {
    merged = map_chunk(examples);
  } else {
    const std::size_t chunk_size =
        (examples.size() + threads - 1) / threads;
    std::vector<std::future<LocalTable>> futures;
    for (std::size_t begin = 0; begin < examples.size(); begin += chunk_size) {
      const std::size_t len = std::min(chunk_size, examples.size() - begin);
      futures.push_back(std::async(std::launch::async, map_chunk,
                                   examples.subspan(begin, len)));
    }
    for (auto& f : futures) {
      LocalTable local = f.get();
      for (auto& [mp, members] : local) {
        auto& dst = merged[mp];
        dst.insert(dst.end(), std::make_move_iterator(members.begin()),
                   std::make_move_iterator(members.end()));
      }
    }
  }

  ClusterTable table;
  table.total = examples.size();
  for (auto& [mp, members] : merged) {
    std::sort(members.begin(), members.end());
    ClusterEntry entry;
    entry.frequency = members.size();
    entry.members = std::move(members);
    table.entries.emplace(mp, std::move(entry));
  }
  return table;
}

}  // namespace rexmine
