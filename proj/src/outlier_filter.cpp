#include "rexmine/outlier_filter.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rexmine/errors.hpp"

namespace rexmine {

std::vector<std::pair<MetaParam, std::uint64_t>> ranked_clusters(
    const ClusterTable& table) {
  std::vector<std::pair<MetaParam, std::uint64_t>> ranked;
  ranked.reserve(table.entries.size());
  for (const auto& [mp, entry] : table.entries) {
    ranked.emplace_back(mp, entry.frequency);
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) {
                     if (a.second != b.second) return a.second > b.second;
                     return a.first < b.first;
                   });
  return ranked;
}

std::vector<CdfPoint> build_cdf(const ClusterTable& table) {
  if (table.empty()) throw EmptyTableError();
  const auto ranked = ranked_clusters(table);
  std::vector<CdfPoint> cdf;
  cdf.reserve(ranked.size());
  std::uint64_t cumulative = 0;
  for (std::size_t k = 0; k < ranked.size(); ++k) {
    cumulative += ranked[k].second;
    cdf.push_back(CdfPoint{k + 1, static_cast<double>(cumulative) /
                                      static_cast<double>(table.total)});
  }
  return cdf;
}

std::size_t detect_knee(std::span<const CdfPoint> cdf, double flatness_eps) {
  if (cdf.empty()) throw EmptyCdfError();
  const std::size_t count = cdf.size();
  const double inv_k = 1.0 / static_cast<double>(count);

  const double x1 = 1.0 * inv_k;
  const double y1 = cdf.front().cumulative_fraction;
  const double x2 = 1.0;
  const double y2 = cdf.back().cumulative_fraction;
  const double dx = x2 - x1;
  const double dy = y2 - y1;
  const double norm = std::hypot(dx, dy);
  if (norm == 0.0) return count;  // single point

  std::size_t best_rank = 1;
  double best_dist = -1.0;
  for (std::size_t k = 0; k < count; ++k) {
    const double x = static_cast<double>(k + 1) * inv_k;
    const double y = cdf[k].cumulative_fraction;
    const double dist = std::abs((x - x1) * dy - (y - y1) * dx) / norm;
    if (dist > best_dist) {
      best_dist = dist;
      best_rank = k + 1;
    }
  }
  if (best_dist < flatness_eps) return count;  // flat: keep everything
  return best_rank;
}

KneeResult filter_outliers(const ClusterTable& table,
                           std::optional<std::size_t> override_rank,
                           double flatness_eps) {
  if (table.empty()) throw EmptyTableError();
  KneeResult result;
  result.cdf = build_cdf(table);
  const std::size_t count = result.cdf.size();

  if (override_rank) {
    if (*override_rank < 1 || *override_rank > count) {
      throw OverrideOutOfRangeError(
          "knee override " + std::to_string(*override_rank) +
          " outside [1, " + std::to_string(count) + "]");
    }
    result.knee_rank = *override_rank;
  } else {
    result.knee_rank = detect_knee(result.cdf, flatness_eps);
  }

  const auto ranked = ranked_clusters(table);
  for (std::size_t k = 0; k < ranked.size(); ++k) {
    if (k < result.knee_rank) {
      result.retained.push_back(ranked[k].first);
    } else {
      result.filtered.push_back(ranked[k].first);
    }
  }
  return result;
}

}  // namespace rexmine
