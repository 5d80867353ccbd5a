#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "rexmine/core_types.hpp"

namespace rexmine {

inline constexpr double kDefaultFlatnessEps = 0.01;

struct KneeResult {
  std::size_t knee_rank = 0;
  std::vector<MetaParam> retained;  // ranks 1..knee_rank
  std::vector<MetaParam> filtered;  // ranks knee_rank+1..K
  std::vector<CdfPoint> cdf;
};

/// Clusters ordered by descending frequency, ties by MetaParam.
std::vector<std::pair<MetaParam, std::uint64_t>> ranked_clusters(
    const ClusterTable& table);

std::vector<CdfPoint> build_cdf(const ClusterTable& table);  // EmptyTableError

/// Knee of the normalized CDF: the rank maximizing the perpendicular
/// distance to the chord joining the first and last CDF points, with ranks
/// normalized to k/K. Ties go to the smaller rank. When the largest distance
/// is below `flatness_eps` the distribution is treated as flat and every
/// cluster is kept (returns K).
std::size_t detect_knee(std::span<const CdfPoint> cdf,
                        double flatness_eps = kDefaultFlatnessEps);

KneeResult filter_outliers(
    const ClusterTable& table,
    std::optional<std::size_t> override_rank = std::nullopt,
    double flatness_eps = kDefaultFlatnessEps);

}  // namespace rexmine
