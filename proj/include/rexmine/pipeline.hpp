#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rexmine/core_types.hpp"
#include "rexmine/outlier_filter.hpp"

namespace rexmine {

struct GenerateOptions {
  std::optional<std::size_t> knee_override;
  double flatness_eps = kDefaultFlatnessEps;
  MatchMode mode = MatchMode::greedy;
  bool bounded_star = false;
  unsigned threads = 0;  // 0 = hardware concurrency
};

struct GenerateResult {
  ClusterTable table;
  KneeResult knee;
  std::vector<RegexArtifact> artifacts;  // descending cluster frequency
  std::string corpus_subsequence;        // fold over distinct corpus strings
};

/// Full learning pipeline: cluster, filter outliers, and emit one regex per
/// retained cluster. Deterministic for fixed inputs and options, regardless
/// of thread count.
GenerateResult generate_artifacts(std::span<const Example> corpus,
                                  const GenerateOptions& options = {});

}  // namespace rexmine
