#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rexmine/core_types.hpp"
#include "rexmine/matcher.hpp"

namespace rexmine {

/// A regex ready to run against documents.
struct EvalArtifact {
  MetaParam metaparam;
  std::string regex;
  std::uint64_t member_count = 0;
  CompiledPattern pattern;
};

struct ExtractionOutcome {
  std::size_t doc_index = 0;
  std::optional<std::string> extracted;  // non-empty when present
  std::optional<std::string> annotated_span;
  std::optional<Label> label;
  std::optional<bool> outlier;
};

/// Searches every document with the artifacts in the given order; the first
/// artifact producing a non-empty match supplies the extraction (leftmost in
/// the document, longest among matches at that start).
std::vector<ExtractionOutcome> run_extraction(
    std::span<const EvalArtifact> artifacts, std::span<const Example> docs);

/// Standard measures. A correct extraction is an extraction that equals,
/// as a string, the span of a positively labeled document.
EvalReport score(std::span<const ExtractionOutcome> outcomes);

struct NoisyPrecision {
  double value = 0.0;
  double raw = 0.0;
  bool clamped = false;
};

/// (correct - outlier_extractions) / normal_examples, clamped to [0, 1].
NoisyPrecision noisy_precision(std::uint64_t correct,
                               std::uint64_t outlier_extractions,
                               std::uint64_t normal_examples);
// errors: DivisionByZeroError when normal_examples == 0

/// score() plus the noisy variant whenever any outcome carries an outlier
/// tag (and at least one document is normal).
EvalReport score_with_noise(std::span<const ExtractionOutcome> outcomes);

}  // namespace rexmine
