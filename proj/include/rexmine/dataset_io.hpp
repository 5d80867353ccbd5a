#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "rexmine/core_types.hpp"

namespace rexmine {

/// Plain-text corpus: one example per line, UTF-8, no blank lines.
std::vector<Example> load_corpus(const std::filesystem::path& path);
// errors: IoError, EncodingError, EmptyLineError(line)

void save_corpus(const std::filesystem::path& path,
                 std::span<const Example> examples);

/// Annotated dataset: one JSON object per line with required fields
/// context_left, span, context_right, label ("pos"|"neg") and an optional
/// boolean `outlier` ground-truth tag.
std::vector<Example> load_annotated(const std::filesystem::path& path);
// errors: IoError, SchemaError(line, field)

void save_annotated(const std::filesystem::path& path,
                    std::span<const Example> docs);

/// Declarative description of a synthetic noisy corpus. Patterns are written
/// in the emitted regex dialect (or one of the named presets: "phone",
/// "word", "code", "url"); every string is tagged with its ground truth.
struct SyntheticSpec {
  std::vector<std::string> inlier_patterns;
  std::uint64_t inlier_count = 0;
  std::vector<std::string> outlier_patterns;
  double outlier_fraction = 0.0;  // in [0, 0.5)
  std::uint64_t seed = 0;
};

SyntheticSpec load_synthetic_spec(const std::filesystem::path& path);
// errors: IoError, InvalidSpecError

struct SyntheticRecord {
  std::string text;
  bool is_outlier = false;
};

/// Deterministic function of the spec: same spec, same corpus.
std::vector<SyntheticRecord> generate_synthetic(const SyntheticSpec& spec);
// errors: InvalidSpecError

/// Resolves a preset name to its dialect pattern; returns the input
/// unchanged when it is not a preset.
std::string resolve_pattern_preset(const std::string& pattern);

}  // namespace rexmine
