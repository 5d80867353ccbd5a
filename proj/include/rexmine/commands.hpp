#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "rexmine/evaluation.hpp"
#include "rexmine/pipeline.hpp"

namespace rexmine {

// Exit codes: 0 success, 1 usage, 2 data error, 3 internal invariant
// violation.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitInternal = 3;

struct GenerateCmd {
  std::filesystem::path corpus_path;
  std::filesystem::path output_path = "artifacts.jsonl";
  std::optional<std::filesystem::path> diagnostics_path;
  std::optional<std::size_t> knee_override;
  double flatness_eps = kDefaultFlatnessEps;
  bool lazy = false;
  bool bounded_star = false;
  unsigned threads = 0;
};

int run_generate(const GenerateCmd& cmd, std::ostream& out, std::ostream& err);

struct EvaluateCmd {
  std::filesystem::path artifacts_path;
  std::filesystem::path dataset_path;
  std::optional<std::filesystem::path> report_path;
};

int run_evaluate(const EvaluateCmd& cmd, std::ostream& out, std::ostream& err);

int run_abstract(const std::string& raw, std::ostream& out, std::ostream& err);

/// Loads and compiles an artifact file written by run_generate.
std::vector<EvalArtifact> load_artifacts(const std::filesystem::path& path);
// errors: IoError, SchemaError, CompileError

}  // namespace rexmine
