#include "rexmine/commands.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "rexmine/abstraction.hpp"
#include "rexmine/dataset_io.hpp"
#include "rexmine/errors.hpp"

namespace rexmine {

namespace {

void write_text(const std::filesystem::path& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << data;
  if (!out) throw IoError("write failure on " + path.string());
}

std::string artifacts_to_jsonl(const GenerateResult& result) {
  std::string data;
  for (const auto& artifact : result.artifacts) {
    nlohmann::ordered_json record;
    record["metaparam"] = artifact.source_metaparam.str();
    record["regex"] = artifact.regex;
    record["member_count"] = artifact.n_training_examples;
    data += record.dump();
    data += '\n';
  }
  return data;
}

std::string diagnostics_to_jsonl(const GenerateResult& result,
                                 double flatness_eps) {
  nlohmann::ordered_json summary;
  summary["type"] = "summary";
  summary["total_examples"] = result.table.total;
  summary["cluster_count"] = result.table.entries.size();
  summary["knee_rank"] = result.knee.knee_rank;
  summary["flatness_eps"] = flatness_eps;
  summary["corpus_common_subsequence"] = result.corpus_subsequence;

  std::string data = summary.dump();
  data += '\n';

  const auto ranked = ranked_clusters(result.table);
  for (std::size_t k = 0; k < ranked.size(); ++k) {
    nlohmann::ordered_json record;
    record["type"] = "cluster";
    record["metaparam"] = ranked[k].first.str();
    record["frequency"] = ranked[k].second;
    record["rank"] = k + 1;
    record["cumulative_fraction"] = result.knee.cdf[k].cumulative_fraction;
    record["retained"] = k < result.knee.knee_rank;
    data += record.dump();
    data += '\n';
  }
  return data;
}

int data_error(std::ostream& err, const std::string& what) {
  err << "error: " << what << "\n";
  return kExitData;
}

int internal_error(std::ostream& err, const std::string& what) {
  err << "internal error: " << what << "\n";
  return kExitInternal;
}

}  // namespace

int run_generate(const GenerateCmd& cmd, std::ostream& out, std::ostream& err) {
  std::vector<Example> corpus;
  try {
    corpus = load_corpus(cmd.corpus_path);
  } catch (const Error& e) {
    return data_error(err, e.what());
  }
  if (corpus.empty()) return data_error(err, "empty corpus");

  GenerateOptions options;
  options.knee_override = cmd.knee_override;
  options.flatness_eps = cmd.flatness_eps;
  options.mode = cmd.lazy ? MatchMode::lazy : MatchMode::greedy;
  options.bounded_star = cmd.bounded_star;
  options.threads = cmd.threads;

  GenerateResult result;
  try {
    result = generate_artifacts(corpus, options);
  } catch (const OverrideOutOfRangeError& e) {
    return data_error(err, e.what());
  } catch (const Error& e) {
    return internal_error(err, e.what());
  }

  try {
    write_text(cmd.output_path, artifacts_to_jsonl(result));
    if (cmd.diagnostics_path) {
      write_text(*cmd.diagnostics_path,
                 diagnostics_to_jsonl(result, cmd.flatness_eps));
    }
  } catch (const Error& e) {
    return data_error(err, e.what());
  }

  out << "examples:  " << result.table.total << "\n";
  out << "clusters:  " << result.table.entries.size() << "\n";
  out << "knee rank: " << result.knee.knee_rank << "\n";
  out << "retained:  " << result.knee.retained.size() << "\n";
  out << "filtered:  " << result.knee.filtered.size() << "\n";
  for (const auto& artifact : result.artifacts) {
    out << artifact.source_metaparam.str() << "\t"
        << artifact.n_training_examples << "\t" << artifact.regex << "\n";
  }
  constexpr std::size_t kMaxListed = 20;
  for (std::size_t i = 0; i < result.knee.filtered.size(); ++i) {
    if (i == kMaxListed) {
      out << "filtered: ... " << result.knee.filtered.size() - kMaxListed
          << " more\n";
      break;
    }
    const auto& mp = result.knee.filtered[i];
    out << "filtered: " << mp.str() << " ("
        << result.table.entries.at(mp).frequency << ")\n";
  }
  out << "artifacts written to " << cmd.output_path.string() << "\n";
  if (cmd.diagnostics_path) {
    out << "diagnostics written to " << cmd.diagnostics_path->string() << "\n";
  }
  return kExitOk;
}

std::vector<EvalArtifact> load_artifacts(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<EvalArtifact> artifacts;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    nlohmann::json record = nlohmann::json::parse(line, nullptr, false);
    if (record.is_discarded() || !record.is_object() ||
        !record.contains("regex") || !record["regex"].is_string()) {
      throw SchemaError(line_no, "regex");
    }
    EvalArtifact artifact;
    artifact.regex = record["regex"].get<std::string>();
    if (record.contains("metaparam") && record["metaparam"].is_string()) {
      artifact.metaparam =
          MetaParam::from_pattern(record["metaparam"].get<std::string>());
    }
    if (record.contains("member_count") &&
        record["member_count"].is_number_unsigned()) {
      artifact.member_count = record["member_count"].get<std::uint64_t>();
    }
    artifact.pattern = CompiledPattern::compile(artifact.regex);
    artifacts.push_back(std::move(artifact));
  }
  return artifacts;
}

int run_evaluate(const EvaluateCmd& cmd, std::ostream& out, std::ostream& err) {
  std::vector<EvalArtifact> artifacts;
  std::vector<Example> docs;
  try {
    artifacts = load_artifacts(cmd.artifacts_path);
    docs = load_annotated(cmd.dataset_path);
  } catch (const Error& e) {
    return data_error(err, e.what());
  }

  EvalReport report;
  try {
    const auto outcomes = run_extraction(artifacts, docs);
    report = score_with_noise(outcomes);
  } catch (const Error& e) {
    return internal_error(err, e.what());
  }

  out << "documents:   " << docs.size() << "\n";
  out << "extractions: " << report.extractions << "\n";
  out << "correct:     " << report.correct << "\n";
  out << "positives:   " << report.positives << "\n";
  out << "precision:   " << report.precision << "\n";
  out << "recall:      " << report.recall << "\n";
  out << "f_measure:   " << report.f_measure << "\n";
  if (report.noisy_precision) {
    out << "noisy_precision: " << *report.noisy_precision << "\n";
    if (report.noisy_clamped) {
      err << "warning: noisy precision clamped into [0, 1]\n";
    }
  }

  if (cmd.report_path) {
    nlohmann::ordered_json record;
    record["documents"] = docs.size();
    record["extractions"] = report.extractions;
    record["correct"] = report.correct;
    record["positives"] = report.positives;
    record["precision"] = report.precision;
    record["recall"] = report.recall;
    record["f_measure"] = report.f_measure;
    if (report.noisy_precision) {
      record["noisy_precision"] = *report.noisy_precision;
      record["noisy_clamped"] = report.noisy_clamped;
    }
    try {
      write_text(*cmd.report_path, record.dump() + "\n");
    } catch (const Error& e) {
      return data_error(err, e.what());
    }
  }
  return kExitOk;
}

int run_abstract(const std::string& raw, std::ostream& out, std::ostream& err) {
  if (raw.empty()) {
    err << "usage error: abstract requires a non-empty string\n";
    return kExitUsage;
  }
  try {
    out << transform_and_compress(raw).str() << "\n";
  } catch (const Error& e) {
    return data_error(err, e.what());
  }
  return kExitOk;
}

}  // namespace rexmine
