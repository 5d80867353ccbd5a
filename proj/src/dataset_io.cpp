#include "rexmine/dataset_io.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "rexmine/errors.hpp"
#include "rexmine/matcher.hpp"
#include "rexmine/unicode.hpp"

namespace rexmine {

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read failure on " + path.string());
  return std::move(buf).str();
}

void write_file(const std::filesystem::path& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << data;
  if (!out) throw IoError("write failure on " + path.string());
}

// Splits on '\n'; a trailing newline terminates the last line instead of
// opening an empty one. A single trailing '\r' per line is dropped.
std::vector<std::string> split_lines(const std::string& data) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= data.size()) {
    const std::size_t nl = data.find('\n', start);
    if (nl == std::string::npos) {
      if (start < data.size()) lines.push_back(data.substr(start));
      break;
    }
    std::string line = data.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
    start = nl + 1;
  }
  return lines;
}

}  // namespace

std::vector<Example> load_corpus(const std::filesystem::path& path) {
  const std::string data = read_file(path);
  std::vector<Example> examples;
  std::size_t line_no = 0;
  for (auto& line : split_lines(data)) {
    ++line_no;
    if (line.empty()) throw EmptyLineError(line_no);
    if (!uni::try_decode_utf8(line)) {
      throw EncodingError("invalid UTF-8 at line " + std::to_string(line_no) +
                          " of " + path.string());
    }
    Example ex;
    ex.raw = std::move(line);
    examples.push_back(std::move(ex));
  }
  return examples;
}

void save_corpus(const std::filesystem::path& path,
                 std::span<const Example> examples) {
  std::string data;
  for (const auto& ex : examples) {
    data += ex.raw;
    data += '\n';
  }
  write_file(path, data);
}

std::vector<Example> load_annotated(const std::filesystem::path& path) {
  const std::string data = read_file(path);
  std::vector<Example> docs;
  std::size_t line_no = 0;
  for (const auto& line : split_lines(data)) {
    ++line_no;
    if (line.empty()) continue;  // JSONL convention: skip blank lines

    nlohmann::json record = nlohmann::json::parse(line, nullptr, false);
    if (record.is_discarded() || !record.is_object()) {
      throw SchemaError(line_no, "record");
    }

    Example doc;
    const auto require_string = [&](const char* field) -> std::string {
      if (!record.contains(field) || !record[field].is_string()) {
        throw SchemaError(line_no, field);
      }
      return record[field].get<std::string>();
    };
    doc.context_left = require_string("context_left");
    doc.span = require_string("span");
    doc.context_right = require_string("context_right");

    const std::string label = require_string("label");
    if (label == "pos") {
      doc.label = Label::positive;
    } else if (label == "neg") {
      doc.label = Label::negative;
    } else {
      throw SchemaError(line_no, "label");
    }

    if (record.contains("outlier")) {
      if (!record["outlier"].is_boolean()) throw SchemaError(line_no, "outlier");
      doc.outlier = record["outlier"].get<bool>();
    }

    doc.raw = doc.document();
    if (!uni::try_decode_utf8(doc.raw)) throw SchemaError(line_no, "encoding");
    docs.push_back(std::move(doc));
  }
  return docs;
}

void save_annotated(const std::filesystem::path& path,
                    std::span<const Example> docs) {
  std::string data;
  for (const auto& doc : docs) {
    nlohmann::ordered_json record;
    record["context_left"] = doc.context_left.value_or("");
    record["span"] = doc.span.value_or("");
    record["context_right"] = doc.context_right.value_or("");
    record["label"] = doc.label == Label::negative ? "neg" : "pos";
    if (doc.outlier) record["outlier"] = *doc.outlier;
    data += record.dump();
    data += '\n';
  }
  write_file(path, data);
}

std::string resolve_pattern_preset(const std::string& pattern) {
  if (pattern == "phone") return R"(\(0[0-9]{2}\)[0-9]{8})";
  if (pattern == "word") return "[a-z]{2,8}";
  if (pattern == "code") return "[A-Z]{2,3}-[0-9]{3,4}";
  if (pattern == "url") return R"([a-z]{3,8}\.[a-z]{2,3}/[a-z0-9]{1,6})";
  return pattern;
}

SyntheticSpec load_synthetic_spec(const std::filesystem::path& path) {
  const std::string data = read_file(path);
  nlohmann::json doc = nlohmann::json::parse(data, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw InvalidSpecError("synthetic spec is not a JSON object");
  }
  SyntheticSpec spec;
  try {
    spec.inlier_patterns = doc.at("inlier_patterns").get<std::vector<std::string>>();
    spec.inlier_count = doc.at("inlier_count").get<std::uint64_t>();
    spec.outlier_patterns = doc.at("outlier_patterns").get<std::vector<std::string>>();
    spec.outlier_fraction = doc.at("outlier_fraction").get<double>();
    spec.seed = doc.at("seed").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidSpecError(std::string("malformed synthetic spec: ") + e.what());
  }
  return spec;
}

namespace {

struct GeneratorPattern {
  CompiledPattern compiled;
};

GeneratorPattern prepare_pattern(const std::string& raw) {
  const std::string resolved = resolve_pattern_preset(raw);
  GeneratorPattern gp{CompiledPattern::compile(resolved)};
  for (const auto& atom : gp.compiled.atoms()) {
    if (atom.cls.negated) {
      throw InvalidSpecError("pattern '" + raw +
                             "' uses a negated class and cannot be sampled");
    }
  }
  return gp;
}

// Star repetitions are capped at min+4 so sampling stays bounded.
std::string sample_string(const GeneratorPattern& gp, std::mt19937_64& rng) {
  std::string out;
  for (const auto& atom : gp.compiled.atoms()) {
    const std::uint64_t lo = atom.min;
    const std::uint64_t hi = atom.max == kUnbounded
                                 ? static_cast<std::uint64_t>(atom.min) + 4
                                 : atom.max;
    const std::uint64_t count = lo + (hi > lo ? rng() % (hi - lo + 1) : 0);
    const std::uint64_t card = atom.cls.cardinality();
    for (std::uint64_t i = 0; i < count; ++i) {
      uni::append_utf8(out, atom.cls.at(rng() % card));
    }
  }
  return out;
}

}  // namespace

std::vector<SyntheticRecord> generate_synthetic(const SyntheticSpec& spec) {
  if (spec.outlier_fraction < 0.0 || spec.outlier_fraction >= 0.5) {
    throw InvalidSpecError("outlier_fraction must lie in [0, 0.5)");
  }
  if (spec.inlier_patterns.empty()) {
    throw InvalidSpecError("at least one inlier pattern is required");
  }
  const auto outlier_count = static_cast<std::uint64_t>(std::llround(
      static_cast<double>(spec.inlier_count) * spec.outlier_fraction));
  if (outlier_count > 0 && spec.outlier_patterns.empty()) {
    throw InvalidSpecError("outlier_fraction > 0 requires outlier patterns");
  }

  std::vector<GeneratorPattern> inliers;
  for (const auto& p : spec.inlier_patterns) inliers.push_back(prepare_pattern(p));
  std::vector<GeneratorPattern> outliers;
  for (const auto& p : spec.outlier_patterns) outliers.push_back(prepare_pattern(p));

  std::mt19937_64 rng(spec.seed);
  std::vector<SyntheticRecord> corpus;
  corpus.reserve(spec.inlier_count + outlier_count);
  for (std::uint64_t i = 0; i < spec.inlier_count; ++i) {
    const auto& gp = inliers[rng() % inliers.size()];
    std::string text = sample_string(gp, rng);
    if (text.empty()) text = sample_string(gp, rng);  // retry once on all-zero widths
    if (text.empty()) throw InvalidSpecError("pattern generated empty strings");
    corpus.push_back(SyntheticRecord{std::move(text), false});
  }
  for (std::uint64_t i = 0; i < outlier_count; ++i) {
    const auto& gp = outliers[rng() % outliers.size()];
    std::string text = sample_string(gp, rng);
    if (text.empty()) text = sample_string(gp, rng);
    if (text.empty()) throw InvalidSpecError("pattern generated empty strings");
    corpus.push_back(SyntheticRecord{std::move(text), true});
  }
  return corpus;
}

}  // namespace rexmine
