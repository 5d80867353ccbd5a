// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Each check pins its thresholds in code.
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "rexmine/abstraction.hpp"
#include "rexmine/commands.hpp"
#include "rexmine/dataset_io.hpp"
#include "rexmine/evaluation.hpp"
#include "rexmine/matcher.hpp"
#include "rexmine/outlier_filter.hpp"
#include "rexmine/pipeline.hpp"
#include "rexmine/slot_gen.hpp"
#include "rexmine/unicode.hpp"

using namespace rexmine;

namespace {

struct Criterion {
  int number;
  std::string description;
  bool passed;
  std::string detail;
};

std::vector<Example> as_examples(const std::vector<SyntheticRecord>& records) {
  std::vector<Example> examples;
  examples.reserve(records.size());
  for (const auto& r : records) examples.push_back(Example{.raw = r.text});
  return examples;
}

// --- criterion 1: every emitted regex matches all of its training members ---

Criterion roundtrip_soundness() {
  const std::vector<std::vector<std::string>> pools{
      {"phone"},
      {"[a-z]{3,8}_[0-9]{2,4}", "[A-Z]{2,4}-[0-9]{3,5}"},
      {"[一-鿿]{1,3}[0-9]{1,2}", R"([a-z]{2,5}@[a-z]{2,4}\.com)"},
      {"[A-Z][a-z]{2,6} [0-9]{1,2}:[0-9]{2}"},
      {"#[0-9a-f]{6}", R"([0-9]{1,3}\.[0-9]{1,3}\.[0-9]{1,3}\.[0-9]{1,3})"},
      {"[a-z]{1,4}[0-9]{0,3}"},
      {R"(\$[0-9]{1,4}\.[0-9]{2})", "[A-Z]{3}[0-9]{3}[a-z]{0,2}"},
      {"[.a-z]{3,8}", "你[0-9]{1,3}好"},
  };

  const auto start = std::chrono::steady_clock::now();
  std::size_t corpora = 0;
  std::size_t regexes = 0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    SyntheticSpec spec;
    spec.inlier_patterns = pools[seed % pools.size()];
    spec.inlier_count = 60 + (seed * 7) % 90;
    spec.outlier_fraction = 0.0;
    spec.seed = seed;

    const auto result = generate_artifacts(as_examples(generate_synthetic(spec)));
    ++corpora;
    for (const auto& artifact : result.artifacts) {
      ++regexes;
      const auto pattern = CompiledPattern::compile(artifact.regex);
      for (const auto& member : artifact.tmpl.members) {
        if (!pattern.full_match(std::string_view(member))) {
          return {1, "roundtrip soundness", false,
                  "regex '" + artifact.regex + "' misses member '" + member +
                      "' (seed " + std::to_string(seed) + ")"};
        }
      }
    }
  }
  const auto elapsed = std::chrono::duration_cast<std::chrono::seconds>(
                           std::chrono::steady_clock::now() - start)
                           .count();
  if (elapsed >= 60) {
    return {1, "roundtrip soundness", false,
            "took " + std::to_string(elapsed) + "s (budget 60s)"};
  }
  return {1, "roundtrip soundness", true,
          std::to_string(corpora) + " corpora, " + std::to_string(regexes) +
              " regexes, " + std::to_string(elapsed) + "s"};
}

// --- criterion 2: knee filter accuracy on noisy synthetic corpora ---

Criterion outlier_filter_accuracy() {
  const std::vector<std::string> inlier_patterns{
      R"(\(0[0-9]{2}\)[0-9]{8})",
      "[a-z]{3,8}_[0-9]{2,4}",
      "[A-Z]{2,4}-[0-9]{3,5}",
  };
  const std::vector<std::string> outlier_patterns{
      "##[0-9]{1,3}",      "[a-z]{1,4}!!",        "@[A-Z]{2}@",
      "[0-9]{2}~[0-9]{2}", "%%[a-z]{2}%%",        R"([A-Z]\.[A-Z]\.)",
      R"(\$[0-9]{1,2}\$)", "=[a-z]{3}=",          R"(\*[0-9]{3}\*)",
      "&&[A-Z]{1,3}",      R"(\?[a-z]\?)",        R"(\+[0-9]{2}\+[0-9]{2})",
  };

  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    SyntheticSpec spec;
    spec.inlier_patterns = inlier_patterns;
    spec.inlier_count = 1000;
    spec.outlier_patterns = outlier_patterns;
    spec.outlier_fraction = 0.05;
    spec.seed = 9000 + seed;

    const auto records = generate_synthetic(spec);
    const auto table = build_cluster_table(as_examples(records));
    const auto knee = filter_outliers(table);

    std::set<MetaParam> retained(knee.retained.begin(), knee.retained.end());
    std::size_t outlier_total = 0;
    std::size_t outlier_filtered = 0;
    for (const auto& r : records) {
      const auto mp = transform_and_compress(r.text);
      if (r.is_outlier) {
        ++outlier_total;
        if (!retained.contains(mp)) ++outlier_filtered;
      } else if (!retained.contains(mp)) {
        return {2, "outlier-filter accuracy", false,
                "inlier cluster '" + mp.str() + "' filtered (seed " +
                    std::to_string(spec.seed) + ")"};
      }
    }
    const double ratio = outlier_total == 0
                             ? 1.0
                             : static_cast<double>(outlier_filtered) /
                                   static_cast<double>(outlier_total);
    if (ratio < 0.9) {
      return {2, "outlier-filter accuracy", false,
              "only " + std::to_string(100.0 * ratio) +
                  "% of outliers filtered (seed " + std::to_string(spec.seed) +
                  ")"};
    }
  }
  return {2, "outlier-filter accuracy", true,
          "50 seeds, all inlier clusters kept, >=90% outliers filtered"};
}

// --- criterion 3: LCS length equals brute force ---

Criterion lcs_oracle_equivalence() {
  std::mt19937_64 rng(333);
  const std::u32string alphabet = U"abc";
  for (int pair = 0; pair < 10000; ++pair) {
    const auto a = oracles::random_string(rng, alphabet, 0, 8);
    const auto b = oracles::random_string(rng, alphabet, 0, 8);
    const auto mine =
        lcs_pair(std::u32string_view(a), std::u32string_view(b)).size();
    const auto expected = oracles::brute_lcs_len(a, b);
    if (mine != expected) {
      return {3, "LCS oracle equivalence", false,
              "length mismatch on '" + uni::encode_utf8(a) + "' / '" +
                  uni::encode_utf8(b) + "'"};
    }
  }
  return {3, "LCS oracle equivalence", true, "10000 sampled pairs, 0 mismatches"};
}

// --- criterion 4: knee detection equals the brute-force chord script ---

Criterion knee_oracle_agreement() {
  std::mt19937_64 rng(444);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t count = 3 + rng() % 38;
    std::vector<std::uint64_t> freqs;
    for (std::size_t i = 0; i < count; ++i) {
      const double exponent = 1.0 + static_cast<double>(rng() % 7000) / 1000.0;
      freqs.push_back(1 + static_cast<std::uint64_t>(std::pow(10.0, exponent)));
    }
    std::sort(freqs.rbegin(), freqs.rend());
    std::uint64_t total = 0;
    for (auto f : freqs) total += f;
    std::vector<double> fractions;
    std::vector<CdfPoint> cdf;
    std::uint64_t cum = 0;
    for (std::size_t k = 0; k < freqs.size(); ++k) {
      cum += freqs[k];
      fractions.push_back(static_cast<double>(cum) / static_cast<double>(total));
      cdf.push_back(CdfPoint{k + 1, fractions.back()});
    }
    const auto mine = detect_knee(cdf);
    const auto expected = oracles::knee_oracle(fractions, 0.01);
    if (mine != expected) {
      return {4, "knee-detection oracle", false,
              "knee " + std::to_string(mine) + " vs oracle " +
                  std::to_string(expected) + " on trial " +
                  std::to_string(trial)};
    }
  }
  for (const std::size_t count : {1u, 2u, 5u, 17u, 40u}) {
    std::vector<CdfPoint> cdf;
    for (std::size_t k = 1; k <= count; ++k) {
      cdf.push_back(CdfPoint{
          k, static_cast<double>(k) / static_cast<double>(count)});
    }
    if (detect_knee(cdf) != count) {
      return {4, "knee-detection oracle", false,
              "flat vector of " + std::to_string(count) +
                  " clusters did not keep everything"};
    }
  }
  return {4, "knee-detection oracle", true,
          "100 skewed vectors agree; flat vectors keep all"};
}

// --- criterion 5: the measure formulas, exactly ---

Criterion measure_formulas() {
  std::vector<ExtractionOutcome> outcomes;
  for (int i = 0; i < 7; ++i) {
    ExtractionOutcome o;
    o.extracted = "s";
    o.annotated_span = "s";
    o.label = Label::positive;
    outcomes.push_back(o);
  }
  {
    ExtractionOutcome o;
    o.extracted = "wrong";
    o.annotated_span = "s";
    o.label = Label::positive;
    outcomes.push_back(o);
  }
  for (int i = 0; i < 2; ++i) {
    ExtractionOutcome o;
    o.annotated_span = "s";
    o.label = Label::positive;
    outcomes.push_back(o);
  }
  const auto report = score(outcomes);
  if (std::abs(report.precision - 0.875) > 1e-9 ||
      std::abs(report.recall - 0.7) > 1e-9 ||
      std::abs(report.f_measure - 7.0 / 9.0) > 1e-9) {
    return {5, "measure formulas", false, "score() deviates on the fixed case"};
  }
  if (std::abs(noisy_precision(9, 2, 10).value - 0.7) > 1e-9 ||
      std::abs(noisy_precision(10, 0, 10).value - 1.0) > 1e-9) {
    return {5, "measure formulas", false, "noisy precision deviates"};
  }
  const auto clamped = noisy_precision(1, 3, 10);
  if (clamped.value != 0.0 || !clamped.clamped) {
    return {5, "measure formulas", false, "clamping deviates"};
  }
  return {5, "measure formulas", true, "exact to 1e-9"};
}

// --- criterion 6: extraction quality on the phone task ---

std::optional<std::filesystem::path> find_relie_dataset() {
  if (const char* env = std::getenv("RELIE_PHONE_JSONL")) {
    if (std::filesystem::exists(env)) return std::filesystem::path(env);
  }
  for (const char* candidate :
       {"data/relie_phone.jsonl", "../data/relie_phone.jsonl",
        "../../data/relie_phone.jsonl"}) {
    if (std::filesystem::exists(candidate)) return std::filesystem::path(candidate);
  }
  return std::nullopt;
}

Criterion phone_task_relie(const std::filesystem::path& path) {
  const auto docs = load_annotated(path);
  std::vector<Example> learning;
  std::vector<Example> testing;
  for (const auto& doc : docs) {
    if (doc.label == Label::positive && learning.size() < 100 &&
        doc.span && !doc.span->empty()) {
      Example ex;
      ex.raw = *doc.span;
      learning.push_back(std::move(ex));
    } else {
      testing.push_back(doc);
    }
  }
  const auto result = generate_artifacts(learning);
  std::vector<EvalArtifact> artifacts;
  for (const auto& a : result.artifacts) {
    EvalArtifact ea;
    ea.metaparam = a.source_metaparam;
    ea.regex = a.regex;
    ea.member_count = a.n_training_examples;
    ea.pattern = CompiledPattern::compile(a.regex);
    artifacts.push_back(std::move(ea));
  }
  const auto report = score(run_extraction(artifacts, testing));
  const bool ok = report.f_measure >= 0.75;
  return {6, "phone task (ReLIE)", ok,
          "F=" + std::to_string(report.f_measure) + " (threshold 0.75)"};
}

Criterion phone_task_synthetic() {
  SyntheticSpec learn_spec;
  learn_spec.inlier_patterns = {"phone"};
  learn_spec.inlier_count = 100;
  learn_spec.seed = 7001;
  const auto result =
      generate_artifacts(as_examples(generate_synthetic(learn_spec)));

  std::vector<EvalArtifact> artifacts;
  for (const auto& a : result.artifacts) {
    EvalArtifact ea;
    ea.metaparam = a.source_metaparam;
    ea.regex = a.regex;
    ea.member_count = a.n_training_examples;
    ea.pattern = CompiledPattern::compile(a.regex);
    artifacts.push_back(std::move(ea));
  }

  // held-out inliers as positive documents, word-only documents as negatives
  SyntheticSpec held_out;
  held_out.inlier_patterns = {"phone"};
  held_out.inlier_count = 200;
  held_out.seed = 7002;
  std::vector<Example> docs;
  for (const auto& r : generate_synthetic(held_out)) {
    Example doc;
    doc.context_left = "call ";
    doc.span = r.text;
    doc.context_right = " soon";
    doc.label = Label::positive;
    doc.raw = doc.document();
    docs.push_back(std::move(doc));
  }
  SyntheticSpec negatives;
  negatives.inlier_patterns = {"[a-z]{5,12}"};
  negatives.inlier_count = 100;
  negatives.seed = 7003;
  for (const auto& r : generate_synthetic(negatives)) {
    Example doc;
    doc.context_left = "note ";
    doc.span = r.text;
    doc.context_right = " end";
    doc.label = Label::negative;
    doc.raw = doc.document();
    docs.push_back(std::move(doc));
  }

  const auto report = score(run_extraction(artifacts, docs));
  const bool ok = report.f_measure >= 0.95;
  return {6, "phone task (synthetic substitute)", ok,
          "F=" + std::to_string(report.f_measure) + " (threshold 0.95)"};
}

Criterion phone_task() {
  if (const auto relie = find_relie_dataset()) {
    return phone_task_relie(*relie);
  }
  return phone_task_synthetic();
}

// --- criterion 7: byte-identical outputs across runs and thread counts ---

Criterion generate_determinism() {
  const auto dir = std::filesystem::temp_directory_path();
  const auto corpus_path = dir / "rexmine_acc_corpus.txt";
  {
    SyntheticSpec spec;
    spec.inlier_patterns = {"phone", "[a-z]{2,6}_[0-9]{1,4}", "你[0-9]{2}好",
                            "[A-Z]{2}-[0-9]{3}"};
    spec.inlier_count = 300;
    spec.outlier_patterns = {"[a-z]!!", "##[0-9]{2}"};
    spec.outlier_fraction = 0.04;
    spec.seed = 4242;
    std::ofstream out(corpus_path, std::ios::binary | std::ios::trunc);
    for (const auto& r : generate_synthetic(spec)) out << r.text << "\n";
  }

  const auto read_all = [](const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  };

  std::vector<std::pair<std::string, std::string>> outputs;
  for (const unsigned threads : {1u, 2u, 4u, 2u}) {
    const auto artifacts_path =
        dir / ("rexmine_acc_artifacts_" + std::to_string(outputs.size()));
    const auto diag_path =
        dir / ("rexmine_acc_diag_" + std::to_string(outputs.size()));
    GenerateCmd cmd;
    cmd.corpus_path = corpus_path;
    cmd.output_path = artifacts_path;
    cmd.diagnostics_path = diag_path;
    cmd.threads = threads;
    std::ostringstream out, err;
    if (run_generate(cmd, out, err) != kExitOk) {
      return {7, "generation determinism", false, "run failed: " + err.str()};
    }
    outputs.emplace_back(read_all(artifacts_path), read_all(diag_path));
    std::filesystem::remove(artifacts_path);
    std::filesystem::remove(diag_path);
  }
  std::filesystem::remove(corpus_path);

  for (std::size_t i = 1; i < outputs.size(); ++i) {
    if (outputs[i] != outputs[0]) {
      return {7, "generation determinism", false,
              "outputs differ between runs (thread counts 1/2/4)"};
    }
  }
  return {7, "generation determinism", true,
          "byte-identical artifacts and diagnostics across 4 runs"};
}

// --- criterion 8: abstraction loop terminates fast and valid ---

Criterion abstraction_termination() {
  std::mt19937_64 rng(888);
  const std::u32string alphabet =
      U"abcdefghABCDEFGH0123456789 \t_-.!?你好世界未来#$%&*+=~";
  for (int trial = 0; trial < 10000; ++trial) {
    const std::size_t count = 1 + rng() % 6;
    std::vector<std::string> fillings;
    bool any_non_empty = false;
    for (std::size_t i = 0; i < count; ++i) {
      const auto s = oracles::random_string(rng, alphabet, 0, 10);
      if (!s.empty()) any_non_empty = true;
      fillings.push_back(uni::encode_utf8(s));
    }
    if (!any_non_empty) {
      fillings.push_back(uni::encode_utf8(
          oracles::random_string(rng, alphabet, 1, 10)));
    }
    const auto state = run_slot_pipeline(fillings, AbstractionTree::standard());
    if (state.lifts > 3) {
      return {8, "abstraction termination", false,
              "took " + std::to_string(state.lifts) + " lifts on trial " +
                  std::to_string(trial)};
    }
    if (state.slot.atoms.size() >= 4 || state.slot.atoms.empty()) {
      return {8, "abstraction termination", false,
              "final atom count " + std::to_string(state.slot.atoms.size())};
    }
  }
  return {8, "abstraction termination", true,
          "10000 filling sets, <=3 lifts, final atom count < 4"};
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  if (argc > 1) only = std::atoi(argv[1]);

  const std::vector<Criterion (*)()> criteria{
      roundtrip_soundness, outlier_filter_accuracy, lcs_oracle_equivalence,
      knee_oracle_agreement, measure_formulas, phone_task,
      generate_determinism, abstraction_termination};

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int number = static_cast<int>(i) + 1;
    if (only != 0 && number != only) continue;
    Criterion result;
    try {
      result = criteria[i]();
    } catch (const std::exception& e) {
      result.number = number;
      result.description = "criterion threw";
      result.passed = false;
      result.detail = std::string("exception: ") + e.what();
    }
    std::cout << (result.passed ? "PASS" : "FAIL") << " criterion "
              << result.number << " (" << result.description
              << "): " << result.detail << "\n";
    if (!result.passed) ++failures;
  }
  return failures;
}
