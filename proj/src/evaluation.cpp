#include "rexmine/evaluation.hpp"

#include <algorithm>

#include "rexmine/errors.hpp"
#include "rexmine/unicode.hpp"

namespace rexmine {

std::vector<ExtractionOutcome> run_extraction(
    std::span<const EvalArtifact> artifacts, std::span<const Example> docs) {
  std::vector<ExtractionOutcome> outcomes;
  outcomes.reserve(docs.size());
  for (std::size_t d = 0; d < docs.size(); ++d) {
    const Example& doc = docs[d];
    ExtractionOutcome outcome;
    outcome.doc_index = d;
    outcome.annotated_span = doc.span;
    outcome.label = doc.label;
    outcome.outlier = doc.outlier;

    const std::u32string text = uni::decode_utf8(doc.document());
    for (const auto& artifact : artifacts) {
      const auto match =
          artifact.pattern.search(std::u32string_view(text), MatchMode::greedy);
      if (match) {
        outcome.extracted = uni::encode_utf8(
            std::u32string_view(text).substr(match->pos, match->len));
        break;
      }
    }
    outcomes.push_back(std::move(outcome));
  }
  return outcomes;
}

namespace {

struct Counts {
  std::uint64_t extractions = 0;
  std::uint64_t correct = 0;
  std::uint64_t positives = 0;
  std::uint64_t outlier_extractions = 0;
  std::uint64_t normal_examples = 0;
  bool any_outlier_tag = false;
};

Counts tally(std::span<const ExtractionOutcome> outcomes) {
  Counts c;
  for (const auto& o : outcomes) {
    const bool is_positive = o.label == Label::positive;
    if (is_positive) ++c.positives;
    if (o.extracted) {
      ++c.extractions;
      if (is_positive && o.annotated_span && !o.annotated_span->empty() &&
          *o.extracted == *o.annotated_span) {
        ++c.correct;
      }
    }
    if (o.outlier.has_value()) c.any_outlier_tag = true;
    if (o.outlier.value_or(false)) {
      if (o.extracted) ++c.outlier_extractions;
    } else {
      ++c.normal_examples;
    }
  }
  return c;
}

EvalReport report_from(const Counts& c) {
  EvalReport report;
  report.extractions = c.extractions;
  report.correct = c.correct;
  report.positives = c.positives;
  report.precision = c.extractions == 0
                         ? 0.0
                         : static_cast<double>(c.correct) /
                               static_cast<double>(c.extractions);
  report.recall = c.positives == 0 ? 0.0
                                   : static_cast<double>(c.correct) /
                                         static_cast<double>(c.positives);
  const double pr = report.precision + report.recall;
  report.f_measure = pr > 0.0 ? 2.0 * report.precision * report.recall / pr : 0.0;
  return report;
}

}  // namespace

EvalReport score(std::span<const ExtractionOutcome> outcomes) {
  return report_from(tally(outcomes));
}

NoisyPrecision noisy_precision(std::uint64_t correct,
                               std::uint64_t outlier_extractions,
                               std::uint64_t normal_examples) {
  if (normal_examples == 0) {
    throw DivisionByZeroError("noisy precision with zero normal examples");
  }
  NoisyPrecision np;
  np.raw = (static_cast<double>(correct) -
            static_cast<double>(outlier_extractions)) /
           static_cast<double>(normal_examples);
  np.value = std::clamp(np.raw, 0.0, 1.0);
  np.clamped = np.value != np.raw;
  return np;
}

EvalReport score_with_noise(std::span<const ExtractionOutcome> outcomes) {
  const Counts c = tally(outcomes);
  EvalReport report = report_from(c);
  if (c.any_outlier_tag && c.normal_examples > 0) {
    const auto np =
        noisy_precision(c.correct, c.outlier_extractions, c.normal_examples);
    report.noisy_precision = np.value;
    report.noisy_clamped = np.clamped;
  }
  return report;
}

}  // namespace rexmine
