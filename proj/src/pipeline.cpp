#include "rexmine/pipeline.hpp"

#include <algorithm>
#include <future>
#include <thread>

#include "rexmine/abstraction.hpp"
#include "rexmine/errors.hpp"
#include "rexmine/slot_gen.hpp"
#include "rexmine/template_gen.hpp"

namespace rexmine {

namespace {

RegexArtifact generate_for_cluster(const MetaParam& metaparam,
                                   const ClusterEntry& entry,
                                   const SlotGenOptions& slot_opts) {
  const Template tmpl = build_template(entry.members);
  std::vector<std::string> fragments;
  fragments.reserve(tmpl.slot_count);
  for (const auto& fillings : tmpl.slot_fillings()) {
    fragments.push_back(generate_slot_fragment(
        fillings, AbstractionTree::standard(), slot_opts));
  }
  return assemble_regex(tmpl, fragments, metaparam);
}

std::string corpus_fold(std::span<const Example> corpus) {
  std::vector<std::string> distinct;
  distinct.reserve(corpus.size());
  for (const auto& ex : corpus) distinct.push_back(ex.raw);
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (distinct.empty()) return {};
  return common_subsequence(distinct);
}

}  // namespace

GenerateResult generate_artifacts(std::span<const Example> corpus,
                                  const GenerateOptions& options) {
  GenerateResult result;
  result.table = build_cluster_table(corpus, options.threads);
  result.corpus_subsequence = corpus_fold(corpus);
  result.knee =
      filter_outliers(result.table, options.knee_override, options.flatness_eps);

  const SlotGenOptions slot_opts{options.mode, options.bounded_star};

  unsigned threads = options.threads;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());

  const auto& retained = result.knee.retained;
  if (threads <= 1 || retained.size() < 2) {
    for (const auto& mp : retained) {
      result.artifacts.push_back(
          generate_for_cluster(mp, result.table.entries.at(mp), slot_opts));
    }
  } else {
    const std::size_t chunk_size =
        (retained.size() + threads - 1) / threads;
    std::vector<std::future<std::vector<RegexArtifact>>> futures;
    for (std::size_t begin = 0; begin < retained.size(); begin += chunk_size) {
      const std::size_t end = std::min(begin + chunk_size, retained.size());
      futures.push_back(std::async(std::launch::async, [&, begin, end] {
        std::vector<RegexArtifact> chunk;
        chunk.reserve(end - begin);
        for (std::size_t i = begin; i < end; ++i) {
          chunk.push_back(generate_for_cluster(
              retained[i], result.table.entries.at(retained[i]), slot_opts));
        }
        return chunk;
      }));
    }
    for (auto& f : futures) {
      auto chunk = f.get();
      for (auto& artifact : chunk) {
        result.artifacts.push_back(std::move(artifact));
      }
    }
  }
  return result;
}

}  // namespace rexmine
