#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "rexmine/commands.hpp"
#include "rexmine/dataset_io.hpp"
#include "rexmine/errors.hpp"
#include "rexmine/matcher.hpp"
#include "rexmine/pipeline.hpp"

using namespace rexmine;

namespace {

struct TempFile {
  std::filesystem::path path;
  explicit TempFile(const std::string& name)
      : path(std::filesystem::temp_directory_path() /
             ("rexmine_pipe_" + name + "_" + std::to_string(::getpid()))) {}
  ~TempFile() { std::filesystem::remove(path); }
  void write(const std::string& data) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << data;
  }
  std::string read() const {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }
};

// 30 X_d + 18 x_d + 1 noise cluster; the knee lands at rank 2
std::string mixed_corpus_text() {
  std::string text;
  for (int i = 0; i < 30; ++i) {
    text += "SMS_" + std::to_string(100 + i) + "\n";
  }
  for (int i = 0; i < 18; ++i) {
    text += "tag_" + std::to_string(10 + i) + "\n";
  }
  text += "abc!!\n";
  return text;
}

std::vector<Example> as_examples(const std::vector<std::string>& raws) {
  std::vector<Example> examples;
  for (const auto& r : raws) examples.push_back(Example{.raw = r});
  return examples;
}

}  // namespace

TEST_CASE("generate_artifacts keeps dominant clusters and drops noise") {
  std::vector<std::string> raws;
  for (int i = 0; i < 30; ++i) raws.push_back("SMS_" + std::to_string(100 + i));
  for (int i = 0; i < 18; ++i) raws.push_back("tag_" + std::to_string(10 + i));
  raws.push_back("abc!!");

  const auto result = generate_artifacts(as_examples(raws));
  CHECK(result.table.entries.size() == 3);
  CHECK(result.knee.knee_rank == 2);
  REQUIRE(result.artifacts.size() == 2);
  CHECK(result.artifacts[0].source_metaparam.str() == "X_d");
  CHECK(result.artifacts[1].source_metaparam.str() == "x_d");
  REQUIRE(result.knee.filtered.size() == 1);
  CHECK(result.knee.filtered[0].str() == "x!");

  // every artifact fully matches all of its training members
  for (const auto& artifact : result.artifacts) {
    const auto pattern = CompiledPattern::compile(artifact.regex);
    for (const auto& member : artifact.tmpl.members) {
      CHECK(pattern.full_match(std::string_view(member)));
    }
  }
}

TEST_CASE("generate_artifacts respects the knee override") {
  std::vector<std::string> raws;
  for (int i = 0; i < 9; ++i) raws.push_back("SMS_" + std::to_string(i));
  for (int i = 0; i < 5; ++i) raws.push_back("tag_" + std::to_string(i));
  raws.push_back("q#1");

  GenerateOptions options;
  options.knee_override = 1;
  const auto result = generate_artifacts(as_examples(raws), options);
  REQUIRE(result.artifacts.size() == 1);
  CHECK(result.artifacts[0].source_metaparam.str() == "X_d");
}

TEST_CASE("artifact order follows descending cluster frequency") {
  std::vector<std::string> raws;
  for (int i = 0; i < 3; ++i) raws.push_back("low" + std::to_string(i));
  for (int i = 0; i < 7; ++i) raws.push_back("BIG" + std::to_string(i));
  for (int i = 0; i < 5; ++i) raws.push_back("mid_" + std::to_string(i));

  GenerateOptions options;
  options.knee_override = 3;
  const auto result = generate_artifacts(as_examples(raws), options);
  REQUIRE(result.artifacts.size() == 3);
  CHECK(result.artifacts[0].n_training_examples == 7);
  CHECK(result.artifacts[1].n_training_examples == 5);
  CHECK(result.artifacts[2].n_training_examples == 3);
}

TEST_CASE("run_generate writes artifacts and diagnostics deterministically") {
  TempFile corpus("corpus");
  corpus.write(mixed_corpus_text());

  TempFile artifacts1("a1"), diag1("d1"), artifacts2("a2"), diag2("d2");

  GenerateCmd cmd;
  cmd.corpus_path = corpus.path;
  cmd.output_path = artifacts1.path;
  cmd.diagnostics_path = diag1.path;
  cmd.threads = 1;
  std::ostringstream out1, err1;
  REQUIRE(run_generate(cmd, out1, err1) == kExitOk);

  cmd.output_path = artifacts2.path;
  cmd.diagnostics_path = diag2.path;
  cmd.threads = 2;  // different parallelism must not change the bytes
  std::ostringstream out2, err2;
  REQUIRE(run_generate(cmd, out2, err2) == kExitOk);

  CHECK(artifacts1.read() == artifacts2.read());
  CHECK(diag1.read() == diag2.read());
  const auto summary_of = [](const std::string& text) {
    return text.substr(0, text.find("artifacts written"));
  };
  CHECK(summary_of(out1.str()) == summary_of(out2.str()));

  // the artifact file holds one record per retained cluster
  const auto loaded = load_artifacts(artifacts1.path);
  REQUIRE(loaded.size() == 2);
  CHECK(loaded[0].metaparam.str() == "X_d");
  CHECK(loaded[0].member_count == 30);

  // diagnostics: summary line plus one record per cluster
  std::istringstream diag(diag1.read());
  std::string line;
  std::size_t lines = 0;
  while (std::getline(diag, line)) ++lines;
  CHECK(lines == 1 + 3);
}

TEST_CASE("run_generate rejects an empty corpus") {
  TempFile corpus("empty");
  corpus.write("");
  GenerateCmd cmd;
  cmd.corpus_path = corpus.path;
  TempFile artifacts("aempty");
  cmd.output_path = artifacts.path;
  std::ostringstream out, err;
  CHECK(run_generate(cmd, out, err) == kExitData);
  CHECK(err.str().find("empty corpus") != std::string::npos);
}

TEST_CASE("run_generate surfaces knee overrides and bad overrides") {
  TempFile corpus("corpus_ovr");
  corpus.write(mixed_corpus_text());
  TempFile artifacts("aovr");

  GenerateCmd cmd;
  cmd.corpus_path = corpus.path;
  cmd.output_path = artifacts.path;
  cmd.knee_override = 1;
  std::ostringstream out, err;
  REQUIRE(run_generate(cmd, out, err) == kExitOk);
  CHECK(load_artifacts(artifacts.path).size() == 1);

  cmd.knee_override = 99;
  std::ostringstream out2, err2;
  CHECK(run_generate(cmd, out2, err2) == kExitData);
}

TEST_CASE("run_evaluate scores artifacts against an annotated set") {
  TempFile corpus("corpus_eval");
  corpus.write(mixed_corpus_text());
  TempFile artifacts("aeval");
  GenerateCmd gen;
  gen.corpus_path = corpus.path;
  gen.output_path = artifacts.path;
  std::ostringstream gout, gerr;
  REQUIRE(run_generate(gen, gout, gerr) == kExitOk);

  TempFile dataset("deval");
  dataset.write(
      R"({"context_left":"msg ","span":"SMS_123","context_right":" sent","label":"pos"})"
      "\n"
      R"({"context_left":"","span":"nothing here","context_right":"","label":"neg"})"
      "\n");

  EvaluateCmd cmd;
  cmd.artifacts_path = artifacts.path;
  cmd.dataset_path = dataset.path;
  TempFile report("reval");
  cmd.report_path = report.path;
  std::ostringstream out, err;
  REQUIRE(run_evaluate(cmd, out, err) == kExitOk);
  CHECK(out.str().find("f_measure") != std::string::npos);
  CHECK(report.read().find("\"correct\":1") != std::string::npos);
}

TEST_CASE("run_evaluate with artifacts that match nothing reports zeros") {
  TempFile artifacts("anozero");
  artifacts.write(R"({"metaparam":"q","regex":"[0-9]{9}","member_count":1})"
                  "\n");
  TempFile dataset("dzero");
  dataset.write(
      R"({"context_left":"","span":"abc","context_right":"","label":"pos"})"
      "\n");
  EvaluateCmd cmd;
  cmd.artifacts_path = artifacts.path;
  cmd.dataset_path = dataset.path;
  std::ostringstream out, err;
  CHECK(run_evaluate(cmd, out, err) == kExitOk);
  CHECK(out.str().find("precision:   0") != std::string::npos);
}

TEST_CASE("run_evaluate surfaces data errors with a nonzero exit") {
  TempFile artifacts("abad");
  artifacts.write("{\"regex\": \"(unsupported)\"}\n");
  TempFile dataset("dbad");
  dataset.write(
      R"({"context_left":"","span":"abc","context_right":"","label":"pos"})"
      "\n");
  EvaluateCmd cmd;
  cmd.artifacts_path = artifacts.path;
  cmd.dataset_path = dataset.path;
  std::ostringstream out, err;
  CHECK(run_evaluate(cmd, out, err) == kExitData);

  TempFile artifacts_ok("aok");
  artifacts_ok.write(R"({"metaparam":"x","regex":"[a-z]{2}","member_count":1})"
                     "\n");
  TempFile malformed("dmal");
  malformed.write("{\"span\": 12}\n");
  cmd.artifacts_path = artifacts_ok.path;
  cmd.dataset_path = malformed.path;
  std::ostringstream out2, err2;
  CHECK(run_evaluate(cmd, out2, err2) == kExitData);
}

TEST_CASE("run_abstract prints the pattern or a usage error") {
  std::ostringstream out, err;
  CHECK(run_abstract("SMS_123456", out, err) == kExitOk);
  CHECK(out.str() == "X_d\n");

  std::ostringstream out2, err2;
  CHECK(run_abstract("", out2, err2) == kExitUsage);
}

TEST_CASE("lazy and bounded-star flags shape the emitted regexes") {
  // one cluster (both abstract to x-d-x) whose slot sees an empty filling
  const std::vector<std::string> raws{"a1b", "a11b"};

  const auto greedy_result = generate_artifacts(as_examples(raws));
  REQUIRE(greedy_result.artifacts.size() == 1);
  CHECK(greedy_result.artifacts[0].regex == "a11*b");

  GenerateOptions lazy;
  lazy.mode = MatchMode::lazy;
  const auto lazy_result = generate_artifacts(as_examples(raws), lazy);
  REQUIRE(lazy_result.artifacts.size() == 1);
  CHECK(lazy_result.artifacts[0].regex == "a11*?b");

  GenerateOptions bounded;
  bounded.bounded_star = true;
  const auto bounded_result = generate_artifacts(as_examples(raws), bounded);
  REQUIRE(bounded_result.artifacts.size() == 1);
  CHECK(bounded_result.artifacts[0].regex == "a11{0,1}b");
}
