#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "rexmine/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"rexmine: learn regular expressions from noisy example corpora"};
  app.require_subcommand(1);

  rexmine::GenerateCmd generate_cmd;
  std::size_t knee_override = 0;
  auto* generate = app.add_subcommand(
      "generate", "cluster a corpus, filter outliers and emit one regex per "
                  "retained cluster");
  generate->add_option("corpus", generate_cmd.corpus_path, "corpus file, one example per line")
      ->required();
  auto* override_opt = generate->add_option(
      "--knee-override", knee_override, "retain exactly this many clusters");
  generate->add_option("--flatness-eps", generate_cmd.flatness_eps,
                       "knee flatness tolerance")
      ->default_val(rexmine::kDefaultFlatnessEps);
  generate->add_flag("--lazy", generate_cmd.lazy, "emit non-greedy quantifiers");
  generate->add_flag("--bounded-star", generate_cmd.bounded_star,
                     "render * as {0,max}");
  generate->add_option("--output", generate_cmd.output_path, "artifact file")
      ->default_val("artifacts.jsonl");
  std::string diagnostics_path;
  auto* diag_opt = generate->add_option("--diagnostics", diagnostics_path,
                                        "cluster/CDF diagnostics file");
  generate->add_option("--threads", generate_cmd.threads,
                       "worker threads (0 = hardware)");

  rexmine::EvaluateCmd evaluate_cmd;
  auto* evaluate = app.add_subcommand(
      "evaluate", "run an artifact file against an annotated dataset");
  evaluate->add_option("artifacts", evaluate_cmd.artifacts_path, "artifact file")
      ->required();
  evaluate->add_option("dataset", evaluate_cmd.dataset_path,
                       "annotated JSONL dataset")
      ->required();
  std::string report_path;
  auto* report_opt =
      evaluate->add_option("--output", report_path, "write the report as JSON");

  std::string raw;
  auto* abstract_cmd =
      app.add_subcommand("abstract", "print the abstract pattern of a string");
  abstract_cmd->add_option("string", raw, "input string")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return rexmine::kExitUsage;
  }

  if (*generate) {
    if (*override_opt) generate_cmd.knee_override = knee_override;
    if (*diag_opt) generate_cmd.diagnostics_path = diagnostics_path;
    return rexmine::run_generate(generate_cmd, std::cout, std::cerr);
  }
  if (*evaluate) {
    if (*report_opt) evaluate_cmd.report_path = report_path;
    return rexmine::run_evaluate(evaluate_cmd, std::cout, std::cerr);
  }
  return rexmine::run_abstract(raw, std::cout, std::cerr);
}
