#include <cstdint>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qmut/pipeline.hpp"
#include "qmut/qasm.hpp"

using namespace qmut;

int main(int argc, char** argv) {
  CLI::App app{"qmut: noise-aware mutation analysis for quantum circuits"};
  app.require_subcommand(1);

  ExperimentConfig cfg;
  cfg.out_dir = "out";
  std::string operators = "add,remove,replace";
  std::string strategy_str = "noise";
  bool run_all = false;

  app.add_option("--corpus", cfg.corpus_dir, "Directory of CUT .qasm files");
  app.add_option("--seed", cfg.master_seed, "Master seed");
  app.add_option("--shots", cfg.shots, "Shots per run");
  app.add_option("--runs", cfg.runs, "Repetitions r per execution");
  app.add_option("--percentile", cfg.q, "Calibration percentile q in (0,1)");
  app.add_option("--noise-model", cfg.noise_model_files,
                 "Noise model JSON (repeatable; noiseless always included)");
  app.add_option("--out", cfg.out_dir, "Output directory");
  app.add_option("--density-cap", cfg.density_cap, "Max qubits for density simulation");

  CLI::App* cmd_inputs = app.add_subcommand("inputs", "Generate per-CUT test suites");
  CLI::App* cmd_mutate = app.add_subcommand("mutate", "Enumerate, sample and label mutants");
  cmd_mutate->add_option("--quota", cfg.mutant_quota, "Balanced sample size (0 keeps all)");
  cmd_mutate->add_option("--equivalents", cfg.equivalents,
                         "Reversibility equivalents per CUT");
  cmd_mutate->add_option("--operators", operators,
                         "Comma list from add,remove,replace");
  CLI::App* cmd_run = app.add_subcommand("run", "Execute CUTs and mutants on all backends");
  cmd_run->add_flag("--all", run_all, "Run the full pipeline end to end");
  app.add_subcommand("distances", "Compute the distances CSV from a run directory");
  app.add_subcommand("calibrate", "Calibrate thresholds over the CUT corpus");
  CLI::App* cmd_detect = app.add_subcommand("detect", "Apply thresholds to distances");
  cmd_detect->add_option("--strategy", strategy_str,
                         "noiseless | noise | middle | above");
  app.add_subcommand("report", "Aggregate detections into confusion matrices");
  app.add_subcommand("analyze", "Correlate circuit characteristics with distances");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    cfg.operators.clear();
    std::string rest = operators;
    while (!rest.empty()) {
      const std::size_t comma = rest.find(',');
      cfg.operators.insert(operator_from_name(rest.substr(0, comma)));
      rest = comma == std::string::npos ? "" : rest.substr(comma + 1);
    }
    const ThresholdStrategy strategy = strategy_from_name(strategy_str);
    cfg.validate();

    if (cmd_inputs->parsed()) {
      stage_inputs(cfg);
    } else if (cmd_mutate->parsed()) {
      stage_mutate(cfg);
    } else if (cmd_run->parsed()) {
      if (run_all) {
        run_full_pipeline(cfg, strategy);
      } else {
        stage_run(cfg);
      }
    } else if (app.get_subcommand("distances")->parsed()) {
      stage_distances(cfg);
    } else if (app.get_subcommand("calibrate")->parsed()) {
      stage_calibrate(cfg);
    } else if (cmd_detect->parsed()) {
      stage_detect(cfg, strategy);
    } else if (app.get_subcommand("report")->parsed()) {
      stage_report(cfg);
    } else if (app.get_subcommand("analyze")->parsed()) {
      stage_analyze(cfg);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const QasmError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
