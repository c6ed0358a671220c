#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "qmut/analysis.hpp"
#include "qmut/circuit.hpp"
#include "qmut/inputs.hpp"
#include "qmut/mutate.hpp"
#include "qmut/records.hpp"
#include "qmut/sim.hpp"
#include "qmut/thresholds.hpp"

namespace qmut {

struct ExperimentConfig {
  std::string corpus_dir;
  std::string out_dir;
  std::set<MutationOperator> operators = {MutationOperator::Add, MutationOperator::Remove,
                                          MutationOperator::Replace};
  std::size_t mutant_quota = 0;  // 0 keeps the full enumeration
  int equivalents = 0;           // reversibility equivalents per CUT
  std::uint64_t shots = 10000;
  int runs = 30;
  double q = 0.875;
  std::vector<std::string> noise_model_files;
  std::uint64_t master_seed = 0;
  int density_cap = kDefaultDensityCap;

  void validate() const;
};

// CUT qasm files sorted by name; the algorithm family is the name up to the
// last underscore (e.g. "qft_4" -> "qft").
std::vector<Circuit> load_corpus(const std::string& dir);
std::string algorithm_of(const std::string& circuit_name);

// FNV-seeded content hash over the corpus for threshold metadata.
std::string corpus_hash(const std::vector<Circuit>& corpus);

// Stage A helpers: per-CUT suites and labelled mutants under out_dir.
void stage_inputs(const ExperimentConfig& cfg);
void stage_mutate(const ExperimentConfig& cfg);

// Stage B: every (CUT + mutants) x input x backend execution; densities and
// per-run counts persist under out_dir/exec. Per-task seed is
// master_seed XOR fnv1a64("circuit|mutant|input|backend|run").
void stage_run(const ExperimentConfig& cfg);

// Stage C: distances CSV, sorted by (mutant_id, input_id, backend, run, metric).
void stage_distances(const ExperimentConfig& cfg);

// Threshold calibration over the CUTs only (never the mutants).
void stage_calibrate(const ExperimentConfig& cfg);

// Stage D: appends detection flags; re-runnable without simulation.
void stage_detect(const ExperimentConfig& cfg, ThresholdStrategy strategy);

struct ReportCell {
  DetectionScores per_comparison;
  DetectionScores per_mutant;  // a mutant is detected iff any input/run flags it
};

// Stage E: per (metric, backend) confusion matrices and scores.
std::map<std::string, ReportCell> stage_report(const ExperimentConfig& cfg);

// Characteristic-correlation battery; writes stats.csv.
void stage_analyze(const ExperimentConfig& cfg);

// All stages in order (inputs, mutate, run, distances, calibrate, detect
// with the given strategy, report, analyze).
void run_full_pipeline(const ExperimentConfig& cfg,
                       ThresholdStrategy strategy = ThresholdStrategy::Noise);

std::map<std::string, CircuitFacts> corpus_facts(const std::vector<Circuit>& corpus);

}  // namespace qmut
