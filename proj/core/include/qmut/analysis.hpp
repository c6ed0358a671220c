#pragma once

#include <map>
#include <string>
#include <vector>

#include "qmut/records.hpp"
#include "qmut/stats.hpp"

namespace qmut {

struct DetectionRecord {
  std::string mutant_id;
  bool truly_nonequivalent = false;  // ground truth from the noiseless oracle
  bool detected = false;
  std::string metric;
  std::string strategy;
  std::string backend;
  std::string input_id;
};

struct ConfusionMatrix {
  std::uint64_t tp = 0, fp = 0, tn = 0, fn = 0;

  std::uint64_t total() const { return tp + fp + tn + fn; }
};

struct DetectionScores {
  ConfusionMatrix confusion;
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  bool degenerate = false;  // some denominator was zero (reported as 0)
};

DetectionScores confusion_and_scores(const std::vector<DetectionRecord>& records);

// Per-variable correlation batch over a distance table filtered to one
// metric and one label class. Quantitative variables use Pearson, binary
// ones Mann-Whitney + Cliff's delta, multi-valued ones Kruskal-Wallis +
// eta^2. Holm correction is applied across the batch.
struct CharacteristicResult {
  std::string variable;
  StatResult stat;
  double p_holm = 1.0;
};

// Circuit-level characteristics the CSV rows do not carry; keyed by circuit_id.
struct CircuitFacts {
  int n_gates = 0;
  int depth = 0;
  bool dominant_output = false;  // max theoretical outcome probability >= 0.5
};

std::vector<CharacteristicResult> correlate_characteristics(
    const std::vector<DistanceRecord>& distances,
    const std::map<std::string, CircuitFacts>& facts,
    const std::vector<std::string>& variables);

// A single variable dispatch; exposed for targeted use and testing.
StatResult correlate_one(const std::vector<DistanceRecord>& distances,
                         const std::map<std::string, CircuitFacts>& facts,
                         const std::string& variable);

extern const std::vector<std::string> kAllCharacteristicVariables;

}  // namespace qmut
