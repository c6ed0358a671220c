#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qmut/circuit.hpp"
#include "qmut/inputs.hpp"
#include "qmut/metrics.hpp"
#include "qmut/sim.hpp"

namespace qmut {

// Fixed noiseless thresholds for the density-matrix metrics: in a noiseless
// run these metrics only carry float noise (~1e-13 / 1e-14), so they are
// constants rather than calibrated values.
inline constexpr double kNoiselessTraceThreshold = 1e-13;
inline constexpr double kNoiselessFidelityThreshold = 1.0 - 1e-14;

struct CalibrationSample {
  std::string program_id;
  std::vector<double> distances;  // d_ij, j = 1..r
  double mean = 0.0;
  double std_error = 0.0;  // s_i / sqrt(r)
};

// Linear interpolation between closest ranks: h = (len-1) q,
// result = x_floor(h) + (h - floor(h)) (x_ceil(h) - x_floor(h)).
double percentile(std::vector<double> values, double q);

struct CalibrationResult {
  double threshold = 0.0;
  std::vector<CalibrationSample> samples;  // sorted by program id
};

// Steps 1-5 of the threshold procedure over (CUT, input) programs. For shot
// metrics the backend may be null (noiseless); density metrics require one.
CalibrationResult calibrate_threshold(
    const std::vector<std::pair<Circuit, TestSuite>>& corpus, const NoiseModel* backend,
    MetricKind metric, int r, std::uint64_t shots, double q, std::uint64_t seed);

// Dissimilarity: (min(noise) + noiseless) / 2; similarity mirrored via max.
double derive_middle(double t_noiseless, const std::vector<double>& t_noise,
                     Orientation orientation);

// Dissimilarity: max(noise) + (min(noise) - middle); similarity mirrored.
double derive_above(const std::vector<double>& t_noise, double t_middle,
                    Orientation orientation);

// Strict inequality: dissimilarity detects above, similarity below.
bool classify(double value, double threshold, Orientation orientation);

enum class ThresholdStrategy { Noiseless, Noise, Middle, Above };
const char* strategy_name(ThresholdStrategy s);
ThresholdStrategy strategy_from_name(const std::string& s);

struct MetricThresholds {
  double noiseless = 0.0;
  std::map<std::string, double> noise;  // backend name -> threshold
  double middle = 0.0;
  double above = 0.0;
};

struct ThresholdSet {
  std::map<std::string, MetricThresholds> metrics;  // keyed by metric_name
  double q = 0.875;
  int r = 30;
  std::uint64_t shots = 10000;
  std::uint64_t seed = 0;
  std::string corpus_hash;

  // Throws when the (metric, strategy, backend) entry is missing.
  double lookup(MetricKind metric, ThresholdStrategy strategy,
                const std::string& backend) const;
};

void save_thresholds(const ThresholdSet& ts, const std::string& path);
ThresholdSet load_thresholds(const std::string& path);

}  // namespace qmut
