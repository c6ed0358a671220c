#include "qmut/thresholds.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "qmut/rng.hpp"

namespace qmut {

double percentile(std::vector<double> values, double q) {
  if (values.empty()) throw std::invalid_argument("percentile of empty list");
  std::sort(values.begin(), values.end());
  const double h = static_cast<double>(values.size() - 1) * q;
  const std::size_t lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = static_cast<std::size_t>(std::ceil(h));
  return values[lo] + (h - std::floor(h)) * (values[hi] - values[lo]);
}

CalibrationResult calibrate_threshold(
    const std::vector<std::pair<Circuit, TestSuite>>& corpus, const NoiseModel* backend,
    MetricKind metric, int r, std::uint64_t shots, double q, std::uint64_t seed) {
  if (corpus.empty()) throw std::invalid_argument("calibration corpus is empty");
  if (r < 2) throw std::invalid_argument("calibration needs r >= 2 runs");
  if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("percentile q must be in (0, 1)");
  if (metric_uses_density(metric) && backend == nullptr)
    throw std::invalid_argument("density-matrix metrics require a noise backend; the "
                                "noiseless thresholds are fixed constants");

  const std::string backend_name = backend != nullptr ? backend->name : "noiseless";

  CalibrationResult result;
  for (const auto& [cut, suite] : corpus) {
    for (const TestInput& input : suite.inputs) {
      // One program = one (CUT, input) pair.
      const Circuit program = compose(input.prep, cut);
      const DensityMatrix exact = run_density(program);

      std::map<std::string, double> exact_probs;
      const std::vector<double> diag = exact.probabilities();
      for (std::size_t b = 0; b < diag.size(); ++b)
        if (diag[b] > 0.0) exact_probs[bitstring_of(b, program.n_qubits())] = diag[b];
      const double exact_expect = expectation_from_density(exact);

      CalibrationSample sample;
      sample.program_id = cut.name() + "|" + input.id;
      for (int j = 0; j < r; ++j) {
        double d = 0.0;
        if (metric_uses_density(metric)) {
          const DensityMatrix noisy = run_density(program, backend);
          d = metric == MetricKind::TraceDistance ? trace_distance(exact, noisy)
                                                  : fidelity(exact, noisy);
        } else {
          const std::uint64_t run_seed = task_seed(
              seed, "calibrate|" + sample.program_id + "|" + backend_name + "|" +
                        std::to_string(j));
          const OutputDistribution counts =
              sample_counts(program, backend, shots, run_seed);
          switch (metric) {
            case MetricKind::Hellinger:
              d = hellinger(exact_probs, counts.probabilities());
              break;
            case MetricKind::JensenShannon:
              d = jensen_shannon(exact_probs, counts.probabilities());
              break;
            case MetricKind::ExpectationDiff:
              d = expectation_diff(exact_expect, expectation_from_counts(counts));
              break;
            default: break;
          }
        }
        sample.distances.push_back(d);
      }

      double mean = 0.0;
      for (double d : sample.distances) mean += d;
      mean /= static_cast<double>(r);
      double var = 0.0;
      for (double d : sample.distances) var += (d - mean) * (d - mean);
      var /= static_cast<double>(r - 1);
      sample.mean = mean;
      sample.std_error = std::sqrt(var) / std::sqrt(static_cast<double>(r));
      result.samples.push_back(std::move(sample));
    }
  }

  std::sort(result.samples.begin(), result.samples.end(),
            [](const CalibrationSample& a, const CalibrationSample& b) {
              return a.program_id < b.program_id;
            });

  std::vector<double> means, errors;
  for (const CalibrationSample& s : result.samples) {
    means.push_back(s.mean);
    errors.push_back(s.std_error);
  }
  const double q_sigma = percentile(errors, q);
  if (metric_orientation(metric) == Orientation::Dissimilarity) {
    result.threshold = percentile(means, q) + q_sigma;
  } else {
    // Fidelity mirrors the procedure: low tail of the means, minus Q_sigma.
    result.threshold = percentile(means, 1.0 - q) - q_sigma;
  }
  return result;
}

double derive_middle(double t_noiseless, const std::vector<double>& t_noise,
                     Orientation orientation) {
  if (t_noise.empty()) throw std::invalid_argument("derive_middle: empty noise list");
  const double extreme = orientation == Orientation::Dissimilarity
                             ? *std::min_element(t_noise.begin(), t_noise.end())
                             : *std::max_element(t_noise.begin(), t_noise.end());
  return 0.5 * (extreme + t_noiseless);
}

double derive_above(const std::vector<double>& t_noise, double t_middle,
                    Orientation orientation) {
  if (t_noise.empty()) throw std::invalid_argument("derive_above: empty noise list");
  const double lo = *std::min_element(t_noise.begin(), t_noise.end());
  const double hi = *std::max_element(t_noise.begin(), t_noise.end());
  if (orientation == Orientation::Dissimilarity) return hi + (lo - t_middle);
  return lo - (t_middle - hi);
}

bool classify(double value, double threshold, Orientation orientation) {
  return orientation == Orientation::Dissimilarity ? value > threshold : value < threshold;
}

const char* strategy_name(ThresholdStrategy s) {
  switch (s) {
    case ThresholdStrategy::Noiseless: return "noiseless";
    case ThresholdStrategy::Noise: return "noise";
    case ThresholdStrategy::Middle: return "middle";
    case ThresholdStrategy::Above: return "above";
  }
  throw std::logic_error("unknown strategy");
}

ThresholdStrategy strategy_from_name(const std::string& s) {
  if (s == "noiseless") return ThresholdStrategy::Noiseless;
  if (s == "noise") return ThresholdStrategy::Noise;
  if (s == "middle") return ThresholdStrategy::Middle;
  if (s == "above") return ThresholdStrategy::Above;
  throw std::invalid_argument("unknown threshold strategy: " + s);
}

double ThresholdSet::lookup(MetricKind metric, ThresholdStrategy strategy,
                            const std::string& backend) const {
  const auto it = metrics.find(metric_name(metric));
  if (it == metrics.end())
    throw std::runtime_error(std::string("no thresholds for metric ") + metric_name(metric));
  const MetricThresholds& mt = it->second;
  switch (strategy) {
    case ThresholdStrategy::Noiseless: return mt.noiseless;
    case ThresholdStrategy::Middle: return mt.middle;
    case ThresholdStrategy::Above: return mt.above;
    case ThresholdStrategy::Noise: {
      if (backend == "noiseless") return mt.noiseless;
      const auto nit = mt.noise.find(backend);
      if (nit == mt.noise.end())
        throw std::runtime_error("no noise threshold for backend " + backend);
      return nit->second;
    }
  }
  throw std::logic_error("unknown strategy");
}

void save_thresholds(const ThresholdSet& ts, const std::string& path) {
  nlohmann::json thresholds;
  for (const auto& [metric, mt] : ts.metrics) {
    thresholds[metric] = {{"noiseless", mt.noiseless},
                          {"noise", mt.noise},
                          {"middle", mt.middle},
                          {"above", mt.above}};
  }
  nlohmann::json j{{"meta",
                    {{"q", ts.q},
                     {"r", ts.r},
                     {"shots", ts.shots},
                     {"seed", ts.seed},
                     {"corpus_hash", ts.corpus_hash},
                     {"rng", kRngAlgorithm}}},
                   {"thresholds", thresholds}};
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write thresholds: " + path);
  out << j.dump(2) << "\n";
}

ThresholdSet load_thresholds(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open thresholds: " + path);
  nlohmann::json j;
  in >> j;
  ThresholdSet ts;
  const auto& meta = j.at("meta");
  ts.q = meta.at("q").get<double>();
  ts.r = meta.at("r").get<int>();
  ts.shots = meta.at("shots").get<std::uint64_t>();
  ts.seed = meta.at("seed").get<std::uint64_t>();
  ts.corpus_hash = meta.value("corpus_hash", "");
  for (const auto& [metric, mt] : j.at("thresholds").items()) {
    MetricThresholds entry;
    entry.noiseless = mt.at("noiseless").get<double>();
    entry.middle = mt.at("middle").get<double>();
    entry.above = mt.at("above").get<double>();
    for (const auto& [backend, value] : mt.at("noise").items())
      entry.noise[backend] = value.get<double>();
    ts.metrics[metric] = entry;
  }
  return ts;
}

}  // namespace qmut
