#include "qmut/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <tuple>

#include "json.hpp"
#include "qmut/metrics.hpp"
#include "qmut/qasm.hpp"
#include "qmut/rng.hpp"

namespace fs = std::filesystem;

namespace qmut {

namespace {

std::string suites_dir(const ExperimentConfig& cfg) { return cfg.out_dir + "/suites"; }
std::string mutants_dir(const ExperimentConfig& cfg) { return cfg.out_dir + "/mutants"; }
std::string exec_dir(const ExperimentConfig& cfg) { return cfg.out_dir + "/exec"; }

std::vector<NoiseModel> load_backends(const ExperimentConfig& cfg) {
  std::vector<NoiseModel> models;
  for (const std::string& path : cfg.noise_model_files) models.push_back(load_noise_model(path));
  return models;
}

std::vector<std::string> backend_names(const std::vector<NoiseModel>& models) {
  std::vector<std::string> names = {"noiseless"};
  for (const NoiseModel& nm : models) names.push_back(nm.name);
  return names;
}

std::string exec_json_path(const ExperimentConfig& cfg, const std::string& circuit,
                           const std::string& input, const std::string& backend) {
  return exec_dir(cfg) + "/" + circuit + "/" + input + "/" + backend + ".json";
}

std::string exec_density_path(const ExperimentConfig& cfg, const std::string& circuit,
                              const std::string& input, const std::string& backend) {
  return exec_dir(cfg) + "/" + circuit + "/" + input + "/" + backend + ".dm";
}

struct ExecutionRecord {
  std::vector<OutputDistribution> runs;
  std::vector<double> expectations;  // from counts, one per run
  bool has_density = false;
};

// cut x input x backend execution for one circuit (the CUT itself when
// mutant_id is "-"). Writes the run JSON and, when within cap, the density.
void execute_one(const ExperimentConfig& cfg, const Circuit& circuit,
                 const std::string& cut_name, const std::string& mutant_id,
                 const TestInput& input, const NoiseModel* nm, const std::string& backend) {
  const std::string circuit_id = mutant_id == "-" ? cut_name : mutant_id;
  const Circuit full = compose(input.prep, circuit);
  fs::create_directories(fs::path(exec_json_path(cfg, circuit_id, input.id, backend)).parent_path());

  bool has_density = circuit.n_qubits() <= cfg.density_cap;
  if (has_density) {
    const DensityMatrix rho = run_density(full, nm, cfg.density_cap);
    save_density(rho, exec_density_path(cfg, circuit_id, input.id, backend));
  } else {
    std::cerr << "skip density for " << circuit_id << " (" << circuit.n_qubits()
              << " qubits over cap " << cfg.density_cap << ")\n";
  }

  nlohmann::json runs = nlohmann::json::array();
  for (int j = 0; j < cfg.runs; ++j) {
    const std::string tag = cut_name + "|" + mutant_id + "|" + input.id + "|" + backend +
                            "|" + std::to_string(j);
    const std::uint64_t seed = task_seed(cfg.master_seed, tag);
    const OutputDistribution d = sample_counts(full, nm, cfg.shots, seed, cfg.density_cap);
    nlohmann::json counts = nlohmann::json::object();
    for (const auto& [bits, c] : d.counts) counts[bits] = c;
    runs.push_back({{"counts", counts}, {"expectation", expectation_from_counts(d)}});
  }
  nlohmann::json j{{"circuit", circuit_id},
                   {"cut", cut_name},
                   {"input", input.id},
                   {"backend", backend},
                   {"shots", cfg.shots},
                   {"n_qubits", circuit.n_qubits()},
                   {"density", has_density},
                   {"runs", runs}};
  std::ofstream out(exec_json_path(cfg, circuit_id, input.id, backend));
  if (!out) throw std::runtime_error("cannot write execution record for " + circuit_id);
  out << j.dump(2) << "\n";
}

ExecutionRecord read_execution(const ExperimentConfig& cfg, const std::string& circuit,
                               const std::string& input, const std::string& backend) {
  std::ifstream in(exec_json_path(cfg, circuit, input, backend));
  if (!in)
    throw std::runtime_error("missing execution record: " +
                             exec_json_path(cfg, circuit, input, backend));
  nlohmann::json j;
  in >> j;
  ExecutionRecord rec;
  rec.has_density = j.at("density").get<bool>();
  const int n = j.at("n_qubits").get<int>();
  for (const auto& run : j.at("runs")) {
    OutputDistribution d;
    d.n_qubits = n;
    d.shots = j.at("shots").get<std::uint64_t>();
    for (const auto& [bits, c] : run.at("counts").items())
      d.counts[bits] = c.get<std::uint64_t>();
    rec.runs.push_back(std::move(d));
    rec.expectations.push_back(run.at("expectation").get<double>());
  }
  return rec;
}

nlohmann::json scores_json(const DetectionScores& s) {
  return {{"confusion",
           {{"tp", s.confusion.tp},
            {"fp", s.confusion.fp},
            {"tn", s.confusion.tn},
            {"fn", s.confusion.fn}}},
          {"accuracy", s.accuracy},
          {"precision", s.precision},
          {"recall", s.recall},
          {"f1", s.f1},
          {"degenerate", s.degenerate}};
}

}  // namespace

void ExperimentConfig::validate() const {
  if (corpus_dir.empty()) throw std::invalid_argument("corpus dir not set");
  if (out_dir.empty()) throw std::invalid_argument("output dir not set");
  if (shots < 1) throw std::invalid_argument("shots must be >= 1");
  if (runs < 2) throw std::invalid_argument("runs must be >= 2");
  if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("percentile must be in (0,1)");
  if (operators.empty()) throw std::invalid_argument("no mutation operators selected");
}

std::vector<Circuit> load_corpus(const std::string& dir) {
  if (!fs::is_directory(dir)) throw std::runtime_error("corpus dir not found: " + dir);
  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.path().extension() == ".qasm") files.push_back(entry.path().string());
  std::sort(files.begin(), files.end());
  if (files.empty()) throw std::runtime_error("no .qasm files in " + dir);
  std::vector<Circuit> corpus;
  for (const std::string& f : files) corpus.push_back(load_qasm_file(f));
  return corpus;
}

std::string algorithm_of(const std::string& circuit_name) {
  const std::size_t pos = circuit_name.find_last_of('_');
  if (pos == std::string::npos || pos + 1 == circuit_name.size()) return circuit_name;
  for (std::size_t i = pos + 1; i < circuit_name.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(circuit_name[i]))) return circuit_name;
  return circuit_name.substr(0, pos);
}

std::string corpus_hash(const std::vector<Circuit>& corpus) {
  std::string blob;
  for (const Circuit& c : corpus) {
    blob += c.name();
    blob += '\n';
    blob += emit_qasm(c);
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(blob)));
  return buf;
}

std::map<std::string, CircuitFacts> corpus_facts(const std::vector<Circuit>& corpus) {
  std::map<std::string, CircuitFacts> facts;
  for (const Circuit& c : corpus) {
    CircuitFacts f;
    const CircuitCharacteristics ch = characteristics(c);
    f.n_gates = ch.n_gates;
    f.depth = ch.depth;
    const std::vector<double> probs = run_density(c).probabilities();
    f.dominant_output = *std::max_element(probs.begin(), probs.end()) >= 0.5;
    facts[c.name()] = f;
  }
  return facts;
}

void stage_inputs(const ExperimentConfig& cfg) {
  cfg.validate();
  for (const Circuit& cut : load_corpus(cfg.corpus_dir)) {
    const std::uint64_t seed = task_seed(cfg.master_seed, cut.name() + "|suite");
    const TestSuite suite = build_suite(cut.n_qubits(), seed);
    save_suite(suite, suites_dir(cfg) + "/" + cut.name(), seed);
  }
}

void stage_mutate(const ExperimentConfig& cfg) {
  cfg.validate();
  for (const Circuit& cut : load_corpus(cfg.corpus_dir)) {
    const TestSuite suite = load_suite(suites_dir(cfg) + "/" + cut.name());
    const std::uint64_t seed = task_seed(cfg.master_seed, cut.name() + "|mutate");
    std::vector<Mutant> mutants = enumerate_mutants(cut, cfg.operators, seed);
    if (cfg.mutant_quota > 0 && cfg.mutant_quota < mutants.size())
      mutants = sample_balanced(mutants, cfg.mutant_quota, seed);
    if (cfg.equivalents > 0) {
      std::vector<Mutant> eq = gen_equivalent(cut, cfg.equivalents, seed);
      mutants.insert(mutants.end(), eq.begin(), eq.end());
    }
    for (Mutant& m : mutants) is_equivalent(cut, m, suite);
    std::sort(mutants.begin(), mutants.end(),
              [](const Mutant& a, const Mutant& b) { return a.id < b.id; });
    save_mutants(mutants, mutants_dir(cfg) + "/" + cut.name());
  }
}

void stage_run(const ExperimentConfig& cfg) {
  cfg.validate();
  const std::vector<NoiseModel> models = load_backends(cfg);
  for (const Circuit& cut : load_corpus(cfg.corpus_dir)) {
    const TestSuite suite = load_suite(suites_dir(cfg) + "/" + cut.name());
    const std::vector<Mutant> mutants = load_mutants(mutants_dir(cfg) + "/" + cut.name());
    for (const TestInput& input : suite.inputs) {
      execute_one(cfg, cut, cut.name(), "-", input, nullptr, "noiseless");
      for (const NoiseModel& nm : models)
        execute_one(cfg, cut, cut.name(), "-", input, &nm, nm.name);
      for (const Mutant& m : mutants) {
        execute_one(cfg, m.circuit, cut.name(), m.id, input, nullptr, "noiseless");
        for (const NoiseModel& nm : models)
          execute_one(cfg, m.circuit, cut.name(), m.id, input, &nm, nm.name);
      }
    }
  }

  nlohmann::json meta{{"rng", kRngAlgorithm},
                      {"master_seed", cfg.master_seed},
                      {"shots", cfg.shots},
                      {"runs", cfg.runs},
                      {"percentile", cfg.q},
                      {"density_cap", cfg.density_cap},
                      {"backends", backend_names(models)}};
  std::ofstream out(cfg.out_dir + "/run_meta.json");
  out << meta.dump(2) << "\n";
}

void stage_distances(const ExperimentConfig& cfg) {
  cfg.validate();
  const std::vector<std::string> backends = backend_names(load_backends(cfg));
  std::vector<DistanceRecord> rows;

  for (const Circuit& cut : load_corpus(cfg.corpus_dir)) {
    const TestSuite suite = load_suite(suites_dir(cfg) + "/" + cut.name());
    const std::vector<Mutant> mutants = load_mutants(mutants_dir(cfg) + "/" + cut.name());
    for (const Mutant& m : mutants) {
      for (const TestInput& input : suite.inputs) {
        for (const std::string& backend : backends) {
          const ExecutionRecord cut_rec = read_execution(cfg, cut.name(), input.id, backend);
          const ExecutionRecord mut_rec = read_execution(cfg, m.id, input.id, backend);
          if (cut_rec.runs.size() != mut_rec.runs.size())
            throw std::runtime_error("run count mismatch for mutant " + m.id);

          DistanceRecord base;
          base.algorithm = algorithm_of(cut.name());
          base.circuit_id = cut.name();
          base.n_qubits = cut.n_qubits();
          base.mutant_id = m.id;
          base.mutant_label = label_name(m.label);
          base.op = operator_name(m.mutation.op);
          base.gate_type = gate_class_name(m.mutation.gate_class);
          base.segment = segment_name(m.mutation.segment);
          base.input_id = input.id;
          base.input_type = input_type_name(input.type);
          base.backend = backend;

          double trace = 0.0, fid = 0.0;
          const bool density = cut_rec.has_density && mut_rec.has_density;
          if (density) {
            const DensityMatrix rho_cut =
                load_density(exec_density_path(cfg, cut.name(), input.id, backend));
            const DensityMatrix rho_mut =
                load_density(exec_density_path(cfg, m.id, input.id, backend));
            trace = trace_distance(rho_cut, rho_mut);
            fid = fidelity(rho_cut, rho_mut);
          }

          for (std::size_t j = 0; j < cut_rec.runs.size(); ++j) {
            DistanceRecord r = base;
            r.run_index = static_cast<int>(j);
            if (density) {
              r.metric = metric_name(MetricKind::TraceDistance);
              r.value = trace;
              rows.push_back(r);
              r.metric = metric_name(MetricKind::Fidelity);
              r.value = fid;
              rows.push_back(r);
            }
            r.metric = metric_name(MetricKind::Hellinger);
            r.value = hellinger(cut_rec.runs[j], mut_rec.runs[j]);
            rows.push_back(r);
            r.metric = metric_name(MetricKind::JensenShannon);
            r.value = jensen_shannon(cut_rec.runs[j], mut_rec.runs[j]);
            rows.push_back(r);
            r.metric = metric_name(MetricKind::ExpectationDiff);
            r.value = expectation_diff(cut_rec.expectations[j], mut_rec.expectations[j]);
            rows.push_back(r);
          }
        }
      }
    }
  }

  std::sort(rows.begin(), rows.end(), [](const DistanceRecord& a, const DistanceRecord& b) {
    return std::tie(a.mutant_id, a.input_id, a.backend, a.run_index, a.metric) <
           std::tie(b.mutant_id, b.input_id, b.backend, b.run_index, b.metric);
  });
  write_distances_csv(rows, cfg.out_dir + "/distances.csv");
}

void stage_calibrate(const ExperimentConfig& cfg) {
  cfg.validate();
  const std::vector<Circuit> corpus = load_corpus(cfg.corpus_dir);
  std::vector<std::pair<Circuit, TestSuite>> programs;
  for (const Circuit& cut : corpus)
    programs.emplace_back(cut, load_suite(suites_dir(cfg) + "/" + cut.name()));
  const std::vector<NoiseModel> models = load_backends(cfg);

  ThresholdSet ts;
  ts.q = cfg.q;
  ts.r = cfg.runs;
  ts.shots = cfg.shots;
  ts.seed = cfg.master_seed;
  ts.corpus_hash = corpus_hash(corpus);

  for (MetricKind metric : kAllMetrics) {
    MetricThresholds mt;
    const Orientation orientation = metric_orientation(metric);
    if (metric_uses_density(metric)) {
      mt.noiseless = metric == MetricKind::TraceDistance ? kNoiselessTraceThreshold
                                                         : kNoiselessFidelityThreshold;
    } else {
      mt.noiseless = calibrate_threshold(programs, nullptr, metric, cfg.runs, cfg.shots,
                                         cfg.q, cfg.master_seed)
                         .threshold;
    }
    std::vector<double> noise_values;
    for (const NoiseModel& nm : models) {
      const double t = calibrate_threshold(programs, &nm, metric, cfg.runs, cfg.shots,
                                           cfg.q, cfg.master_seed)
                           .threshold;
      mt.noise[nm.name] = t;
      noise_values.push_back(t);
    }
    if (!noise_values.empty()) {
      mt.middle = derive_middle(mt.noiseless, noise_values, orientation);
      mt.above = derive_above(noise_values, mt.middle, orientation);
    } else {
      mt.middle = mt.noiseless;
      mt.above = mt.noiseless;
    }
    ts.metrics[metric_name(metric)] = mt;
  }
  save_thresholds(ts, cfg.out_dir + "/thresholds.json");
}

void stage_detect(const ExperimentConfig& cfg, ThresholdStrategy strategy) {
  const ThresholdSet ts = load_thresholds(cfg.out_dir + "/thresholds.json");
  std::vector<DistanceRecord> rows = read_distances_csv(cfg.out_dir + "/distances.csv");
  for (DistanceRecord& r : rows) {
    const MetricKind metric = metric_from_name(r.metric);
    const double t = ts.lookup(metric, strategy, r.backend);
    r.detected = classify(r.value, t, metric_orientation(metric));
  }
  write_distances_csv(rows, cfg.out_dir + "/detections_" + strategy_name(strategy) + ".csv",
                      true);
}

std::map<std::string, ReportCell> stage_report(const ExperimentConfig& cfg) {
  std::map<std::string, ReportCell> cells;
  ThresholdStrategy strategy = ThresholdStrategy::Noise;
  std::string detections_path;
  for (ThresholdStrategy s : {ThresholdStrategy::Noiseless, ThresholdStrategy::Noise,
                              ThresholdStrategy::Middle, ThresholdStrategy::Above}) {
    const std::string p =
        cfg.out_dir + "/detections_" + std::string(strategy_name(s)) + ".csv";
    if (fs::exists(p)) {
      strategy = s;
      detections_path = p;
    }
  }
  if (detections_path.empty())
    throw std::runtime_error("no detections CSV under " + cfg.out_dir);

  const std::vector<DistanceRecord> rows = read_distances_csv(detections_path, true);
  if (rows.empty()) throw std::runtime_error("empty detections CSV: " + detections_path);

  std::map<std::string, std::vector<DetectionRecord>> per_comparison;
  std::map<std::string, std::map<std::string, DetectionRecord>> per_mutant;
  for (const DistanceRecord& r : rows) {
    const std::string key = r.metric + "|" + r.backend;
    DetectionRecord d;
    d.mutant_id = r.mutant_id;
    d.truly_nonequivalent = r.mutant_label == "non_equivalent";
    d.detected = r.detected;
    d.metric = r.metric;
    d.strategy = strategy_name(strategy);
    d.backend = r.backend;
    d.input_id = r.input_id;
    per_comparison[key].push_back(d);
    auto [it, inserted] = per_mutant[key].emplace(r.mutant_id, d);
    if (!inserted) it->second.detected = it->second.detected || d.detected;
  }

  nlohmann::json report{{"strategy", strategy_name(strategy)},
                        {"cells", nlohmann::json::object()}};
  for (const auto& [key, records] : per_comparison) {
    ReportCell cell;
    cell.per_comparison = confusion_and_scores(records);
    std::vector<DetectionRecord> mutant_records;
    for (const auto& [id, d] : per_mutant[key]) mutant_records.push_back(d);
    cell.per_mutant = confusion_and_scores(mutant_records);
    cells[key] = cell;
    report["cells"][key] = {{"per_comparison", scores_json(cell.per_comparison)},
                            {"per_mutant", scores_json(cell.per_mutant)}};
  }
  std::ofstream out(cfg.out_dir + "/report_" + strategy_name(strategy) + ".json");
  if (!out) throw std::runtime_error("cannot write report JSON");
  out << report.dump(2) << "\n";
  return cells;
}

void stage_analyze(const ExperimentConfig& cfg) {
  const std::vector<DistanceRecord> all = read_distances_csv(cfg.out_dir + "/distances.csv");
  const std::map<std::string, CircuitFacts> facts = corpus_facts(load_corpus(cfg.corpus_dir));

  std::ofstream out(cfg.out_dir + "/stats.csv");
  if (!out) throw std::runtime_error("cannot write stats CSV");
  out << "metric,variable,test,statistic,p,p_holm,effect,strength\n";

  for (MetricKind metric : kAllMetrics) {
    std::vector<DistanceRecord> filtered;
    for (const DistanceRecord& r : all)
      if (r.metric == metric_name(metric) && r.mutant_label == "non_equivalent")
        filtered.push_back(r);
    if (filtered.empty()) continue;

    std::vector<std::string> usable;
    for (const std::string& variable : kAllCharacteristicVariables) {
      try {
        correlate_one(filtered, facts, variable);
        usable.push_back(variable);
      } catch (const std::invalid_argument&) {
      }
    }
    if (usable.empty()) continue;

    for (const CharacteristicResult& cr :
         correlate_characteristics(filtered, facts, usable)) {
      char sbuf[32], pbuf[32], hbuf[32], ebuf[32];
      std::snprintf(sbuf, sizeof(sbuf), "%.17g", cr.stat.statistic);
      std::snprintf(pbuf, sizeof(pbuf), "%.17g", cr.stat.p_value);
      std::snprintf(hbuf, sizeof(hbuf), "%.17g", cr.p_holm);
      std::snprintf(ebuf, sizeof(ebuf), "%.17g", cr.stat.effect_size);
      out << metric_name(metric) << ',' << cr.variable << ',' << cr.stat.test_name << ','
          << sbuf << ',' << pbuf << ',' << hbuf << ',' << ebuf << ','
          << strength_name(cr.stat.strength) << "\n";
    }
  }
}

void run_full_pipeline(const ExperimentConfig& cfg, ThresholdStrategy strategy) {
  cfg.validate();
  fs::create_directories(cfg.out_dir);
  stage_inputs(cfg);
  stage_mutate(cfg);
  stage_run(cfg);
  stage_distances(cfg);
  stage_calibrate(cfg);
  stage_detect(cfg, strategy);
  stage_report(cfg);
  stage_analyze(cfg);
}

}  // namespace qmut
