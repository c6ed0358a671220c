#include "doctest.h"
#include "qmut/pipeline.hpp"
#include "qmut/qasm.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

using namespace qmut;
namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempTree {
  fs::path root;
  explicit TempTree(const std::string& name) : root(fs::temp_directory_path() / name) {
    fs::remove_all(root);
    fs::create_directories(root);
  }
  ~TempTree() { fs::remove_all(root); }
};

ExperimentConfig small_config(const fs::path& root) {
  ExperimentConfig cfg;
  cfg.corpus_dir = (root / "corpus").string();
  cfg.out_dir = (root / "out").string();
  cfg.mutant_quota = 6;
  cfg.equivalents = 2;
  cfg.shots = 200;
  cfg.runs = 2;
  cfg.master_seed = 7;
  cfg.noise_model_files = {(root / "depol.json").string()};

  fs::create_directories(cfg.corpus_dir);
  std::ofstream qasm(fs::path(cfg.corpus_dir) / "bell_2.qasm");
  qasm << "OPENQASM 2.0;\nqreg q[2];\ncreg c[2];\nh q[0];\ncx q[0],q[1];\n"
       << "measure q -> c;\n";
  qasm.close();

  NoiseModel nm;
  nm.name = "depol";
  nm.oneq_depolarizing = 0.01;
  nm.twoq_depolarizing = 0.02;
  save_noise_model(nm, (root / "depol.json").string());
  return cfg;
}

}  // namespace

TEST_CASE("algorithm family strips a trailing size suffix") {
  CHECK(algorithm_of("qft_4") == "qft");
  CHECK(algorithm_of("w_state_3") == "w_state");
  CHECK(algorithm_of("bell") == "bell");
  CHECK(algorithm_of("foo_bar") == "foo_bar");
}

TEST_CASE("config validation") {
  ExperimentConfig cfg;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);  // dirs unset
  cfg.corpus_dir = "x";
  cfg.out_dir = "y";
  CHECK_NOTHROW(cfg.validate());
  cfg.runs = 1;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.runs = 2;
  cfg.q = 1.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("corpus hash tracks content") {
  Circuit a("a", 2);
  a.append({GateKind::H, {0}, {}});
  Circuit b = a;
  b.append({GateKind::X, {1}, {}});
  CHECK(corpus_hash({a}) != corpus_hash({b}));
  CHECK(corpus_hash({a}) == corpus_hash({a}));
}

TEST_CASE("end-to-end pipeline on a tiny corpus") {
  TempTree tree("qmut_test_pipe");
  const ExperimentConfig cfg = small_config(tree.root);
  run_full_pipeline(cfg, ThresholdStrategy::Noise);

  const std::vector<DistanceRecord> rows =
      read_distances_csv(cfg.out_dir + "/distances.csv");

  // Counting oracle: 8 mutants (quota 6 + 2 equivalents) x 8 inputs x
  // 2 backends x 2 runs x 5 metrics.
  CHECK(rows.size() == 8 * 8 * 2 * 2 * 5);

  std::set<std::string> mutants, metrics, backends;
  std::set<std::tuple<std::string, std::string, std::string, int, std::string>> keys;
  for (const DistanceRecord& r : rows) {
    mutants.insert(r.mutant_id);
    metrics.insert(r.metric);
    backends.insert(r.backend);
    keys.insert({r.mutant_id, r.input_id, r.backend, r.run_index, r.metric});
    CHECK(std::isfinite(r.value));
    if (r.metric != "expectation_diff") {
      CHECK(r.value >= 0.0);
      CHECK(r.value <= 1.0 + 1e-9);
    } else {
      CHECK(r.value >= 0.0);
      CHECK(r.value <= 2.0 + 1e-9);
    }
    CHECK(r.algorithm == "bell");
    CHECK((r.mutant_label == "equivalent" || r.mutant_label == "non_equivalent"));
  }
  CHECK(mutants.size() == 8);
  CHECK(metrics.size() == 5);
  CHECK(backends == std::set<std::string>{"depol", "noiseless"});
  CHECK(keys.size() == rows.size());  // (mutant, input, backend, run, metric) unique

  // Sorted by the ordering contract.
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto key = [](const DistanceRecord& r) {
      return std::tie(r.mutant_id, r.input_id, r.backend, r.run_index, r.metric);
    };
    CHECK(key(rows[i - 1]) <= key(rows[i]));
  }

  // Reversibility equivalents register as equivalent in every row.
  for (const DistanceRecord& r : rows)
    if (r.mutant_id.find("_equiv_") != std::string::npos)
      CHECK(r.mutant_label == "equivalent");

  const auto cells = stage_report(cfg);
  CHECK(cells.size() == 5 * 2);
  for (const auto& [key, cell] : cells)
    CHECK(cell.per_mutant.confusion.total() == 8);

  CHECK(fs::exists(cfg.out_dir + "/thresholds.json"));
  CHECK(fs::exists(cfg.out_dir + "/stats.csv"));
  CHECK(fs::exists(cfg.out_dir + "/run_meta.json"));
}

TEST_CASE("pipeline determinism and stage separability") {
  TempTree tree("qmut_test_pipe_det");
  ExperimentConfig cfg = small_config(tree.root);
  run_full_pipeline(cfg, ThresholdStrategy::Noise);
  const std::string distances1 = slurp(cfg.out_dir + "/distances.csv");
  const std::string report1 = slurp(cfg.out_dir + "/report_noise.json");
  const std::string detections1 = slurp(cfg.out_dir + "/detections_noise.csv");

  // Same seed, fresh output directory: byte-identical artifacts.
  ExperimentConfig cfg2 = cfg;
  cfg2.out_dir = (tree.root / "out2").string();
  run_full_pipeline(cfg2, ThresholdStrategy::Noise);
  CHECK(slurp(cfg2.out_dir + "/distances.csv") == distances1);
  CHECK(slurp(cfg2.out_dir + "/report_noise.json") == report1);

  // Stages D-E re-run from the distances CSV alone reproduce the report.
  fs::remove(cfg.out_dir + "/detections_noise.csv");
  fs::remove(cfg.out_dir + "/report_noise.json");
  stage_detect(cfg, ThresholdStrategy::Noise);
  stage_report(cfg);
  CHECK(slurp(cfg.out_dir + "/detections_noise.csv") == detections1);
  CHECK(slurp(cfg.out_dir + "/report_noise.json") == report1);

  // A different seed changes the sampled data.
  ExperimentConfig cfg3 = cfg;
  cfg3.out_dir = (tree.root / "out3").string();
  cfg3.master_seed = 8;
  run_full_pipeline(cfg3, ThresholdStrategy::Noise);
  CHECK(slurp(cfg3.out_dir + "/distances.csv") != distances1);
}

TEST_CASE("dissimilarity detections shrink monotonically from middle to above") {
  TempTree tree("qmut_test_pipe_mono");
  ExperimentConfig cfg = small_config(tree.root);
  run_full_pipeline(cfg, ThresholdStrategy::Middle);
  stage_detect(cfg, ThresholdStrategy::Above);

  auto count_detected = [](const std::vector<DistanceRecord>& rows,
                           const std::string& metric) {
    int n = 0;
    for (const DistanceRecord& r : rows)
      if (r.metric == metric && r.detected) ++n;
    return n;
  };
  const auto middle = read_distances_csv(cfg.out_dir + "/detections_middle.csv", true);
  const auto above = read_distances_csv(cfg.out_dir + "/detections_above.csv", true);
  for (const char* metric : {"trace_distance", "hellinger", "jensen_shannon",
                             "expectation_diff"})
    CHECK(count_detected(above, metric) <= count_detected(middle, metric));
}
