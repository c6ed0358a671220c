#include "doctest.h"
#include "qmut/records.hpp"

#include <filesystem>
#include <fstream>

using namespace qmut;

namespace {

DistanceRecord sample_row() {
  DistanceRecord r;
  r.algorithm = "bell";
  r.circuit_id = "bell_2";
  r.n_qubits = 2;
  r.mutant_id = "bell_2_remove_p0";
  r.mutant_label = "non_equivalent";
  r.op = "remove";
  r.gate_type = "single";
  r.segment = "beginning";
  r.input_id = "c0";
  r.input_type = "classical";
  r.backend = "noiseless";
  r.run_index = 3;
  r.metric = "hellinger";
  r.value = 0.12345678901234567;
  return r;
}

}  // namespace

TEST_CASE("header matches the file contract exactly") {
  CHECK(std::string(kDistancesHeader) ==
        "algorithm,circuit_id,n_qubits,mutant_id,mutant_label,operator,gate_type,"
        "segment,input_id,input_type,backend,run_index,metric,value");
}

TEST_CASE("csv round trip preserves every field and full precision") {
  const std::string path =
      (std::filesystem::temp_directory_path() / "qmut_test_distances.csv").string();
  write_distances_csv({sample_row()}, path);
  const std::vector<DistanceRecord> back = read_distances_csv(path);
  REQUIRE(back.size() == 1);
  const DistanceRecord& r = back[0];
  CHECK(r.algorithm == "bell");
  CHECK(r.circuit_id == "bell_2");
  CHECK(r.n_qubits == 2);
  CHECK(r.mutant_id == "bell_2_remove_p0");
  CHECK(r.mutant_label == "non_equivalent");
  CHECK(r.op == "remove");
  CHECK(r.gate_type == "single");
  CHECK(r.segment == "beginning");
  CHECK(r.input_id == "c0");
  CHECK(r.input_type == "classical");
  CHECK(r.backend == "noiseless");
  CHECK(r.run_index == 3);
  CHECK(r.metric == "hellinger");
  CHECK(r.value == 0.12345678901234567);  // %.17g survives the round trip bit-exact
  std::filesystem::remove(path);
}

TEST_CASE("detected column round trip") {
  const std::string path =
      (std::filesystem::temp_directory_path() / "qmut_test_detections.csv").string();
  DistanceRecord a = sample_row();
  a.detected = true;
  DistanceRecord b = sample_row();
  b.run_index = 4;
  write_distances_csv({a, b}, path, true);

  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == std::string(kDistancesHeader) + ",detected");

  const std::vector<DistanceRecord> back = read_distances_csv(path, true);
  REQUIRE(back.size() == 2);
  CHECK(back[0].detected);
  CHECK_FALSE(back[1].detected);
  std::filesystem::remove(path);
}

TEST_CASE("malformed rows rejected") {
  const std::string path =
      (std::filesystem::temp_directory_path() / "qmut_test_bad.csv").string();
  {
    std::ofstream out(path);
    out << kDistancesHeader << "\n";
    out << "too,few,fields\n";
  }
  CHECK_THROWS(read_distances_csv(path));
  std::filesystem::remove(path);
  CHECK_THROWS(read_distances_csv("/nonexistent/file.csv"));
}
