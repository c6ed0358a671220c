#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qmut {

// One row of the distances CSV. Column order is part of the file contract:
// algorithm,circuit_id,n_qubits,mutant_id,mutant_label,operator,gate_type,
// segment,input_id,input_type,backend,run_index,metric,value
struct DistanceRecord {
  std::string algorithm;
  std::string circuit_id;
  int n_qubits = 0;
  std::string mutant_id;
  std::string mutant_label;
  std::string op;        // mutation operator
  std::string gate_type; // single / multi
  std::string segment;
  std::string input_id;
  std::string input_type;
  std::string backend;
  int run_index = 0;
  std::string metric;
  double value = 0.0;

  bool detected = false;  // populated in detections CSV only
};

inline constexpr const char* kDistancesHeader =
    "algorithm,circuit_id,n_qubits,mutant_id,mutant_label,operator,gate_type,"
    "segment,input_id,input_type,backend,run_index,metric,value";

void write_distances_csv(const std::vector<DistanceRecord>& rows, const std::string& path,
                         bool with_detected = false);
std::vector<DistanceRecord> read_distances_csv(const std::string& path,
                                               bool with_detected = false);

}  // namespace qmut
