#include "qmut/records.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qmut {

namespace {

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

void write_distances_csv(const std::vector<DistanceRecord>& rows, const std::string& path,
                         bool with_detected) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write CSV: " + path);
  out << kDistancesHeader;
  if (with_detected) out << ",detected";
  out << "\n";
  for (const DistanceRecord& r : rows) {
    out << r.algorithm << ',' << r.circuit_id << ',' << r.n_qubits << ',' << r.mutant_id
        << ',' << r.mutant_label << ',' << r.op << ',' << r.gate_type << ',' << r.segment
        << ',' << r.input_id << ',' << r.input_type << ',' << r.backend << ','
        << r.run_index << ',' << r.metric << ',' << format_value(r.value);
    if (with_detected) out << ',' << (r.detected ? 1 : 0);
    out << "\n";
  }
}

std::vector<DistanceRecord> read_distances_csv(const std::string& path, bool with_detected) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open CSV: " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty CSV: " + path);
  std::vector<DistanceRecord> rows;
  const std::size_t expected = 14 + (with_detected ? 1 : 0);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> f = split_csv_line(line);
    if (f.size() != expected)
      throw std::runtime_error("malformed CSV row in " + path + ": " + line);
    DistanceRecord r;
    r.algorithm = f[0];
    r.circuit_id = f[1];
    r.n_qubits = std::stoi(f[2]);
    r.mutant_id = f[3];
    r.mutant_label = f[4];
    r.op = f[5];
    r.gate_type = f[6];
    r.segment = f[7];
    r.input_id = f[8];
    r.input_type = f[9];
    r.backend = f[10];
    r.run_index = std::stoi(f[11]);
    r.metric = f[12];
    r.value = std::stod(f[13]);
    if (with_detected) r.detected = f[14] == "1";
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace qmut
