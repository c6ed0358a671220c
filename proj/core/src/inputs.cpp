#include "qmut/inputs.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "qmut/qasm.hpp"
#include "qmut/rng.hpp"

namespace qmut {

namespace fs = std::filesystem;

const char* input_type_name(InputType t) {
  return t == InputType::Classical ? "classical" : "quantum";
}

namespace {

Circuit basis_prep(int n, std::uint64_t index) {
  Circuit c("basis_" + std::to_string(index), n);
  for (int q = 0; q < n; ++q)
    if (index >> q & 1) c.append({GateKind::X, {q}, {}});
  return c;
}

constexpr int kInputQubitCap = 20;

}  // namespace

std::vector<Circuit> gen_classical(int n, ClassicalRegime regime, std::uint64_t seed) {
  if (n < 1 || n > kInputQubitCap)
    throw std::invalid_argument("classical input qubit count out of range");
  std::vector<Circuit> preps;
  if (regime == ClassicalRegime::Exhaustive) {
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t k = 0; k < total; ++k) preps.push_back(basis_prep(n, k));
  } else {
    const std::uint64_t total = std::uint64_t{1} << n;
    const std::uint64_t want = total / 2;
    // Seeded Fisher-Yates over all indices, take the first half.
    std::vector<std::uint64_t> indices(total);
    std::iota(indices.begin(), indices.end(), 0);
    Rng rng(seed);
    for (std::size_t i = indices.size() - 1; i > 0; --i)
      std::swap(indices[i], indices[rng.next_below(i + 1)]);
    indices.resize(want);
    std::sort(indices.begin(), indices.end());
    for (std::uint64_t k : indices) preps.push_back(basis_prep(n, k));
  }
  return preps;
}

std::vector<Circuit> gen_quantum(int n, int count, std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("quantum input count must be >= 1");
  std::vector<Circuit> preps;
  Rng rng(seed);
  for (int i = 0; i < count; ++i) {
    Circuit c("quantum_" + std::to_string(i), n);
    for (int q = 0; q < n; ++q) {
      const double theta = rng.next_double() * 2.0 * M_PI;
      const double phi = rng.next_double() * 2.0 * M_PI;
      const double lambda = rng.next_double() * 2.0 * M_PI;
      c.append({GateKind::U, {q}, {theta, phi, lambda}});
    }
    for (int q = 0; q + 1 < n; ++q) c.append({GateKind::Cx, {q, q + 1}, {}});
    preps.push_back(std::move(c));
  }
  return preps;
}

TestSuite build_suite(int n, std::uint64_t seed) {
  TestSuite suite;
  suite.n_qubits = n;
  const ClassicalRegime regime =
      n <= 4 ? ClassicalRegime::Exhaustive : ClassicalRegime::HalfSampled;
  std::vector<Circuit> classical =
      gen_classical(n, regime, task_seed(seed, "inputs|classical"));
  std::vector<Circuit> quantum = gen_quantum(n, static_cast<int>(classical.size()),
                                             task_seed(seed, "inputs|quantum"));
  int idx = 0;
  for (Circuit& c : classical) {
    suite.inputs.push_back({"c" + std::to_string(idx++), InputType::Classical, std::move(c)});
  }
  idx = 0;
  for (Circuit& c : quantum) {
    suite.inputs.push_back({"q" + std::to_string(idx++), InputType::Quantum, std::move(c)});
  }
  return suite;
}

void save_suite(const TestSuite& suite, const std::string& dir, std::uint64_t seed) {
  fs::create_directories(dir);
  nlohmann::json manifest = nlohmann::json::array();
  for (const TestInput& input : suite.inputs) {
    const std::string file = input.id + ".qasm";
    save_qasm_file(input.prep, (fs::path(dir) / file).string());
    manifest.push_back({{"id", input.id},
                        {"type", input_type_name(input.type)},
                        {"file", file}});
  }
  nlohmann::json j{{"n_qubits", suite.n_qubits}, {"seed", seed}, {"inputs", manifest}};
  std::ofstream out(fs::path(dir) / "manifest.json");
  out << j.dump(2) << "\n";
}

TestSuite load_suite(const std::string& dir) {
  std::ifstream in(fs::path(dir) / "manifest.json");
  if (!in) throw std::runtime_error("cannot open suite manifest in " + dir);
  nlohmann::json j;
  in >> j;
  TestSuite suite;
  suite.n_qubits = j.at("n_qubits").get<int>();
  for (const auto& e : j.at("inputs")) {
    TestInput input;
    input.id = e.at("id").get<std::string>();
    input.type = e.at("type").get<std::string>() == "classical" ? InputType::Classical
                                                                : InputType::Quantum;
    input.prep = load_qasm_file((fs::path(dir) / e.at("file").get<std::string>()).string());
    suite.inputs.push_back(std::move(input));
  }
  return suite;
}

}  // namespace qmut
