#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qmut/circuit.hpp"

namespace qmut {

enum class InputType { Classical, Quantum };

const char* input_type_name(InputType t);

struct TestInput {
  std::string id;
  InputType type;
  Circuit prep;  // measurement-free, same qubit count as the CUT
};

struct TestSuite {
  int n_qubits = 0;
  std::vector<TestInput> inputs;
};

enum class ClassicalRegime { Exhaustive, HalfSampled };

// Basis-state preps: x on each set bit of the index. Exhaustive emits all
// 2^n; HalfSampled draws 2^(n-1) distinct indices without replacement.
std::vector<Circuit> gen_classical(int n, ClassicalRegime regime, std::uint64_t seed);

// One u(theta, phi, lambda) layer with seeded angles in [0, 2*pi), then a
// cx chain q0->q1->...->q_{n-1}.
std::vector<Circuit> gen_quantum(int n, int count, std::uint64_t seed);

// n <= 4: exhaustive classical + equal quantum count (2^(n+1) inputs);
// n >= 5: half-sampled classical + equal quantum count (2^n inputs).
TestSuite build_suite(int n, std::uint64_t seed);

// Directory of prep QASM files plus manifest.json {id, type, file, seed}.
void save_suite(const TestSuite& suite, const std::string& dir, std::uint64_t seed);
TestSuite load_suite(const std::string& dir);

}  // namespace qmut
