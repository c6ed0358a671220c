#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qmut/linalg.hpp"

namespace qmut {

enum class GateKind {
  Id, X, Y, Z, H, S, Sdg, T, Tdg,
  Rx, Ry, Rz, P, U,
  Cx, Cz, Cp, Crx, Cry, Crz, Swap,
  Ccx,
  Measure, Barrier,
};

struct GateInfo {
  const char* name;
  int arity;        // qubits
  int param_count;  // real angles, radians
};

const GateInfo& gate_info(GateKind kind);
std::optional<GateKind> gate_kind_from_name(const std::string& name);
bool is_pseudo_op(GateKind kind);  // measure / barrier

// Unitary of a gate on its local qubit space. Local bit i corresponds to
// qubits[i], so basis index b = sum_i bit_i << i; controls are qubits[0..]
// and the target is the last entry, matching QASM argument order.
CMat gate_matrix(GateKind kind, const std::vector<double>& params);

struct GateOp {
  GateKind kind;
  std::vector<int> qubits;
  std::vector<double> params;

  bool operator==(const GateOp& o) const;
};

class Circuit {
 public:
  Circuit() = default;
  Circuit(std::string name, int n_qubits) : name_(std::move(name)), n_qubits_(n_qubits) {
    if (n_qubits < 1) throw std::invalid_argument("circuit needs at least one qubit");
  }

  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }
  int n_qubits() const { return n_qubits_; }
  bool measured() const { return measured_; }
  void set_measured(bool m) { measured_ = m; }

  const std::vector<GateOp>& ops() const { return ops_; }

  // Validates arity, parameter count, index range and distinctness.
  void append(GateOp op);
  void insert(std::size_t index, GateOp op);
  void remove(std::size_t index);
  void replace(std::size_t index, GateOp op);

  // Gate count excluding barrier/measure pseudo-ops.
  std::size_t n_gates() const;

  bool structurally_equal(const Circuit& o) const;

 private:
  void validate(const GateOp& op) const;

  std::string name_;
  int n_qubits_ = 1;
  std::vector<GateOp> ops_;
  bool measured_ = false;
};

struct CircuitCharacteristics {
  int n_qubits = 0;
  int n_gates = 0;
  int depth = 0;
  int n_single_qubit_gates = 0;
  int n_multi_qubit_gates = 0;
};

// prep.ops ++ body.ops on matching qubit counts; prep must be measurement-free.
Circuit compose(const Circuit& prep, const Circuit& body);

// Depth is the longest chain of ops sharing qubits; barrier/measure excluded.
CircuitCharacteristics characteristics(const Circuit& c);

}  // namespace qmut
