#include "qmut/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>

namespace qmut {

namespace {

struct KindEntry {
  GateKind kind;
  GateInfo info;
};

const std::vector<KindEntry>& kind_table() {
  static const std::vector<KindEntry> table = {
      {GateKind::Id, {"id", 1, 0}},      {GateKind::X, {"x", 1, 0}},
      {GateKind::Y, {"y", 1, 0}},        {GateKind::Z, {"z", 1, 0}},
      {GateKind::H, {"h", 1, 0}},        {GateKind::S, {"s", 1, 0}},
      {GateKind::Sdg, {"sdg", 1, 0}},    {GateKind::T, {"t", 1, 0}},
      {GateKind::Tdg, {"tdg", 1, 0}},    {GateKind::Rx, {"rx", 1, 1}},
      {GateKind::Ry, {"ry", 1, 1}},      {GateKind::Rz, {"rz", 1, 1}},
      {GateKind::P, {"p", 1, 1}},        {GateKind::U, {"u", 1, 3}},
      {GateKind::Cx, {"cx", 2, 0}},      {GateKind::Cz, {"cz", 2, 0}},
      {GateKind::Cp, {"cp", 2, 1}},      {GateKind::Crx, {"crx", 2, 1}},
      {GateKind::Cry, {"cry", 2, 1}},    {GateKind::Crz, {"crz", 2, 1}},
      {GateKind::Swap, {"swap", 2, 0}},  {GateKind::Ccx, {"ccx", 3, 0}},
      {GateKind::Measure, {"measure", 1, 0}},
      {GateKind::Barrier, {"barrier", 0, 0}},
  };
  return table;
}

}  // namespace

const GateInfo& gate_info(GateKind kind) {
  for (const auto& e : kind_table())
    if (e.kind == kind) return e.info;
  throw std::logic_error("unknown gate kind");
}

std::optional<GateKind> gate_kind_from_name(const std::string& name) {
  for (const auto& e : kind_table())
    if (name == e.info.name) return e.kind;
  return std::nullopt;
}

bool is_pseudo_op(GateKind kind) {
  return kind == GateKind::Measure || kind == GateKind::Barrier;
}

namespace {

CMat mat1(cplx a, cplx b, cplx c, cplx d) {
  CMat m(2, 2);
  m(0, 0) = a;
  m(0, 1) = b;
  m(1, 0) = c;
  m(1, 1) = d;
  return m;
}

// Controlled version of a 1q unitary; control is local bit 0, target bit 1.
CMat controlled(const CMat& u) {
  CMat m = CMat::identity(4);
  // Basis index = bit0 + 2*bit1; control set means bit0 == 1.
  m(1, 1) = u(0, 0);
  m(1, 3) = u(0, 1);
  m(3, 1) = u(1, 0);
  m(3, 3) = u(1, 1);
  return m;
}

}  // namespace

CMat gate_matrix(GateKind kind, const std::vector<double>& params) {
  const GateInfo& info = gate_info(kind);
  if (is_pseudo_op(kind)) throw std::invalid_argument("pseudo-op has no unitary");
  if (static_cast<int>(params.size()) != info.param_count)
    throw std::invalid_argument(std::string("gate ") + info.name + " expects " +
                                std::to_string(info.param_count) + " parameter(s)");
  const cplx i1(0.0, 1.0);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  switch (kind) {
    case GateKind::Id: return CMat::identity(2);
    case GateKind::X: return mat1(0, 1, 1, 0);
    case GateKind::Y: return mat1(0, -i1, i1, 0);
    case GateKind::Z: return mat1(1, 0, 0, -1);
    case GateKind::H: return mat1(inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2);
    case GateKind::S: return mat1(1, 0, 0, i1);
    case GateKind::Sdg: return mat1(1, 0, 0, -i1);
    case GateKind::T: return mat1(1, 0, 0, std::exp(i1 * (M_PI / 4)));
    case GateKind::Tdg: return mat1(1, 0, 0, std::exp(-i1 * (M_PI / 4)));
    case GateKind::Rx: {
      const double c = std::cos(params[0] / 2), s = std::sin(params[0] / 2);
      return mat1(c, -i1 * s, -i1 * s, c);
    }
    case GateKind::Ry: {
      const double c = std::cos(params[0] / 2), s = std::sin(params[0] / 2);
      return mat1(c, -s, s, c);
    }
    case GateKind::Rz: {
      return mat1(std::exp(-i1 * (params[0] / 2)), 0, 0, std::exp(i1 * (params[0] / 2)));
    }
    case GateKind::P: return mat1(1, 0, 0, std::exp(i1 * params[0]));
    case GateKind::U: {
      const double th = params[0], ph = params[1], la = params[2];
      const double c = std::cos(th / 2), s = std::sin(th / 2);
      return mat1(c, -std::exp(i1 * la) * s, std::exp(i1 * ph) * s,
                  std::exp(i1 * (ph + la)) * c);
    }
    case GateKind::Cx: return controlled(gate_matrix(GateKind::X, {}));
    case GateKind::Cz: return controlled(gate_matrix(GateKind::Z, {}));
    case GateKind::Cp: return controlled(gate_matrix(GateKind::P, params));
    case GateKind::Crx: return controlled(gate_matrix(GateKind::Rx, params));
    case GateKind::Cry: return controlled(gate_matrix(GateKind::Ry, params));
    case GateKind::Crz: return controlled(gate_matrix(GateKind::Rz, params));
    case GateKind::Swap: {
      CMat m(4, 4);
      m(0, 0) = 1;
      m(1, 2) = 1;
      m(2, 1) = 1;
      m(3, 3) = 1;
      return m;
    }
    case GateKind::Ccx: {
      CMat m = CMat::identity(8);
      // Flip local bit 2 when bits 0 and 1 are set: swap |011> and |111>.
      m(3, 3) = 0;
      m(7, 7) = 0;
      m(3, 7) = 1;
      m(7, 3) = 1;
      return m;
    }
    default: throw std::logic_error("unhandled gate kind");
  }
}

bool GateOp::operator==(const GateOp& o) const {
  return kind == o.kind && qubits == o.qubits && params == o.params;
}

void Circuit::validate(const GateOp& op) const {
  const GateInfo& info = gate_info(op.kind);
  // Arity 0 marks variadic ops (barrier): any non-empty qubit list is fine.
  if (info.arity == 0 && op.qubits.empty())
    throw std::invalid_argument(std::string("gate ") + info.name +
                                " expects at least one qubit");
  if (info.arity != 0 && static_cast<int>(op.qubits.size()) != info.arity)
    throw std::invalid_argument(std::string("gate ") + info.name + " expects " +
                                std::to_string(info.arity) + " qubit(s)");
  if (static_cast<int>(op.params.size()) != info.param_count)
    throw std::invalid_argument(std::string("gate ") + info.name + " expects " +
                                std::to_string(info.param_count) + " parameter(s)");
  std::set<int> seen;
  for (int q : op.qubits) {
    if (q < 0 || q >= n_qubits_)
      throw std::invalid_argument("qubit index out of range: " + std::to_string(q));
    if (!seen.insert(q).second)
      throw std::invalid_argument("duplicate qubit index: " + std::to_string(q));
  }
}

void Circuit::append(GateOp op) {
  validate(op);
  ops_.push_back(std::move(op));
}

void Circuit::insert(std::size_t index, GateOp op) {
  validate(op);
  if (index > ops_.size()) throw std::out_of_range("insert index out of range");
  ops_.insert(ops_.begin() + static_cast<std::ptrdiff_t>(index), std::move(op));
}

void Circuit::remove(std::size_t index) {
  if (index >= ops_.size()) throw std::out_of_range("remove index out of range");
  ops_.erase(ops_.begin() + static_cast<std::ptrdiff_t>(index));
}

void Circuit::replace(std::size_t index, GateOp op) {
  validate(op);
  if (index >= ops_.size()) throw std::out_of_range("replace index out of range");
  ops_[index] = std::move(op);
}

std::size_t Circuit::n_gates() const {
  std::size_t n = 0;
  for (const GateOp& op : ops_)
    if (!is_pseudo_op(op.kind)) ++n;
  return n;
}

bool Circuit::structurally_equal(const Circuit& o) const {
  return n_qubits_ == o.n_qubits_ && measured_ == o.measured_ && ops_ == o.ops_;
}

Circuit compose(const Circuit& prep, const Circuit& body) {
  if (prep.n_qubits() != body.n_qubits())
    throw std::invalid_argument("compose: qubit count mismatch");
  if (prep.measured())
    throw std::invalid_argument("compose: prep circuit must not measure");
  Circuit out(body.name(), body.n_qubits());
  for (const GateOp& op : prep.ops()) out.append(op);
  for (const GateOp& op : body.ops()) out.append(op);
  out.set_measured(body.measured());
  return out;
}

CircuitCharacteristics characteristics(const Circuit& c) {
  CircuitCharacteristics ch;
  ch.n_qubits = c.n_qubits();
  std::vector<int> qubit_depth(static_cast<std::size_t>(c.n_qubits()), 0);
  for (const GateOp& op : c.ops()) {
    if (is_pseudo_op(op.kind)) continue;
    ++ch.n_gates;
    if (op.qubits.size() == 1)
      ++ch.n_single_qubit_gates;
    else
      ++ch.n_multi_qubit_gates;
    int level = 0;
    for (int q : op.qubits) level = std::max(level, qubit_depth[static_cast<std::size_t>(q)]);
    ++level;
    for (int q : op.qubits) qubit_depth[static_cast<std::size_t>(q)] = level;
    ch.depth = std::max(ch.depth, level);
  }
  return ch;
}

}  // namespace qmut
