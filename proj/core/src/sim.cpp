#include "qmut/sim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

#include <nlohmann/json.hpp>

#include "qmut/rng.hpp"

namespace qmut {

DensityMatrix DensityMatrix::zero_state(int n_qubits) {
  DensityMatrix rho;
  rho.n_qubits = n_qubits;
  rho.data = CMat(rho.dim(), rho.dim());
  rho.data(0, 0) = 1.0;
  return rho;
}

std::vector<double> DensityMatrix::probabilities() const {
  std::vector<double> p(dim());
  double total = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) {
    p[i] = std::max(data(i, i).real(), 0.0);
    total += p[i];
  }
  if (total <= 0.0) throw std::runtime_error("density matrix has no probability mass");
  for (double& v : p) v /= total;
  return p;
}

namespace {
constexpr char kDensityMagic[8] = {'Q', 'M', 'U', 'T', 'D', 'M', '0', '1'};
}

void save_density(const DensityMatrix& rho, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write density file: " + path);
  out.write(kDensityMagic, 8);
  const std::uint32_t n = static_cast<std::uint32_t>(rho.n_qubits);
  out.write(reinterpret_cast<const char*>(&n), 4);
  for (const cplx& v : rho.data.data()) {
    const double re = v.real(), im = v.imag();
    out.write(reinterpret_cast<const char*>(&re), 8);
    out.write(reinterpret_cast<const char*>(&im), 8);
  }
}

DensityMatrix load_density(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open density file: " + path);
  char magic[8];
  in.read(magic, 8);
  if (!in || std::memcmp(magic, kDensityMagic, 8) != 0)
    throw std::runtime_error("bad density file magic: " + path);
  std::uint32_t n = 0;
  in.read(reinterpret_cast<char*>(&n), 4);
  DensityMatrix rho;
  rho.n_qubits = static_cast<int>(n);
  rho.data = CMat(rho.dim(), rho.dim());
  for (cplx& v : rho.data.data()) {
    double re = 0, im = 0;
    in.read(reinterpret_cast<char*>(&re), 8);
    in.read(reinterpret_cast<char*>(&im), 8);
    v = cplx(re, im);
  }
  if (!in) throw std::runtime_error("truncated density file: " + path);
  return rho;
}

std::map<std::string, double> OutputDistribution::probabilities() const {
  if (shots == 0) throw std::invalid_argument("distribution has no shots");
  std::map<std::string, double> p;
  for (const auto& [key, count] : counts)
    p[key] = static_cast<double>(count) / static_cast<double>(shots);
  return p;
}

std::string bitstring_of(std::size_t basis_index, int n_qubits) {
  std::string s(static_cast<std::size_t>(n_qubits), '0');
  // Qubit 0 is the rightmost character.
  for (int q = 0; q < n_qubits; ++q)
    if (basis_index >> q & 1) s[static_cast<std::size_t>(n_qubits - 1 - q)] = '1';
  return s;
}

void NoiseModel::validate() const {
  auto check01 = [](double v, const char* what) {
    if (!(v >= 0.0 && v <= 1.0))
      throw std::invalid_argument(std::string(what) + " must be in [0, 1]");
  };
  check01(oneq_depolarizing, "oneq_depolarizing");
  check01(twoq_depolarizing, "twoq_depolarizing");
  check01(amplitude_damping, "amplitude_damping");
  check01(phase_damping, "phase_damping");
  for (int r = 0; r < 2; ++r) {
    check01(readout[r][0], "readout entry");
    check01(readout[r][1], "readout entry");
    if (std::abs(readout[r][0] + readout[r][1] - 1.0) > 1e-12)
      throw std::invalid_argument("readout rows must sum to 1");
  }
}

NoiseModel load_noise_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open noise model: " + path);
  nlohmann::json j;
  in >> j;
  NoiseModel nm;
  nm.name = j.at("name").get<std::string>();
  nm.oneq_depolarizing = j.value("oneq_depolarizing", 0.0);
  nm.twoq_depolarizing = j.value("twoq_depolarizing", 0.0);
  nm.amplitude_damping = j.value("amplitude_damping", 0.0);
  nm.phase_damping = j.value("phase_damping", 0.0);
  if (j.contains("readout")) {
    const auto& r = j.at("readout");
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) nm.readout[a][b] = r.at(a).at(b).get<double>();
  }
  nm.validate();
  return nm;
}

void save_noise_model(const NoiseModel& nm, const std::string& path) {
  nlohmann::json j{
      {"name", nm.name},
      {"oneq_depolarizing", nm.oneq_depolarizing},
      {"twoq_depolarizing", nm.twoq_depolarizing},
      {"amplitude_damping", nm.amplitude_damping},
      {"phase_damping", nm.phase_damping},
      {"readout",
       {{nm.readout[0][0], nm.readout[0][1]}, {nm.readout[1][0], nm.readout[1][1]}}},
  };
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write noise model: " + path);
  out << j.dump(2) << "\n";
}

namespace {

const CMat& pauli(int i) {
  static const CMat I = CMat::identity(2);
  static const CMat X = gate_matrix(GateKind::X, {});
  static const CMat Y = gate_matrix(GateKind::Y, {});
  static const CMat Z = gate_matrix(GateKind::Z, {});
  switch (i) {
    case 0: return I;
    case 1: return X;
    case 2: return Y;
    default: return Z;
  }
}

CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ar = 0; ar < a.rows(); ++ar)
    for (std::size_t ac = 0; ac < a.cols(); ++ac)
      for (std::size_t br = 0; br < b.rows(); ++br)
        for (std::size_t bc = 0; bc < b.cols(); ++bc)
          out(ar * b.rows() + br, ac * b.cols() + bc) = a(ar, ac) * b(br, bc);
  return out;
}

void check_completeness(const std::vector<CMat>& kraus) {
  if (kraus.empty()) throw std::invalid_argument("empty Kraus set");
  const std::size_t d = kraus.front().rows();
  CMat sum(d, d);
  for (const CMat& k : kraus) sum = sum + k.adjoint() * k;
  if (!approx_equal(sum, CMat::identity(d), 1e-10))
    throw std::invalid_argument("Kraus set violates completeness");
}

}  // namespace

std::vector<CMat> depolarizing_kraus_1q(double p) {
  // rho -> (1-p) rho + p I/2.
  std::vector<CMat> ks;
  ks.push_back(pauli(0) * std::sqrt(1.0 - 3.0 * p / 4.0));
  for (int i = 1; i < 4; ++i) ks.push_back(pauli(i) * std::sqrt(p / 4.0));
  return ks;
}

std::vector<CMat> depolarizing_kraus_2q(double p) {
  // rho -> (1-p) rho + p I/4 on the two-qubit subspace.
  std::vector<CMat> ks;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      const double w = (a == 0 && b == 0) ? 1.0 - 15.0 * p / 16.0 : p / 16.0;
      // Local bit 0 is the first tensor slot in our indexing: kron(B, A)
      // gives index b1*2 + b0 with A acting on bit 0.
      ks.push_back(kron(pauli(b), pauli(a)) * std::sqrt(w));
    }
  return ks;
}

std::vector<CMat> amplitude_damping_kraus(double gamma) {
  CMat k0(2, 2), k1(2, 2);
  k0(0, 0) = 1.0;
  k0(1, 1) = std::sqrt(1.0 - gamma);
  k1(0, 1) = std::sqrt(gamma);
  return {k0, k1};
}

std::vector<CMat> phase_damping_kraus(double lambda) {
  CMat k0(2, 2), k1(2, 2);
  k0(0, 0) = 1.0;
  k0(1, 1) = std::sqrt(1.0 - lambda);
  k1(1, 1) = std::sqrt(lambda);
  return {k0, k1};
}

namespace {

// Left-multiplies rho by (U on targets) and right-multiplies by its adjoint.
// Targets map to local bits in order: local bit i <-> qubits targets[i].
void apply_local_left_right(DensityMatrix& rho, const CMat& u,
                            const std::vector<int>& targets) {
  const int k = static_cast<int>(targets.size());
  const std::size_t dim = rho.dim();
  const std::size_t sub = std::size_t{1} << k;
  std::vector<std::size_t> strides(targets.size());
  for (int i = 0; i < k; ++i) strides[static_cast<std::size_t>(i)] = std::size_t{1}
                                                                     << targets[static_cast<std::size_t>(i)];

  std::size_t target_mask = 0;
  for (std::size_t s : strides) target_mask |= s;

  std::vector<std::size_t> offsets(sub);
  for (std::size_t s = 0; s < sub; ++s) {
    std::size_t off = 0;
    for (int i = 0; i < k; ++i)
      if (s >> i & 1) off |= strides[static_cast<std::size_t>(i)];
    offsets[s] = off;
  }

  std::vector<cplx> buf(sub);

  // rho <- U rho (columns are statevectors for the left factor).
  for (std::size_t base = 0; base < dim; ++base) {
    if (base & target_mask) continue;
    for (std::size_t col = 0; col < dim; ++col) {
      for (std::size_t s = 0; s < sub; ++s) buf[s] = rho.data(base | offsets[s], col);
      for (std::size_t r = 0; r < sub; ++r) {
        cplx acc = 0.0;
        for (std::size_t s = 0; s < sub; ++s) acc += u(r, s) * buf[s];
        rho.data(base | offsets[r], col) = acc;
      }
    }
  }
  // rho <- rho U^dagger (rows transform by conj(U)).
  for (std::size_t base = 0; base < dim; ++base) {
    if (base & target_mask) continue;
    for (std::size_t row = 0; row < dim; ++row) {
      for (std::size_t s = 0; s < sub; ++s) buf[s] = rho.data(row, base | offsets[s]);
      for (std::size_t c = 0; c < sub; ++c) {
        cplx acc = 0.0;
        for (std::size_t s = 0; s < sub; ++s) acc += std::conj(u(c, s)) * buf[s];
        rho.data(row, base | offsets[c]) = acc;
      }
    }
  }
}

// Exact ccx expansion into 1q/2q gates so per-gate-class noise applies.
std::vector<GateOp> expand_ccx(const GateOp& op) {
  const int a = op.qubits[0], b = op.qubits[1], c = op.qubits[2];
  return {
      {GateKind::H, {c}, {}},   {GateKind::Cx, {b, c}, {}}, {GateKind::Tdg, {c}, {}},
      {GateKind::Cx, {a, c}, {}}, {GateKind::T, {c}, {}},   {GateKind::Cx, {b, c}, {}},
      {GateKind::Tdg, {c}, {}}, {GateKind::Cx, {a, c}, {}}, {GateKind::T, {b}, {}},
      {GateKind::T, {c}, {}},   {GateKind::H, {c}, {}},     {GateKind::Cx, {a, b}, {}},
      {GateKind::T, {a}, {}},   {GateKind::Tdg, {b}, {}},   {GateKind::Cx, {a, b}, {}},
  };
}

void apply_noise_after_gate(DensityMatrix& rho, const GateOp& op, const NoiseModel& nm) {
  if (op.qubits.size() == 1) {
    const std::vector<int> t = {op.qubits[0]};
    if (nm.oneq_depolarizing > 0.0)
      rho = apply_channel(rho, depolarizing_kraus_1q(nm.oneq_depolarizing), t);
    if (nm.amplitude_damping > 0.0)
      rho = apply_channel(rho, amplitude_damping_kraus(nm.amplitude_damping), t);
    if (nm.phase_damping > 0.0)
      rho = apply_channel(rho, phase_damping_kraus(nm.phase_damping), t);
  } else if (op.qubits.size() == 2) {
    if (nm.twoq_depolarizing > 0.0)
      rho = apply_channel(rho, depolarizing_kraus_2q(nm.twoq_depolarizing), op.qubits);
  }
}

}  // namespace

void apply_unitary(DensityMatrix& rho, const CMat& u, const std::vector<int>& targets) {
  if (u.rows() != u.cols() || u.rows() != (std::size_t{1} << targets.size()))
    throw std::invalid_argument("unitary dimension does not match target count");
  for (int t : targets)
    if (t < 0 || t >= rho.n_qubits) throw std::invalid_argument("target out of range");
  apply_local_left_right(rho, u, targets);
}

DensityMatrix apply_channel(const DensityMatrix& rho, const std::vector<CMat>& kraus,
                            const std::vector<int>& targets) {
  check_completeness(kraus);
  DensityMatrix out;
  out.n_qubits = rho.n_qubits;
  out.data = CMat(rho.dim(), rho.dim());
  for (const CMat& k : kraus) {
    DensityMatrix term = rho;
    apply_local_left_right(term, k, targets);
    out.data = out.data + term.data;
  }
  return out;
}

DensityMatrix run_density(const Circuit& c, const NoiseModel* nm, int qubit_cap) {
  if (c.n_qubits() > qubit_cap)
    throw std::invalid_argument("density mode is capped at " + std::to_string(qubit_cap) +
                                " qubits (circuit has " + std::to_string(c.n_qubits()) + ")");
  DensityMatrix rho = DensityMatrix::zero_state(c.n_qubits());
  for (const GateOp& top : c.ops()) {
    if (is_pseudo_op(top.kind)) continue;
    std::vector<GateOp> expanded =
        top.kind == GateKind::Ccx ? expand_ccx(top) : std::vector<GateOp>{top};
    for (const GateOp& op : expanded) {
      apply_local_left_right(rho, gate_matrix(op.kind, op.params), op.qubits);
      if (nm != nullptr) apply_noise_after_gate(rho, op, *nm);
    }
  }
  return rho;
}

OutputDistribution sample_counts(const Circuit& c, const NoiseModel* nm,
                                 std::uint64_t shots, std::uint64_t seed, int qubit_cap) {
  if (shots < 1) throw std::invalid_argument("shots must be >= 1");
  const DensityMatrix rho = run_density(c, nm, qubit_cap);
  const std::vector<double> probs = rho.probabilities();
  std::vector<double> cdf(probs.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    cdf[i] = acc;
  }
  cdf.back() = 1.0;

  const bool readout_noise =
      nm != nullptr && (nm->readout[0][1] > 0.0 || nm->readout[1][0] > 0.0);

  Rng rng(seed);
  OutputDistribution dist;
  dist.n_qubits = c.n_qubits();
  dist.shots = shots;
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double x = rng.next_double();
    std::size_t idx = static_cast<std::size_t>(
        std::lower_bound(cdf.begin(), cdf.end(), x) - cdf.begin());
    if (idx >= probs.size()) idx = probs.size() - 1;
    if (readout_noise) {
      for (int q = 0; q < c.n_qubits(); ++q) {
        const int truebit = static_cast<int>(idx >> q & 1);
        const double flip = nm->readout[truebit][1 - truebit];
        if (rng.next_double() < flip) idx ^= std::size_t{1} << q;
      }
    }
    ++dist.counts[bitstring_of(idx, c.n_qubits())];
  }
  return dist;
}

double expectation_from_density(const DensityMatrix& rho) {
  double v = 0.0;
  for (std::size_t b = 0; b < rho.dim(); ++b) {
    const double sign = std::popcount(b) % 2 == 0 ? 1.0 : -1.0;
    v += sign * rho.data(b, b).real();
  }
  return v;
}

double expectation_from_counts(const OutputDistribution& d) {
  if (d.shots == 0) throw std::invalid_argument("distribution has no shots");
  double v = 0.0;
  for (const auto& [key, count] : d.counts) {
    const auto ones = std::count(key.begin(), key.end(), '1');
    const double sign = ones % 2 == 0 ? 1.0 : -1.0;
    v += sign * static_cast<double>(count);
  }
  return v / static_cast<double>(d.shots);
}

}  // namespace qmut
