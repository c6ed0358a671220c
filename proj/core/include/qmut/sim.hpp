#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qmut/circuit.hpp"
#include "qmut/linalg.hpp"

namespace qmut {

// 2^n x 2^n Hermitian, trace-1, PSD state. Bit order: qubit 0 is the least
// significant bit of the basis index; bitstrings render qubit 0 rightmost.
struct DensityMatrix {
  int n_qubits = 0;
  CMat data;

  std::size_t dim() const { return std::size_t{1} << n_qubits; }

  static DensityMatrix zero_state(int n_qubits);

  // Diagonal as clamped, renormalized outcome probabilities keyed by basis index.
  std::vector<double> probabilities() const;
};

void save_density(const DensityMatrix& rho, const std::string& path);
DensityMatrix load_density(const std::string& path);

struct OutputDistribution {
  int n_qubits = 0;
  std::map<std::string, std::uint64_t> counts;
  std::uint64_t shots = 0;

  std::map<std::string, double> probabilities() const;
};

std::string bitstring_of(std::size_t basis_index, int n_qubits);

struct NoiseModel {
  std::string name;
  double oneq_depolarizing = 0.0;
  double twoq_depolarizing = 0.0;
  double amplitude_damping = 0.0;
  double phase_damping = 0.0;
  // Row-stochastic confusion matrix [true][read], applied to every qubit.
  double readout[2][2] = {{1.0, 0.0}, {0.0, 1.0}};

  void validate() const;
};

NoiseModel load_noise_model(const std::string& path);
void save_noise_model(const NoiseModel& nm, const std::string& path);

// Kraus sets; each satisfies sum K^dagger K = I.
std::vector<CMat> depolarizing_kraus_1q(double p);
std::vector<CMat> depolarizing_kraus_2q(double p);
std::vector<CMat> amplitude_damping_kraus(double gamma);
std::vector<CMat> phase_damping_kraus(double lambda);

// rho' = sum_k K rho K^dagger lifted to the full register. Throws when the
// Kraus set is incomplete on the target subspace (tolerance 1e-10).
DensityMatrix apply_channel(const DensityMatrix& rho, const std::vector<CMat>& kraus,
                            const std::vector<int>& targets);

void apply_unitary(DensityMatrix& rho, const CMat& u, const std::vector<int>& targets);

inline constexpr int kDefaultDensityCap = 12;

// Final pre-measurement state. With a noise model, the configured channels
// fire after each gate on that gate's qubits; ccx is expanded to an exact
// 1q/2q decomposition first so per-gate-class channels apply.
DensityMatrix run_density(const Circuit& c, const NoiseModel* nm = nullptr,
                          int qubit_cap = kDefaultDensityCap);

// Multinomial draw from diag(run_density), then per-qubit readout confusion
// bit-wise when the noise model defines it. Deterministic per seed.
OutputDistribution sample_counts(const Circuit& c, const NoiseModel* nm,
                                 std::uint64_t shots, std::uint64_t seed,
                                 int qubit_cap = kDefaultDensityCap);

// Tr(rho Z^(x)n) = sum_b rho_bb * (-1)^popcount(b).
double expectation_from_density(const DensityMatrix& rho);
double expectation_from_counts(const OutputDistribution& d);

}  // namespace qmut
