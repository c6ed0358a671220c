#include "doctest.h"
#include "qmut/metrics.hpp"
#include "qmut/rng.hpp"
#include "qmut/circuit.hpp"

#include <cmath>

using namespace qmut;

namespace {

DensityMatrix pure_state(int n, const std::vector<cplx>& amps) {
  DensityMatrix rho;
  rho.n_qubits = n;
  rho.data = CMat(amps.size(), amps.size());
  for (std::size_t i = 0; i < amps.size(); ++i)
    for (std::size_t j = 0; j < amps.size(); ++j)
      rho.data(i, j) = amps[i] * std::conj(amps[j]);
  return rho;
}

DensityMatrix random_pure(int n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<cplx> amps(std::size_t{1} << n);
  double norm = 0.0;
  for (auto& a : amps) {
    a = cplx(rng.next_double() * 2.0 - 1.0, rng.next_double() * 2.0 - 1.0);
    norm += std::norm(a);
  }
  for (auto& a : amps) a /= std::sqrt(norm);
  return pure_state(n, amps);
}

std::map<std::string, double> random_dist(int n, std::uint64_t seed) {
  Rng rng(seed);
  std::map<std::string, double> p;
  double total = 0.0;
  for (int i = 0; i < (1 << n); ++i) {
    const double w = rng.next_double();
    total += w;
    p[bitstring_of(i, n)] = w;
  }
  for (auto& [k, v] : p) v /= total;
  return p;
}

}  // namespace

TEST_CASE("trace distance |0> vs |+> is 1/sqrt(2)") {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const DensityMatrix zero = pure_state(1, {1.0, 0.0});
  const DensityMatrix plus = pure_state(1, {inv_sqrt2, inv_sqrt2});
  CHECK(trace_distance(zero, plus) == doctest::Approx(inv_sqrt2).epsilon(1e-9));
}

TEST_CASE("orthogonal states maximally distant") {
  const DensityMatrix zero = pure_state(1, {1.0, 0.0});
  const DensityMatrix one = pure_state(1, {0.0, 1.0});
  CHECK(trace_distance(zero, one) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fidelity(zero, one) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("pure state fidelity is squared overlap") {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const DensityMatrix zero = pure_state(1, {1.0, 0.0});
  const DensityMatrix plus = pure_state(1, {inv_sqrt2, inv_sqrt2});
  CHECK(fidelity(zero, plus) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("metric identity and symmetry") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const DensityMatrix a = random_pure(2, 10 + s);
    const DensityMatrix b = random_pure(2, 50 + s);
    CHECK(trace_distance(a, a) < 1e-12);
    CHECK(fidelity(a, a) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(trace_distance(a, b) == doctest::Approx(trace_distance(b, a)).epsilon(1e-10));
    CHECK(fidelity(a, b) == doctest::Approx(fidelity(b, a)).epsilon(1e-8));
    CHECK(trace_distance(a, b) >= 0.0);
    CHECK(trace_distance(a, b) <= 1.0 + 1e-12);
    CHECK(fidelity(a, b) >= 0.0);
    CHECK(fidelity(a, b) <= 1.0);
  }
}

TEST_CASE("pure state identity D = sqrt(1 - F) over 200 seeded pairs") {
  for (std::uint64_t s = 0; s < 200; ++s) {
    const DensityMatrix a = random_pure(2, 1000 + 2 * s);
    const DensityMatrix b = random_pure(2, 1001 + 2 * s);
    const double d = trace_distance(a, b);
    const double f = fidelity(a, b);
    CHECK(std::abs(d - std::sqrt(1.0 - f)) < 1e-8);
  }
}

TEST_CASE("trace distance triangle inequality") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const DensityMatrix a = random_pure(2, 300 + 3 * s);
    const DensityMatrix b = random_pure(2, 301 + 3 * s);
    const DensityMatrix c = random_pure(2, 302 + 3 * s);
    CHECK(trace_distance(a, c) <= trace_distance(a, b) + trace_distance(b, c) + 1e-10);
  }
}

TEST_CASE("hellinger closed form") {
  // {00: .5, 11: .5} vs {00: 1}: (1/sqrt(2)) sqrt((sqrt(.5)-1)^2 + .5).
  const std::map<std::string, double> p{{"00", 0.5}, {"11", 0.5}};
  const std::map<std::string, double> q{{"00", 1.0}};
  const double expected =
      std::sqrt((std::pow(std::sqrt(0.5) - 1.0, 2) + 0.5) / 2.0);
  CHECK(hellinger(p, q) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(hellinger(p, q) == doctest::Approx(0.5411961001461971).epsilon(1e-9));
}

TEST_CASE("jensen-shannon closed form") {
  // {0: .5, 1: .5} vs {0: .75, 1: .25}, base-2 logs, distance form.
  const std::map<std::string, double> p{{"0", 0.5}, {"1", 0.5}};
  const std::map<std::string, double> q{{"0", 0.75}, {"1", 0.25}};
  auto h = [](double x) { return x > 0 ? -x * std::log2(x) : 0.0; };
  const double jsd =
      h(0.625) + h(0.375) - 0.5 * (h(0.5) + h(0.5)) - 0.5 * (h(0.75) + h(0.25));
  CHECK(jensen_shannon(p, q) == doctest::Approx(std::sqrt(jsd)).epsilon(1e-12));
  CHECK(jensen_shannon(p, q) == doctest::Approx(0.2208958).epsilon(1e-6));
}

TEST_CASE("distribution metrics on disjoint supports hit the maximum") {
  const std::map<std::string, double> p{{"00", 1.0}};
  const std::map<std::string, double> q{{"11", 1.0}};
  CHECK(hellinger(p, q) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(jensen_shannon(p, q) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("distribution metric properties on random distributions") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto p = random_dist(3, 700 + 2 * s);
    const auto q = random_dist(3, 701 + 2 * s);
    CHECK(hellinger(p, p) < 1e-12);
    CHECK(jensen_shannon(p, p) < 1e-12);
    CHECK(hellinger(p, q) == doctest::Approx(hellinger(q, p)).epsilon(1e-12));
    CHECK(jensen_shannon(p, q) == doctest::Approx(jensen_shannon(q, p)).epsilon(1e-12));
    CHECK(hellinger(p, q) >= 0.0);
    CHECK(hellinger(p, q) <= 1.0);
    CHECK(jensen_shannon(p, q) >= 0.0);
    CHECK(jensen_shannon(p, q) <= 1.0);
  }
}

TEST_CASE("expectation diff range and values") {
  CHECK(expectation_diff(1.0, -1.0) == doctest::Approx(2.0));
  CHECK(expectation_diff(0.3, 0.3) == doctest::Approx(0.0));
  CHECK(expectation_diff(-0.25, 0.5) == doctest::Approx(0.75));
}

TEST_CASE("output distribution overloads match probability maps") {
  OutputDistribution a, b;
  a.n_qubits = b.n_qubits = 1;
  a.shots = b.shots = 100;
  a.counts["0"] = 50;
  a.counts["1"] = 50;
  b.counts["0"] = 75;
  b.counts["1"] = 25;
  CHECK(hellinger(a, b) == doctest::Approx(hellinger(a.probabilities(), b.probabilities())));
  CHECK(jensen_shannon(a, b) == doctest::Approx(0.2208958).epsilon(1e-6));
}

TEST_CASE("metric metadata") {
  CHECK(metric_orientation(MetricKind::Fidelity) == Orientation::Similarity);
  CHECK(metric_orientation(MetricKind::TraceDistance) == Orientation::Dissimilarity);
  CHECK(metric_uses_density(MetricKind::TraceDistance));
  CHECK(metric_uses_density(MetricKind::Fidelity));
  CHECK_FALSE(metric_uses_density(MetricKind::Hellinger));
  for (MetricKind m : kAllMetrics) CHECK(metric_from_name(metric_name(m)) == m);
  CHECK_THROWS_AS(metric_from_name("nope"), std::invalid_argument);
}
