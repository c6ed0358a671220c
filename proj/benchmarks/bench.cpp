#include <benchmark/benchmark.h>

#include "qmut/linalg.hpp"
#include "qmut/metrics.hpp"
#include "qmut/rng.hpp"
#include "qmut/sim.hpp"

using namespace qmut;

namespace {

Circuit ghz(int n) {
  Circuit c("ghz", n);
  c.append({GateKind::H, {0}, {}});
  for (int i = 0; i + 1 < n; ++i) c.append({GateKind::Cx, {i, i + 1}, {}});
  return c;
}

CMat random_hermitian(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  CMat m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = rng.next_double();
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx v(rng.next_double() - 0.5, rng.next_double() - 0.5);
      m(i, j) = v;
      m(j, i) = std::conj(v);
    }
  }
  return m;
}

NoiseModel depol() {
  NoiseModel nm;
  nm.name = "depol";
  nm.oneq_depolarizing = 0.002;
  nm.twoq_depolarizing = 0.01;
  return nm;
}

void BM_density_noiseless(benchmark::State& state) {
  const Circuit c = ghz(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(run_density(c));
}
BENCHMARK(BM_density_noiseless)->Arg(4)->Arg(6)->Arg(8)->Arg(10);

void BM_density_noisy(benchmark::State& state) {
  const Circuit c = ghz(static_cast<int>(state.range(0)));
  const NoiseModel nm = depol();
  for (auto _ : state) benchmark::DoNotOptimize(run_density(c, &nm));
}
BENCHMARK(BM_density_noisy)->Arg(4)->Arg(6)->Arg(8);

void BM_sampling(benchmark::State& state) {
  const Circuit c = ghz(6);
  std::uint64_t seed = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(sample_counts(c, nullptr, state.range(0), ++seed));
}
BENCHMARK(BM_sampling)->Arg(1000)->Arg(10000);

void BM_eigensolver(benchmark::State& state) {
  const CMat m = random_hermitian(static_cast<std::size_t>(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(hermitian_eigenvalues(m));
}
BENCHMARK(BM_eigensolver)->Arg(16)->Arg(32)->Arg(64);

void BM_trace_distance(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const NoiseModel nm = depol();
  const DensityMatrix a = run_density(ghz(n));
  const DensityMatrix b = run_density(ghz(n), &nm);
  for (auto _ : state) benchmark::DoNotOptimize(trace_distance(a, b));
}
BENCHMARK(BM_trace_distance)->Arg(4)->Arg(6);

void BM_fidelity(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const NoiseModel nm = depol();
  const DensityMatrix a = run_density(ghz(n));
  const DensityMatrix b = run_density(ghz(n), &nm);
  for (auto _ : state) benchmark::DoNotOptimize(fidelity(a, b));
}
BENCHMARK(BM_fidelity)->Arg(4)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
