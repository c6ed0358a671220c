#include "doctest.h"
#include "qmut/linalg.hpp"
#include "qmut/rng.hpp"

#include <algorithm>
#include <cmath>

#ifdef QMUT_HAVE_EIGEN
#include <Eigen/Dense>
#endif

using namespace qmut;

namespace {

CMat random_hermitian(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  CMat m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = rng.next_double() * 2.0 - 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx v(rng.next_double() * 2.0 - 1.0, rng.next_double() * 2.0 - 1.0);
      m(i, j) = v;
      m(j, i) = std::conj(v);
    }
  }
  return m;
}

}  // namespace

TEST_CASE("2x2 analytic eigenvalues") {
  // [[2, 1], [1, 2]] has eigenvalues 1 and 3.
  CMat m(2, 2);
  m(0, 0) = 2.0;
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  m(1, 1) = 2.0;
  const auto ev = hermitian_eigenvalues(m);
  CHECK(ev[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ev[1] == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("complex 2x2 analytic eigenvalues") {
  // [[0, -i], [i, 0]] (Pauli Y) has eigenvalues -1 and 1.
  CMat m(2, 2);
  m(0, 1) = cplx(0.0, -1.0);
  m(1, 0) = cplx(0.0, 1.0);
  const auto ev = hermitian_eigenvalues(m);
  CHECK(ev[0] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(ev[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("eigenvalue sum equals trace") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const CMat m = random_hermitian(8, 100 + s);
    const auto ev = hermitian_eigenvalues(m);
    double sum = 0.0;
    for (double v : ev) sum += v;
    CHECK(sum == doctest::Approx(m.trace().real()).epsilon(1e-10));
  }
}

TEST_CASE("eigenvectors satisfy A v = lambda v") {
  const CMat m = random_hermitian(6, 7);
  const EigenDecomposition ed = hermitian_eigendecomposition(m);
  for (std::size_t k = 0; k < 6; ++k) {
    for (std::size_t i = 0; i < 6; ++i) {
      cplx av = 0.0;
      for (std::size_t j = 0; j < 6; ++j) av += m(i, j) * ed.eigenvectors(j, k);
      CHECK(std::abs(av - ed.eigenvalues[k] * ed.eigenvectors(i, k)) < 1e-10);
    }
  }
}

TEST_CASE("eigenvalues ascending") {
  const auto ev = hermitian_eigenvalues(random_hermitian(10, 3));
  CHECK(std::is_sorted(ev.begin(), ev.end()));
}

#ifdef QMUT_HAVE_EIGEN
TEST_CASE("eigenvalues agree with a second implementation") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const std::size_t n = 2 + s % 9;
    const CMat m = random_hermitian(n, 500 + s);
    Eigen::MatrixXcd em(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) em(i, j) = m(i, j);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(em);
    const auto ours = hermitian_eigenvalues(m);
    for (std::size_t i = 0; i < n; ++i)
      CHECK(ours[i] == doctest::Approx(solver.eigenvalues()[i]).epsilon(1e-9));
  }
}
#endif

TEST_CASE("sqrtm squares back") {
  // Make a PSD matrix as B B^dagger.
  const CMat b = random_hermitian(5, 11);
  const CMat psd = b * b.adjoint();
  const CMat root = sqrtm_psd(psd);
  CHECK(approx_equal(root * root, psd, 1e-9));
  CHECK(approx_equal(root, root.adjoint(), 1e-9));
}

TEST_CASE("sqrtm of diagonal matrix") {
  CMat d(3, 3);
  d(0, 0) = 4.0;
  d(1, 1) = 9.0;
  d(2, 2) = 0.0;
  const CMat root = sqrtm_psd(d);
  CHECK(root(0, 0).real() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(root(1, 1).real() == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(std::abs(root(2, 2)) < 1e-12);
}

TEST_CASE("non-Hermitian input rejected") {
  CMat m(2, 2);
  m(0, 1) = 1.0;
  m(1, 0) = 2.0;
  CHECK_THROWS_AS(hermitian_eigenvalues(m), std::invalid_argument);
}

TEST_CASE("matrix algebra basics") {
  const CMat i2 = CMat::identity(2);
  const CMat sum = i2 + i2;
  CHECK(sum(0, 0) == cplx(2.0, 0.0));
  CHECK(sum.trace() == cplx(4.0, 0.0));
  CHECK((i2 * cplx(0.0, 1.0)).adjoint()(0, 0) == cplx(0.0, -1.0));
  CHECK(i2.frobenius_norm() == doctest::Approx(std::sqrt(2.0)));
}
