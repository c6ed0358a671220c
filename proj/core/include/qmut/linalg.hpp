#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace qmut {

using cplx = std::complex<double>;

// Dense row-major complex matrix. Dimensions here stay small (at most
// 2^12 x 2^12 for density matrices, 32x32 in the metric paths), so a plain
// vector-backed type is sufficient.
class CMat {
 public:
  CMat() = default;
  CMat(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static CMat identity(std::size_t n) {
    CMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::vector<cplx>& data() { return data_; }
  const std::vector<cplx>& data() const { return data_; }

  CMat adjoint() const;
  cplx trace() const;
  double frobenius_norm() const;
  double max_abs() const;

  CMat operator*(const CMat& o) const;
  CMat operator+(const CMat& o) const;
  CMat operator-(const CMat& o) const;
  CMat operator*(cplx s) const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<cplx> data_;
};

bool approx_equal(const CMat& a, const CMat& b, double tol);

struct EigenDecomposition {
  std::vector<double> eigenvalues;  // ascending
  CMat eigenvectors;                // columns match eigenvalue order
};

// Eigenvalues of a complex Hermitian matrix via cyclic Jacobi rotations.
// Sweeps run until the off-diagonal Frobenius norm drops below
// 1e-12 * ||m||_F, up to 50 sweeps. Throws std::invalid_argument when the
// input is not Hermitian (max deviation above 1e-8) and std::runtime_error
// on non-convergence.
std::vector<double> hermitian_eigenvalues(const CMat& m);

// Same iteration, also accumulating the eigenvector basis.
EigenDecomposition hermitian_eigendecomposition(const CMat& m);

// Square root of a PSD Hermitian matrix; eigenvalues below zero are clipped
// to zero before the sqrt (PSD holds only up to float tolerance).
CMat sqrtm_psd(const CMat& m);

}  // namespace qmut
