#include "qmut/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qmut {

CMat CMat::adjoint() const {
  CMat out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

cplx CMat::trace() const {
  cplx t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double CMat::frobenius_norm() const {
  double s = 0.0;
  for (const cplx& v : data_) s += std::norm(v);
  return std::sqrt(s);
}

double CMat::max_abs() const {
  double m = 0.0;
  for (const cplx& v : data_) m = std::max(m, std::abs(v));
  return m;
}

CMat CMat::operator*(const CMat& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
  CMat out(rows_, o.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const cplx a = (*this)(r, k);
      if (a == cplx{}) continue;
      for (std::size_t c = 0; c < o.cols_; ++c) out(r, c) += a * o(k, c);
    }
  }
  return out;
}

CMat CMat::operator+(const CMat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw std::invalid_argument("matrix sum shape mismatch");
  CMat out(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] + o.data_[i];
  return out;
}

CMat CMat::operator-(const CMat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw std::invalid_argument("matrix difference shape mismatch");
  CMat out(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] - o.data_[i];
  return out;
}

CMat CMat::operator*(cplx s) const {
  CMat out(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] * s;
  return out;
}

bool approx_equal(const CMat& a, const CMat& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return (a - b).max_abs() <= tol;
}

namespace {

double hermiticity_deviation(const CMat& m) {
  double dev = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = r; c < m.cols(); ++c)
      dev = std::max(dev, std::abs(m(r, c) - std::conj(m(c, r))));
  return dev;
}

double offdiag_norm(const CMat& m) {
  double s = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (r != c) s += std::norm(m(r, c));
  return std::sqrt(s);
}

EigenDecomposition jacobi(const CMat& input, bool want_vectors) {
  if (input.rows() != input.cols())
    throw std::invalid_argument("hermitian eigensolver requires a square matrix");
  if (hermiticity_deviation(input) > 1e-8)
    throw std::invalid_argument("matrix is not Hermitian within 1e-8");

  const std::size_t n = input.rows();
  CMat a = input;
  // Symmetrize: folds the <=1e-8 Hermiticity slack into the working copy.
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      a(r, c) = 0.5 * (a(r, c) + std::conj(input(c, r)));

  CMat v;
  if (want_vectors) v = CMat::identity(n);

  const double target = 1e-12 * a.frobenius_norm();
  bool converged = offdiag_norm(a) <= target;
  for (int sweep = 0; sweep < 50 && !converged; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx g = a(p, q);
        const double absg = std::abs(g);
        if (absg == 0.0) continue;
        const double alpha = a(p, p).real();
        const double beta = a(q, q).real();
        const double tau = (beta - alpha) / (2.0 * absg);
        // Root of t^2 - 2*tau*t - 1 = 0 with the smaller magnitude.
        const double t = (tau >= 0.0) ? -1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                      : 1.0 / (-tau + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const cplx phase = g / absg;             // e^{i*phi}
        const cplx sp = s * phase;               // s * e^{i*phi}
        const cplx spc = s * std::conj(phase);   // s * e^{-i*phi}

        // A <- U^dagger A U with the (p,q) plane rotation
        // U = [[c, -s e^{i phi}], [s e^{-i phi}, c]].
        for (std::size_t k = 0; k < n; ++k) {
          const cplx akp = a(k, p);
          const cplx akq = a(k, q);
          a(k, p) = c * akp + spc * akq;
          a(k, q) = -sp * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx apk = a(p, k);
          const cplx aqk = a(q, k);
          a(p, k) = c * apk + sp * aqk;
          a(q, k) = -spc * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = cplx(a(p, p).real(), 0.0);
        a(q, q) = cplx(a(q, q).real(), 0.0);

        if (want_vectors) {
          for (std::size_t k = 0; k < n; ++k) {
            const cplx vkp = v(k, p);
            const cplx vkq = v(k, q);
            v(k, p) = c * vkp + spc * vkq;
            v(k, q) = -sp * vkp + c * vkq;
          }
        }
      }
    }
    converged = offdiag_norm(a) <= target;
  }
  if (!converged) throw std::runtime_error("Jacobi eigensolver failed to converge in 50 sweeps");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&a](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  EigenDecomposition out;
  out.eigenvalues.reserve(n);
  for (std::size_t i : order) out.eigenvalues.push_back(a(i, i).real());
  if (want_vectors) {
    out.eigenvectors = CMat(n, n);
    for (std::size_t c = 0; c < n; ++c)
      for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, c) = v(r, order[c]);
  }
  return out;
}

}  // namespace

std::vector<double> hermitian_eigenvalues(const CMat& m) {
  return jacobi(m, /*want_vectors=*/false).eigenvalues;
}

EigenDecomposition hermitian_eigendecomposition(const CMat& m) {
  return jacobi(m, /*want_vectors=*/true);
}

CMat sqrtm_psd(const CMat& m) {
  EigenDecomposition ed = hermitian_eigendecomposition(m);
  const std::size_t n = m.rows();
  // Clip float noise around zero before the sqrt: sqrt turns an O(eps)
  // eigenvalue perturbation into an O(sqrt(eps)) error in the trace.
  double lam_max = 0.0;
  for (double lam : ed.eigenvalues) lam_max = std::max(lam_max, std::abs(lam));
  const double cutoff = 1e-13 * lam_max;
  CMat scaled(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    const double lam = ed.eigenvalues[c] > cutoff ? ed.eigenvalues[c] : 0.0;
    const double root = std::sqrt(lam);
    for (std::size_t r = 0; r < n; ++r) scaled(r, c) = ed.eigenvectors(r, c) * root;
  }
  return scaled * ed.eigenvectors.adjoint();
}

}  // namespace qmut
