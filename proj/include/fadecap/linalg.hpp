#pragma once

// Small dense linear algebra for Hermitian problems: Cholesky factorization
// (real and complex), triangular solves, inverse assembly, and a Levinson
// solver for Hermitian Toeplitz systems.  Sizes stay small to moderate
// (n <= 4096); inner products run through the SIMD kernels.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace fadecap::linalg {

using cplx = std::complex<double>;

template <typename T>
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(int n, T fill = T{}) : n_(n), a_(std::size_t(n) * n, fill) {}
  int n() const { return n_; }
  T& operator()(int i, int j) { return a_[std::size_t(i) * n_ + j]; }
  const T& operator()(int i, int j) const { return a_[std::size_t(i) * n_ + j]; }
  T* row(int i) { return a_.data() + std::size_t(i) * n_; }
  const T* row(int i) const { return a_.data() + std::size_t(i) * n_; }
  std::vector<T>& data() { return a_; }
  const std::vector<T>& data() const { return a_; }

 private:
  int n_ = 0;
  std::vector<T> a_;
};

using CMatrix = SquareMatrix<cplx>;
using RMatrix = SquareMatrix<double>;

struct CholeskyFailure {
  bool ok = true;
  int pivot = -1;               // first non-positive pivot
  double condition_estimate = 0.0;  // max/min squared diagonal seen so far
};

// In-place lower Cholesky A = L L^H (complex Hermitian) or A = L L^T (real
// symmetric).  Only the lower triangle of A is read; L lands in the lower
// triangle.  Returns failure info instead of throwing so callers can report
// the condition estimate.
CholeskyFailure cholesky(CMatrix& a);
CholeskyFailure cholesky(RMatrix& a);

// Solve L y = b then L^H x = y (resp. L^T) given the factor from cholesky().
void cholesky_solve(const CMatrix& l, std::span<const cplx> b, std::span<cplx> x);
void cholesky_solve(const RMatrix& l, std::span<const double> b, std::span<double> x);

// log det(A) = 2 sum log L_ii for the factor from cholesky().
double cholesky_logdet(const CMatrix& l);

// Dense Hermitian inverse assembled from the Cholesky factor.
CMatrix inverse_from_cholesky(const CMatrix& l);

// y = L g for lower-triangular L (used to sample correlated Gaussians).
void lower_matvec(const CMatrix& l, std::span<const cplx> g, std::span<cplx> y);

// Solve T x = b for a Hermitian positive definite Toeplitz matrix given its
// first column t (t[0] real); O(n^2) Levinson recursion.
void toeplitz_solve(std::span<const cplx> t, std::span<const cplx> b,
                    std::span<cplx> x);

// tr(A^2) for Hermitian A equals the squared Frobenius norm.
double trace_sq_hermitian(const CMatrix& a);

}  // namespace fadecap::linalg
