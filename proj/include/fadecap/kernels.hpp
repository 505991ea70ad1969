#pragma once

// Data-parallel inner loops used by the numerical modules: reductions over
// sampled spectra, elementwise logs, log-sum-exp, and batched Gaussian-mixture
// quadratic forms.  Every kernel has a scalar reference implementation and an
// AVX2+FMA variant selected at runtime; the two are equivalence-tested.

#include <complex>
#include <cstddef>
#include <vector>

namespace fadecap::kernels {

enum class Backend { scalar, avx2 };

// Batched Hermitian quadratic forms for a finite Gaussian mixture.
//
// Component k contributes  score[k] = bias[k] - q_k(y)  where
//   q_k(y) = sum_i diag[i][k] * |y_i|^2
//          + sum_{i<j} ( off_re[p][k] * Re(conj(y_i) y_j)
//                      + off_im[p][k] * Im(conj(y_i) y_j) )
// with pairs p enumerated as (0,1),(0,2),...,(n-2,n-1).  The caller folds the
// factor 2 and the sign of the imaginary part into off_re/off_im when packing
// an inverse covariance matrix.  Storage is coefficient-major with components
// padded to a multiple of 4; padded lanes carry bias = -1e300 and zero
// coefficients so they underflow to nothing in a log-sum-exp.
struct MixturePack {
  int dim = 0;     // complex vector length n
  int count = 0;   // live components
  int stride = 0;  // padded component count (multiple of 4)
  std::vector<double> bias;      // [stride]
  std::vector<double> diag;      // [dim * stride]
  std::vector<double> off_re;    // [npairs * stride]
  std::vector<double> off_im;    // [npairs * stride]

  static MixturePack make(int dim, int count);
  int pairs() const { return dim * (dim - 1) / 2; }
};

struct Ops {
  const char* name;
  double (*sum)(const double* x, std::size_t n);
  double (*dot)(const double* x, const double* y, std::size_t n);
  void (*axpy)(double a, const double* x, double* y, std::size_t n);  // y += a*x
  double (*sum_sq)(const double* x, std::size_t n);                   // sum x^2
  double (*sum_cube)(const double* x, std::size_t n);                 // sum x^3
  double (*sum_indexed)(const double* x, std::size_t n);              // sum i*x_i
  double (*sum_log1p_scaled)(const double* x, std::size_t n, double c);  // sum log1p(c*x)
  double (*sum_sq_over_1p)(const double* x, std::size_t n, double c);    // sum x^2/(1+c*x)
  void (*log_array)(const double* x, double* out, std::size_t n);        // out = log x, x > 0
  double (*logsumexp)(const double* x, std::size_t n);
  // scores[k] = bias[k] - quadratic form, for k < count (padded lanes too)
  void (*mixture_scores)(const MixturePack& pack, const double* abs_sq,
                         const double* cross_re, const double* cross_im,
                         double* scores);
  // sum x_k * conj(y_k)
  std::complex<double> (*dotc)(const std::complex<double>* x,
                               const std::complex<double>* y, std::size_t n);
};

bool backend_available(Backend b);
const Ops& ops(Backend b);  // throws if unavailable

// Active backend: resolved once from FADECAP_SIMD (scalar|avx2|auto), default
// auto.  set_active_backend overrides it (used by the equivalence tests).
const Ops& active();
Backend active_backend();
void set_active_backend(Backend b);

}  // namespace fadecap::kernels
