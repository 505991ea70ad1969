#include "fadecap/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fadecap::kernels {

MixturePack MixturePack::make(int dim, int count) {
  MixturePack p;
  p.dim = dim;
  p.count = count;
  p.stride = (count + 3) & ~3;
  p.bias.assign(static_cast<std::size_t>(p.stride), -1e300);
  p.diag.assign(static_cast<std::size_t>(dim) * p.stride, 0.0);
  p.off_re.assign(static_cast<std::size_t>(p.pairs()) * p.stride, 0.0);
  p.off_im.assign(static_cast<std::size_t>(p.pairs()) * p.stride, 0.0);
  return p;
}

namespace {

double s_sum(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i];
  return acc;
}

double s_dot(const double* x, const double* y, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

void s_axpy(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

double s_sum_sq(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * x[i];
  return acc;
}

double s_sum_cube(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * x[i] * x[i];
  return acc;
}

double s_sum_indexed(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += static_cast<double>(i) * x[i];
  return acc;
}

double s_sum_log1p_scaled(const double* x, std::size_t n, double c) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::log1p(c * x[i]);
  return acc;
}

double s_sum_sq_over_1p(const double* x, std::size_t n, double c) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * x[i] / (1.0 + c * x[i]);
  return acc;
}

void s_log_array(const double* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = std::log(x[i]);
}

double s_logsumexp(const double* x, std::size_t n) {
  if (n == 0) return -std::numeric_limits<double>::infinity();
  double m = x[0];
  for (std::size_t i = 1; i < n; ++i) m = std::max(m, x[i]);
  if (!std::isfinite(m)) return m;
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::exp(x[i] - m);
  return m + std::log(acc);
}

void s_mixture_scores(const MixturePack& pack, const double* abs_sq,
                      const double* cross_re, const double* cross_im,
                      double* scores) {
  const int stride = pack.stride;
  const int dim = pack.dim;
  const int pairs = pack.pairs();
  for (int k = 0; k < stride; ++k) {
    double q = 0.0;
    for (int i = 0; i < dim; ++i) q += pack.diag[std::size_t(i) * stride + k] * abs_sq[i];
    for (int p = 0; p < pairs; ++p) {
      q += pack.off_re[std::size_t(p) * stride + k] * cross_re[p];
      q += pack.off_im[std::size_t(p) * stride + k] * cross_im[p];
    }
    scores[k] = pack.bias[k] - q;
  }
}

std::complex<double> s_dotc(const std::complex<double>* x,
                            const std::complex<double>* y, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    // x * conj(y)
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].imag() * y[i].real() - x[i].real() * y[i].imag();
  }
  return {re, im};
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops ops = {
      "scalar",       s_sum,
      s_dot,          s_axpy,
      s_sum_sq,       s_sum_cube,
      s_sum_indexed,  s_sum_log1p_scaled,
      s_sum_sq_over_1p, s_log_array,
      s_logsumexp,    s_mixture_scores,
      s_dotc,
  };
  return ops;
}

}  // namespace fadecap::kernels
