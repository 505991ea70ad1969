// AVX2+FMA variants of the kernels.  This translation unit is the only one
// compiled with -mavx2 -mfma; it is reached only after the runtime dispatcher
// has confirmed CPU support.

#include "fadecap/kernels.hpp"

#if defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

#include <cmath>
#include <limits>

namespace fadecap::kernels {
namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

inline double hmax(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_max_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_max_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

// log(x) for positive normal x.  x = m * 2^e with m in [1/sqrt2, sqrt2);
// log(m) = 2 atanh(z) with z = (m-1)/(m+1) evaluated by its odd series.
inline __m256d vlog(__m256d x) {
  const __m256d sqrt2 = _mm256_set1_pd(1.41421356237309514547);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d ln2_hi = _mm256_set1_pd(6.93147180369123816490e-01);
  const __m256d ln2_lo = _mm256_set1_pd(1.90821492927058770002e-10);
  const __m256d exp_magic = _mm256_set1_pd(4503599627370496.0);  // 2^52

  __m256i bits = _mm256_castpd_si256(x);
  // biased exponent as a double via the 2^52 shift trick
  __m256i ebits = _mm256_srli_epi64(bits, 52);
  __m256d e = _mm256_sub_pd(
      _mm256_castsi256_pd(_mm256_or_si256(
          ebits, _mm256_castpd_si256(exp_magic))),
      exp_magic);
  e = _mm256_sub_pd(e, _mm256_set1_pd(1023.0));
  // mantissa in [1, 2)
  __m256i mbits = _mm256_or_si256(
      _mm256_and_si256(bits, _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL)),
      _mm256_set1_epi64x(0x3FF0000000000000LL));
  __m256d m = _mm256_castsi256_pd(mbits);
  __m256d too_big = _mm256_cmp_pd(m, sqrt2, _CMP_GT_OQ);
  m = _mm256_blendv_pd(m, _mm256_mul_pd(m, half), too_big);
  e = _mm256_add_pd(e, _mm256_and_pd(too_big, one));

  __m256d z = _mm256_div_pd(_mm256_sub_pd(m, one), _mm256_add_pd(m, one));
  __m256d z2 = _mm256_mul_pd(z, z);
  __m256d p = _mm256_set1_pd(1.0 / 21.0);
  p = _mm256_fmadd_pd(p, z2, _mm256_set1_pd(1.0 / 19.0));
  p = _mm256_fmadd_pd(p, z2, _mm256_set1_pd(1.0 / 17.0));
  p = _mm256_fmadd_pd(p, z2, _mm256_set1_pd(1.0 / 15.0));
  p = _mm256_fmadd_pd(p, z2, _mm256_set1_pd(1.0 / 13.0));
  p = _mm256_fmadd_pd(p, z2, _mm256_set1_pd(1.0 / 11.0));
  p = _mm256_fmadd_pd(p, z2, _mm256_set1_pd(1.0 / 9.0));
  p = _mm256_fmadd_pd(p, z2, _mm256_set1_pd(1.0 / 7.0));
  p = _mm256_fmadd_pd(p, z2, _mm256_set1_pd(1.0 / 5.0));
  p = _mm256_fmadd_pd(p, z2, _mm256_set1_pd(1.0 / 3.0));
  __m256d w = _mm256_add_pd(z, z);
  __m256d logm = _mm256_fmadd_pd(_mm256_mul_pd(w, z2), p, w);
  // e*ln2 + log(m), split constant for accuracy
  return _mm256_add_pd(_mm256_fmadd_pd(e, ln2_hi, logm),
                       _mm256_mul_pd(e, ln2_lo));
}

// log1p(t) for t >= 0 via the u = 1+t correction: log1p(t) = log(u) * t/(u-1),
// exact fallback to t when u rounds to 1.
inline __m256d vlog1p(__m256d t) {
  const __m256d one = _mm256_set1_pd(1.0);
  __m256d u = _mm256_add_pd(one, t);
  __m256d d = _mm256_sub_pd(u, one);
  __m256d l = vlog(u);
  __m256d corrected = _mm256_mul_pd(l, _mm256_div_pd(t, d));
  __m256d tiny = _mm256_cmp_pd(d, _mm256_setzero_pd(), _CMP_EQ_OQ);
  return _mm256_blendv_pd(corrected, t, tiny);
}

// exp(x) with x clamped to [-708, 709]: x = k ln2 + r, exp(r) by Taylor,
// scale by 2^k through the exponent bits.
inline __m256d vexp(__m256d x) {
  const __m256d log2e = _mm256_set1_pd(1.44269504088896340736);
  const __m256d ln2_hi = _mm256_set1_pd(6.93147180369123816490e-01);
  const __m256d ln2_lo = _mm256_set1_pd(1.90821492927058770002e-10);
  x = _mm256_max_pd(_mm256_set1_pd(-708.0), _mm256_min_pd(_mm256_set1_pd(709.0), x));
  __m256d k = _mm256_round_pd(_mm256_mul_pd(x, log2e),
                              _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(k, ln2_hi, x);
  r = _mm256_fnmadd_pd(k, ln2_lo, r);
  __m256d p = _mm256_set1_pd(1.0 / 6227020800.0);  // 1/13!
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 479001600.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 39916800.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 3628800.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 362880.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 40320.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 5040.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 720.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 120.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 24.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 6.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(0.5));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0));
  __m128i k32 = _mm256_cvtpd_epi32(k);
  __m256i k64 = _mm256_cvtepi32_epi64(k32);
  __m256i scale = _mm256_slli_epi64(
      _mm256_add_epi64(k64, _mm256_set1_epi64x(1023)), 52);
  return _mm256_mul_pd(p, _mm256_castsi256_pd(scale));
}

double a_sum(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
  double r = hsum(acc);
  for (; i < n; ++i) r += x[i];
  return r;
}

double a_dot(const double* x, const double* y, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc);
  double r = hsum(acc);
  for (; i < n; ++i) r += x[i] * y[i];
  return r;
}

void a_axpy(double a, const double* x, double* y, std::size_t n) {
  __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i),
                                            _mm256_loadu_pd(y + i)));
  for (; i < n; ++i) y[i] += a * x[i];
}

double a_sum_sq(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v = _mm256_loadu_pd(x + i);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  double r = hsum(acc);
  for (; i < n; ++i) r += x[i] * x[i];
  return r;
}

double a_sum_cube(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v = _mm256_loadu_pd(x + i);
    acc = _mm256_fmadd_pd(_mm256_mul_pd(v, v), v, acc);
  }
  double r = hsum(acc);
  for (; i < n; ++i) r += x[i] * x[i] * x[i];
  return r;
}

double a_sum_indexed(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  __m256d idx = _mm256_set_pd(3.0, 2.0, 1.0, 0.0);
  const __m256d four = _mm256_set1_pd(4.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_fmadd_pd(idx, _mm256_loadu_pd(x + i), acc);
    idx = _mm256_add_pd(idx, four);
  }
  double r = hsum(acc);
  for (; i < n; ++i) r += static_cast<double>(i) * x[i];
  return r;
}

double a_sum_log1p_scaled(const double* x, std::size_t n, double c) {
  __m256d acc = _mm256_setzero_pd();
  __m256d vc = _mm256_set1_pd(c);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_add_pd(acc, vlog1p(_mm256_mul_pd(vc, _mm256_loadu_pd(x + i))));
  double r = hsum(acc);
  for (; i < n; ++i) r += std::log1p(c * x[i]);
  return r;
}

double a_sum_sq_over_1p(const double* x, std::size_t n, double c) {
  __m256d acc = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  __m256d vc = _mm256_set1_pd(c);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v = _mm256_loadu_pd(x + i);
    acc = _mm256_add_pd(acc, _mm256_div_pd(_mm256_mul_pd(v, v),
                                           _mm256_fmadd_pd(vc, v, one)));
  }
  double r = hsum(acc);
  for (; i < n; ++i) r += x[i] * x[i] / (1.0 + c * x[i]);
  return r;
}

void a_log_array(const double* x, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(out + i, vlog(_mm256_loadu_pd(x + i)));
  for (; i < n; ++i) out[i] = std::log(x[i]);
}

double a_logsumexp(const double* x, std::size_t n) {
  if (n == 0) return -std::numeric_limits<double>::infinity();
  std::size_t i = 0;
  double m;
  if (n >= 4) {
    __m256d vm = _mm256_loadu_pd(x);
    for (i = 4; i + 4 <= n; i += 4) vm = _mm256_max_pd(vm, _mm256_loadu_pd(x + i));
    m = hmax(vm);
  } else {
    m = x[0];
    i = 1;
  }
  for (; i < n; ++i) m = std::max(m, x[i]);
  if (!std::isfinite(m)) return m;
  __m256d vmax = _mm256_set1_pd(m);
  __m256d acc = _mm256_setzero_pd();
  for (i = 0; i + 4 <= n; i += 4)
    acc = _mm256_add_pd(acc, vexp(_mm256_sub_pd(_mm256_loadu_pd(x + i), vmax)));
  double s = hsum(acc);
  for (; i < n; ++i) s += std::exp(x[i] - m);
  return m + std::log(s);
}

void a_mixture_scores(const MixturePack& pack, const double* abs_sq,
                      const double* cross_re, const double* cross_im,
                      double* scores) {
  const int stride = pack.stride;
  const int dim = pack.dim;
  const int pairs = pack.pairs();
  for (int k = 0; k < stride; k += 4) {
    __m256d q = _mm256_setzero_pd();
    for (int i = 0; i < dim; ++i)
      q = _mm256_fmadd_pd(_mm256_loadu_pd(&pack.diag[std::size_t(i) * stride + k]),
                          _mm256_set1_pd(abs_sq[i]), q);
    for (int p = 0; p < pairs; ++p) {
      q = _mm256_fmadd_pd(_mm256_loadu_pd(&pack.off_re[std::size_t(p) * stride + k]),
                          _mm256_set1_pd(cross_re[p]), q);
      q = _mm256_fmadd_pd(_mm256_loadu_pd(&pack.off_im[std::size_t(p) * stride + k]),
                          _mm256_set1_pd(cross_im[p]), q);
    }
    _mm256_storeu_pd(scores + k, _mm256_sub_pd(_mm256_loadu_pd(&pack.bias[k]), q));
  }
}

std::complex<double> a_dotc(const std::complex<double>* x,
                            const std::complex<double>* y, std::size_t n) {
  const double* xp = reinterpret_cast<const double*>(x);
  const double* yp = reinterpret_cast<const double*>(y);
  const __m256d signs = _mm256_set_pd(1.0, -1.0, 1.0, -1.0);  // [-,+,-,+]
  __m256d racc = _mm256_setzero_pd();
  __m256d iacc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d vx = _mm256_loadu_pd(xp + 2 * i);
    __m256d vy = _mm256_loadu_pd(yp + 2 * i);
    racc = _mm256_fmadd_pd(vx, vy, racc);  // xr*yr, xi*yi pairs
    __m256d ys = _mm256_permute_pd(vy, 0x5);  // swap re/im in each complex
    iacc = _mm256_fmadd_pd(_mm256_mul_pd(vx, signs), ys, iacc);  // -xr*yi, xi*yr
  }
  double re = hsum(racc);
  double im = hsum(iacc);
  for (; i < n; ++i) {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].imag() * y[i].real() - x[i].real() * y[i].imag();
  }
  return {re, im};
}

}  // namespace

const Ops* avx2_ops_or_null() {
  static const Ops ops = {
      "avx2",         a_sum,
      a_dot,          a_axpy,
      a_sum_sq,       a_sum_cube,
      a_sum_indexed,  a_sum_log1p_scaled,
      a_sum_sq_over_1p, a_log_array,
      a_logsumexp,    a_mixture_scores,
      a_dotc,
  };
  return &ops;
}

}  // namespace fadecap::kernels

#else  // non-x86 or AVX2 not enabled for this TU

namespace fadecap::kernels {
const Ops* avx2_ops_or_null() { return nullptr; }
}  // namespace fadecap::kernels

#endif
