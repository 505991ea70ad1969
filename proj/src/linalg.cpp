#include "fadecap/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fadecap/kernels.hpp"

namespace fadecap::linalg {

CholeskyFailure cholesky(CMatrix& a) {
  const auto& k = kernels::active();
  const int n = a.n();
  CholeskyFailure info;
  double dmax = 0.0, dmin = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      cplx s = a(i, j) - k.dotc(a.row(i), a.row(j), std::size_t(j));
      if (j < i) {
        a(i, j) = s / a(j, j).real();
      } else {
        double d = s.real();
        if (i == 0) {
          dmax = dmin = d;
        } else {
          dmax = std::max(dmax, d);
          dmin = std::min(dmin, d);
        }
        if (!(d > 0.0)) {
          info.ok = false;
          info.pivot = i;
          info.condition_estimate = dmin > 0.0 ? dmax / dmin : INFINITY;
          return info;
        }
        a(i, i) = std::sqrt(d);
      }
    }
  }
  info.condition_estimate = dmin > 0.0 ? dmax / dmin : INFINITY;
  return info;
}

CholeskyFailure cholesky(RMatrix& a) {
  const auto& k = kernels::active();
  const int n = a.n();
  CholeskyFailure info;
  double dmax = 0.0, dmin = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = a(i, j) - k.dot(a.row(i), a.row(j), std::size_t(j));
      if (j < i) {
        a(i, j) = s / a(j, j);
      } else {
        if (i == 0) {
          dmax = dmin = s;
        } else {
          dmax = std::max(dmax, s);
          dmin = std::min(dmin, s);
        }
        if (!(s > 0.0)) {
          info.ok = false;
          info.pivot = i;
          info.condition_estimate = dmin > 0.0 ? dmax / dmin : INFINITY;
          return info;
        }
        a(i, i) = std::sqrt(s);
      }
    }
  }
  info.condition_estimate = dmin > 0.0 ? dmax / dmin : INFINITY;
  return info;
}

void cholesky_solve(const CMatrix& l, std::span<const cplx> b, std::span<cplx> x) {
  const int n = l.n();
  for (int i = 0; i < n; ++i) {
    cplx s = b[i];
    for (int j = 0; j < i; ++j) s -= l(i, j) * x[j];
    x[i] = s / l(i, i).real();
  }
  for (int i = n - 1; i >= 0; --i) {
    cplx s = x[i];
    for (int j = i + 1; j < n; ++j) s -= std::conj(l(j, i)) * x[j];
    x[i] = s / l(i, i).real();
  }
}

void cholesky_solve(const RMatrix& l, std::span<const double> b, std::span<double> x) {
  const int n = l.n();
  for (int i = 0; i < n; ++i) {
    double s = b[i];
    for (int j = 0; j < i; ++j) s -= l(i, j) * x[j];
    x[i] = s / l(i, i);
  }
  for (int i = n - 1; i >= 0; --i) {
    double s = x[i];
    for (int j = i + 1; j < n; ++j) s -= l(j, i) * x[j];
    x[i] = s / l(i, i);
  }
}

double cholesky_logdet(const CMatrix& l) {
  double acc = 0.0;
  for (int i = 0; i < l.n(); ++i) acc += std::log(l(i, i).real());
  return 2.0 * acc;
}

CMatrix inverse_from_cholesky(const CMatrix& l) {
  const int n = l.n();
  // X = L^{-1}, lower triangular
  CMatrix x(n);
  for (int j = 0; j < n; ++j) {
    x(j, j) = 1.0 / l(j, j).real();
    for (int i = j + 1; i < n; ++i) {
      cplx s = 0.0;
      for (int k = j; k < i; ++k) s += l(i, k) * x(k, j);
      x(i, j) = -s / l(i, i).real();
    }
  }
  // A^{-1} = X^H X
  CMatrix inv(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      cplx s = 0.0;
      for (int k = std::max(i, j); k < n; ++k) s += std::conj(x(k, i)) * x(k, j);
      inv(i, j) = s;
    }
  }
  return inv;
}

void lower_matvec(const CMatrix& l, std::span<const cplx> g, std::span<cplx> y) {
  const int n = l.n();
  for (int i = 0; i < n; ++i) {
    cplx s = 0.0;
    for (int j = 0; j <= i; ++j) s += l(i, j) * g[j];
    y[i] = s;
  }
}

void toeplitz_solve(std::span<const cplx> t, std::span<const cplx> b,
                    std::span<cplx> x) {
  const int n = static_cast<int>(t.size());
  if (n == 0) return;
  const double t0 = t[0].real();
  if (!(t0 > 0.0)) throw std::runtime_error("toeplitz_solve: non-positive diagonal");
  if (n == 1) {
    x[0] = b[0] / t0;
    return;
  }
  // Levinson recursion with the first column normalized to t[0] = 1.
  std::vector<cplx> r(n - 1), y(n - 1), y_prev(n - 1);
  for (int i = 0; i + 1 < n; ++i) r[i] = t[i + 1] / t0;

  x[0] = b[0] / t0;
  y[0] = -r[0];
  cplx alpha = -r[0];
  double beta = 1.0;
  for (int k = 1; k < n; ++k) {
    beta *= 1.0 - std::norm(alpha);
    if (!(beta > 0.0))
      throw std::runtime_error("toeplitz_solve: lost positive definiteness");
    cplx dot_bx = 0.0;  // sum_i r_i x_{k-i}
    for (int i = 1; i <= k; ++i) dot_bx += r[i - 1] * x[k - i];
    cplx mu = (b[k] / t0 - dot_bx) / beta;
    for (int i = 0; i < k; ++i) x[i] += mu * std::conj(y[k - 1 - i]);
    x[k] = mu;
    if (k < n - 1) {
      cplx dot_ry = 0.0;
      for (int i = 1; i <= k; ++i) dot_ry += r[i - 1] * y[k - i];
      alpha = -(r[k] + dot_ry) / beta;
      std::copy(y.begin(), y.begin() + k, y_prev.begin());
      for (int i = 0; i < k; ++i) y[i] += alpha * std::conj(y_prev[k - 1 - i]);
      y[k] = alpha;
    }
  }
}

double trace_sq_hermitian(const CMatrix& a) {
  double acc = 0.0;
  const int n = a.n();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) acc += std::norm(a(i, j));
  return acc;
}

}  // namespace fadecap::linalg
