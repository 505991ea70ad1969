#include "fadecap/prediction.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "fadecap/linalg.hpp"

namespace fadecap {

double causal_error(const SpectralFunctionals& sf, double rho) {
  if (!(rho > 0.0)) throw std::invalid_argument("causal_error: rho must be > 0");
  return std::expm1(sf.I(rho)) / rho;
}

double noncausal_error(const SpectralFunctionals& sf, double rho) {
  if (!(rho > 0.0)) throw std::invalid_argument("noncausal_error: rho must be > 0");
  return 1.0 - rho * sf.integral_sq_over_1p(rho);
}

namespace {

// Lags k in the observation window, estimation target at lag 0.  The
// two-sided window keeps lag 0: its n -> infinity limit is the full-line
// smoothing error 1 - rho * integral S^2/(1+rho S), which conditions on the
// whole observation sequence.
std::vector<long> window_lags(int n, PredictionWindow window) {
  std::vector<long> lags;
  if (window == PredictionWindow::causal) {
    lags.reserve(n);
    for (int j = 1; j <= n; ++j) lags.push_back(-j);
  } else {
    if (n % 2 != 0)
      throw std::invalid_argument("noncausal window size must be even");
    int half = n / 2;
    lags.reserve(n + 1);
    for (int j = -half; j <= half; ++j) lags.push_back(j);
  }
  return lags;
}

double solve_complex(const FadingModel& model, double rho,
                     const std::vector<long>& lags, bool toeplitz) {
  const int n = static_cast<int>(lags.size());
  std::vector<linalg::cplx> rhs(n);
  for (int i = 0; i < n; ++i) rhs[i] = std::conj(model.autocorrelation(lags[i]));
  std::vector<linalg::cplx> x(n);
  if (toeplitz) {
    // First column of rho*R + I over consecutive lags.
    std::vector<linalg::cplx> t(n);
    for (int i = 0; i < n; ++i)
      t[i] = rho * model.autocorrelation(lags[i] - lags[0]) +
             (i == 0 ? 1.0 : 0.0);
    linalg::toeplitz_solve(t, rhs, x);
  } else {
    linalg::CMatrix m(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        m(i, j) = rho * model.autocorrelation(lags[i] - lags[j]) +
                  (i == j ? 1.0 : 0.0);
    auto info = linalg::cholesky(m);
    if (!info.ok)
      throw std::runtime_error(
          "finite_window_error: factorization failed at pivot " +
          std::to_string(info.pivot) + " (condition estimate " +
          std::to_string(info.condition_estimate) + ")");
    linalg::cholesky_solve(m, rhs, x);
  }
  double quad = 0.0;
  for (int i = 0; i < n; ++i) quad += (std::conj(rhs[i]) * x[i]).real();
  return 1.0 - rho * quad;
}

double solve_real(const FadingModel& model, double rho,
                  const std::vector<long>& lags) {
  const int n = static_cast<int>(lags.size());
  std::vector<double> rhs(n);
  for (int i = 0; i < n; ++i) rhs[i] = model.autocorrelation(lags[i]).real();
  linalg::RMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j)
      m(i, j) = rho * model.autocorrelation(lags[i] - lags[j]).real() +
                (i == j ? 1.0 : 0.0);
  auto info = linalg::cholesky(m);
  if (!info.ok)
    throw std::runtime_error(
        "finite_window_error: factorization failed at pivot " +
        std::to_string(info.pivot) + " (condition estimate " +
        std::to_string(info.condition_estimate) + ")");
  std::vector<double> x(n);
  linalg::cholesky_solve(m, rhs, x);
  double quad = 0.0;
  for (int i = 0; i < n; ++i) quad += rhs[i] * x[i];
  return 1.0 - rho * quad;
}

}  // namespace

double finite_window_error(const FadingModel& model, double rho, int n,
                           PredictionWindow window) {
  if (n < 1) throw std::invalid_argument("finite_window_error: n must be >= 1");
  if (!(rho > 0.0))
    throw std::invalid_argument("finite_window_error: rho must be > 0");
  std::vector<long> lags = window_lags(n, window);
  if (window == PredictionWindow::causal)
    return solve_complex(model, rho, lags, /*toeplitz=*/true);
  if (model.real_autocorrelation()) return solve_real(model, rho, lags);
  return solve_complex(model, rho, lags, /*toeplitz=*/false);
}

}  // namespace fadecap
