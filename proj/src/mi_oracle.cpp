#include "fadecap/mi_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fadecap/kernels.hpp"
#include "fadecap/quadrature.hpp"
#include "fadecap/rng.hpp"

namespace fadecap {

namespace {
constexpr double kLogPi = 1.1447298858494001741434273513531;
constexpr long kBatch = 16384;
}  // namespace

linalg::CMatrix conditional_covariance(std::span<const cplx> z,
                                       const FadingModel& model, double rho) {
  if (rho < 0.0) throw std::invalid_argument("conditional_covariance: rho >= 0");
  linalg::CMatrix k = k_of_z(z, model);
  const int n = k.n();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) k(i, j) = rho * k(i, j) + (i == j ? 1.0 : 0.0);
  return k;
}

double log_conditional_density(std::span<const cplx> y,
                               const linalg::CMatrix& k_y) {
  const int n = k_y.n();
  if (static_cast<int>(y.size()) != n)
    throw std::invalid_argument("log_conditional_density: size mismatch");
  linalg::CMatrix l = k_y;
  auto info = linalg::cholesky(l);
  if (!info.ok)
    throw std::invalid_argument("log_conditional_density: covariance not PD");
  // Solve L u = y; the quadratic form is |u|^2.
  std::vector<cplx> u(n);
  for (int i = 0; i < n; ++i) {
    cplx s = y[i];
    for (int j = 0; j < i; ++j) s -= l(i, j) * u[j];
    u[i] = s / l(i, i).real();
  }
  double quad = 0.0;
  for (int i = 0; i < n; ++i) quad += std::norm(u[i]);
  return -quad - n * kLogPi - linalg::cholesky_logdet(l);
}

MIEstimate mi_monte_carlo(const InputDistribution& mu, const FadingModel& model,
                          double rho, long samples, std::uint64_t seed) {
  if (samples < 1000) throw std::invalid_argument("mi_monte_carlo: samples >= 1000");
  MIEstimate est;
  est.samples = samples;
  est.method = MIEstimate::Method::monte_carlo;
  if (rho == 0.0) return est;  // all conditional laws coincide

  const int n = mu.n();
  const auto& atoms = mu.atoms();
  const int m = static_cast<int>(atoms.size());
  const int pairs = n * (n - 1) / 2;

  // Per-atom Cholesky factors for sampling and packed inverse forms for the
  // mixture log-density.
  std::vector<linalg::CMatrix> chol(m);
  std::vector<double> log_p(m);
  kernels::MixturePack pack = kernels::MixturePack::make(n, m);
  for (int k = 0; k < m; ++k) {
    linalg::CMatrix c = conditional_covariance(atoms[k].z, model, rho);
    auto info = linalg::cholesky(c);
    if (!info.ok) throw std::runtime_error("mi_monte_carlo: covariance not PD");
    chol[k] = c;
    log_p[k] = std::log(atoms[k].p);
    linalg::CMatrix inv = linalg::inverse_from_cholesky(c);
    pack.bias[k] = log_p[k] - linalg::cholesky_logdet(c) - n * kLogPi;
    for (int i = 0; i < n; ++i)
      pack.diag[std::size_t(i) * pack.stride + k] = inv(i, i).real();
    int p = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j, ++p) {
        pack.off_re[std::size_t(p) * pack.stride + k] = 2.0 * inv(i, j).real();
        pack.off_im[std::size_t(p) * pack.stride + k] = -2.0 * inv(i, j).imag();
      }
  }

  std::vector<double> cdf(m);
  double run = 0.0;
  for (int k = 0; k < m; ++k) {
    run += atoms[k].p;
    cdf[k] = run;
  }
  cdf[m - 1] = 1.0 + 1e-30;

  const auto& kr = kernels::active();
  std::vector<cplx> g(n), y(n);
  std::vector<double> abs_sq(n), cross_re(std::max(pairs, 1)),
      cross_im(std::max(pairs, 1)), scores(pack.stride);

  double total = 0.0, total_sq = 0.0;
  const long batches = (samples + kBatch - 1) / kBatch;
  long done = 0;
  for (long b = 0; b < batches; ++b) {
    Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(b));
    const long count = std::min<long>(kBatch, samples - done);
    double acc = 0.0, acc_sq = 0.0;
    for (long s = 0; s < count; ++s) {
      double u = rng.next_unit();
      int j = static_cast<int>(
          std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
      for (int i = 0; i < n; ++i) g[i] = rng.next_complex_normal();
      linalg::lower_matvec(chol[j], g, y);
      for (int i = 0; i < n; ++i) abs_sq[i] = std::norm(y[i]);
      int p = 0;
      for (int i = 0; i < n; ++i)
        for (int jj = i + 1; jj < n; ++jj, ++p) {
          cplx c = std::conj(y[i]) * y[jj];
          cross_re[p] = c.real();
          cross_im[p] = c.imag();
        }
      kr.mixture_scores(pack, abs_sq.data(), cross_re.data(), cross_im.data(),
                        scores.data());
      double lse = kr.logsumexp(scores.data(), scores.size());
      double term = scores[j] - log_p[j] - lse;
      acc += term;
      acc_sq += term * term;
    }
    total += acc;
    total_sq += acc_sq;
    done += count;
  }
  double mean = total / samples;
  double var = std::max(0.0, (total_sq - samples * mean * mean) / (samples - 1.0));
  est.value = mean;
  est.stderr_ = std::sqrt(var / samples);
  return est;
}

MIEstimate mi_quadrature_1d(double duty, double rho) {
  if (!(duty >= 0.0 && duty <= 1.0))
    throw std::invalid_argument("mi_quadrature_1d: duty in [0, 1]");
  if (rho < 0.0) throw std::invalid_argument("mi_quadrature_1d: rho >= 0");
  MIEstimate est;
  est.method = MIEstimate::Method::quadrature_1d;
  if (duty == 0.0 || duty == 1.0 || rho == 0.0) return est;

  const double la = std::log(duty), lb = std::log1p(-duty);
  const double mean_on = 1.0 + rho;
  const double log_mean_on = std::log1p(rho);
  // Integrand of I = sum_s P(s) integral p(t|s) log(p(t|s)/m(t)) dt on [0, T].
  auto eval = [&](int panels, double tmax) {
    const double h = tmax / panels;
    double acc = 0.0;
    for (int p = 0; p < panels; ++p) {
      double mid = (p + 0.5) * h;
      for (int q = 0; q < 8; ++q) {
        double t = mid + 0.5 * h * kGauss8Node[q];
        double w = 0.5 * h * kGauss8Weight[q];
        double lp1 = -t / mean_on - log_mean_on;
        double lp0 = -t;
        double x1 = la + lp1, x0 = lb + lp0;
        double mx = std::max(x1, x0);
        double lm = mx + std::log(std::exp(x1 - mx) + std::exp(x0 - mx));
        acc += w * (duty * std::exp(lp1) * (lp1 - lm) +
                    (1.0 - duty) * std::exp(lp0) * (lp0 - lm));
      }
    }
    return acc;
  };
  const double tmax = 46.0 * (1.0 + rho);
  double fine = eval(512, tmax);
  double coarse = eval(256, tmax);
  est.value = fine;
  est.stderr_ = std::abs(fine - coarse) + 1e-18;
  return est;
}

}  // namespace fadecap
