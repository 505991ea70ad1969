#include "fadecap/spectral.hpp"

#include <cmath>
#include <stdexcept>

#include "fadecap/kernels.hpp"
#include "fadecap/quadrature.hpp"

namespace fadecap {

namespace {
constexpr long kSeriesCap = 1000000;
constexpr int kTailWindow = 64;
constexpr double kTailThreshold = 1e-12;
}  // namespace

SpectralFunctionals::SpectralFunctionals(FadingModel model, int quad_points)
    : model_(std::move(model)), quad_points_(quad_points) {
  if (quad_points < 16)
    throw std::invalid_argument("SpectralFunctionals: quad_points too small");
}

SpectralFunctionals::Grid SpectralFunctionals::sample(const FadingModel& m,
                                                      int points) {
  CircleGrid cg = make_circle_grid(m.psd_breakpoints(), points);
  Grid g;
  g.s.resize(cg.omega.size());
  for (std::size_t i = 0; i < cg.omega.size(); ++i) g.s[i] = m.psd(cg.omega[i]);
  if (!cg.uniform) g.weight = std::move(cg.weight);
  return g;
}

// Callers hold mu_.
const SpectralFunctionals::Grid& SpectralFunctionals::full() const {
  if (!full_) full_ = sample(model_, quad_points_);
  return *full_;
}

const SpectralFunctionals::Grid& SpectralFunctionals::half() const {
  if (!half_) half_ = sample(model_, quad_points_ / 2);
  return *half_;
}

double SpectralFunctionals::log_integral(const Grid& g, double rho) const {
  if (g.weight.empty()) {
    return kernels::active().sum_log1p_scaled(g.s.data(), g.s.size(), rho) /
           static_cast<double>(g.s.size());
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < g.s.size(); ++i)
    acc += g.weight[i] * std::log1p(rho * g.s[i]);
  return acc;
}

double SpectralFunctionals::I(double rho) const {
  if (rho < 0.0) throw std::invalid_argument("I(rho): rho must be >= 0");
  if (rho == 0.0) return 0.0;
  std::lock_guard lock(mu_);
  auto it = i_cache_.find(rho);
  if (it == i_cache_.end()) {
    double v = log_integral(full(), rho);
    double e = std::abs(v - log_integral(half(), rho));
    it = i_cache_.emplace(rho, std::make_pair(v, e)).first;
  }
  return it->second.first;
}

double SpectralFunctionals::I_error_estimate(double rho) const {
  I(rho);
  std::lock_guard lock(mu_);
  return i_cache_.at(rho).second;
}

const LambdaSeriesInfo& SpectralFunctionals::lambda_series() const {
  std::lock_guard lock(mu_);
  if (!series_) {
    LambdaSeriesInfo info;
    double acc = 1.0;  // |R(0)|^2
    double window[kTailWindow] = {0.0};
    double window_sum = 0.0;
    long k = 1;
    for (; k <= kSeriesCap; ++k) {
      double term = 2.0 * std::norm(model_.autocorrelation(k));
      acc += term;
      window_sum += term - window[k % kTailWindow];
      window[k % kTailWindow] = term;
      if (k >= kTailWindow && window_sum < kTailThreshold) break;
    }
    info.value = acc;
    info.lags = std::min(k, kSeriesCap);
    info.hit_cap = k > kSeriesCap;
    if (info.hit_cap && window_sum > 1e-6)
      throw std::runtime_error(
          "lambda series for model '" + model_.name() +
          "' is not settling; model rejected for asymptote computations");
    series_ = info;
  }
  return *series_;
}

double SpectralFunctionals::lambda_inf() const {
  const LambdaSeriesInfo& info = lambda_series();
  std::lock_guard lock(mu_);
  if (lambda_) return *lambda_;
  const Grid& g = full();
  double quad;
  if (g.weight.empty()) {
    quad = kernels::active().sum_sq(g.s.data(), g.s.size()) /
           static_cast<double>(g.s.size());
  } else {
    quad = 0.0;
    for (std::size_t i = 0; i < g.s.size(); ++i)
      quad += g.weight[i] * g.s[i] * g.s[i];
  }
  if (std::abs(quad - info.value) > 1e-6 + 1e-9 * quad)
    throw std::runtime_error("lambda for model '" + model_.name() +
                             "': series and quadrature disagree (" +
                             std::to_string(info.value) + " vs " +
                             std::to_string(quad) + ")");
  lambda_ = quad;
  return quad;
}

double SpectralFunctionals::nu_inf() const {
  std::lock_guard lock(mu_);
  if (nu_) return *nu_;
  const Grid& g = full();
  double v;
  if (g.weight.empty()) {
    v = kernels::active().sum_cube(g.s.data(), g.s.size()) /
        static_cast<double>(g.s.size());
  } else {
    v = 0.0;
    for (std::size_t i = 0; i < g.s.size(); ++i)
      v += g.weight[i] * g.s[i] * g.s[i] * g.s[i];
  }
  nu_ = v;
  return v;
}

double SpectralFunctionals::taylor_I(double rho, int order) const {
  if (rho < 0.0) throw std::invalid_argument("taylor_I: rho must be >= 0");
  if (order != 2 && order != 3)
    throw std::invalid_argument("taylor_I: order must be 2 or 3");
  double v = rho - 0.5 * rho * rho * lambda_inf();
  if (order == 3) v += rho * rho * rho * nu_inf() / 3.0;
  return v;
}

double SpectralFunctionals::integral_sq_over_1p(double rho) const {
  std::lock_guard lock(mu_);
  const Grid& g = full();
  if (g.weight.empty()) {
    return kernels::active().sum_sq_over_1p(g.s.data(), g.s.size(), rho) /
           static_cast<double>(g.s.size());
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < g.s.size(); ++i)
    acc += g.weight[i] * g.s[i] * g.s[i] / (1.0 + rho * g.s[i]);
  return acc;
}

}  // namespace fadecap
