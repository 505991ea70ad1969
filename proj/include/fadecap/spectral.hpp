#pragma once

// Spectral functionals of a fading model: the log-spectral integral
//   I(rho) = integral log(1 + rho S(w)) dw/2pi,
// the correlation energy
//   lambda_inf = sum_k |R(k)|^2 = integral S(w)^2 dw/2pi,
// the cubic moment nu_inf = integral S(w)^3 dw/2pi, and the low-power Taylor
// expansion I(rho) = rho - rho^2 lambda_inf / 2 + rho^3 nu_inf / 3 + ...
//
// Values are computed once per (model, grid) and shared; instances are safe to
// use from several threads.

#include <map>
#include <mutex>
#include <optional>
#include <vector>

#include "fadecap/fading_model.hpp"

namespace fadecap {

struct LambdaSeriesInfo {
  double value = 0.0;   // truncated sum of |R(k)|^2
  long lags = 0;        // last lag included
  bool hit_cap = false; // truncation cap reached before the tail vanished
};

class SpectralFunctionals {
 public:
  explicit SpectralFunctionals(FadingModel model, int quad_points = 8192);

  const FadingModel& model() const { return model_; }
  int quad_points() const { return quad_points_; }

  // Quadrature of log(1 + rho S); rho >= 0.
  double I(double rho) const;
  // |I at N points - I at N/2 points| for the same rho.
  double I_error_estimate(double rho) const;

  // Quadrature value of integral S^2 dw/2pi, cross-checked against the lag
  // series; throws if the two disagree or the series tail will not settle.
  double lambda_inf() const;
  const LambdaSeriesInfo& lambda_series() const;

  double nu_inf() const;

  // rho - rho^2 lambda/2 for order 2, plus rho^3 nu/3 for order 3.
  double taylor_I(double rho, int order) const;

  // integral S^2/(1 + rho S) dw/2pi (noncausal smoothing error integrand).
  double integral_sq_over_1p(double rho) const;

 private:
  struct Grid {
    std::vector<double> s;       // sampled spectrum
    std::vector<double> weight;  // empty for uniform grids
  };
  const Grid& full() const;
  const Grid& half() const;
  static Grid sample(const FadingModel& m, int points);
  double log_integral(const Grid& g, double rho) const;

  FadingModel model_;
  int quad_points_;
  mutable std::mutex mu_;
  mutable std::optional<Grid> full_, half_;
  mutable std::map<double, std::pair<double, double>> i_cache_;  // rho -> {I, err}
  mutable std::optional<double> lambda_, nu_;
  mutable std::optional<LambdaSeriesInfo> series_;
};

}  // namespace fadecap
