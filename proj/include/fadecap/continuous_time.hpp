#pragma once

// Continuous-time counterpart: unit-variance stationary fading with a spectral
// density on the whole line, the rate integral
//   I(P) = integral log(1 + P S(w)) dw/2pi,
// and the capacity per unit time P_ave - (P_ave/P_peak) I(P_peak).

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace fadecap {

class CTFadingModel {
 public:
  using PsdFn = std::function<double(double)>;  // omega in rad/s
  using ClosedFormFn = std::function<double(double)>;

  // Lorentzian spectrum S(w) = 2 gamma / (gamma^2 + w^2) (exponential
  // autocorrelation); I(P) = sqrt(gamma^2 + 2 gamma P) - gamma.
  static CTFadingModel ornstein_uhlenbeck(double gamma);
  // Flat spectrum pi/W on |w| <= W; I(P) = (W/pi) log(1 + pi P / W).
  static CTFadingModel bandlimited(double w_max);
  static CTFadingModel custom(std::string name, PsdFn psd,
                              std::vector<double> breakpoints = {},
                              std::optional<ClosedFormFn> closed_form = {});

  double psd(double omega) const;
  const std::string& name() const;
  const std::vector<double>& breakpoints() const;
  std::optional<double> closed_form_I(double p_peak) const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
  explicit CTFadingModel(std::shared_ptr<const Impl> impl)
      : impl_(std::move(impl)) {}
};

struct CTQuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
};

// Infinite-domain quadrature of log(1 + P S) via w = tan(u); throws when the
// spectrum tail is not integrable.
CTQuadResult ct_I(const CTFadingModel& model, double p_peak, int points = 4096);

// P_ave - (P_ave / P_peak) I(P_peak); requires 0 < P_ave <= P_peak.
double ct_capacity(const CTFadingModel& model, double p_ave, double p_peak,
                   int points = 4096);

}  // namespace fadecap
