#include "fadecap/continuous_time.hpp"

#include <cmath>
#include <stdexcept>

#include "fadecap/quadrature.hpp"

namespace fadecap {

struct CTFadingModel::Impl {
  std::string name;
  PsdFn psd;
  std::vector<double> breakpoints;
  std::optional<ClosedFormFn> closed_form;
};

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;

double line_integral_psd(const CTFadingModel& m, int points) {
  LineGrid g = make_line_grid(m.breakpoints(), points);
  double acc = 0.0;
  for (std::size_t i = 0; i < g.omega.size(); ++i)
    acc += g.weight[i] * m.psd(g.omega[i]);
  return acc;
}

void check_normalization(const CTFadingModel& m) {
  double mass = line_integral_psd(m, 4096);
  if (std::abs(mass - 1.0) > 1e-5)
    throw std::invalid_argument("CT model '" + m.name() +
                                "': spectrum mass is " + std::to_string(mass) +
                                ", expected 1 (non-integrable or unnormalized)");
}

}  // namespace

CTFadingModel CTFadingModel::ornstein_uhlenbeck(double gamma) {
  if (!(gamma > 0.0)) throw std::invalid_argument("ornstein_uhlenbeck: gamma > 0");
  auto impl = std::make_shared<Impl>();
  impl->name = "ou(gamma=" + std::to_string(gamma) + ")";
  impl->psd = [gamma](double w) { return 2.0 * gamma / (gamma * gamma + w * w); };
  impl->closed_form = [gamma](double p) {
    return std::sqrt(gamma * gamma + 2.0 * gamma * p) - gamma;
  };
  return CTFadingModel(std::move(impl));
}

CTFadingModel CTFadingModel::bandlimited(double w_max) {
  if (!(w_max > 0.0)) throw std::invalid_argument("ct bandlimited: W > 0");
  auto impl = std::make_shared<Impl>();
  impl->name = "ct_bandlimited(W=" + std::to_string(w_max) + ")";
  impl->psd = [w_max](double w) { return std::abs(w) <= w_max ? kPi / w_max : 0.0; };
  impl->breakpoints = {-w_max, w_max};
  impl->closed_form = [w_max](double p) {
    return w_max / kPi * std::log1p(kPi * p / w_max);
  };
  return CTFadingModel(std::move(impl));
}

CTFadingModel CTFadingModel::custom(std::string name, PsdFn psd,
                                    std::vector<double> breakpoints,
                                    std::optional<ClosedFormFn> closed_form) {
  auto impl = std::make_shared<Impl>();
  impl->name = std::move(name);
  impl->psd = std::move(psd);
  impl->breakpoints = std::move(breakpoints);
  impl->closed_form = std::move(closed_form);
  CTFadingModel m(std::move(impl));
  check_normalization(m);
  return m;
}

double CTFadingModel::psd(double omega) const { return impl_->psd(omega); }
const std::string& CTFadingModel::name() const { return impl_->name; }
const std::vector<double>& CTFadingModel::breakpoints() const {
  return impl_->breakpoints;
}
std::optional<double> CTFadingModel::closed_form_I(double p_peak) const {
  if (!impl_->closed_form) return std::nullopt;
  return (*impl_->closed_form)(p_peak);
}

CTQuadResult ct_I(const CTFadingModel& model, double p_peak, int points) {
  if (p_peak < 0.0) throw std::invalid_argument("ct_I: P_peak >= 0");
  CTQuadResult r;
  if (p_peak == 0.0) return r;
  // A tail with w^2 S(w) growing without bound is not integrable against
  // log(1 + P S).
  double g1 = 1e8 * model.psd(1e4);
  double g2 = 1e12 * model.psd(1e6);
  if (g2 > 10.0 * g1 + 1.0)
    throw std::invalid_argument("ct_I: spectrum tail looks non-integrable");
  auto value_at = [&](int pts) {
    LineGrid g = make_line_grid(model.breakpoints(), pts);
    double acc = 0.0;
    for (std::size_t i = 0; i < g.omega.size(); ++i)
      acc += g.weight[i] * std::log1p(p_peak * model.psd(g.omega[i]));
    return acc;
  };
  r.value = value_at(points);
  r.error_estimate = std::abs(r.value - value_at(points / 2));
  return r;
}

double ct_capacity(const CTFadingModel& model, double p_ave, double p_peak,
                   int points) {
  if (!(p_ave > 0.0) || !(p_peak > 0.0) || p_ave > p_peak)
    throw std::invalid_argument("ct_capacity: need 0 < P_ave <= P_peak");
  return p_ave - p_ave / p_peak * ct_I(model, p_peak, points).value;
}

}  // namespace fadecap
