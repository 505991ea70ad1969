#include "fadecap/fading_model.hpp"

#include <cmath>
#include <stdexcept>

#include "fadecap/quadrature.hpp"

namespace fadecap {

namespace {
constexpr double kPi = 3.1415926535897932384626433832795;
constexpr double kTwoPi = 2.0 * kPi;

double wrap_to_symmetric(double omega) {
  double w = std::fmod(omega, kTwoPi);
  if (w < 0) w += kTwoPi;
  return w > kPi ? w - kTwoPi : w;
}
}  // namespace

struct FadingModel::Impl {
  Kind kind;
  std::string name;
  AutocorrFn r;
  PsdFn s;
  std::vector<double> breakpoints;
  bool real_r = true;
};

FadingModel FadingModel::iid() {
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::iid;
  impl->name = "iid";
  impl->r = [](long k) -> cplx { return k == 0 ? 1.0 : 0.0; };
  impl->s = [](double) { return 1.0; };
  return FadingModel(std::move(impl));
}

FadingModel FadingModel::gauss_markov(double r) {
  if (!(r >= 0.0 && r < 1.0))
    throw std::invalid_argument("gauss_markov: r must lie in [0, 1)");
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::gauss_markov;
  impl->name = "gauss_markov(r=" + std::to_string(r) + ")";
  impl->r = [r](long k) -> cplx {
    return k == 0 ? 1.0 : std::pow(r, std::abs(static_cast<double>(k)));
  };
  const double num = 1.0 - r * r;
  impl->s = [r, num](double omega) {
    return num / (1.0 + r * r - 2.0 * r * std::cos(omega));
  };
  return FadingModel(std::move(impl));
}

FadingModel FadingModel::bandlimited(double w) {
  if (!(w > 0.0 && w <= 1.0))
    throw std::invalid_argument("bandlimited: w must lie in (0, 1]");
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::bandlimited;
  impl->name = "bandlimited(w=" + std::to_string(w) + ")";
  if (w == 1.0) {
    impl->r = [](long k) -> cplx { return k == 0 ? 1.0 : 0.0; };
    impl->s = [](double) { return 1.0; };
    return FadingModel(std::move(impl));
  }
  impl->r = [w](long k) -> cplx {
    if (k == 0) return 1.0;
    double x = kPi * w * static_cast<double>(k);
    return std::sin(x) / x;
  };
  const double edge = kPi * w;
  impl->s = [w, edge](double omega) {
    return std::abs(wrap_to_symmetric(omega)) <= edge ? 1.0 / w : 0.0;
  };
  impl->breakpoints = {edge, kTwoPi - edge};
  return FadingModel(std::move(impl));
}

FadingModel FadingModel::finite_memory(std::vector<cplx> taps) {
  if (taps.empty()) return iid();
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::finite_memory;
  impl->name = "finite_memory(K=" + std::to_string(taps.size()) + ")";
  for (const cplx& t : taps) {
    if (std::abs(t) > 1.0 + 1e-12)
      throw std::invalid_argument("finite_memory: |R(k)| must not exceed 1");
    if (t.imag() != 0.0) impl->real_r = false;
  }
  auto shared = std::make_shared<std::vector<cplx>>(std::move(taps));
  impl->r = [shared](long k) -> cplx {
    if (k == 0) return 1.0;
    long a = std::abs(k);
    if (a > static_cast<long>(shared->size())) return 0.0;
    return k > 0 ? (*shared)[a - 1] : std::conj((*shared)[a - 1]);
  };
  impl->s = [shared](double omega) {
    double acc = 1.0;
    for (std::size_t m = 0; m < shared->size(); ++m) {
      cplx t = (*shared)[m];
      double mw = (m + 1) * omega;
      acc += 2.0 * (t.real() * std::cos(mw) + t.imag() * std::sin(mw));
    }
    return acc;
  };
  // Reject tap sets with a negative spectrum, reporting the offending angle.
  double min_val = 1e300, min_arg = 0.0;
  const int probe = 8192;
  for (int i = 0; i < probe; ++i) {
    double omega = kTwoPi * i / probe;
    double v = impl->s(omega);
    if (v < min_val) {
      min_val = v;
      min_arg = omega;
    }
  }
  if (min_val < -1e-12)
    throw std::invalid_argument(
        "finite_memory: spectrum negative (S(" + std::to_string(min_arg) +
        ") = " + std::to_string(min_val) + ")");
  return FadingModel(std::move(impl));
}

FadingModel FadingModel::custom(std::string name, AutocorrFn r, PsdFn s,
                                std::vector<double> psd_breakpoints) {
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::custom;
  impl->name = std::move(name);
  impl->r = std::move(r);
  impl->s = std::move(s);
  impl->breakpoints = std::move(psd_breakpoints);
  impl->real_r = false;  // unknown; stay on the general path
  FadingModel m(std::move(impl));
  if (std::abs(m.autocorrelation(0) - cplx(1.0)) > 1e-9)
    throw std::invalid_argument("custom model: R(0) must equal 1");
  auto report = m.check_consistency(8, 4096);
  if (report.max_abs_error > 1e-6)
    throw std::invalid_argument(
        "custom model: R and S disagree (max error " +
        std::to_string(report.max_abs_error) + " at lag " +
        std::to_string(report.worst_lag) + ")");
  return m;
}

cplx FadingModel::autocorrelation(long k) const { return impl_->r(k); }

double FadingModel::psd(double omega) const { return impl_->s(omega); }

FadingModel::Kind FadingModel::kind() const { return impl_->kind; }

const std::string& FadingModel::name() const { return impl_->name; }

const std::vector<double>& FadingModel::psd_breakpoints() const {
  return impl_->breakpoints;
}

bool FadingModel::real_autocorrelation() const { return impl_->real_r; }

ConsistencyReport FadingModel::check_consistency(int n_terms, int quad_points) const {
  if (n_terms < 1) throw std::invalid_argument("check_consistency: n_terms >= 1");
  CircleGrid grid = make_circle_grid(psd_breakpoints(), quad_points);
  const std::size_t m = grid.omega.size();
  std::vector<double> s(m);
  for (std::size_t i = 0; i < m; ++i) s[i] = psd(grid.omega[i]);
  ConsistencyReport report;
  for (int k = -n_terms; k <= n_terms; ++k) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      double ws = grid.weight[i] * s[i];
      re += ws * std::cos(k * grid.omega[i]);
      im += ws * std::sin(k * grid.omega[i]);
    }
    double err = std::abs(autocorrelation(k) - cplx(re, im));
    if (err > report.max_abs_error) {
      report.max_abs_error = err;
      report.worst_lag = k;
    }
  }
  return report;
}

}  // namespace fadecap
