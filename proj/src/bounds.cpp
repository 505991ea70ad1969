#include "fadecap/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "fadecap/kernels.hpp"
#include "fadecap/quadrature.hpp"
#include "fadecap/rng.hpp"

namespace fadecap {

PowerConstraints::PowerConstraints(double rho_, double beta_)
    : rho(rho_), beta(beta_) {
  if (!(rho > 0.0)) throw std::invalid_argument("rho must be > 0");
  if (!(beta >= 1.0)) throw std::invalid_argument("beta must be >= 1");
}

double theta_star(const SpectralFunctionals& sf, double rho, double beta) {
  PowerConstraints pc(rho, beta);
  double unclamped = 1.0 / sf.I(rho) - 1.0 / rho;
  return std::max(0.0, std::min(1.0 / beta, unclamped));
}

double upper_bound_u(const SpectralFunctionals& sf, double rho, double beta) {
  double theta = theta_star(sf, rho, beta);
  return std::log1p(rho * theta) - theta * sf.I(rho);
}

double bound_cu(const SpectralFunctionals& sf, double rho, double beta) {
  PowerConstraints pc(rho, beta);
  return (rho - sf.I(rho)) / beta;
}

double asymptote_f(double lambda_inf, double beta) {
  if (!(lambda_inf >= 1.0)) throw std::invalid_argument("lambda_inf >= 1 required");
  if (!(beta >= 1.0)) throw std::invalid_argument("beta >= 1 required");
  if (0.5 * lambda_inf <= 1.0 / beta) return lambda_inf * lambda_inf / 8.0;
  return 0.5 * lambda_inf / beta - 0.5 / (beta * beta);
}

double asymptote_cll(double lambda_inf, double beta) {
  if (!(lambda_inf >= 1.0)) throw std::invalid_argument("lambda_inf >= 1 required");
  if (!(beta >= 1.0)) throw std::invalid_argument("beta >= 1 required");
  return 0.5 * (lambda_inf - 1.0) / beta;
}

namespace {

// Memoryless channel reduced to the power domain: conditional on |X|^2 = v,
// |Y|^2 is exponential with mean 1 + v.  Precomputes conditional densities on
// an output quadrature grid; the alternating-maximization runs may then be
// repeated for different average-power constraints.
class PowerChannel {
 public:
  PowerChannel(double rho, const BAOptions& opts) : rho_(rho), opts_(opts) {
    build_power_grid();
    build_densities();
  }

  BAResult maximize(double p_ave) const;
  const std::vector<double>& power_grid() const { return v_; }

 private:
  void build_power_grid() {
    const int m = std::max(3, opts_.power_points);
    v_.clear();
    v_.push_back(0.0);
    const double lo = rho_ * 1e-3;
    const int geo = m - 1;
    for (int i = 0; i < geo; ++i)
      v_.push_back(lo * std::pow(rho_ / lo, double(i) / (geo - 1)));
    v_.back() = rho_;
  }

  void build_densities() {
    const double ymax = 46.0 * (1.0 + rho_);
    const int panels = std::max(8, opts_.y_points / 8);
    std::vector<double> ynode, yweight;
    const double h = ymax / panels;
    for (int p = 0; p < panels; ++p) {
      double mid = (p + 0.5) * h;
      for (int q = 0; q < 8; ++q) {
        ynode.push_back(mid + 0.5 * h * kGauss8Node[q]);
        yweight.push_back(0.5 * h * kGauss8Weight[q]);
      }
    }
    ny_ = ynode.size();
    const std::size_t nv = v_.size();
    pd_.resize(nv * ny_);
    wpd_.resize(nv * ny_);
    c_.resize(nv);
    for (std::size_t a = 0; a < nv; ++a) {
      const double mean = 1.0 + v_[a];
      double cv = 0.0;
      for (std::size_t y = 0; y < ny_; ++y) {
        double ld = -ynode[y] / mean - std::log(mean);
        double p = std::exp(ld);
        pd_[a * ny_ + y] = p;
        double wp = yweight[y] * p;
        wpd_[a * ny_ + y] = wp;
        cv += wp * ld;
      }
      c_[a] = cv;
    }
  }

  double rho_;
  BAOptions opts_;
  std::vector<double> v_;
  std::size_t ny_ = 0;
  std::vector<double> pd_;   // conditional density, power-major
  std::vector<double> wpd_;  // density times output weight
  std::vector<double> c_;    // integral w p log p per power point
};

BAResult PowerChannel::maximize(double p_ave) const {
  BAResult result;
  if (p_ave <= 0.0) return result;
  const auto& k = kernels::active();
  const std::size_t nv = v_.size();

  // Warm start: on-off mass split between 0 and the peak, with a small floor
  // everywhere so the iteration can still promote interior powers.
  std::vector<double> q(nv, 1e-8);
  {
    double a0 = std::min(0.5, p_ave / rho_);
    q[0] += 1.0 - a0;
    q[nv - 1] += a0;
    double z = 0.0;
    for (double m : q) z += m;
    for (double& m : q) m /= z;
  }

  std::vector<double> m(ny_), lm(ny_), d(nv), dc(nv), candidate(nv);

  // Rate of a mass vector together with the per-point divergences
  // div_a = D(p(.|v_a) || mixture).
  auto evaluate = [&](const std::vector<double>& mass, std::vector<double>& div) {
    std::fill(m.begin(), m.end(), 0.0);
    for (std::size_t a = 0; a < nv; ++a)
      if (mass[a] > 0.0) k.axpy(mass[a], &pd_[a * ny_], m.data(), ny_);
    for (std::size_t y = 0; y < ny_; ++y) m[y] = std::max(m[y], 1e-300);
    k.log_array(m.data(), lm.data(), ny_);
    double rate = 0.0;
    for (std::size_t a = 0; a < nv; ++a) {
      div[a] = c_[a] - k.dot(&wpd_[a * ny_], lm.data(), ny_);
      rate += mass[a] * div[a];
    }
    return rate;
  };

  // candidate ~ q_a exp(s d_a - mult v_a); the multiplier is bisected so the
  // mean power meets the constraint, and the achieved mean is returned.
  auto make_candidate = [&](double s, double& mult_out) {
    auto fill = [&](double mult) {
      double top = -1e300;
      for (std::size_t a = 0; a < nv; ++a)
        top = std::max(top, s * d[a] - mult * v_[a]);
      double z = 0.0, mean = 0.0;
      for (std::size_t a = 0; a < nv; ++a) {
        candidate[a] = q[a] * std::exp(s * d[a] - mult * v_[a] - top);
        z += candidate[a];
        mean += candidate[a] * v_[a];
      }
      for (std::size_t a = 0; a < nv; ++a) candidate[a] /= z;
      return mean / z;
    };
    mult_out = 0.0;
    if (fill(0.0) > p_ave) {
      double lo = 0.0, hi = 1.0;
      while (fill(hi) > p_ave && hi < 1e14) hi *= 2.0;
      for (int b = 0; b < 128; ++b) {
        double mid = 0.5 * (lo + hi);
        if (fill(mid) > p_ave)
          lo = mid;
        else
          hi = mid;
      }
      fill(hi);
      mult_out = hi;
    }
  };

  double rate = evaluate(q, d);
  double mult_eff = 0.0;  // multiplier per unit step, feeds the dual bound
  long iter = 0;
  int stalled = 0;
  result.converged = false;
  for (; iter < opts_.max_iters; ++iter) {
    result.value = rate;
    // For any multiplier >= 0, the constrained supremum over this grid is at
    // most max_a (d_a - mult v_a) + mult p_ave; stop when the gap closes or
    // the line-searched update stops moving.
    double dual = -1e300;
    for (std::size_t a = 0; a < nv; ++a)
      dual = std::max(dual, d[a] - mult_eff * v_[a]);
    dual += mult_eff * p_ave;
    if (dual - rate <= std::max(opts_.tol, 1e-6 * rate)) {
      result.converged = true;
      break;
    }

    // Multiplicative update with a geometric step-size search; the unit step
    // is the classical update and never decreases the rate.
    double best_rate = -1e300, best_mult = 0.0, best_s = 1.0;
    std::vector<double> best_q, best_d;
    for (double s = 1.0; s <= 1.7e7; s *= 4.0) {
      double mult_s = 0.0;
      make_candidate(s, mult_s);
      double r2 = evaluate(candidate, dc);
      if (r2 <= best_rate) break;
      best_rate = r2;
      best_q = candidate;
      best_d = dc;
      best_mult = mult_s;
      best_s = s;
    }
    bool improved = best_rate - rate > 1e-14 * std::max(rate, 1e-12);
    if (best_rate >= rate) {
      q.swap(best_q);
      d.swap(best_d);
      rate = best_rate;
      mult_eff = best_mult / best_s;
      result.value = rate;
    }
    if (!improved && ++stalled >= 2) {
      result.converged = true;
      ++iter;
      break;
    }
    if (improved) stalled = 0;
  }
  result.iterations = iter;
  result.mean_power = 0.0;
  for (std::size_t a = 0; a < nv; ++a) result.mean_power += q[a] * v_[a];
  return result;
}

// Golden-section maximization for a unimodal objective on [a, b].
template <typename F>
std::pair<double, double> golden_max(F&& f, double a, double b, int iters) {
  const double inv_phi = 0.6180339887498949;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < iters; ++i) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    }
  }
  return f1 > f2 ? std::make_pair(x1, f1) : std::make_pair(x2, f2);
}

}  // namespace

BAResult single_letter_mi_sup(double rho, double p_ave, const BAOptions& opts) {
  if (!(rho > 0.0)) throw std::invalid_argument("rho must be > 0");
  if (p_ave < 0.0 || p_ave > rho + 1e-12)
    throw std::invalid_argument("p_ave must lie in [0, rho]");
  PowerChannel ch(rho, opts);
  return ch.maximize(std::min(p_ave, rho));
}

UPredResult upper_bound_u_pred(const SpectralFunctionals& sf, double rho,
                               double beta, const BAOptions& opts) {
  PowerConstraints pc(rho, beta);
  const double sigma2 = std::expm1(sf.I(rho)) / rho;
  const double pmax = rho / beta;
  PowerChannel ch(rho, opts);

  bool all_converged = true;
  auto objective = [&](double p) {
    BAResult r = ch.maximize(p);
    if (!r.converged) all_converged = false;
    return r.value + std::log1p(p) - std::log1p(p * sigma2);
  };

  auto [pstar, best] = golden_max(objective, 0.0, pmax, 40);
  // Guard against a non-unimodal surprise: coarse scan, then a dense grid if
  // the scan beats the golden-section result.
  double scan_best = -1.0, scan_arg = 0.0;
  for (int i = 0; i <= 8; ++i) {
    double p = pmax * i / 8.0;
    double v = objective(p);
    if (v > scan_best) {
      scan_best = v;
      scan_arg = p;
    }
  }
  if (scan_best > best + 1e-12 + 1e-9 * std::abs(best)) {
    for (int i = 0; i <= 256; ++i) {
      double p = pmax * i / 256.0;
      double v = objective(p);
      if (v > scan_best) {
        scan_best = v;
        scan_arg = p;
      }
    }
    pstar = scan_arg;
    best = scan_best;
  }
  return {best, pstar, all_converged};
}

CllEstimate cll_monte_carlo(const SpectralFunctionals& sf, double rho,
                            double beta, long samples, std::uint64_t seed) {
  PowerConstraints pc(rho, beta);
  if (samples < 1000) throw std::invalid_argument("cll_monte_carlo: samples >= 1000");
  const double sigma2 = std::expm1(sf.I(rho)) / rho;
  const double est_var = std::max(0.0, 1.0 - sigma2);  // channel estimate variance
  const double noise_var = 1.0 + rho * sigma2;
  const double amp = std::sqrt(rho);
  const cplx symbols[4] = {{amp, 0.0}, {0.0, amp}, {-amp, 0.0}, {0.0, -amp}};
  const double log_quarter = std::log(0.25);

  Rng rng(seed);
  double acc = 0.0, acc_sq = 0.0;
  for (long i = 0; i < samples; ++i) {
    cplx hhat = std::sqrt(est_var) * rng.next_complex_normal();
    int sym = static_cast<int>(rng.next_u64() & 3);
    cplx y = symbols[sym] * hhat +
             std::sqrt(noise_var) * rng.next_complex_normal();
    double scores[4];
    for (int s = 0; s < 4; ++s)
      scores[s] = -std::norm(y - symbols[s] * hhat) / noise_var + log_quarter;
    double lse = kernels::active().logsumexp(scores, 4);
    double term = (scores[sym] - log_quarter) - lse;
    acc += term;
    acc_sq += term * term;
  }
  double mean = acc / samples;
  double var = std::max(0.0, (acc_sq - samples * mean * mean) / (samples - 1.0));
  CllEstimate e;
  e.value = mean / beta;
  e.stderr_ = std::sqrt(var / samples) / beta;
  e.samples = samples;
  return e;
}

}  // namespace fadecap
