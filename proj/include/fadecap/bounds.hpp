#pragma once

// Capacity bounds for the peak- and average-power constrained noncoherent
// channel.  All rates are in nats per symbol; beta is the peak-to-average
// ratio (>= 1) and rho the peak power.

#include <cstdint>

#include "fadecap/spectral.hpp"

namespace fadecap {

struct PowerConstraints {
  double rho;   // peak power, > 0
  double beta;  // peak-to-average ratio, >= 1
  PowerConstraints(double rho_, double beta_);
};

// Duty parameter of the main upper bound: min(1/beta, 1/I(rho) - 1/rho),
// clamped below at zero against floating-point noise.
double theta_star(const SpectralFunctionals& sf, double rho, double beta);

// U(rho, beta) = log(1 + rho theta) - theta I(rho) at theta = theta_star.
double upper_bound_u(const SpectralFunctionals& sf, double rho, double beta);

// Capacity-per-unit-energy bound: (rho - I(rho)) / beta.
double bound_cu(const SpectralFunctionals& sf, double rho, double beta);

// Exact rho^2-coefficient of capacity as rho -> 0: lambda^2/8 on the
// peak-limited branch (lambda/2 <= 1/beta), else lambda/(2 beta) - 1/(2 beta^2).
double asymptote_f(double lambda_inf, double beta);

// rho^2-coefficient of the constant-amplitude lower bound: (lambda-1)/(2 beta).
double asymptote_cll(double lambda_inf, double beta);

// --- single-letter memoryless bound -----------------------------------------

struct BAOptions {
  int power_points = 65;  // input power grid size (geometric + {0, rho})
  int y_points = 2048;    // quadrature nodes for the output integral
  // Stop when the duality gap max_v(D_v - mult v) + mult p_ave - rate falls
  // below max(tol, 1e-6 * rate).
  double tol = 1e-9;
  long max_iters = 20000;
};

struct BAResult {
  double value = 0.0;
  bool converged = true;
  long iterations = 0;
  double mean_power = 0.0;
};

// sup I(X;Y) for Y = X H + W with unit-variance H, W and an input constrained
// to |X|^2 <= rho, E|X|^2 <= p_ave.  Only |X|^2 matters, so the optimization
// runs over power masses on a grid via alternating maximization with an
// average-power multiplier.
BAResult single_letter_mi_sup(double rho, double p_ave, const BAOptions& opts = {});

struct UPredResult {
  double value = 0.0;
  double p_ave_argmax = 0.0;
  bool converged = true;
};

// Prediction-based upper bound: max over P <= rho/beta of the single-letter
// supremum at (rho, P) plus the channel-knowledge term
// log((1+P)/(1+P (e^{I(rho)}-1)/rho)).
UPredResult upper_bound_u_pred(const SpectralFunctionals& sf, double rho,
                               double beta, const BAOptions& opts = {});

// --- diagnostic --------------------------------------------------------------

struct CllEstimate {
  double value = 0.0;   // already scaled by 1/beta
  double stderr_ = 0.0;
  long samples = 0;
};

// Monte Carlo estimate of the constant-amplitude lower bound: QPSK input at
// amplitude sqrt(rho), receiver side information modeled as a Gaussian channel
// estimate with variance 1 - sigma^2 where sigma^2 is the causal prediction
// error.  Diagnostic only.
CllEstimate cll_monte_carlo(const SpectralFunctionals& sf, double rho,
                            double beta, long samples, std::uint64_t seed);

}  // namespace fadecap
