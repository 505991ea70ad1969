#pragma once

// Ground-truth mutual information for the block channel: exact conditional
// Gaussian densities, a seeded Monte Carlo estimator over finite-support
// inputs, and a deterministic 1-D quadrature for the scalar on-off channel.

#include <cstdint>

#include "fadecap/vector_channel.hpp"

namespace fadecap {

struct MIEstimate {
  enum class Method { monte_carlo, quadrature_1d };
  double value = 0.0;
  double stderr_ = 0.0;
  long samples = 0;
  Method method = Method::monte_carlo;
};

// K_Y = rho K_Z + I; positive definite for rho >= 0.
linalg::CMatrix conditional_covariance(std::span<const cplx> z,
                                       const FadingModel& model, double rho);

// log of exp(-y K^{-1} y^H) / (pi^n det K); throws if K is not positive
// definite.
double log_conditional_density(std::span<const cplx> y, const linalg::CMatrix& k_y);

// Estimates I(Z;Y) = E[log q(Y|Z) - log sum_k mu_k q(Y|z_k)] by exact sampling
// from the mixture; deterministic for a fixed seed and sample count.
MIEstimate mi_monte_carlo(const InputDistribution& mu, const FadingModel& model,
                          double rho, long samples, std::uint64_t seed);

// Exact mutual information of the scalar on-off channel where |Y|^2 is
// exponential with mean 1 (off) or 1+rho (on); stderr_ carries the quadrature
// error estimate.
MIEstimate mi_quadrature_1d(double duty, double rho);

}  // namespace fadecap
