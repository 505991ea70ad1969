#pragma once

// Constructive on-off signaling lower bound at low power: the block
// correlation energy lambda_n, the optimal duty cycle, and the quadratic
// coefficient of the achievable rate.

#include <span>
#include <vector>

#include "fadecap/fading_model.hpp"

namespace fadecap {

// lambda_n = sum_{|i|<n} |R(i)|^2 (1 - |i|/n); equals the normalized double
// sum (1/n) sum_{i,j<n} |R(i-j)|^2.
double lambda_n(const FadingModel& model, long n);

// Duty cycle maximizing (a*lambda - a^2)/2 subject to a <= 1/beta.
double optimal_duty(double lambda, double beta);

// rho^2-coefficient of the on-off rate per symbol: (a*lambda_n - a^2)/2.
double ln_coefficient(const FadingModel& model, long n, double beta);

struct LambdaRow {
  long n;
  double lambda;
  double gap;  // lambda_inf - lambda_n
};

std::vector<LambdaRow> lambda_convergence_report(const FadingModel& model,
                                                 std::span<const long> n_list,
                                                 double lambda_inf);

}  // namespace fadecap
