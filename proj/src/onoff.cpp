#include "fadecap/onoff.hpp"

#include <cmath>
#include <stdexcept>

#include "fadecap/kernels.hpp"

namespace fadecap {

double lambda_n(const FadingModel& model, long n) {
  if (n < 1) throw std::invalid_argument("lambda_n: n must be >= 1");
  if (n == 1) return 1.0;
  std::vector<double> e(static_cast<std::size_t>(n) - 1);
  for (long i = 1; i < n; ++i)
    e[i - 1] = std::norm(model.autocorrelation(i));
  const auto& k = kernels::active();
  // sum e_i (1 - i/n), i = 1..n-1; the index kernel counts from 0.
  double plain = k.sum(e.data(), e.size());
  double ramp = k.sum_indexed(e.data(), e.size()) + plain;  // sum i*e_i
  return 1.0 + 2.0 * (plain - ramp / static_cast<double>(n));
}

double optimal_duty(double lambda, double beta) {
  if (!(lambda >= 1.0)) throw std::invalid_argument("optimal_duty: lambda >= 1");
  if (!(beta >= 1.0)) throw std::invalid_argument("optimal_duty: beta >= 1");
  return std::min(0.5 * lambda, 1.0 / beta);
}

double ln_coefficient(const FadingModel& model, long n, double beta) {
  double lam = lambda_n(model, n);
  double a = optimal_duty(lam, beta);
  return 0.5 * (a * lam - a * a);
}

std::vector<LambdaRow> lambda_convergence_report(const FadingModel& model,
                                                 std::span<const long> n_list,
                                                 double lambda_inf) {
  std::vector<LambdaRow> rows;
  rows.reserve(n_list.size());
  for (long n : n_list) {
    double lam = lambda_n(model, n);
    rows.push_back({n, lam, lambda_inf - lam});
  }
  return rows;
}

}  // namespace fadecap
