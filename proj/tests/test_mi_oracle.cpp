#include "fadecap/mi_oracle.hpp"

#include <cmath>

#include "doctest.h"
#include "fadecap/rng.hpp"
#include "oracles.hpp"

using namespace fadecap;

TEST_CASE("conditional covariance") {
  FadingModel gm = FadingModel::gauss_markov(0.5);
  auto zero = std::vector<cplx>{cplx(0.0), cplx(0.0)};
  linalg::CMatrix k0 = conditional_covariance(zero, gm, 1.0);
  CHECK(k0(0, 0) == cplx(1.0));
  CHECK(k0(0, 1) == cplx(0.0));

  auto one = std::vector<cplx>{cplx(1.0)};
  CHECK(conditional_covariance(one, gm, 1.0)(0, 0) == cplx(2.0));

  auto ones = std::vector<cplx>{cplx(1.0), cplx(1.0)};
  linalg::CMatrix k2 = conditional_covariance(ones, gm, 2.0);
  CHECK(k2(0, 0).real() == doctest::Approx(3.0));
  CHECK(k2(0, 1).real() == doctest::Approx(1.0));
}

TEST_CASE("log conditional density closed forms") {
  linalg::CMatrix eye(1);
  eye(0, 0) = 1.0;
  auto y0 = std::vector<cplx>{cplx(0.0)};
  CHECK(log_conditional_density(y0, eye) ==
        doctest::Approx(-std::log(3.14159265358979324)).epsilon(1e-12));

  linalg::CMatrix two(1);
  two(0, 0) = 2.0;
  auto y1 = std::vector<cplx>{cplx(1.0)};
  CHECK(log_conditional_density(y1, two) ==
        doctest::Approx(-0.5 - std::log(2.0 * 3.14159265358979324)).epsilon(1e-12));

  linalg::CMatrix bad(1);
  bad(0, 0) = -1.0;
  CHECK_THROWS_AS(log_conditional_density(y1, bad), std::invalid_argument);
}

TEST_CASE("density integrates to one (importance sampling)") {
  FadingModel gm = FadingModel::gauss_markov(0.5);
  auto z = std::vector<cplx>{cplx(1.0), cplx(0.0, 0.5)};
  double rho = 0.7;
  linalg::CMatrix k = conditional_covariance(z, gm, rho);
  // sample from a wider isotropic Gaussian and reweight
  const double c = 1.0 + rho;
  const double log_pi = std::log(3.14159265358979324);
  Rng rng(321);
  const long n_samp = 200000;
  double acc = 0.0, acc_sq = 0.0;
  for (long s = 0; s < n_samp; ++s) {
    std::vector<cplx> y(2);
    double q = 0.0;
    for (auto& v : y) {
      v = std::sqrt(c) * rng.next_complex_normal();
      q += std::norm(v) / c;
    }
    double log_q = -q - 2.0 * (log_pi + std::log(c));
    double w = std::exp(log_conditional_density(y, k) - log_q);
    acc += w;
    acc_sq += w * w;
  }
  double mean = acc / n_samp;
  double se = std::sqrt((acc_sq / n_samp - mean * mean) / n_samp);
  CHECK(std::abs(mean - 1.0) <= 3.0 * se + 1e-3);
}

TEST_CASE("monte carlo on degenerate inputs") {
  FadingModel gm = FadingModel::gauss_markov(0.5);
  InputDistribution point = InputDistribution::point_mass({cplx(1.0), cplx(0.5)});
  MIEstimate e = mi_monte_carlo(point, gm, 1.0, 2000, 7);
  CHECK(e.value == 0.0);
  CHECK(e.stderr_ == 0.0);

  InputDistribution onoff = InputDistribution::onoff_iid(2, 0.5, 2);
  MIEstimate zero_rho = mi_monte_carlo(onoff, gm, 0.0, 2000, 7);
  CHECK(zero_rho.value == 0.0);
}

TEST_CASE("monte carlo reproducibility") {
  FadingModel gm = FadingModel::gauss_markov(0.8);
  InputDistribution mu = InputDistribution::onoff_iid(2, 0.5, 4);
  MIEstimate a = mi_monte_carlo(mu, gm, 0.1, 20000, 42);
  MIEstimate b = mi_monte_carlo(mu, gm, 0.1, 20000, 42);
  CHECK(a.value == b.value);
  CHECK(a.stderr_ == b.stderr_);
  MIEstimate c = mi_monte_carlo(mu, gm, 0.1, 20000, 43);
  CHECK(a.value != c.value);
}

TEST_CASE("monte carlo agrees with the scalar quadrature oracle") {
  FadingModel iid = FadingModel::iid();
  InputDistribution onoff = InputDistribution::onoff_iid(1, 0.5, 4);
  double rho = 0.05;
  MIEstimate mc = mi_monte_carlo(onoff, iid, rho, 200000, 11);
  MIEstimate quad = mi_quadrature_1d(0.5, rho);
  CHECK(std::abs(mc.value - quad.value) <= 3.0 * mc.stderr_ + 3.0 * quad.stderr_);
  CHECK(mc.value >= -3.0 * mc.stderr_);
}

TEST_CASE("monte carlo tracks the quadratic coefficient") {
  for (double duty : {0.25, 0.5}) {
    for (int n : {1, 2}) {
      FadingModel m = FadingModel::gauss_markov(0.5);
      InputDistribution mu = InputDistribution::onoff_iid(n, duty, 4);
      QuadraticMI q = mi_quadratic(mu, m);
      double rho = 0.1;
      MIEstimate mc = mi_monte_carlo(mu, m, rho, 200000, 5);
      CHECK(std::abs(mc.value - q.value_at(rho)) <=
            3.0 * mc.stderr_ + 0.2 * rho * rho * rho);
    }
  }
}

TEST_CASE("scalar quadrature oracle") {
  CHECK(mi_quadrature_1d(0.0, 1.0).value == 0.0);
  CHECK(mi_quadrature_1d(1.0, 1.0).value == 0.0);
  CHECK(mi_quadrature_1d(0.5, 0.0).value == 0.0);

  MIEstimate e = mi_quadrature_1d(0.5, 0.05);
  CHECK(e.value / 0.0025 >= 0.115);
  CHECK(e.value / 0.0025 <= 0.135);
  CHECK(e.stderr_ <= 1e-10);
  // against an independent Simpson evaluation
  CHECK(e.value == doctest::Approx(oracles::scalar_onoff_mi(0.5, 0.05)).epsilon(1e-9));

  // the normalized value drifts toward 1/8 as the power shrinks
  double d1 = std::abs(mi_quadrature_1d(0.5, 0.1).value / 0.01 - 0.125);
  double d2 = std::abs(mi_quadrature_1d(0.5, 0.05).value / 0.0025 - 0.125);
  double d3 = std::abs(mi_quadrature_1d(0.5, 0.025).value / 0.000625 - 0.125);
  CHECK(d2 < d1);
  CHECK(d3 < d2);
}
