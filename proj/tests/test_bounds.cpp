#include "fadecap/bounds.hpp"

#include <cmath>

#include "doctest.h"
#include "fadecap/onoff.hpp"
#include "oracles.hpp"

using namespace fadecap;

TEST_CASE("duty parameter of the main bound") {
  SpectralFunctionals iid(FadingModel::iid());
  CHECK(theta_star(iid, 1.0, 1.0) ==
        doctest::Approx(1.0 / std::log(2.0) - 1.0).epsilon(1e-10));
  // average-power-limited branch
  CHECK(theta_star(iid, 1.0, 1000.0) == doctest::Approx(1e-3));
  // small-power limit is 1/2
  CHECK(std::abs(theta_star(iid, 1e-3, 1.0) - 0.5) <= 1e-3);
  CHECK_THROWS_AS(theta_star(iid, -1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(theta_star(iid, 1.0, 0.5), std::invalid_argument);
}

TEST_CASE("main upper bound frozen values") {
  SpectralFunctionals iid(FadingModel::iid());
  // -log(log 2) - 1 + log 2
  const double u11 = -std::log(std::log(2.0)) - 1.0 + std::log(2.0);
  CHECK(upper_bound_u(iid, 1.0, 1.0) == doctest::Approx(u11).epsilon(1e-10));
  CHECK(u11 == doctest::Approx(0.05966010114).epsilon(1e-9));
  const double u14 = std::log(1.25) - 0.25 * std::log(2.0);
  CHECK(upper_bound_u(iid, 1.0, 4.0) == doctest::Approx(u14).epsilon(1e-10));
  CHECK(u14 == doctest::Approx(0.049857).epsilon(1e-5));
}

TEST_CASE("main upper bound properties") {
  for (double r : {0.0, 0.5, 0.9}) {
    SpectralFunctionals sf(FadingModel::gauss_markov(r));
    double prev = 1e300;
    for (double beta : {1.0, 2.0, 4.0}) {
      double u = upper_bound_u(sf, 0.5, beta);
      CHECK(u >= 0.0);
      CHECK(u <= prev + 1e-15);  // nonincreasing in beta
      prev = u;
    }
  }
}

TEST_CASE("algebraic identity on the peak-limited branch") {
  // applies when theta_star is interior: 1/beta >= 1/I - 1/rho
  for (auto model : {FadingModel::iid(), FadingModel::gauss_markov(0.5)}) {
    SpectralFunctionals sf(model);
    double rho = 1.0;
    double i = sf.I(rho);
    REQUIRE(1.0 / i - 1.0 / rho <= 1.0);
    double direct = upper_bound_u(sf, rho, 1.0);
    double algebraic = -std::log(i / rho) - 1.0 + i / rho;
    CHECK(std::abs(direct - algebraic) <= 1e-12);
  }
}

TEST_CASE("main bound approaches the exact coefficient") {
  for (double r : {0.5, 0.9}) {
    SpectralFunctionals sf(FadingModel::gauss_markov(r));
    for (double beta : {1.0, 4.0}) {
      double f = asymptote_f(sf.lambda_inf(), beta);
      double u = upper_bound_u(sf, 1e-3, beta) / 1e-6;
      CHECK(std::abs(u - f) <= 0.02 * f);
    }
  }
}

TEST_CASE("unit-energy bound") {
  SpectralFunctionals iid(FadingModel::iid());
  CHECK(bound_cu(iid, 1.0, 1.0) ==
        doctest::Approx(1.0 - std::log(2.0)).epsilon(1e-12));
  CHECK(bound_cu(iid, 1.0, 2.0) * 2.0 == bound_cu(iid, 1.0, 1.0));
  for (double r : {0.5, 0.9}) {
    SpectralFunctionals sf(FadingModel::gauss_markov(r));
    double lim = 0.5 * sf.lambda_inf() / 2.0;
    CHECK(std::abs(bound_cu(sf, 1e-3, 2.0) / 1e-6 - lim) <= 0.01 * lim);
  }
}

TEST_CASE("exact coefficient branches") {
  CHECK(asymptote_f(1.0, 1.0) == doctest::Approx(0.125));
  CHECK(asymptote_f(1.0, 4.0) == doctest::Approx(3.0 / 32.0));
  CHECK(asymptote_f(3.0, 1.0) == doctest::Approx(1.0));
  // branch boundary: both expressions coincide
  CHECK(asymptote_f(2.0, 1.0) == 0.5);
  CHECK_THROWS_AS(asymptote_f(0.5, 1.0), std::invalid_argument);
}

TEST_CASE("constant-amplitude coefficient") {
  CHECK(asymptote_cll(1.0, 1.0) == 0.0);
  CHECK(asymptote_cll(3.0, 1.0) == doctest::Approx(1.0));
  CHECK(asymptote_cll(9.526316, 2.0) == doctest::Approx(2.131579));
  CHECK(asymptote_cll(3.0, 1.0) == asymptote_f(3.0, 1.0));
}

TEST_CASE("single-letter supremum") {
  CHECK(single_letter_mi_sup(1.0, 0.0).value == 0.0);
  BAResult half = single_letter_mi_sup(1.0, 0.5);
  BAResult full = single_letter_mi_sup(1.0, 1.0);
  CHECK(half.converged);
  CHECK(full.converged);
  CHECK(half.value <= full.value + 1e-9);
  CHECK(half.mean_power <= 0.5 + 1e-9);
  // two-mass oracle: at these powers on-off inputs are optimal
  CHECK(std::abs(full.value - oracles::two_point_mi_sup(1.0, 1.0)) <= 1e-4);
  CHECK(std::abs(half.value - oracles::two_point_mi_sup(1.0, 0.5)) <= 1e-4);
}

TEST_CASE("prediction-gain bound on memoryless fading reduces to one term") {
  SpectralFunctionals iid(FadingModel::iid());
  UPredResult r = upper_bound_u_pred(iid, 1.0, 2.0);
  BAResult inner = single_letter_mi_sup(1.0, 0.5);
  CHECK(r.value == doctest::Approx(inner.value).epsilon(1e-7));
  CHECK(r.converged);
}

TEST_CASE("prediction-gain bound dominates the quadratic rate at low power") {
  SpectralFunctionals sf(FadingModel::gauss_markov(0.9));
  double rho = 1e-2, beta = 4.0;
  UPredResult r = upper_bound_u_pred(sf, rho, beta);
  double f = asymptote_f(sf.lambda_inf(), beta);
  CHECK(std::abs(r.value / (rho * rho) - f) <= 0.10 * f);
}

TEST_CASE("constant-amplitude Monte Carlo diagnostic tracks its coefficient") {
  SpectralFunctionals sf(FadingModel::gauss_markov(0.9));
  double rho = 0.02, beta = 2.0;
  CllEstimate e = cll_monte_carlo(sf, rho, beta, 1000000, 99);
  double coeff = asymptote_cll(sf.lambda_inf(), beta);
  CHECK(e.value > 0.0);
  CHECK(std::abs(e.value - coeff * rho * rho) <=
        3.0 * e.stderr_ + 0.3 * coeff * rho * rho);
}
