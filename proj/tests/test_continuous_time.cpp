#include "fadecap/continuous_time.hpp"

#include <cmath>

#include "doctest.h"
#include "fadecap/quadrature.hpp"

using namespace fadecap;

TEST_CASE("lorentzian rate integral matches its closed form") {
  CTFadingModel ou = CTFadingModel::ornstein_uhlenbeck(1.0);
  for (double p : {0.1, 1.0, 10.0}) {
    double closed = *ou.closed_form_I(p);
    CTQuadResult q = ct_I(ou, p);
    CHECK(std::abs(q.value - closed) <= 1e-6 * closed);
    CHECK(q.error_estimate <= 1e-6 * closed + 1e-12);
  }
  CHECK(ct_I(ou, 2.0).value ==
        doctest::Approx(std::sqrt(5.0) - 1.0).epsilon(1e-7));
  CHECK(ct_I(ou, 0.0).value == 0.0);
}

TEST_CASE("flat-band rate integral matches its closed form") {
  for (double w : {0.5, 2.0}) {
    CTFadingModel m = CTFadingModel::bandlimited(w);
    for (double p : {0.1, 1.0, 10.0}) {
      double closed = *m.closed_form_I(p);
      CHECK(std::abs(ct_I(m, p).value - closed) <= 1e-6 * closed);
    }
  }
}

TEST_CASE("rate integral stays below the power") {
  CTFadingModel ou = CTFadingModel::ornstein_uhlenbeck(0.7);
  for (double p : {0.01, 0.5, 3.0, 25.0}) CHECK(ct_I(ou, p).value <= p);
}

TEST_CASE("capacity value and range") {
  CTFadingModel ou = CTFadingModel::ornstein_uhlenbeck(1.0);
  CHECK(ct_capacity(ou, 0.5, 2.0) ==
        doctest::Approx(0.19098300562505255).epsilon(1e-7));
  for (double pa : {0.1, 0.4, 1.0}) {
    double c = ct_capacity(ou, pa, 2.0);
    CHECK(c >= 0.0);
    CHECK(c <= pa);
  }
  // linear in the average power
  CHECK(ct_capacity(ou, 0.1, 2.0) / 0.1 ==
        doctest::Approx(ct_capacity(ou, 0.5, 2.0) / 0.5).epsilon(1e-12));
  // peak-only case
  CHECK(ct_capacity(ou, 2.0, 2.0) ==
        doctest::Approx(2.0 - ct_I(ou, 2.0).value).epsilon(1e-12));
}

TEST_CASE("capacity grows with the peak allowance") {
  CTFadingModel ou = CTFadingModel::ornstein_uhlenbeck(1.0);
  double prev = 0.0;
  for (double pk : {0.5, 1.0, 2.0, 4.0, 8.0}) {
    double c = ct_capacity(ou, 0.5, pk);
    CHECK(c >= prev - 1e-12);
    prev = c;
  }
}

TEST_CASE("argument validation") {
  CTFadingModel ou = CTFadingModel::ornstein_uhlenbeck(1.0);
  CHECK_THROWS_AS(ct_capacity(ou, 3.0, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(ct_capacity(ou, 0.0, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(CTFadingModel::ornstein_uhlenbeck(0.0), std::invalid_argument);
}

TEST_CASE("spectra carry unit mass") {
  for (auto m : {CTFadingModel::ornstein_uhlenbeck(1.0),
                 CTFadingModel::ornstein_uhlenbeck(3.0),
                 CTFadingModel::bandlimited(0.8)}) {
    LineGrid g = make_line_grid(m.breakpoints(), 8192);
    double mass = 0.0;
    for (std::size_t i = 0; i < g.omega.size(); ++i)
      mass += g.weight[i] * m.psd(g.omega[i]);
    CHECK(std::abs(mass - 1.0) <= 1e-6);
  }
}

TEST_CASE("custom model with a fat tail is rejected") {
  // mass ~ log-divergent
  auto bad = [](double w) { return 0.3 / (1.0 + std::abs(w)); };
  CHECK_THROWS_AS(CTFadingModel::custom("fat_tail", bad), std::invalid_argument);
}
