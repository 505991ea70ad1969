#include "fadecap/fading_model.hpp"

#include <cmath>

#include "doctest.h"
#include "oracles.hpp"

using namespace fadecap;

namespace {
const double kTwoPi = 6.283185307179586476925286766559;

std::vector<FadingModel> builtins() {
  return {FadingModel::iid(), FadingModel::gauss_markov(0.5),
          FadingModel::gauss_markov(0.9), FadingModel::bandlimited(0.5),
          FadingModel::finite_memory({cplx(0.4, 0.0), cplx(0.2, 0.0)})};
}
}  // namespace

TEST_CASE("iid model") {
  FadingModel m = FadingModel::iid();
  CHECK(m.autocorrelation(3) == cplx(0.0));
  CHECK(m.autocorrelation(0) == cplx(1.0));
  CHECK(m.autocorrelation(-5) == cplx(0.0));
  CHECK(m.psd(1.0) == 1.0);
}

TEST_CASE("gauss-markov closed forms") {
  FadingModel m = FadingModel::gauss_markov(0.5);
  CHECK(m.autocorrelation(2).real() == doctest::Approx(0.25));
  CHECK(m.psd(0.0) == doctest::Approx(3.0));
  CHECK(m.psd(3.14159265358979) == doctest::Approx(1.0 / 3.0));
  CHECK(FadingModel::gauss_markov(0.9).autocorrelation(1).real() ==
        doctest::Approx(0.9));
}

TEST_CASE("gauss-markov r=0 agrees with iid pointwise") {
  FadingModel gm = FadingModel::gauss_markov(0.0);
  FadingModel id = FadingModel::iid();
  for (long k = -32; k <= 32; ++k)
    CHECK(gm.autocorrelation(k) == id.autocorrelation(k));
  for (int i = 0; i < 100; ++i) {
    double w = kTwoPi * i / 100;
    CHECK(gm.psd(w) == id.psd(w));
  }
}

TEST_CASE("bandlimited spectrum") {
  FadingModel m = FadingModel::bandlimited(0.5);
  CHECK(m.psd(0.1) == doctest::Approx(2.0));     // inside the band
  CHECK(m.psd(3.14159) == doctest::Approx(0.0)); // opposite side of the circle
  CHECK(m.autocorrelation(0) == cplx(1.0));
  // w = 1 degenerates to the memoryless model
  FadingModel full = FadingModel::bandlimited(1.0);
  for (long k = -8; k <= 8; ++k)
    CHECK(full.autocorrelation(k) == FadingModel::iid().autocorrelation(k));
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(FadingModel::gauss_markov(-0.1), std::invalid_argument);
  CHECK_THROWS_AS(FadingModel::gauss_markov(1.0), std::invalid_argument);
  CHECK_THROWS_AS(FadingModel::bandlimited(0.0), std::invalid_argument);
  CHECK_THROWS_AS(FadingModel::bandlimited(1.5), std::invalid_argument);
  CHECK_THROWS_AS(FadingModel::iid().check_consistency(0, 1024),
                  std::invalid_argument);
}

TEST_CASE("finite_memory rejects a negative spectrum and reports the angle") {
  try {
    FadingModel::finite_memory({cplx(0.9, 0.0)});
    FAIL("expected rejection");
  } catch (const std::invalid_argument& e) {
    std::string msg = e.what();
    CHECK(msg.find("S(") != std::string::npos);
    CHECK(msg.find("negative") != std::string::npos);
  }
}

TEST_CASE("finite_memory hermitian symmetry with complex taps") {
  FadingModel m = FadingModel::finite_memory({cplx(0.2, 0.1), cplx(0.05, -0.02)});
  for (long k = 1; k <= 4; ++k)
    CHECK(m.autocorrelation(-k) == std::conj(m.autocorrelation(k)));
  CHECK(!m.real_autocorrelation());
}

TEST_CASE("consistency checker on built-ins") {
  auto iid_report = FadingModel::iid().check_consistency(8, 4096);
  CHECK(iid_report.max_abs_error < 1e-10);

  auto gm_report = FadingModel::gauss_markov(0.9).check_consistency(16, 8192);
  CHECK(gm_report.max_abs_error < 1e-8);

  auto full_band = FadingModel::bandlimited(1.0).check_consistency(8, 4096);
  CHECK(full_band.max_abs_error == iid_report.max_abs_error);
  CHECK(full_band.worst_lag == iid_report.worst_lag);

  for (const FadingModel& m : builtins())
    CHECK(m.check_consistency(32, 8192).max_abs_error <= 1e-6);
}

TEST_CASE("spectra are nonnegative with unit mean on a dense grid") {
  for (const FadingModel& m : builtins()) {
    double mean = 0.0;
    const int grid = 10000;
    for (int i = 0; i < grid; ++i) {
      double s = m.psd(kTwoPi * i / grid);
      CHECK(s >= 0.0);
      mean += s;
    }
    mean /= grid;
    double tol = m.kind() == FadingModel::Kind::bandlimited ? 1e-3 : 1e-6;
    CHECK(std::abs(mean - 1.0) <= tol);
  }
}

TEST_CASE("autocorrelation magnitudes stay below one") {
  for (const FadingModel& m : builtins())
    for (long k = -32; k <= 32; ++k)
      CHECK(std::abs(m.autocorrelation(k)) <= 1.0 + 1e-12);
}

TEST_CASE("custom model verifies the supplied pair") {
  double r = 0.6;
  auto R = [r](long k) -> cplx { return std::pow(r, std::abs(double(k))); };
  auto S = [r](double w) {
    return (1 - r * r) / (1 + r * r - 2 * r * std::cos(w));
  };
  FadingModel ok = FadingModel::custom("ar1_custom", R, S);
  CHECK(ok.autocorrelation(2).real() == doctest::Approx(0.36));

  auto S_wrong = [](double) { return 1.0; };
  CHECK_THROWS_AS(FadingModel::custom("broken", R, S_wrong),
                  std::invalid_argument);
}
