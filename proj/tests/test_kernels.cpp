#include "fadecap/kernels.hpp"

#include <cmath>
#include <vector>

#include "doctest.h"
#include "fadecap/rng.hpp"

using namespace fadecap;
namespace k = fadecap::kernels;

namespace {

std::vector<double> random_vec(std::size_t n, std::uint64_t seed, double lo,
                               double hi) {
  Rng rng(seed);
  std::vector<double> v(n);
  for (auto& x : v) x = lo + (hi - lo) * rng.next_unit();
  return v;
}

const std::size_t kSizes[] = {0, 1, 2, 3, 5, 8, 13, 64, 1000, 4096};

}  // namespace

TEST_CASE("scalar backend is always available") {
  CHECK(k::backend_available(k::Backend::scalar));
  CHECK(k::ops(k::Backend::scalar).sum != nullptr);
}

TEST_CASE("avx2 matches scalar on reductions") {
  if (!k::backend_available(k::Backend::avx2)) return;
  const auto& s = k::ops(k::Backend::scalar);
  const auto& a = k::ops(k::Backend::avx2);
  for (std::size_t n : kSizes) {
    auto x = random_vec(n, 11 + n, -2.0, 3.0);
    auto y = random_vec(n, 97 + n, -1.0, 1.0);
    double scale = 1.0 + double(n);
    CHECK(a.sum(x.data(), n) == doctest::Approx(s.sum(x.data(), n)).epsilon(1e-12).scale(scale));
    CHECK(a.dot(x.data(), y.data(), n) ==
          doctest::Approx(s.dot(x.data(), y.data(), n)).epsilon(1e-12).scale(scale));
    CHECK(a.sum_sq(x.data(), n) ==
          doctest::Approx(s.sum_sq(x.data(), n)).epsilon(1e-12).scale(scale));
    CHECK(a.sum_cube(x.data(), n) ==
          doctest::Approx(s.sum_cube(x.data(), n)).epsilon(1e-12).scale(10 * scale));
    CHECK(a.sum_indexed(x.data(), n) ==
          doctest::Approx(s.sum_indexed(x.data(), n)).epsilon(1e-12).scale(scale * scale));
  }
}

TEST_CASE("avx2 axpy matches scalar") {
  if (!k::backend_available(k::Backend::avx2)) return;
  const auto& s = k::ops(k::Backend::scalar);
  const auto& a = k::ops(k::Backend::avx2);
  for (std::size_t n : kSizes) {
    auto x = random_vec(n, 5 + n, -1.0, 1.0);
    auto y1 = random_vec(n, 7 + n, -1.0, 1.0);
    auto y2 = y1;
    s.axpy(0.37, x.data(), y1.data(), n);
    a.axpy(0.37, x.data(), y2.data(), n);
    for (std::size_t i = 0; i < n; ++i)
      CHECK(y1[i] == doctest::Approx(y2[i]).epsilon(1e-15));
  }
}

TEST_CASE("log kernels agree with libm") {
  if (!k::backend_available(k::Backend::avx2)) return;
  const auto& a = k::ops(k::Backend::avx2);
  // log1p sums over several magnitudes of the scale factor
  for (double c : {1e-6, 1e-3, 0.5, 1.0, 40.0, 1e4}) {
    auto x = random_vec(4096, 313, 0.0, 2.0);
    double ref = 0.0;
    for (double v : x) ref += std::log1p(c * v);
    CHECK(a.sum_log1p_scaled(x.data(), x.size(), c) ==
          doctest::Approx(ref).epsilon(1e-13));
  }
  // elementwise log across the double range
  for (double base : {1e-300, 1e-12, 0.9, 1.0 + 1e-14, 5.0, 1e18, 1e307}) {
    auto u = random_vec(257, 77, 1.0, 2.0);
    std::vector<double> in(u.size()), out(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) in[i] = base * u[i];
    a.log_array(in.data(), out.data(), in.size());
    for (std::size_t i = 0; i < in.size(); ++i)
      CHECK(out[i] == doctest::Approx(std::log(in[i])).epsilon(1e-14).scale(1.0));
  }
}

TEST_CASE("sum_sq_over_1p matches direct evaluation") {
  if (!k::backend_available(k::Backend::avx2)) return;
  const auto& a = k::ops(k::Backend::avx2);
  auto x = random_vec(1003, 5150, 0.0, 20.0);
  for (double c : {0.0, 1e-3, 1.0, 100.0}) {
    double ref = 0.0;
    for (double v : x) ref += v * v / (1.0 + c * v);
    CHECK(a.sum_sq_over_1p(x.data(), x.size(), c) ==
          doctest::Approx(ref).epsilon(1e-13));
  }
}

TEST_CASE("logsumexp handles spread and empty inputs") {
  for (auto backend : {k::Backend::scalar, k::Backend::avx2}) {
    if (!k::backend_available(backend)) continue;
    const auto& o = k::ops(backend);
    CHECK(o.logsumexp(nullptr, 0) == -std::numeric_limits<double>::infinity());
    double one[] = {3.25};
    CHECK(o.logsumexp(one, 1) == doctest::Approx(3.25));
    // widely spread values: small terms underflow harmlessly
    std::vector<double> v{-1e305, -700.0, 0.0, 1.0, -1e305, 0.5, -3.0, 2.0, -44.0};
    double m = 2.0, acc = 0.0;
    for (double x : v) acc += std::exp(x - m);
    CHECK(o.logsumexp(v.data(), v.size()) ==
          doctest::Approx(m + std::log(acc)).epsilon(1e-13));
  }
}

TEST_CASE("mixture_scores equals longhand quadratic forms") {
  Rng rng(2024);
  for (int dim : {1, 2, 3, 5}) {
    for (int count : {1, 3, 4, 9}) {
      auto pack = k::MixturePack::make(dim, count);
      const int pairs = pack.pairs();
      for (int c = 0; c < count; ++c) {
        pack.bias[c] = rng.next_unit() - 0.5;
        for (int i = 0; i < dim; ++i)
          pack.diag[std::size_t(i) * pack.stride + c] = rng.next_unit();
        for (int p = 0; p < pairs; ++p) {
          pack.off_re[std::size_t(p) * pack.stride + c] = rng.next_unit() - 0.5;
          pack.off_im[std::size_t(p) * pack.stride + c] = rng.next_unit() - 0.5;
        }
      }
      std::vector<double> u(dim), cre(std::max(pairs, 1)), cim(std::max(pairs, 1));
      for (auto& x : u) x = rng.next_unit() * 2.0;
      for (int p = 0; p < pairs; ++p) {
        cre[p] = rng.next_unit() - 0.5;
        cim[p] = rng.next_unit() - 0.5;
      }
      std::vector<double> expected(count);
      for (int c = 0; c < count; ++c) {
        double q = 0.0;
        for (int i = 0; i < dim; ++i)
          q += pack.diag[std::size_t(i) * pack.stride + c] * u[i];
        for (int p = 0; p < pairs; ++p) {
          q += pack.off_re[std::size_t(p) * pack.stride + c] * cre[p];
          q += pack.off_im[std::size_t(p) * pack.stride + c] * cim[p];
        }
        expected[c] = pack.bias[c] - q;
      }
      for (auto backend : {k::Backend::scalar, k::Backend::avx2}) {
        if (!k::backend_available(backend)) continue;
        std::vector<double> scores(pack.stride);
        k::ops(backend).mixture_scores(pack, u.data(), cre.data(), cim.data(),
                                       scores.data());
        for (int c = 0; c < count; ++c)
          CHECK(scores[c] == doctest::Approx(expected[c]).epsilon(1e-13));
        for (int c = count; c < pack.stride; ++c) CHECK(scores[c] <= -1e299);
      }
    }
  }
}

TEST_CASE("dotc matches scalar complex arithmetic") {
  if (!k::backend_available(k::Backend::avx2)) return;
  Rng rng(99);
  for (std::size_t n : {0u, 1u, 2u, 3u, 7u, 64u, 255u}) {
    std::vector<std::complex<double>> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = {rng.next_unit() - 0.5, rng.next_unit() - 0.5};
      y[i] = {rng.next_unit() - 0.5, rng.next_unit() - 0.5};
    }
    auto ref = k::ops(k::Backend::scalar).dotc(x.data(), y.data(), n);
    auto got = k::ops(k::Backend::avx2).dotc(x.data(), y.data(), n);
    CHECK(got.real() == doctest::Approx(ref.real()).epsilon(1e-12).scale(1 + double(n)));
    CHECK(got.imag() == doctest::Approx(ref.imag()).epsilon(1e-12).scale(1 + double(n)));
  }
}

TEST_CASE("backend override round-trips") {
  auto original = k::active_backend();
  k::set_active_backend(k::Backend::scalar);
  CHECK(k::active_backend() == k::Backend::scalar);
  CHECK(std::string(k::active().name) == "scalar");
  k::set_active_backend(original);
}
