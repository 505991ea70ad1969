#pragma once

// Stationary unit-variance proper-complex-Gaussian fading processes described
// by an autocorrelation sequence R(k) and a power spectral density S(w) on
// [0, 2pi), normalized so that R(0) = 1 and the mean of S over the circle is 1.
//
// Convention: R(k) = E[ H_{t+k} conj(H_t) ], so R(-k) = conj(R(k)) and
// S(w) = sum_k R(k) e^{-ikw},  R(k) = integral S(w) e^{ikw} dw/2pi.

#include <complex>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace fadecap {

using cplx = std::complex<double>;

struct ConsistencyReport {
  double max_abs_error = 0.0;
  int worst_lag = 0;
};

class FadingModel {
 public:
  enum class Kind { iid, gauss_markov, bandlimited, finite_memory, custom };

  using AutocorrFn = std::function<cplx(long)>;
  using PsdFn = std::function<double(double)>;

  // Memoryless fading: R(k) = 1{k=0}, S = 1.
  static FadingModel iid();
  // First-order autoregressive fading: R(k) = r^|k|,
  // S(w) = (1-r^2)/(1+r^2-2r cos w), 0 <= r < 1.
  static FadingModel gauss_markov(double r);
  // Flat band of total measure 2*pi*w centered at w = 0: S = 1/w inside,
  // 0 outside; R(k) = sinc(pi w k).  0 < w <= 1.
  static FadingModel bandlimited(double w);
  // Correlation cut off after |k| > taps.size(): R(k) = taps[k-1] for
  // 1 <= k <= K, R(0) = 1.  Rejects tap sets whose spectrum dips below zero.
  static FadingModel finite_memory(std::vector<cplx> taps);
  // User-supplied pair; verified against each other rather than derived.
  static FadingModel custom(std::string name, AutocorrFn r, PsdFn s,
                            std::vector<double> psd_breakpoints = {});

  cplx autocorrelation(long k) const;
  double psd(double omega) const;  // omega in [0, 2pi)

  Kind kind() const;
  const std::string& name() const;
  // Angles in [0, 2pi) where S jumps; empty for smooth spectra.
  const std::vector<double>& psd_breakpoints() const;
  // True when R(k) is real for every k (all built-ins except complex taps).
  bool real_autocorrelation() const;

  // Compares R(k) against the quadrature of S(w) e^{ikw} dw/2pi for
  // |k| <= n_terms.
  ConsistencyReport check_consistency(int n_terms, int quad_points) const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
  explicit FadingModel(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
};

}  // namespace fadecap
