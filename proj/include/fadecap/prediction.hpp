#pragma once

// MMSE estimation error of the fading value H_0 from peak-power noisy
// observations Y_k = sqrt(rho) H_k + W_k over an index window.  The
// asymptotic limits have closed forms; the finite-window path solves the
// normal equations directly and acts as the independent oracle.

#include "fadecap/spectral.hpp"

namespace fadecap {

enum class PredictionWindow { causal, noncausal };

// One-sided infinite-window error: (exp(I(rho)) - 1) / rho.
double causal_error(const SpectralFunctionals& sf, double rho);

// Two-sided infinite-window (smoothing) error:
// 1 - rho * integral S^2/(1+rho S) dw/2pi.
double noncausal_error(const SpectralFunctionals& sf, double rho);

// Error from a finite window: causal uses lags {-1,...,-n}, noncausal the
// symmetric lags {-n/2,...,n/2} (n even, current index observed).  Causal
// windows go through the Levinson solver; the rest through a dense Cholesky
// with a real fast path when the autocorrelation is real.
double finite_window_error(const FadingModel& model, double rho, int n,
                           PredictionWindow window);

}  // namespace fadecap
