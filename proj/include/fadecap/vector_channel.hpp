#pragma once

// Finite-length block channel Y = sqrt(rho) Z diag(H) + W and the quadratic
// (low-power) expansion of its mutual information for finite-support input
// distributions.

#include <optional>
#include <span>
#include <vector>

#include "fadecap/fading_model.hpp"
#include "fadecap/linalg.hpp"

namespace fadecap {

struct Atom {
  std::vector<cplx> z;
  double p;
};

class InputDistribution {
 public:
  // Validates: probabilities positive and summing to 1, peak |z_i| <= 1, and
  // per-coordinate average power <= 1/beta when a beta is attached.
  InputDistribution(int n, std::vector<Atom> atoms,
                    std::optional<double> beta = std::nullopt);

  static InputDistribution point_mass(std::vector<cplx> z);
  // Independent per-coordinate on-off: each coordinate is 0 with probability
  // 1-duty or a unit-magnitude symbol from `phases` equally likely points on
  // the circle.
  static InputDistribution onoff_iid(int n, double duty, int phases = 4);
  // Block on-off: one shared on/off draw for the whole block, independent
  // uniform phases per coordinate when on.
  static InputDistribution onoff_block(int n, double duty, int phases = 4);

  int n() const { return n_; }
  const std::vector<Atom>& atoms() const { return atoms_; }

 private:
  int n_;
  std::vector<Atom> atoms_;
};

// Conditional output covariance shape for input z: K_{ij} = conj(z_i) z_j R(j-i).
linalg::CMatrix k_of_z(std::span<const cplx> z, const FadingModel& model);

// Probability-weighted average of k_of_z over the atoms.
linalg::CMatrix k_of_mu(const InputDistribution& mu, const FadingModel& model);

struct QuadraticMI {
  double coefficient = 0.0;  // rho^2-coefficient
  double value_at(double rho) const { return coefficient * rho * rho; }
};

// coefficient = (E Tr K_Z^2 - Tr K_mu^2) / 2.
QuadraticMI mi_quadratic(const InputDistribution& mu, const FadingModel& model);

// Same coefficient assembled from the joint power/phase moments of the atoms,
// using only |R| values; independent arithmetic route used as a cross-check.
double moment_coefficient(const InputDistribution& mu, const FadingModel& model);

}  // namespace fadecap
