#pragma once

// Quadrature grids.  Smooth periodic integrands on the circle use the uniform
// trapezoid rule (spectrally accurate there); spectra with jumps are split at
// the breakpoints and integrated with composite Gauss-Legendre panels.
// Infinite-line integrals map through w = tan(u).

#include <functional>
#include <span>
#include <vector>

namespace fadecap {

// 8-point Gauss-Legendre rule on [-1, 1], shared by the composite panels.
extern const double kGauss8Node[8];
extern const double kGauss8Weight[8];

// Nodes and weights for integral f dw/2pi over [0, 2pi); weights sum to 1.
struct CircleGrid {
  std::vector<double> omega;
  std::vector<double> weight;
  bool uniform = true;  // uniform trapezoid grid, weight = 1/N each
};

CircleGrid make_circle_grid(std::span<const double> breakpoints, int n_points);

// Nodes and weights for integral f(w) dw/2pi over the real line under
// w = tan(u); weights include the 1/2pi and the Jacobian.
struct LineGrid {
  std::vector<double> omega;
  std::vector<double> weight;
};

LineGrid make_line_grid(std::span<const double> breakpoints, int n_points);

}  // namespace fadecap
