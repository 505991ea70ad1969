#include "fadecap/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fadecap {

const double kGauss8Node[8] = {
    -0.9602898564975362316835609, -0.7966664774136267395915539,
    -0.5255324099163289858177390, -0.1834346424956498049394761,
    0.1834346424956498049394761,  0.5255324099163289858177390,
    0.7966664774136267395915539,  0.9602898564975362316835609};
const double kGauss8Weight[8] = {
    0.1012285362903762591525314, 0.2223810344533744705443560,
    0.3137066458778872873379622, 0.3626837833783619829651504,
    0.3626837833783619829651504, 0.3137066458778872873379622,
    0.2223810344533744705443560, 0.1012285362903762591525314};

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Append composite 8-point panels covering [a, b] to the grid; `measure`
// converts lengths to the final weight scale.
void add_segment(double a, double b, int points, double measure,
                 std::vector<double>& nodes, std::vector<double>& weights) {
  int panels = std::max(1, points / 8);
  double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    double mid = a + (p + 0.5) * h;
    for (int q = 0; q < 8; ++q) {
      nodes.push_back(mid + 0.5 * h * kGauss8Node[q]);
      weights.push_back(0.5 * h * kGauss8Weight[q] * measure);
    }
  }
}

}  // namespace

CircleGrid make_circle_grid(std::span<const double> breakpoints, int n_points) {
  if (n_points < 8) throw std::invalid_argument("quadrature grid too small");
  CircleGrid g;
  if (breakpoints.empty()) {
    g.uniform = true;
    g.omega.resize(n_points);
    g.weight.assign(n_points, 1.0 / n_points);
    for (int i = 0; i < n_points; ++i) g.omega[i] = kTwoPi * i / n_points;
    return g;
  }
  g.uniform = false;
  std::vector<double> cuts(breakpoints.begin(), breakpoints.end());
  for (double& c : cuts) {
    c = std::fmod(c, kTwoPi);
    if (c < 0) c += kTwoPi;
  }
  cuts.push_back(0.0);
  cuts.push_back(kTwoPi);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [](double a, double b) { return std::abs(a - b) < 1e-14; }),
             cuts.end());
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    double a = cuts[s], b = cuts[s + 1];
    if (b - a < 1e-14) continue;
    int pts = std::max(16, static_cast<int>(n_points * (b - a) / kTwoPi));
    add_segment(a, b, pts, 1.0 / kTwoPi, g.omega, g.weight);
  }
  return g;
}

LineGrid make_line_grid(std::span<const double> breakpoints, int n_points) {
  if (n_points < 8) throw std::invalid_argument("quadrature grid too small");
  const double half_pi = 1.5707963267948966192313216916398;
  std::vector<double> cuts{-half_pi, half_pi};
  for (double w : breakpoints) cuts.push_back(std::atan(w));
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [](double a, double b) { return std::abs(a - b) < 1e-14; }),
             cuts.end());

  LineGrid g;
  std::vector<double> unodes, uweights;
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    double a = cuts[s], b = cuts[s + 1];
    if (b - a < 1e-14) continue;
    int pts = std::max(16, static_cast<int>(n_points * (b - a) / (2 * half_pi)));
    add_segment(a, b, pts, 1.0, unodes, uweights);
  }
  g.omega.resize(unodes.size());
  g.weight.resize(unodes.size());
  for (std::size_t i = 0; i < unodes.size(); ++i) {
    double t = std::tan(unodes[i]);
    g.omega[i] = t;
    g.weight[i] = uweights[i] * (1.0 + t * t) / kTwoPi;  // dw = sec^2(u) du
  }
  return g;
}

}  // namespace fadecap
