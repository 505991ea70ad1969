#include "fadecap/vector_channel.hpp"

#include <cmath>
#include <stdexcept>

namespace fadecap {

namespace {

cplx unit_phase(int t, int phases) {
  switch (phases) {
    case 1:
      return {1.0, 0.0};
    case 2:
      return t == 0 ? cplx{1.0, 0.0} : cplx{-1.0, 0.0};
    case 4:
      switch (t & 3) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
      }
    default: {
      double phi = 6.283185307179586476925286766559 * t / phases;
      return {std::cos(phi), std::sin(phi)};
    }
  }
}

}  // namespace

InputDistribution::InputDistribution(int n, std::vector<Atom> atoms,
                                     std::optional<double> beta)
    : n_(n), atoms_(std::move(atoms)) {
  if (n < 1) throw std::invalid_argument("InputDistribution: n >= 1");
  if (atoms_.empty()) throw std::invalid_argument("InputDistribution: no atoms");
  double total = 0.0;
  std::vector<double> avg_power(n, 0.0);
  for (const Atom& a : atoms_) {
    if (static_cast<int>(a.z.size()) != n)
      throw std::invalid_argument("InputDistribution: atom length mismatch");
    if (!(a.p > 0.0)) throw std::invalid_argument("InputDistribution: p > 0");
    total += a.p;
    for (int i = 0; i < n; ++i) {
      double mag = std::abs(a.z[i]);
      if (mag > 1.0 + 1e-12)
        throw std::invalid_argument("InputDistribution: peak |z_i| <= 1");
      avg_power[i] += a.p * std::norm(a.z[i]);
    }
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("InputDistribution: probabilities must sum to 1");
  if (beta) {
    for (int i = 0; i < n; ++i)
      if (avg_power[i] > 1.0 / *beta + 1e-12)
        throw std::invalid_argument(
            "InputDistribution: average power exceeds 1/beta at coordinate " +
            std::to_string(i));
  }
}

InputDistribution InputDistribution::point_mass(std::vector<cplx> z) {
  int n = static_cast<int>(z.size());
  return InputDistribution(n, {Atom{std::move(z), 1.0}});
}

InputDistribution InputDistribution::onoff_iid(int n, double duty, int phases) {
  if (!(duty >= 0.0 && duty <= 1.0))
    throw std::invalid_argument("onoff_iid: duty in [0, 1]");
  if (phases < 1) throw std::invalid_argument("onoff_iid: phases >= 1");
  const int per_coord = phases + 1;
  double count = std::pow(double(per_coord), n);
  if (count > 2e6) throw std::invalid_argument("onoff_iid: too many atoms");
  std::vector<Atom> atoms;
  atoms.reserve(static_cast<std::size_t>(count));
  std::vector<int> idx(n, 0);
  while (true) {
    Atom a;
    a.p = 1.0;
    a.z.resize(n);
    for (int i = 0; i < n; ++i) {
      if (idx[i] == 0) {
        a.z[i] = 0.0;
        a.p *= 1.0 - duty;
      } else {
        a.z[i] = unit_phase(idx[i] - 1, phases);
        a.p *= duty / phases;
      }
    }
    if (a.p > 0.0) atoms.push_back(std::move(a));
    int c = 0;
    while (c < n && ++idx[c] == per_coord) idx[c++] = 0;
    if (c == n) break;
  }
  return InputDistribution(n, std::move(atoms));
}

InputDistribution InputDistribution::onoff_block(int n, double duty, int phases) {
  if (!(duty >= 0.0 && duty <= 1.0))
    throw std::invalid_argument("onoff_block: duty in [0, 1]");
  if (phases < 1) throw std::invalid_argument("onoff_block: phases >= 1");
  double count = std::pow(double(phases), n) + 1;
  if (count > 2e6) throw std::invalid_argument("onoff_block: too many atoms");
  std::vector<Atom> atoms;
  if (duty < 1.0) atoms.push_back(Atom{std::vector<cplx>(n, 0.0), 1.0 - duty});
  if (duty > 0.0) {
    double p_each = duty / std::pow(double(phases), n);
    std::vector<int> idx(n, 0);
    while (true) {
      Atom a;
      a.p = p_each;
      a.z.resize(n);
      for (int i = 0; i < n; ++i) a.z[i] = unit_phase(idx[i], phases);
      atoms.push_back(std::move(a));
      int c = 0;
      while (c < n && ++idx[c] == phases) idx[c++] = 0;
      if (c == n) break;
    }
  }
  return InputDistribution(n, std::move(atoms));
}

linalg::CMatrix k_of_z(std::span<const cplx> z, const FadingModel& model) {
  const int n = static_cast<int>(z.size());
  linalg::CMatrix k(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      k(i, j) = std::conj(z[i]) * z[j] * model.autocorrelation(j - i);
  return k;
}

linalg::CMatrix k_of_mu(const InputDistribution& mu, const FadingModel& model) {
  const int n = mu.n();
  linalg::CMatrix acc(n);
  for (const Atom& a : mu.atoms()) {
    linalg::CMatrix k = k_of_z(a.z, model);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) acc(i, j) += a.p * k(i, j);
  }
  return acc;
}

QuadraticMI mi_quadratic(const InputDistribution& mu, const FadingModel& model) {
  double mean_tr = 0.0;
  for (const Atom& a : mu.atoms())
    mean_tr += a.p * linalg::trace_sq_hermitian(k_of_z(a.z, model));
  double mix_tr = linalg::trace_sq_hermitian(k_of_mu(mu, model));
  return {0.5 * (mean_tr - mix_tr)};
}

double moment_coefficient(const InputDistribution& mu, const FadingModel& model) {
  const int n = mu.n();
  std::vector<double> ev(n, 0.0), ev2(n, 0.0);
  linalg::RMatrix evv(n);
  linalg::CMatrix cross(n);
  for (const Atom& a : mu.atoms()) {
    for (int i = 0; i < n; ++i) {
      double vi = std::norm(a.z[i]);
      ev[i] += a.p * vi;
      ev2[i] += a.p * vi * vi;
      for (int j = i + 1; j < n; ++j) {
        evv(i, j) += a.p * vi * std::norm(a.z[j]);
        cross(i, j) += a.p * std::conj(a.z[i]) * a.z[j];
      }
    }
  }
  double acc = 0.0;
  for (int i = 0; i < n; ++i) acc += ev2[i] - ev[i] * ev[i];
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double r2 = std::norm(model.autocorrelation(i - j));
      acc += 2.0 * r2 * (evv(i, j) - std::norm(cross(i, j)));
    }
  }
  return 0.5 * acc;
}

}  // namespace fadecap
