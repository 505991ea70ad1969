// Command-line front end: bound sweeps, prediction-error tables, on-off
// lower-bound tables, mutual-information checks, continuous-time curves, and
// the validation suites.  All outputs are CSV with a header row and values
// printed to 12 significant digits; runs are deterministic for a fixed
// configuration and seed.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "fadecap/bounds.hpp"
#include "fadecap/continuous_time.hpp"
#include "fadecap/mi_oracle.hpp"
#include "fadecap/onoff.hpp"
#include "fadecap/prediction.hpp"
#include "fadecap/rng.hpp"
#include "fadecap/spectral.hpp"
#include "fadecap/validation.hpp"
#include "fadecap/vector_channel.hpp"

namespace {

using fadecap::cplx;
using fadecap::FadingModel;

constexpr double kLn2 = 0.69314718055994530942;

struct Table {
  std::vector<std::string> header;
  std::vector<bool> is_rate;  // column rescaled when units = bits
  std::vector<std::vector<double>> rows;
};

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void write_table(std::ostream& os, const Table& t, bool bits) {
  for (std::size_t c = 0; c < t.header.size(); ++c)
    os << (c ? "," : "") << t.header[c];
  os << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      double v = row[c];
      if (bits && t.is_rate[c]) v /= kLn2;
      os << (c ? "," : "") << format_value(v);
    }
    os << "\n";
  }
}

int worker_count(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("FADECAP_WORKERS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 1;
}

// Computes rows[i] = fn(i) for i < count, possibly on several threads; row
// order in the output never depends on scheduling.
template <typename F>
std::vector<std::vector<double>> compute_rows(int count, int workers, F&& fn) {
  std::vector<std::vector<double>> rows(count);
  if (workers <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) rows[i] = fn(i);
    return rows;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1))
          rows[i] = fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return rows;
}

std::vector<cplx> parse_taps(const std::string& spec) {
  std::vector<cplx> taps;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    // forms: "a", "a+bi", "a-bi"
    double re = 0.0, im = 0.0;
    std::size_t pos = item.find_first_of("+-", 1);
    if (pos != std::string::npos && item.find('i') != std::string::npos) {
      re = std::stod(item.substr(0, pos));
      std::string imag = item.substr(pos);
      imag.erase(imag.find('i'));
      im = std::stod(imag);
    } else {
      re = std::stod(item);
    }
    taps.emplace_back(re, im);
  }
  return taps;
}

struct ModelOptions {
  std::string kind = "iid";
  double r = 0.5;
  double w = 0.5;
  std::string taps;

  void attach(CLI::App* cmd) {
    cmd->add_option("--model", kind, "fading model: iid, gauss_markov, bandlimited, finite_memory")
        ->capture_default_str();
    cmd->add_option("--r", r, "gauss_markov correlation coefficient")->capture_default_str();
    cmd->add_option("--w", w, "bandlimited band fraction")->capture_default_str();
    cmd->add_option("--taps", taps, "finite_memory lags R(1..K), e.g. 0.4,0.2 or 0.3+0.1i");
  }

  FadingModel build() const {
    if (kind == "iid") return FadingModel::iid();
    if (kind == "gauss_markov") return FadingModel::gauss_markov(r);
    if (kind == "bandlimited") return FadingModel::bandlimited(w);
    if (kind == "finite_memory") return FadingModel::finite_memory(parse_taps(taps));
    throw CLI::ValidationError("--model", "unknown model kind: " + kind);
  }
};

struct GridOptions {
  std::vector<double> rho;
  double rho_min = 0.0, rho_max = 0.0;
  int rho_count = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--rho", rho, "peak power grid (comma separated)")->delimiter(',');
    cmd->add_option("--rho-min", rho_min, "log-spaced grid start");
    cmd->add_option("--rho-max", rho_max, "log-spaced grid end");
    cmd->add_option("--rho-count", rho_count, "log-spaced grid size");
  }

  std::vector<double> build() const {
    std::vector<double> grid = rho;
    if (grid.empty() && rho_count > 0) {
      if (!(rho_min > 0.0) || !(rho_max >= rho_min))
        throw CLI::ValidationError("--rho-min", "need 0 < rho-min <= rho-max");
      for (int i = 0; i < rho_count; ++i) {
        double t = rho_count == 1 ? 0.0 : double(i) / (rho_count - 1);
        grid.push_back(rho_min * std::pow(rho_max / rho_min, t));
      }
    }
    if (grid.empty())
      throw CLI::ValidationError("--rho", "empty peak-power grid");
    for (double v : grid)
      if (!(v > 0.0)) throw CLI::ValidationError("--rho", "rho values must be > 0");
    return grid;
  }
};

std::ostream& open_output(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path);
  if (!file) throw std::runtime_error("cannot open output file: " + path);
  return file;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"capacity bounds for noncoherent correlated Rayleigh fading"};
  app.require_subcommand(1);
  app.set_config("--config", "", "flat key = value config file ([section] per subcommand)");

  std::string output;
  std::string units = "nats";
  int quad_points = 8192;
  long samples = 100000;
  std::uint64_t seed = 1;
  int workers = 0;
  app.add_option("--output,-o", output, "output CSV path (default stdout)")->configurable(true);
  app.add_option("--units", units, "nats or bits (rescales rate columns)")
      ->check(CLI::IsMember({"nats", "bits"}))->configurable(true);
  app.add_option("--quad-points", quad_points, "spectral quadrature grid size")->configurable(true);
  app.add_option("--samples", samples, "Monte Carlo sample count")->configurable(true);
  app.add_option("--seed", seed, "Monte Carlo seed")->configurable(true);
  app.add_option("--workers", workers, "sweep worker threads (or FADECAP_WORKERS)")->configurable(true);

  // --- bounds -----------------------------------------------------------
  auto* cmd_bounds = app.add_subcommand("bounds", "tabulate the capacity bounds over a rho grid");
  cmd_bounds->fallthrough();
  cmd_bounds->configurable();
  ModelOptions bounds_model;
  GridOptions bounds_grid;
  double bounds_beta = 1.0;
  std::vector<long> bounds_n{1024};
  bool with_cll_mc = false;
  bounds_model.attach(cmd_bounds);
  bounds_grid.attach(cmd_bounds);
  cmd_bounds->add_option("--beta", bounds_beta, "peak-to-average ratio")->capture_default_str();
  cmd_bounds->add_option("--n", bounds_n, "on-off block lengths; largest is tabulated")->delimiter(',');
  cmd_bounds->add_flag("--with-cll-mc", with_cll_mc,
                       "append a Monte Carlo constant-amplitude lower-bound diagnostic");

  // --- asymptote --------------------------------------------------------
  auto* cmd_asym = app.add_subcommand("asymptote", "normalized curves U/rho^2, L_n/rho^2 vs the exact coefficient");
  cmd_asym->fallthrough();
  cmd_asym->configurable();
  ModelOptions asym_model;
  GridOptions asym_grid;
  double asym_beta = 1.0;
  long asym_n = 1024;
  asym_model.attach(cmd_asym);
  asym_grid.attach(cmd_asym);
  cmd_asym->add_option("--beta", asym_beta, "peak-to-average ratio")->capture_default_str();
  cmd_asym->add_option("--n", asym_n, "on-off block length")->capture_default_str();

  // --- predict ----------------------------------------------------------
  auto* cmd_predict = app.add_subcommand("predict", "finite-window MMSE prediction error vs the asymptotic value");
  cmd_predict->fallthrough();
  cmd_predict->configurable();
  ModelOptions pred_model;
  double pred_rho = 1.0;
  std::string pred_mode = "causal";
  std::vector<long> pred_n{2, 8, 32, 128, 512, 1024};
  pred_model.attach(cmd_predict);
  cmd_predict->add_option("--rho", pred_rho, "peak power")->capture_default_str();
  cmd_predict->add_option("--mode", pred_mode, "causal or noncausal")
      ->check(CLI::IsMember({"causal", "noncausal"}));
  cmd_predict->add_option("--n", pred_n, "window sizes")->delimiter(',');

  // --- lowerbound -------------------------------------------------------
  auto* cmd_lower = app.add_subcommand("lowerbound", "on-off scheme: lambda_n, duty cycle, rate coefficient");
  cmd_lower->fallthrough();
  cmd_lower->configurable();
  ModelOptions lower_model;
  double lower_beta = 1.0;
  std::vector<long> lower_n{2, 8, 32, 128, 512};
  lower_model.attach(cmd_lower);
  cmd_lower->add_option("--beta", lower_beta, "peak-to-average ratio")->capture_default_str();
  cmd_lower->add_option("--n", lower_n, "block lengths")->delimiter(',');

  // --- mi ---------------------------------------------------------------
  auto* cmd_mi = app.add_subcommand("mi", "quadratic mutual-information coefficient, optionally with the Monte Carlo oracle");
  cmd_mi->fallthrough();
  cmd_mi->configurable();
  ModelOptions mi_model;
  GridOptions mi_grid;
  int mi_n = 2;
  double mi_duty = 0.5;
  int mi_phases = 4;
  std::string mi_family = "iid";
  bool mi_oracle = false;
  mi_model.attach(cmd_mi);
  mi_grid.attach(cmd_mi);
  cmd_mi->add_option("--n", mi_n, "block length")->capture_default_str();
  cmd_mi->add_option("--duty", mi_duty, "on probability")->capture_default_str();
  cmd_mi->add_option("--phases", mi_phases, "phase alphabet size")->capture_default_str();
  cmd_mi->add_option("--family", mi_family, "iid (per-coordinate) or block on-off")
      ->check(CLI::IsMember({"iid", "block"}));
  cmd_mi->add_flag("--oracle", mi_oracle, "also run the Monte Carlo estimator");

  // --- ct -----------------------------------------------------------------
  auto* cmd_ct = app.add_subcommand("ct", "continuous-time rate integral and capacity");
  cmd_ct->fallthrough();
  cmd_ct->configurable();
  std::string ct_kind = "ou";
  double ct_gamma = 1.0, ct_wmax = 1.0;
  std::vector<double> ct_ppeak{2.0}, ct_pave{0.5};
  int ct_points = 4096;
  cmd_ct->add_option("--ct-model", ct_kind, "ou or bandlimited")
      ->check(CLI::IsMember({"ou", "bandlimited"}));
  cmd_ct->add_option("--gamma", ct_gamma, "ou bandwidth parameter")->capture_default_str();
  cmd_ct->add_option("--W", ct_wmax, "bandlimited cutoff (rad/s)")->capture_default_str();
  cmd_ct->add_option("--p-peak", ct_ppeak, "peak power grid")->delimiter(',');
  cmd_ct->add_option("--p-ave", ct_pave, "average power grid")->delimiter(',');
  cmd_ct->add_option("--points", ct_points, "quadrature points")->capture_default_str();

  // --- validate -----------------------------------------------------------
  auto* cmd_validate = app.add_subcommand("validate", "run the built-in validation checks");
  cmd_validate->fallthrough();
  cmd_validate->configurable();
  std::string suite = "all";
  cmd_validate->add_option("--suite", suite, "all, asymptotes, mi, prediction, lambda, ct")
      ->check(CLI::IsMember({"all", "asymptotes", "mi", "prediction", "lambda", "ct"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  std::ofstream file;
  try {
    std::ostream& os = open_output(output, file);
    const bool bits = units == "bits";
    const int nworkers = worker_count(workers);

    if (*cmd_bounds) {
      FadingModel model = bounds_model.build();
      std::vector<double> grid = bounds_grid.build();
      if (bounds_n.empty()) throw std::runtime_error("--n must not be empty");
      long nmax = *std::max_element(bounds_n.begin(), bounds_n.end());
      fadecap::SpectralFunctionals sf(model, quad_points);
      double f = fadecap::asymptote_f(sf.lambda_inf(), bounds_beta);
      double coeff = fadecap::ln_coefficient(model, nmax, bounds_beta);
      Table t;
      t.header = {"rho", "U", "U_pred", "C_u", "L_n", "f_beta_rho2", "theta"};
      t.is_rate = {false, true, true, true, true, true, false};
      if (with_cll_mc) {
        t.header.insert(t.header.end(), {"cll_mc", "cll_mc_stderr"});
        t.is_rate.insert(t.is_rate.end(), {true, true});
      }
      t.rows = compute_rows(static_cast<int>(grid.size()), nworkers, [&](int i) {
        double rho = grid[i];
        std::vector<double> row{
            rho,
            fadecap::upper_bound_u(sf, rho, bounds_beta),
            fadecap::upper_bound_u_pred(sf, rho, bounds_beta).value,
            fadecap::bound_cu(sf, rho, bounds_beta),
            coeff * rho * rho,
            f * rho * rho,
            fadecap::theta_star(sf, rho, bounds_beta)};
        if (with_cll_mc) {
          std::uint64_t row_seed = seed;
          fadecap::splitmix64(row_seed);
          auto est = fadecap::cll_monte_carlo(sf, rho, bounds_beta, samples,
                                              row_seed + i);
          row.push_back(est.value);
          row.push_back(est.stderr_);
        }
        return row;
      });
      write_table(os, t, bits);
      return 0;
    }

    if (*cmd_asym) {
      FadingModel model = asym_model.build();
      std::vector<double> grid = asym_grid.build();
      fadecap::SpectralFunctionals sf(model, quad_points);
      double f = fadecap::asymptote_f(sf.lambda_inf(), asym_beta);
      double coeff = fadecap::ln_coefficient(model, asym_n, asym_beta);
      Table t;
      t.header = {"rho", "U_over_rho2", "L_n_over_rho2", "f_beta"};
      t.is_rate = {false, true, true, true};
      t.rows = compute_rows(static_cast<int>(grid.size()), nworkers, [&](int i) {
        double rho = grid[i];
        return std::vector<double>{
            rho, fadecap::upper_bound_u(sf, rho, asym_beta) / (rho * rho), coeff, f};
      });
      write_table(os, t, bits);
      return 0;
    }

    if (*cmd_predict) {
      FadingModel model = pred_model.build();
      if (pred_n.empty()) throw std::runtime_error("--n must not be empty");
      fadecap::SpectralFunctionals sf(model, quad_points);
      auto mode = pred_mode == "causal" ? fadecap::PredictionWindow::causal
                                        : fadecap::PredictionWindow::noncausal;
      double asymptotic = mode == fadecap::PredictionWindow::causal
                              ? fadecap::causal_error(sf, pred_rho)
                              : fadecap::noncausal_error(sf, pred_rho);
      Table t;
      t.header = {"n", "sigma2_window", "sigma2_asymptotic"};
      t.is_rate = {false, false, false};
      t.rows = compute_rows(static_cast<int>(pred_n.size()), nworkers, [&](int i) {
        long n = pred_n[i];
        return std::vector<double>{
            double(n),
            fadecap::finite_window_error(model, pred_rho, static_cast<int>(n), mode),
            asymptotic};
      });
      write_table(os, t, bits);
      return 0;
    }

    if (*cmd_lower) {
      FadingModel model = lower_model.build();
      if (lower_n.empty()) throw std::runtime_error("--n must not be empty");
      Table t;
      t.header = {"n", "lambda_n", "a", "coeff"};
      t.is_rate = {false, false, false, true};
      t.rows = compute_rows(static_cast<int>(lower_n.size()), nworkers, [&](int i) {
        long n = lower_n[i];
        double lam = fadecap::lambda_n(model, n);
        double a = fadecap::optimal_duty(lam, lower_beta);
        return std::vector<double>{double(n), lam, a, 0.5 * (a * lam - a * a)};
      });
      write_table(os, t, bits);
      return 0;
    }

    if (*cmd_mi) {
      FadingModel model = mi_model.build();
      std::vector<double> grid = mi_grid.build();
      fadecap::InputDistribution mu =
          mi_family == "iid"
              ? fadecap::InputDistribution::onoff_iid(mi_n, mi_duty, mi_phases)
              : fadecap::InputDistribution::onoff_block(mi_n, mi_duty, mi_phases);
      fadecap::QuadraticMI quad = fadecap::mi_quadratic(mu, model);
      Table t;
      t.header = {"rho", "quad_coeff", "mi_quadratic"};
      t.is_rate = {false, true, true};
      if (mi_oracle) {
        t.header.insert(t.header.end(), {"mi_oracle", "oracle_stderr", "samples"});
        t.is_rate.insert(t.is_rate.end(), {true, true, false});
      }
      t.rows = compute_rows(static_cast<int>(grid.size()), nworkers, [&](int i) {
        double rho = grid[i];
        std::vector<double> row{rho, quad.coefficient, quad.value_at(rho)};
        if (mi_oracle) {
          auto est = fadecap::mi_monte_carlo(mu, model, rho, samples, seed + i);
          row.insert(row.end(), {est.value, est.stderr_, double(est.samples)});
        }
        return row;
      });
      write_table(os, t, bits);
      return 0;
    }

    if (*cmd_ct) {
      fadecap::CTFadingModel model = ct_kind == "ou"
                                         ? fadecap::CTFadingModel::ornstein_uhlenbeck(ct_gamma)
                                         : fadecap::CTFadingModel::bandlimited(ct_wmax);
      if (ct_ppeak.empty() || ct_pave.empty())
        throw std::runtime_error("power grids must not be empty");
      struct Pair {
        double peak, ave;
      };
      std::vector<Pair> pairs;
      for (double pk : ct_ppeak)
        for (double pa : ct_pave) {
          if (pa > pk)
            throw std::runtime_error("constraint violation: P_ave > P_peak");
          pairs.push_back({pk, pa});
        }
      Table t;
      t.header = {"P_peak", "P_ave", "I", "C"};
      t.is_rate = {false, false, true, true};
      t.rows = compute_rows(static_cast<int>(pairs.size()), nworkers, [&](int i) {
        auto [pk, pa] = pairs[i];
        double ival = fadecap::ct_I(model, pk, ct_points).value;
        return std::vector<double>{pk, pa, ival, pa - pa / pk * ival};
      });
      write_table(os, t, bits);
      return 0;
    }

    if (*cmd_validate) {
      fadecap::validation::Options vopts;
      vopts.seed = seed;
      vopts.samples = samples;
      vopts.quad_points = quad_points;
      auto results = fadecap::validation::run_suite(suite, vopts);
      os << "check,measured,expected,tolerance,status\n"
         << fadecap::validation::render(results);
      return fadecap::validation::all_passed(results) ? 0 : 2;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
