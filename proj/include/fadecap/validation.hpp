#pragma once

// Self-contained validation checks against frozen oracle values, grouped into
// suites runnable from the CLI.  Each check reports the measured value, the
// expected value, the tolerance, and pass/fail.

#include <cstdint>
#include <string>
#include <vector>

namespace fadecap::validation {

struct CheckResult {
  std::string name;
  double measured = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct Options {
  std::uint64_t seed = 42;
  long samples = 1000000;
  int quad_points = 8192;
};

// Fine-grained check groups (the acceptance runner consumes these directly).
std::vector<CheckResult> check_u_asymptote(const Options& opts);
std::vector<CheckResult> check_onoff_asymptote(const Options& opts);
std::vector<CheckResult> check_ordering(const Options& opts);
std::vector<CheckResult> check_u_pred(const Options& opts);
std::vector<CheckResult> check_mi_quad1d(const Options& opts);
std::vector<CheckResult> check_mi_mc(const Options& opts);
std::vector<CheckResult> check_prediction(const Options& opts);
std::vector<CheckResult> check_lambda(const Options& opts);
std::vector<CheckResult> check_ct(const Options& opts);

std::vector<CheckResult> suite_asymptotes(const Options& opts);
std::vector<CheckResult> suite_mi(const Options& opts);
std::vector<CheckResult> suite_prediction(const Options& opts);
std::vector<CheckResult> suite_lambda(const Options& opts);
std::vector<CheckResult> suite_ct(const Options& opts);

// One of: all, asymptotes, mi, prediction, lambda, ct.  Throws on an unknown
// suite name.
std::vector<CheckResult> run_suite(const std::string& suite, const Options& opts);

// Rendered as "name,measured,expected,tolerance,PASS|FAIL" lines with
// 12-significant-digit values.
std::string render(const std::vector<CheckResult>& results);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace fadecap::validation
