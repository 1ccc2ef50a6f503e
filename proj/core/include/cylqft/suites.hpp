#pragma once

// Named verification suites. Each check records an expected and an actual
// value as strings; exact checks compare rationals, floating checks record
// "value (tol t)" and compare with |a - b| <= t * max(1, |a|, |b|).

#include <cstdint>
#include <string>
#include <vector>

namespace cylqft {

struct Tolerances {
  double kernel = 1e-10;     // closed-form kernel values
  double abel = 1e-4;        // Abel-summed mode series vs zeta(-1)
  double route = 1e-10;      // symbolic vs spectral evaluation
  double anomaly = 1e-6;     // stress anomaly lhs vs rhs
  double weighted = 1e-8;    // weighted pushforward identities
  double primary = 1e-8;     // derivative-field covariance
  double cocycle = 1e-9;     // Schwarzian cocycle
};

struct SuiteOptions {
  int n_max = 8;
  int K = 64;
  std::size_t hbar_trunc = 4;
  int band_limit = 8;
  std::uint64_t seed = 0;
  Tolerances tol;
  /// Zero every runtime so reports are byte-identical across runs.
  bool deterministic = false;
};

struct CheckResult {
  std::string check_id;
  std::string expected;
  std::string actual;
  bool pass = false;
  std::int64_t runtime_ms = 0;
};

struct SuiteReport {
  std::string suite_name;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;

  bool all_passed() const;
  std::size_t failures() const;
};

std::string to_json(const SuiteReport& report);

/// |a - b| <= tol * max(1, |a|, |b|).
bool close(double a, double b, double tol);

/// "%.17g"
std::string format_double(double x);

SuiteReport run_heisenberg(const SuiteOptions& opt);
SuiteReport run_virasoro(const SuiteOptions& opt);
SuiteReport run_zeta(const SuiteOptions& opt);
SuiteReport run_conformal(const SuiteOptions& opt);
/// Symbolic mode-algebra results against spectral evaluation.
SuiteReport run_routes(const SuiteOptions& opt);
/// Propagator identities and squared-kernel coefficients.
SuiteReport run_kernels(const SuiteOptions& opt);

const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);
/// Throws std::invalid_argument for an unknown name.
SuiteReport run_suite(const std::string& name, const SuiteOptions& opt);

}  // namespace cylqft
