#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "gaussinfo/config.hpp"

namespace gaussinfo::cli {

/// A computation or cross-route check failed for a specific row (exit code 3).
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// CSV with a header row; '.' decimal separator, 17 significant digits, LF
/// line endings.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string to_csv() const;
};

std::string format_real(double x);

/// Result of one scenario. `failures` lists every cross-route check that
/// missed its tolerance; the table is complete either way.
struct RunResult {
  Table table;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

/// k1, omega_plus, omega_minus, xi, purity_cov, purity_closed, entropy_nu,
/// entropy_xi. Purity columns must agree to 1e-12, entropy columns to 1e-10.
RunResult run_two_osc_sweep(const ScenarioConfig& cfg, int jobs);

/// n, S_n, S_complement, purity_n for every split of the chain into the
/// first n and last N - n oscillators; S_n and S_complement must agree to
/// 1e-8.
RunResult run_chain(const ScenarioConfig& cfg, int jobs);

/// quantity, value: the spin-1/2 and two-qubit worked examples.
RunResult run_qubits(const ScenarioConfig& cfg);

/// lambda, g_ii, chi_F, peak. The metric and susceptibility columns must
/// agree to 1e-10; `peak` marks the row with the largest chi_F.
RunResult run_qgt_scan(const ScenarioConfig& cfg, int jobs);

/// quantity, quantum_value, classical_value, abs_diff for purity, linear
/// entropy, entropy and every symplectic eigenvalue of the kept block.
RunResult run_classical_compare(const ScenarioConfig& cfg);

RunResult run_scenario(const ScenarioConfig& cfg, int jobs);

}  // namespace gaussinfo::cli
