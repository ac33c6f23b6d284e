#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gaussinfo/oscillator_model.hpp"
#include "gaussinfo/types.hpp"

namespace gaussinfo::cli {

/// Malformed or inconsistent scenario configuration (exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SystemKind { two_osc, chain, qubits, qgt_scan, classical_compare };

std::string_view to_string(SystemKind kind);
SystemKind parse_kind(std::string_view text);

enum class SweepScale { linear, log };

/// Sweep over one parameter: either an explicit `values` list or `steps`
/// equal intervals between `from` and `to` (steps + 1 points, inclusive).
struct SweepAxis {
  std::string axis;
  double from = 0.0;
  double to = 0.0;
  int steps = 1;
  SweepScale scale = SweepScale::linear;
  std::vector<double> values;

  std::vector<double> points() const;
};

struct ScenarioConfig {
  SystemKind kind = SystemKind::two_osc;

  double k0 = 1.0;
  double k1 = 0.0;
  std::optional<std::string> k_matrix_path;
  int n_oscillators = 2;
  Boundary boundary = Boundary::open;
  int block = 1;
  double hbar = 1.0;
  std::optional<SweepAxis> sweep;
  std::optional<std::string> output;

  // qgt_scan
  std::string family = "avoided_crossing";
  double delta = 0.1;
  double omega = 1.0;
  int fock_dim = 40;
  double omega_ref = 1.0;
};

/// Parses the key = value scenario format. Blank lines and '#' comments are
/// ignored; a `[sweep]` header prefixes the keys that follow with "sweep.".
/// Keys that do not apply to `kind` are errors. A `kind` key, if present,
/// must agree with `kind`.
ScenarioConfig parse_config(std::string_view text, SystemKind kind);

/// Reads and parses a file. Relative k_matrix paths resolve against the
/// config file's directory.
ScenarioConfig load_config(const std::string& path, SystemKind kind);

/// Whitespace-separated square matrix, one row per line.
Matrix load_matrix(const std::string& path);

}  // namespace gaussinfo::cli
