// gaussinfo: parameter sweeps over oscillator networks, qubit examples and
// geometric-tensor scans, written as CSV.

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "gaussinfo/config.hpp"
#include "gaussinfo/errors.hpp"
#include "gaussinfo/scenario.hpp"

namespace {

using gaussinfo::cli::ConfigError;
using gaussinfo::cli::NumericalFailure;
using gaussinfo::cli::ScenarioConfig;
using gaussinfo::cli::SystemKind;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct Options {
  std::string config_path;
  std::string out_path;
  std::optional<double> hbar;
  std::optional<long long> seed;
  std::optional<int> jobs;
};

int resolve_jobs(const std::optional<int>& flag) {
  if (flag) {
    if (*flag < 1) throw ConfigError("--jobs must be at least 1");
    return *flag;
  }
  if (const char* env = std::getenv("GAUSSINFO_JOBS"); env && *env) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1) throw ConfigError("GAUSSINFO_JOBS must be a positive integer");
    return static_cast<int>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot open output file '" + path + "'");
  out << contents;
  if (!out) throw ConfigError("failed writing '" + path + "'");
}

int run(SystemKind kind, const Options& opt) {
  ScenarioConfig cfg;
  if (!opt.config_path.empty()) {
    cfg = gaussinfo::cli::load_config(opt.config_path, kind);
  } else {
    cfg = gaussinfo::cli::parse_config("", kind);
  }
  if (opt.hbar) {
    if (!(*opt.hbar > 0.0)) throw ConfigError("--hbar must be positive");
    cfg.hbar = *opt.hbar;
  }
  const int jobs = resolve_jobs(opt.jobs);

  const auto result = gaussinfo::cli::run_scenario(cfg, jobs);
  const std::string csv = result.table.to_csv();

  std::optional<std::string> out_path;
  if (!opt.out_path.empty()) {
    out_path = opt.out_path;
  } else if (cfg.output) {
    out_path = cfg.output;
  }
  if (out_path) {
    write_file(*out_path, csv);
    std::string meta;
    meta += "kind = " + std::string(gaussinfo::cli::to_string(kind)) + "\n";
    meta += "config = " + (opt.config_path.empty() ? std::string("(defaults)") : opt.config_path) + "\n";
    meta += "hbar = " + gaussinfo::cli::format_real(cfg.hbar) + "\n";
    meta += "jobs = " + std::to_string(jobs) + "\n";
    if (opt.seed) meta += "seed = " + std::to_string(*opt.seed) + "\n";
    meta += "rows = " + std::to_string(result.table.rows.size()) + "\n";
    meta += "checks_failed = " + std::to_string(result.failures.size()) + "\n";
    meta += "finished_utc = " + utc_timestamp() + "\n";
    write_file(*out_path + ".meta", meta);
  } else {
    std::cout << csv;
    std::cout.flush();
  }

  if (!result.ok()) {
    for (const auto& f : result.failures) std::cerr << "check failed: " << f << "\n";
    return kExitNumerical;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement measures of Gaussian oscillator networks and small discrete systems"};
  app.require_subcommand(1);

  Options opt;
  struct Sub {
    const char* name;
    SystemKind kind;
    const char* help;
  };
  const Sub subs[] = {
      {"two-osc", SystemKind::two_osc, "two coupled oscillators, sweep over k1"},
      {"chain", SystemKind::chain, "block entropies of an oscillator chain"},
      {"qubits", SystemKind::qubits, "spin-1/2 and two-qubit examples"},
      {"qgt-scan", SystemKind::qgt_scan, "quantum metric and fidelity susceptibility scan"},
      {"classical-compare", SystemKind::classical_compare,
       "classical action-angle analog against the quantum result"},
  };

  std::optional<SystemKind> chosen;
  for (const Sub& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    sub->add_option("--config", opt.config_path, "scenario file (key = value)")->check(CLI::ExistingFile);
    sub->add_option("--out", opt.out_path, "CSV output path (default: config output, else stdout)");
    sub->add_option("--hbar", opt.hbar, "reduced Planck constant (default 1)");
    sub->add_option("--seed", opt.seed, "seed recorded in the run metadata");
    sub->add_option("--jobs", opt.jobs, "worker threads (fallback: GAUSSINFO_JOBS)");
    const SystemKind kind = s.kind;
    sub->callback([&chosen, kind] { chosen = kind; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    return run(*chosen, opt);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const NumericalFailure& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const gaussinfo::Error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  }
}
