#include "gaussinfo/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <numeric>
#include <thread>

#include "gaussinfo/classical_analog.hpp"
#include "gaussinfo/discrete_states.hpp"
#include "gaussinfo/errors.hpp"
#include "gaussinfo/gaussian_info.hpp"
#include "gaussinfo/oscillator_model.hpp"
#include "gaussinfo/qgt.hpp"
#include "gaussinfo/reduction_spectrum.hpp"

namespace gaussinfo::cli {

namespace {

// Evaluates fn(0..count-1) on up to `jobs` threads; results keep input
// order. The first failing index (lowest) is rethrown.
template <typename Fn>
auto parallel_map(std::size_t count, int jobs, Fn fn) -> std::vector<decltype(fn(std::size_t{}))> {
  using Result = decltype(fn(std::size_t{}));
  std::vector<Result> results(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        results[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads =
      std::clamp<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), 1, std::max<std::size_t>(count, 1));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

std::string format_int(long long x) { return std::to_string(x); }

// Wraps library failures with the row they happened on.
template <typename Fn>
auto for_row(const std::string& row, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    throw NumericalFailure(row + ": " + e.what());
  }
}

void check(std::vector<std::string>& failures, const std::string& what, double a, double b,
           double tol) {
  const double diff = std::abs(a - b);
  if (!(diff <= tol)) {
    failures.push_back(what + ": |" + format_real(a) + " - " + format_real(b) +
                       "| = " + format_real(diff) + " exceeds " + format_real(tol));
  }
}

CouplingMatrix coupling_for(const ScenarioConfig& cfg) {
  if (cfg.k_matrix_path) return CouplingMatrix(load_matrix(*cfg.k_matrix_path));
  return build_chain(cfg.n_oscillators, cfg.k0, cfg.k1, cfg.boundary);
}

std::vector<Index> range(Index from, Index to) {
  std::vector<Index> r(static_cast<std::size_t>(to - from));
  std::iota(r.begin(), r.end(), from);
  return r;
}

}  // namespace

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string Table::to_csv() const {
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out;
}

RunResult run_two_osc_sweep(const ScenarioConfig& cfg, int jobs) {
  const std::vector<double> k1s = cfg.sweep ? cfg.sweep->points() : std::vector<double>{cfg.k1};
  struct Row {
    double k1, wp, wm, xi, purity_cov, purity_closed, entropy_nu, entropy_xi;
  };
  const double hbar = cfg.hbar;
  const double k0 = cfg.k0;
  const auto rows = parallel_map(k1s.size(), jobs, [&](std::size_t i) {
    const double k1 = k1s[i];
    return for_row("k1 = " + format_real(k1), [&] {
      const auto closed = two_oscillator_closed_forms(k0, k1, hbar);
      const CovarianceMatrix sigma = ground_state_covariance(
          GroundStateSpec(normal_modes(build_chain(2, k0, k1, Boundary::open)), hbar));
      const std::vector<Index> keep{0};
      const CovarianceMatrix reduced = reduce_covariance(sigma, keep);
      const ModeSpectrum spectrum = mode_couplings(sigma.pp(), 1, hbar);
      Row r{};
      r.k1 = k1;
      r.wp = closed.omega_plus;
      r.wm = closed.omega_minus;
      r.xi = spectrum.xi(0);
      r.purity_cov = purity(reduced, hbar);
      r.purity_closed = 2.0 * std::sqrt(r.wp * r.wm) / (r.wp + r.wm);
      r.entropy_nu = von_neumann_entropy_gaussian(reduced, hbar);
      r.entropy_xi = entropy_from_xi(r.xi);
      return r;
    });
  });

  RunResult result;
  result.table.header = {"k1",         "omega_plus",    "omega_minus", "xi",
                         "purity_cov", "purity_closed", "entropy_nu",  "entropy_xi"};
  for (const Row& r : rows) {
    result.table.rows.push_back({format_real(r.k1), format_real(r.wp), format_real(r.wm),
                                 format_real(r.xi), format_real(r.purity_cov),
                                 format_real(r.purity_closed), format_real(r.entropy_nu),
                                 format_real(r.entropy_xi)});
    const std::string at = "k1 = " + format_real(r.k1);
    check(result.failures, at + " purity", r.purity_cov, r.purity_closed, 1e-12);
    check(result.failures, at + " entropy", r.entropy_nu, r.entropy_xi, 1e-10);
  }
  return result;
}

RunResult run_chain(const ScenarioConfig& cfg, int jobs) {
  const CouplingMatrix k = for_row("coupling matrix", [&] { return coupling_for(cfg); });
  const Index total = k.size();
  if (total < 2) throw ConfigError("chain scans need at least two oscillators");
  const CovarianceMatrix sigma = for_row("ground state", [&] {
    return ground_state_covariance(GroundStateSpec(normal_modes(k), cfg.hbar));
  });
  const Matrix sigma_pp = sigma.pp();

  struct Row {
    Index n;
    double s, s_complement, purity_n;
  };
  const auto rows = parallel_map(static_cast<std::size_t>(total - 1), jobs, [&](std::size_t i) {
    const Index n = static_cast<Index>(i) + 1;
    return for_row("n = " + format_int(n), [&] {
      const std::vector<Index> rest = range(n, total);
      Row r{};
      r.n = n;
      r.s = block_entropy(sigma_pp, n, cfg.hbar);
      r.s_complement = block_entropy(permute_kept_first(sigma_pp, rest), total - n, cfg.hbar);
      r.purity_n = block_purity(BlockDecomposition::from(sigma, n), cfg.hbar);
      return r;
    });
  });

  RunResult result;
  result.table.header = {"n", "S_n", "S_complement", "purity_n"};
  for (const Row& r : rows) {
    result.table.rows.push_back(
        {format_int(r.n), format_real(r.s), format_real(r.s_complement), format_real(r.purity_n)});
    check(result.failures, "n = " + format_int(r.n) + " complement symmetry", r.s,
          r.s_complement, 1e-8);
  }
  return result;
}

RunResult run_qubits(const ScenarioConfig& cfg) {
  const double hbar = cfg.hbar;
  const auto spins = spin_half_operators(hbar);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

  const DensityMatrix oven(0.5 * CMatrix::Identity(2, 2));
  CVector sup(2);
  sup << inv_sqrt2, inv_sqrt2;
  const DensityMatrix superposition = from_pure(StateVector::normalized(sup));
  CVector bell_amps = CVector::Zero(4);
  bell_amps(0) = inv_sqrt2;
  bell_amps(3) = inv_sqrt2;
  const DensityMatrix bell = from_pure(StateVector::normalized(bell_amps));
  const DensityMatrix bell_a = partial_trace(bell, 2, 2, Subsystem::A);
  const DensityMatrix bell_b = partial_trace(bell, 2, 2, Subsystem::B);

  RunResult result;
  result.table.header = {"quantity", "value"};
  auto row = [&](const std::string& name, double v) {
    result.table.rows.push_back({name, format_real(v)});
  };
  row("oven.purity", purity_discrete(oven));
  row("oven.linear_entropy", linear_entropy_discrete(oven));
  row("oven.entropy", von_neumann_discrete(oven));
  row("superposition.purity", purity_discrete(superposition));
  row("bell.purity", purity_discrete(bell));
  row("bell.entropy", von_neumann_discrete(bell));
  row("bell_reduced_A.purity", purity_discrete(bell_a));
  row("bell_reduced_A.entropy", von_neumann_discrete(bell_a));
  row("bell_reduced_A.linear_entropy", linear_entropy_discrete(bell_a));
  row("bell_reduced_B.entropy", von_neumann_discrete(bell_b));
  const char* axes[] = {"s_x", "s_y", "s_z"};
  for (int a = 0; a < 3; ++a) {
    row(std::string("superposition.") + axes[a], expectation(superposition, spins[static_cast<std::size_t>(a)]));
  }
  for (int a = 0; a < 3; ++a) {
    row(std::string("oven.") + axes[a], expectation(oven, spins[static_cast<std::size_t>(a)]));
  }

  check(result.failures, "oven purity", purity_discrete(oven), 0.5, 0.0);
  check(result.failures, "Bell reduced entropy", von_neumann_discrete(bell_a), std::log(2.0),
        1e-12);
  check(result.failures, "Bell reduced state", (bell_a.matrix() - 0.5 * CMatrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 0.0, 1e-12);
  check(result.failures, "<s_x> on superposition", expectation(superposition, spins[0]),
        0.5 * hbar, 1e-12);
  return result;
}

RunResult run_qgt_scan(const ScenarioConfig& cfg, int jobs) {
  const std::vector<double> lambdas = cfg.sweep->points();
  struct Row {
    double lambda, g, chi;
  };
  const auto rows = parallel_map(lambdas.size(), jobs, [&](std::size_t i) {
    const double lambda = lambdas[i];
    return for_row("lambda = " + format_real(lambda), [&] {
      ParametrizedHamiltonian ph;
      if (cfg.family == "avoided_crossing") {
        ph = families::avoided_crossing(lambda, cfg.delta);
      } else if (cfg.family == "commuting") {
        ph = families::commuting(lambda);
      } else if (cfg.family == "oscillator_frequency") {
        ph = families::oscillator_frequency(lambda, cfg.fock_dim, cfg.hbar, cfg.omega_ref);
      } else {
        ph = families::oscillator_translation(lambda, cfg.omega, cfg.fock_dim, cfg.hbar);
      }
      Row r{};
      r.lambda = lambda;
      r.g = qgt_perturbative(ph, 0).g(0, 0);
      r.chi = fidelity_susceptibility(ph, 0);
      return r;
    });
  });

  std::size_t peak = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].chi > rows[peak].chi) peak = i;
  }
  RunResult result;
  result.table.header = {"lambda", "g_ii", "chi_F", "peak"};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Row& r = rows[i];
    result.table.rows.push_back({format_real(r.lambda), format_real(r.g), format_real(r.chi),
                                 i == peak ? "1" : "0"});
    check(result.failures, "lambda = " + format_real(r.lambda) + " metric vs susceptibility",
          r.g, r.chi, 1e-10 * std::max(1.0, std::abs(r.g)));
  }
  return result;
}

RunResult run_classical_compare(const ScenarioConfig& cfg) {
  const CouplingMatrix k = for_row("coupling matrix", [&] { return coupling_for(cfg); });
  const Index total = k.size();
  const Index block = cfg.block;
  if (block < 1 || block > total) throw ConfigError("block must lie in [1, number of oscillators]");
  const double hbar = cfg.hbar;

  return for_row("classical comparison", [&] {
    const NormalModes modes = normal_modes(k);
    const std::vector<Index> keep = range(0, block);
    const CovarianceMatrix quantum =
        reduce_covariance(ground_state_covariance(GroundStateSpec(modes, hbar)), keep);
    const CovarianceMatrix classical =
        reduce_covariance(classical_covariance(modes, bohr_sommerfeld(total, hbar)), keep);
    const ActionAssignment kept_actions = bohr_sommerfeld(block, hbar);

    RunResult result;
    result.table.header = {"quantity", "quantum_value", "classical_value", "abs_diff"};
    auto row = [&](const std::string& name, double q, double c, double tol) {
      result.table.rows.push_back(
          {name, format_real(q), format_real(c), format_real(std::abs(q - c))});
      check(result.failures, name, q, c, tol);
    };
    row("purity", purity(quantum, hbar), classical_purity(classical, kept_actions), 1e-12);
    row("linear_entropy", linear_entropy_gaussian(quantum, hbar),
        classical_linear_entropy(classical, kept_actions), 1e-12);
    row("entropy", von_neumann_entropy_gaussian(quantum, hbar),
        classical_entropy(classical, kept_actions), 1e-10);
    const auto nu_q = symplectic_eigenvalues(CovarianceMatrix(quantum.matrix() / hbar));
    const auto nu_c = classical_symplectic_eigenvalues(classical, kept_actions);
    for (std::size_t i = 0; i < nu_q.size(); ++i) {
      row("nu_" + std::to_string(i + 1), nu_q[i], nu_c[i], 1e-12);
    }
    return result;
  });
}

RunResult run_scenario(const ScenarioConfig& cfg, int jobs) {
  switch (cfg.kind) {
    case SystemKind::two_osc: return run_two_osc_sweep(cfg, jobs);
    case SystemKind::chain: return run_chain(cfg, jobs);
    case SystemKind::qubits: return run_qubits(cfg);
    case SystemKind::qgt_scan: return run_qgt_scan(cfg, jobs);
    case SystemKind::classical_compare: return run_classical_compare(cfg);
  }
  throw ConfigError("unknown system kind");
}

}  // namespace gaussinfo::cli
