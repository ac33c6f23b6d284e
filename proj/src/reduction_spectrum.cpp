#include "gaussinfo/reduction_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "gaussinfo/errors.hpp"

namespace gaussinfo {

namespace {

constexpr double kPhiTol = 1e-9;

struct MomentumBlocks {
  Matrix a, b, c;
};

MomentumBlocks split_first(const Matrix& sigma_pp, Index n) {
  const Index total = sigma_pp.rows();
  if (sigma_pp.cols() != total) throw InvalidArgument("sigma_pp must be square");
  if (asymmetry(sigma_pp) > 1e-12) throw InvalidArgument("sigma_pp is not symmetric");
  if (n < 1 || n >= total) {
    throw InvalidSubsystem("kept block size must lie in [1, N-1], got " + std::to_string(n) +
                           " of " + std::to_string(total));
  }
  const Index rest = total - n;
  return {sigma_pp.topLeftCorner(n, n), sigma_pp.topRightCorner(n, rest),
          sigma_pp.bottomRightCorner(rest, rest)};
}

// M = B C^{-1} B^T, symmetrized.
Matrix environment_coupling(const MomentumBlocks& blocks) {
  Eigen::LLT<Matrix> llt_c(blocks.c);
  if (llt_c.info() != Eigen::Success) {
    throw SingularEnvironmentBlock("environment block C is not positive definite");
  }
  Matrix m = blocks.b * llt_c.solve(blocks.b.transpose());
  return 0.5 * (m + m.transpose());
}

}  // namespace

CovarianceMatrix reduce_covariance(const CovarianceMatrix& sigma, std::span<const Index> keep) {
  const Index total = sigma.modes();
  if (keep.empty()) throw InvalidSubsystem("cannot reduce onto an empty subsystem");
  std::vector<bool> seen(static_cast<std::size_t>(total), false);
  for (Index i : keep) {
    if (i < 0 || i >= total) throw InvalidSubsystem("kept index out of range");
    if (seen[static_cast<std::size_t>(i)]) throw InvalidSubsystem("kept indices must be distinct");
    seen[static_cast<std::size_t>(i)] = true;
  }
  const Index n = static_cast<Index>(keep.size());
  Matrix out(2 * n, 2 * n);
  for (Index r = 0; r < 2 * n; ++r) {
    const Index src_r = (r < n ? 0 : total) + keep[static_cast<std::size_t>(r % n)];
    for (Index c = 0; c < 2 * n; ++c) {
      const Index src_c = (c < n ? 0 : total) + keep[static_cast<std::size_t>(c % n)];
      out(r, c) = sigma(src_r, src_c);
    }
  }
  return CovarianceMatrix(std::move(out));
}

Matrix permute_kept_first(const Matrix& m, std::span<const Index> keep) {
  const Index total = m.rows();
  std::vector<Index> order(keep.begin(), keep.end());
  std::vector<bool> used(static_cast<std::size_t>(total), false);
  for (Index i : keep) {
    if (i < 0 || i >= total || used[static_cast<std::size_t>(i)]) {
      throw InvalidSubsystem("kept indices must be distinct and in range");
    }
    used[static_cast<std::size_t>(i)] = true;
  }
  for (Index i = 0; i < total; ++i) {
    if (!used[static_cast<std::size_t>(i)]) order.push_back(i);
  }
  Matrix out(total, total);
  for (Index r = 0; r < total; ++r) {
    for (Index c = 0; c < total; ++c) {
      out(r, c) = m(order[static_cast<std::size_t>(r)], order[static_cast<std::size_t>(c)]);
    }
  }
  return out;
}

BlockDecomposition BlockDecomposition::from(const CovarianceMatrix& sigma, Index n) {
  const Index total = sigma.modes();
  if (n < 1 || n > total) throw InvalidSubsystem("kept block size out of range");
  const Index rest = total - n;
  const Matrix pp = sigma.pp();
  const Matrix qq = sigma.qq();
  return BlockDecomposition{pp.topLeftCorner(n, n),     pp.topRightCorner(n, rest),
                            pp.bottomRightCorner(rest, rest), qq.topLeftCorner(n, n),
                            qq.topRightCorner(n, rest), qq.bottomRightCorner(rest, rest)};
}

double xi_from_phi(double phi) { return phi / (1.0 + std::sqrt(1.0 - phi * phi)); }

double nu_from_xi(double xi) { return 0.5 * (1.0 + xi) / (1.0 - xi); }

ModeSpectrum mode_couplings(const Matrix& sigma_pp, Index n, double hbar) {
  if (!(hbar > 0.0)) throw InvalidArgument("hbar must be positive");
  const MomentumBlocks blocks = split_first(sigma_pp / (hbar * hbar), n);
  const Matrix m = environment_coupling(blocks);
  Matrix t = blocks.a - 0.5 * m;
  t = 0.5 * (t + t.transpose()).eval();

  Eigen::LLT<Matrix> llt_t(t);
  if (llt_t.info() != Eigen::Success) {
    throw NumericalBreakdown("A - M/2 is not positive definite");
  }
  Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> gen(0.5 * m, t, Eigen::EigenvaluesOnly);
  if (gen.info() != Eigen::Success) {
    throw NumericalBreakdown("generalized eigenproblem for the mode couplings failed");
  }
  const Vector& raw = gen.eigenvalues();

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::vector<double> phi(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    double p = raw(i);
    if (p < -kPhiTol || p >= 1.0 + kPhiTol || !std::isfinite(p)) {
      throw NumericalBreakdown("mode coupling phi = " + std::to_string(p) +
                               " outside [0, 1)");
    }
    phi[static_cast<std::size_t>(i)] = std::clamp(p, 0.0, std::nextafter(1.0, 0.0));
  }
  std::stable_sort(order.begin(), order.end(), [&](Index x, Index y) {
    return phi[static_cast<std::size_t>(x)] > phi[static_cast<std::size_t>(y)];
  });

  ModeSpectrum spectrum{Vector(n), Vector(n), Vector(n)};
  for (Index k = 0; k < n; ++k) {
    const double p = phi[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])];
    spectrum.phi(k) = p;
    spectrum.xi(k) = xi_from_phi(p);
    spectrum.nu(k) = nu_from_xi(spectrum.xi(k));
  }
  return spectrum;
}

double entropy_from_xi(double xi) {
  if (!(xi >= 0.0) || !(xi < 1.0)) {
    throw InvalidArgument("xi must lie in [0, 1), got " + std::to_string(xi));
  }
  if (xi == 0.0) return 0.0;
  return -std::log1p(-xi) - xi * std::log(xi) / (1.0 - xi);
}

double block_entropy(const Matrix& sigma_pp, Index n, double hbar) {
  const ModeSpectrum spectrum = mode_couplings(sigma_pp, n, hbar);
  double s = 0.0;
  for (Index i = 0; i < spectrum.size(); ++i) s += entropy_from_xi(spectrum.xi(i));
  return s;
}

double eigenvalue_ladder(const ModeSpectrum& spectrum, std::span<const int> occupation) {
  if (static_cast<Index>(occupation.size()) != spectrum.size()) {
    throw InvalidArgument("occupation vector length must equal the mode count");
  }
  double p = 1.0;
  for (Index i = 0; i < spectrum.size(); ++i) {
    const int mu = occupation[static_cast<std::size_t>(i)];
    if (mu < 0) throw InvalidArgument("occupations must be nonnegative");
    const double xi = spectrum.xi(i);
    p *= (1.0 - xi) * (mu == 0 ? 1.0 : std::pow(xi, mu));
  }
  return p;
}

int ladder_cutoff(double xi) {
  constexpr int kCap = 10000;
  if (xi <= 0.0) return 1;
  if (xi >= 1.0) return kCap;
  const double needed = std::ceil(-14.0 * std::log(10.0) / std::log(xi));
  return static_cast<int>(std::clamp(needed, 1.0, static_cast<double>(kCap)));
}

double block_purity(const BlockDecomposition& decomp, double hbar) {
  if (!(hbar > 0.0)) throw InvalidArgument("hbar must be positive");
  auto log_det = [](const Matrix& x, const char* name) {
    Eigen::LLT<Matrix> llt(x);
    if (llt.info() != Eigen::Success) {
      throw NotPositiveDefinite(std::string(name) + " block is not positive definite");
    }
    return 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
  };
  const double n = static_cast<double>(decomp.kept());
  return std::exp(n * std::log(0.5 * hbar) -
                  0.5 * (log_det(decomp.a, "A") + log_det(decomp.e, "E")));
}

TwoOscillatorForms two_oscillator_closed_forms(double k0, double k1, double hbar) {
  if (!(k0 > 0.0)) throw InvalidArgument("k0 must be positive");
  if (!(k1 >= 0.0)) throw InvalidArgument("k1 must be nonnegative");
  if (!(hbar > 0.0)) throw InvalidArgument("hbar must be positive");

  TwoOscillatorForms f;
  f.omega_plus = std::sqrt(k0);
  f.omega_minus = std::sqrt(k0 + 2.0 * k1);
  const double sum = f.omega_plus + f.omega_minus;
  const double diff = f.omega_plus - f.omega_minus;
  f.beta = diff * diff / (4.0 * hbar * sum);
  f.gamma = 2.0 * f.omega_plus * f.omega_minus / (hbar * sum) + f.beta;
  f.alpha = std::sqrt(f.gamma * f.gamma - f.beta * f.beta);
  f.xi = f.beta / (f.gamma + f.alpha);
  f.purity = (1.0 - f.xi) / (1.0 + f.xi);
  f.entropy = entropy_from_xi(f.xi);
  return f;
}

double verify_det_identity(const Matrix& sigma_pp, Index n) {
  const MomentumBlocks blocks = split_first(sigma_pp, n);
  const Matrix m = environment_coupling(blocks);
  const ModeSpectrum spectrum = mode_couplings(sigma_pp, n, 1.0);

  const double det_a_m = (blocks.a - m).determinant();
  const double det_a_half_m = (blocks.a - 0.5 * m).determinant();
  double det_one_minus_v = 1.0;
  for (Index i = 0; i < spectrum.size(); ++i) det_one_minus_v *= 1.0 - spectrum.phi(i);

  const double ratio = std::sqrt(det_a_m / (det_a_half_m * det_one_minus_v));
  if (!std::isfinite(ratio)) throw NumericalBreakdown("determinant ratio is not finite");
  return std::abs(ratio - 1.0);
}

}  // namespace gaussinfo
