#pragma once

#include <span>
#include <vector>

#include "gaussinfo/gaussian_info.hpp"
#include "gaussinfo/types.hpp"

namespace gaussinfo {

/// Marginal of a Gaussian state on the oscillators in `keep` (0-based,
/// distinct): the principal submatrix over the kept q and p indices, in the
/// order given.
CovarianceMatrix reduce_covariance(const CovarianceMatrix& sigma,
                                   std::span<const Index> keep);

/// Symmetric permutation of an N x N matrix that moves the rows/columns in
/// `keep` to the front (in the order given), the rest after them in
/// ascending order.
Matrix permute_kept_first(const Matrix& m, std::span<const Index> keep);

/// Partition of the momentum (A, B, C) and position (E, F, G) covariance
/// blocks into the first n oscillators and the remaining N - n.
struct BlockDecomposition {
  Matrix a, b, c;
  Matrix e, f, g;

  static BlockDecomposition from(const CovarianceMatrix& sigma, Index n);

  Index kept() const { return a.rows(); }
};

/// Per-mode data of the reduced state on a kept block, sorted by xi
/// descending (ties by ascending solver index).
///   phi: eigenvalues of the normalized cross-coupling V
///   xi:  geometric ratio of the eigenvalue ladder, p_n = (1 - xi) xi^n
///   nu:  matching symplectic eigenvalue, (1 + xi) / (2 (1 - xi))
struct ModeSpectrum {
  Vector phi;
  Vector xi;
  Vector nu;

  Index size() const { return xi.size(); }
};

/// xi = phi / (1 + sqrt(1 - phi^2)).
double xi_from_phi(double phi);
/// nu = (1 + xi) / (2 (1 - xi)).
double nu_from_xi(double xi);

/// Mode couplings of the reduced ground state on the first n oscillators,
/// from the momentum covariance sigma_pp of the full N-oscillator state.
///
/// With sigma_pp / hbar^2 = [[A, B], [B^T, C]] and M = B C^{-1} B^T, phi are
/// the eigenvalues of V = (A - M/2)^{-1/2} (M/2) (A - M/2)^{-1/2}, obtained
/// here as the generalized symmetric problem (M/2) x = phi (A - M/2) x.
/// phi does not depend on hbar.
ModeSpectrum mode_couplings(const Matrix& sigma_pp, Index n, double hbar);

/// S(xi) = -ln(1 - xi) - xi ln(xi) / (1 - xi), S(0) = 0.
double entropy_from_xi(double xi);

/// Entanglement entropy of the first n oscillators, sum of entropy_from_xi
/// over the mode spectrum.
double block_entropy(const Matrix& sigma_pp, Index n, double hbar);

/// prod_i (1 - xi_i) xi_i^{occupation_i}.
double eigenvalue_ladder(const ModeSpectrum& spectrum, std::span<const int> occupation);

/// Occupation cutoff for one mode such that xi^cutoff < 1e-14, capped at 1e4.
int ladder_cutoff(double xi);

/// (hbar/2)^n / sqrt(det A det E). Agrees with purity(reduce_covariance(...))
/// whenever the q-p correlations vanish, as they do for ground states.
double block_purity(const BlockDecomposition& decomp, double hbar);

struct TwoOscillatorForms {
  double omega_plus = 0.0;
  double omega_minus = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double alpha = 0.0;
  double xi = 0.0;
  double purity = 1.0;
  double entropy = 0.0;
};

/// Closed forms for one oscillator of the pair H = [p1^2 + p2^2 + k0 (q1^2 +
/// q2^2) + k1 (q1 - q2)^2] / 2, from the kernel of its reduced density matrix
/// rho(q, q') ~ exp(-gamma (q^2 + q'^2) / 2 + beta q q').
TwoOscillatorForms two_oscillator_closed_forms(double k0, double k1, double hbar);

/// |sqrt(det(A - M) / (det(A - M/2) det(1 - V))) - 1| for the first-n block
/// of sigma_pp. Algebraically zero.
double verify_det_identity(const Matrix& sigma_pp, Index n);

}  // namespace gaussinfo
