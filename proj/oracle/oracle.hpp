#pragma once

// Brute-force reference computations used by the test suites. Nothing in
// here calls into the library routes it is meant to check; it shares only
// the value types and Eigen.

#include <cstdint>
#include <vector>

#include "gaussinfo/errors.hpp"
#include "gaussinfo/gaussian_info.hpp"
#include "gaussinfo/oscillator_model.hpp"
#include "gaussinfo/reduction_spectrum.hpp"
#include "gaussinfo/types.hpp"

namespace gaussinfo::oracle {

class QuadratureNotConverged : public Error {
 public:
  using Error::Error;
};

struct QuadratureSpec {
  int points = 256;          // per axis, at the coarsest level
  double half_width = 10.0;  // in standard deviations of the widest direction
  double tolerance = 1e-6;   // between successive refinements
  int max_refinements = 4;
};

/// Tr rho_2^2 for one oscillator of the coupled pair, integrating the
/// position-space kernel rho_2(q, q') squared over the plane with the
/// trapezoid rule, doubling the resolution until two levels agree.
double purity_quadrature_two_osc(double k0, double k1, double hbar,
                                 const QuadratureSpec& grid = {});

struct ResummedSpectrum {
  double prob_sum = 0.0;
  double purity = 0.0;
  double entropy = 0.0;
  /// Upper bounds on what the truncated tails leave out.
  double prob_bound = 0.0;
  double entropy_bound = 0.0;
};

/// Direct sums over p_n = (1 - xi) xi^n, n < cutoff.
ResummedSpectrum spectrum_resum(double xi, int cutoff);

/// The mode couplings rebuilt step by step: diagonalize A - M/2 = L^T Theta L,
/// form V = Theta^{-1/2} L M L^T Theta^{-1/2} / 2, symmetrize, diagonalize.
ModeSpectrum srednicki_literal(const Matrix& sigma_pp, Index n);

struct MonteCarloCovariance {
  Matrix mean;    // estimate of sigma
  Matrix std_error;  // per-entry standard error of the estimate
};

/// Uniform random angles on the invariant torus with Q_a = sqrt(2 I_a / w_a)
/// cos(phi_a), P_a = -sqrt(2 I_a w_a) sin(phi_a), mapped back with
/// q = U^T Q, p = U^T P.
MonteCarloCovariance angle_average_mc(const NormalModes& modes, const Vector& actions,
                                      int samples, std::uint64_t seed);

/// Trapezoid quadrature of the Wigner density over a box of +-half_width
/// standard deviations (1 or 2 modes).
double wigner_normalization(const CovarianceMatrix& sigma, const MeanVector& d, double hbar,
                            int points_per_axis = 48, double half_width = 9.0);

/// Integral of the Wigner density over every phase-space coordinate except
/// `coordinate`, which is held at `value` (1 or 2 modes).
double wigner_marginal(const CovarianceMatrix& sigma, const MeanVector& d, double hbar,
                       Index coordinate, double value, int points_per_axis = 48,
                       double half_width = 9.0);

/// Symplectic eigenvalues from Omega' = sigma^{-1/2} Omega sigma^{-1/2}:
/// its eigenvalues are +-i / nu.
std::vector<double> williamson_literal(const CovarianceMatrix& sigma);

/// Random symmetric positive-definite matrix with eigenvalues in [lo, hi].
Matrix random_pd(Index n, double lo, double hi, std::uint64_t seed);

/// Random symplectic matrix for the (q..., p...) ordering, built as a
/// product of block-orthogonal, symmetric-shear and squeezing factors.
Matrix random_symplectic(Index n, std::uint64_t seed);

/// Haar-random unitary (QR of a complex Ginibre matrix).
CMatrix random_unitary(Index dim, std::uint64_t seed);

/// Random mixed state of the given rank (Wishart-like construction).
CMatrix random_density(Index dim, Index rank, std::uint64_t seed);

}  // namespace gaussinfo::oracle
