#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "gaussinfo/gaussian_info.hpp"
#include "gaussinfo/types.hpp"

namespace gaussinfo {

/// A finite-dimensional Hamiltonian H(lambda) evaluated at a fixed parameter
/// point. When no analytic derivative is supplied, dH/dlambda_i is taken by
/// central differences with step fd_relative_step * max(1, |lambda_i|).
struct ParametrizedHamiltonian {
  using HamiltonianFn = std::function<CMatrix(const Vector&)>;
  using DerivativeFn = std::function<std::vector<CMatrix>(const Vector&)>;

  HamiltonianFn h;
  std::optional<DerivativeFn> dh;
  Vector params;
  double fd_relative_step = 1e-6;

  CMatrix hamiltonian() const;
  std::vector<CMatrix> derivatives() const;
};

/// G = g + (i/2) F: g is the quantum metric (real symmetric), F the Berry
/// curvature (real antisymmetric).
struct GeometricTensor {
  Matrix g;
  Matrix f;
};

/// Sum-over-states tensor for eigenstate `level` (0 = lowest energy):
///   G_ij = sum_{m != n} <n|d_i H|m><m|d_j H|n> / (E_m - E_n)^2.
/// Throws DegenerateLevel when any other level lies within 1e-10 of E_n.
GeometricTensor qgt_perturbative(const ParametrizedHamiltonian& ph, Index level);

/// Same sum from an already diagonalized Hamiltonian (columns of `vectors`
/// are eigenvectors, `energies` ascending). Any phase convention works.
GeometricTensor qgt_from_eigensystem(const Vector& energies, const CMatrix& vectors,
                                     const std::vector<CMatrix>& derivatives, Index level);

/// chi_F = sum_{m != n} |<m|d_v H|n>|^2 / (E_n - E_m)^2 along the parameter
/// direction v.
double fidelity_susceptibility(const ParametrizedHamiltonian& ph, Index level,
                               const Vector& direction);
/// Single-parameter families.
double fidelity_susceptibility(const ParametrizedHamiltonian& ph, Index level);

/// Phase-space quantum metric from covariances, (q..., p...) ordering:
///   g_qq = sigma_pp / hbar^2,  g_qp = -sigma_pq / hbar^2,  g_pp = sigma_qq / hbar^2.
Matrix phase_space_qmt(const CovarianceMatrix& sigma, double hbar);

/// 1 - dlambda^T g dlambda / 2, floored at zero.
double fidelity_quadratic(const Matrix& g, const Vector& dlambda);

// Model families, all in a Fock basis truncated to `dim` levels.
namespace families {

/// Truncated annihilation operator.
CMatrix annihilation(Index dim);

/// H(omega) = p^2/2 + omega^2 q^2/2, written in the Fock basis of a reference
/// oscillator of frequency omega_ref.
ParametrizedHamiltonian oscillator_frequency(double omega, Index dim, double hbar,
                                             double omega_ref = 1.0);

/// H(lambda) = p^2/2 + omega^2 (q - lambda)^2/2, Fock basis of frequency omega.
ParametrizedHamiltonian oscillator_translation(double lambda, double omega, Index dim,
                                               double hbar);

/// H(lambda) = lambda sigma_z + delta sigma_x.
ParametrizedHamiltonian avoided_crossing(double lambda, double delta);

/// H(lambda) = lambda sigma_z.
ParametrizedHamiltonian commuting(double lambda);

}  // namespace families

}  // namespace gaussinfo
