#pragma once

#include <array>

#include "gaussinfo/types.hpp"

namespace gaussinfo {

/// Unit-norm pure state in a finite basis.
class StateVector {
 public:
  /// Rescales `amplitudes` to unit norm; a zero vector is an InvalidArgument.
  static StateVector normalized(CVector amplitudes);

  Index dim() const { return amplitudes_.size(); }
  const CVector& amplitudes() const { return amplitudes_; }

 private:
  explicit StateVector(CVector amplitudes) : amplitudes_(std::move(amplitudes)) {}
  CVector amplitudes_;
};

/// Hermitian, unit-trace, positive-semidefinite matrix.
///
/// Eigenvalues in (-1e-10, 0) are clamped to zero and the matrix
/// renormalized; anything more negative is rejected.
class DensityMatrix {
 public:
  explicit DensityMatrix(CMatrix rho);

  Index dim() const { return rho_.rows(); }
  const CMatrix& matrix() const { return rho_; }

  /// Eigenvalues, ascending.
  Vector eigenvalues() const;

 private:
  CMatrix rho_;
};

DensityMatrix from_pure(const StateVector& psi);

/// Tr rho^2.
double purity_discrete(const DensityMatrix& rho);

enum class Subsystem { A, B };

/// Basis ordering |i>_A (x) |j>_B -> index i * dB + j.
DensityMatrix partial_trace(const DensityMatrix& rho, Index dim_a, Index dim_b,
                            Subsystem keep);

/// -sum lambda ln lambda in nats, eigenvalues below 1e-12 dropped.
double von_neumann_discrete(const DensityMatrix& rho);

/// N/(N-1) (1 - mu) with N = dim; zero for dim 1.
double linear_entropy_discrete(const DensityMatrix& rho);

/// Tr(obs rho) for Hermitian obs.
double expectation(const DensityMatrix& rho, const CMatrix& obs);

/// Spin-1/2 operators s_x, s_y, s_z = (hbar/2) sigma_{x,y,z} in the S_z basis
/// (|+>, |->).
std::array<CMatrix, 3> spin_half_operators(double hbar);

}  // namespace gaussinfo
