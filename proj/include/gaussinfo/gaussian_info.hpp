#pragma once

#include <vector>

#include "gaussinfo/types.hpp"

namespace gaussinfo {

/// Second-moment matrix of an N-mode Gaussian state in (q_1..q_N, p_1..p_N)
/// ordering. Entries carry their physical units; hbar is tracked by callers.
///
/// Construction checks symmetry (1e-12 relative) and positive
/// semidefiniteness (smallest eigenvalue >= -1e-10 relative to the largest
/// entry). Physicality is a separate question, see check_physical().
class CovarianceMatrix {
 public:
  explicit CovarianceMatrix(Matrix entries);

  static CovarianceMatrix from_blocks(const Matrix& qq, const Matrix& pp);
  static CovarianceMatrix from_blocks(const Matrix& qq, const Matrix& pp,
                                      const Matrix& qp);

  Index modes() const { return entries_.rows() / 2; }
  const Matrix& matrix() const { return entries_; }
  double operator()(Index i, Index j) const { return entries_(i, j); }

  Matrix qq() const { return entries_.topLeftCorner(modes(), modes()); }
  Matrix pp() const { return entries_.bottomRightCorner(modes(), modes()); }
  Matrix qp() const { return entries_.topRightCorner(modes(), modes()); }

  /// Block-diagonal direct sum: modes of `a` first, then modes of `b`, with
  /// the (q..., p...) ordering preserved.
  static CovarianceMatrix direct_sum(const CovarianceMatrix& a,
                                     const CovarianceMatrix& b);

 private:
  Matrix entries_;
};

/// Omega = [[0, I], [-I, 0]] for n modes.
Matrix symplectic_form(Index n);

/// First moments <R_j> of a Gaussian state. All entries must be finite.
class MeanVector {
 public:
  explicit MeanVector(Vector d);
  static MeanVector zero(Index modes) { return MeanVector(Vector::Zero(2 * modes)); }

  const Vector& vector() const { return d_; }
  Index size() const { return d_.size(); }

 private:
  Vector d_;
};

/// Williamson invariants of a positive-definite sigma, ascending, in the same
/// units as sigma (divide sigma by hbar first for the nu >= 1/2 convention).
///
/// Computed as the moduli of the purely imaginary eigenvalue pairs of
/// Omega*sigma, which is similar to Omega' = sigma^{1/2} Omega sigma^{1/2}.
std::vector<double> symplectic_eigenvalues(const CovarianceMatrix& sigma);

/// mu = (hbar/2)^N / sqrt(det sigma).
double purity(const CovarianceMatrix& sigma, double hbar);

/// 1 - purity. The finite-dimensional N/(N-1) factor tends to one for
/// continuous variables and is not applied here.
double linear_entropy_gaussian(const CovarianceMatrix& sigma, double hbar);

/// Entropy contribution (nats) of a single symplectic eigenvalue of
/// sigma/hbar. Values within 1e-9 below 1/2 are treated as 1/2.
double mode_entropy(double nu);

double von_neumann_entropy_gaussian(const CovarianceMatrix& sigma, double hbar);

struct PhysicalityReport {
  double min_nu = 0.0;
  bool is_physical = false;
};

/// Never throws for symmetric input; a singular or indefinite sigma reports
/// min_nu = 0 and is_physical = false.
PhysicalityReport check_physical(const CovarianceMatrix& sigma, double hbar);

/// Gaussian Wigner quasi-probability density at phase-space point r,
///   W(r) = exp(-(r-d)^T sigma^{-1} (r-d) / 2) / ((2 pi hbar)^N sqrt(det(sigma/hbar))).
/// It integrates to one and its marginals have the covariances in sigma.
double wigner_density(const CovarianceMatrix& sigma, const MeanVector& d,
                      double hbar, const Vector& r);

}  // namespace gaussinfo
