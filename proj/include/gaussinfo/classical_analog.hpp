#pragma once

#include <vector>

#include "gaussinfo/gaussian_info.hpp"
#include "gaussinfo/oscillator_model.hpp"
#include "gaussinfo/types.hpp"

namespace gaussinfo {

/// Action variables I_a > 0, one per normal mode (or per kept mode when
/// passed alongside a reduced covariance).
class ActionAssignment {
 public:
  explicit ActionAssignment(Vector actions);
  static ActionAssignment uniform(Index n, double action);

  Index size() const { return actions_.size(); }
  const Vector& values() const { return actions_; }
  double operator[](Index i) const { return actions_(i); }

 private:
  Vector actions_;
};

/// Angle-averaged second moments of the integrable oscillator network on the
/// torus fixed by `actions`:
///   sigma_qq = U^T W^{-1} I U,  sigma_pp = U^T W I U,  sigma_qp = 0.
CovarianceMatrix classical_covariance(const NormalModes& modes, const ActionAssignment& actions);

/// prod_k I_k / sqrt(det sigma_cl), with I_k the actions of the kept block.
double classical_purity(const CovarianceMatrix& sigma_cl, const ActionAssignment& actions);

double classical_linear_entropy(const CovarianceMatrix& sigma_cl,
                                const ActionAssignment& actions);

/// nu_k = nu_k^cl / (2 I_k): the k-th ascending symplectic eigenvalue of
/// sigma_cl paired with the k-th action.
std::vector<double> classical_symplectic_eigenvalues(const CovarianceMatrix& sigma_cl,
                                                     const ActionAssignment& actions);

double classical_entropy(const CovarianceMatrix& sigma_cl, const ActionAssignment& actions);

/// Every action set to hbar/2.
ActionAssignment bohr_sommerfeld(Index n, double hbar);
ActionAssignment bohr_sommerfeld(const ActionAssignment& shape, double hbar);

}  // namespace gaussinfo
