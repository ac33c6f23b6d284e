#include "gaussinfo/classical_analog.hpp"

#include <cmath>
#include <utility>

#include <Eigen/Cholesky>

#include "gaussinfo/errors.hpp"

namespace gaussinfo {

ActionAssignment::ActionAssignment(Vector actions) : actions_(std::move(actions)) {
  if (actions_.size() == 0) throw InvalidArgument("action assignment is empty");
  if (!actions_.allFinite() || !(actions_.minCoeff() > 0.0)) {
    throw InvalidArgument("action variables must be positive and finite");
  }
}

ActionAssignment ActionAssignment::uniform(Index n, double action) {
  return ActionAssignment(Vector::Constant(n, action));
}

CovarianceMatrix classical_covariance(const NormalModes& modes, const ActionAssignment& actions) {
  if (actions.size() != modes.size()) {
    throw InvalidArgument("one action per normal mode is required");
  }
  const Matrix& u = modes.u;
  const Vector& w = modes.w;
  const Vector& i = actions.values();
  Matrix qq = u.transpose() * i.cwiseQuotient(w).asDiagonal() * u;
  Matrix pp = u.transpose() * i.cwiseProduct(w).asDiagonal() * u;
  qq = 0.5 * (qq + qq.transpose()).eval();
  pp = 0.5 * (pp + pp.transpose()).eval();
  return CovarianceMatrix::from_blocks(qq, pp);
}

double classical_purity(const CovarianceMatrix& sigma_cl, const ActionAssignment& actions) {
  if (actions.size() != sigma_cl.modes()) {
    throw InvalidArgument("one action per kept mode is required");
  }
  Eigen::LLT<Matrix> llt(sigma_cl.matrix());
  if (llt.info() != Eigen::Success) {
    throw NotPositiveDefinite("classical covariance is not positive definite");
  }
  const double log_det = 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
  return std::exp(actions.values().array().log().sum() - 0.5 * log_det);
}

double classical_linear_entropy(const CovarianceMatrix& sigma_cl,
                                const ActionAssignment& actions) {
  return 1.0 - classical_purity(sigma_cl, actions);
}

std::vector<double> classical_symplectic_eigenvalues(const CovarianceMatrix& sigma_cl,
                                                     const ActionAssignment& actions) {
  if (actions.size() != sigma_cl.modes()) {
    throw InvalidArgument("one action per kept mode is required");
  }
  std::vector<double> nu = symplectic_eigenvalues(sigma_cl);
  for (std::size_t k = 0; k < nu.size(); ++k) nu[k] /= 2.0 * actions[static_cast<Index>(k)];
  return nu;
}

double classical_entropy(const CovarianceMatrix& sigma_cl, const ActionAssignment& actions) {
  double s = 0.0;
  for (double nu : classical_symplectic_eigenvalues(sigma_cl, actions)) s += mode_entropy(nu);
  return s;
}

ActionAssignment bohr_sommerfeld(Index n, double hbar) {
  if (!(hbar > 0.0)) throw InvalidArgument("hbar must be positive");
  return ActionAssignment::uniform(n, 0.5 * hbar);
}

ActionAssignment bohr_sommerfeld(const ActionAssignment& shape, double hbar) {
  return bohr_sommerfeld(shape.size(), hbar);
}

}  // namespace gaussinfo
