#include "gaussinfo/oscillator_model.hpp"

#include <cmath>
#include <utility>

#include <Eigen/Eigenvalues>

#include "gaussinfo/errors.hpp"

namespace gaussinfo {

namespace {

constexpr double kSymmetryTol = 1e-12;
constexpr double kPdRelTol = 1e-12;

}  // namespace

CouplingMatrix::CouplingMatrix(Matrix k) : k_(std::move(k)) {
  if (k_.rows() != k_.cols() || k_.rows() == 0) {
    throw InvalidArgument("coupling matrix must be square and nonempty");
  }
  if (!k_.allFinite()) throw InvalidArgument("coupling matrix has non-finite entries");
  if (asymmetry(k_) > kSymmetryTol) throw InvalidArgument("coupling matrix is not symmetric");
  k_ = 0.5 * (k_ + k_.transpose()).eval();

  Eigen::SelfAdjointEigenSolver<Matrix> eig(k_, Eigen::EigenvaluesOnly);
  const Vector& ev = eig.eigenvalues();
  if (!(ev.minCoeff() > kPdRelTol * ev.cwiseAbs().maxCoeff())) {
    throw NotPositiveDefinite("coupling matrix has a non-positive eigenvalue");
  }
}

CouplingMatrix build_chain(Index n, double k0, double k1, Boundary boundary) {
  if (n < 1) throw InvalidArgument("chain needs at least one oscillator");
  if (!(k0 > 0.0)) throw InvalidArgument("k0 must be positive");
  if (!(k1 >= 0.0)) throw InvalidArgument("k1 must be nonnegative");

  Matrix k = k0 * Matrix::Identity(n, n);
  auto add_bond = [&](Index i, Index j) {
    k(i, i) += k1;
    k(j, j) += k1;
    k(i, j) -= k1;
    k(j, i) -= k1;
  };
  for (Index i = 0; i + 1 < n; ++i) add_bond(i, i + 1);
  if (boundary == Boundary::periodic && n >= 3) add_bond(n - 1, 0);
  return CouplingMatrix(std::move(k));
}

NormalModes normal_modes(const CouplingMatrix& k) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(k.matrix());
  if (eig.info() != Eigen::Success) {
    throw NumericalBreakdown("eigen-decomposition of the coupling matrix failed");
  }
  const Vector& ev = eig.eigenvalues();  // ascending
  if (!(ev.minCoeff() > kPdRelTol * ev.cwiseAbs().maxCoeff())) {
    throw NotPositiveDefinite("coupling matrix has a non-positive eigenvalue");
  }
  return NormalModes{eig.eigenvectors().transpose(), ev.cwiseSqrt()};
}

GroundStateSpec::GroundStateSpec(NormalModes modes, double hbar)
    : modes_(std::move(modes)), hbar_(hbar) {
  if (!(hbar_ > 0.0) || !std::isfinite(hbar_)) throw InvalidArgument("hbar must be positive");
  if (modes_.u.rows() != modes_.size() || modes_.u.cols() != modes_.size()) {
    throw InvalidArgument("normal-mode matrix and frequency vector disagree in size");
  }
  if (modes_.size() == 0 || !(modes_.w.minCoeff() > 0.0)) {
    throw InvalidArgument("normal-mode frequencies must be positive");
  }
}

CovarianceMatrix ground_state_covariance(const GroundStateSpec& spec) {
  const Matrix& u = spec.modes().u;
  const Vector& w = spec.modes().w;
  const double half_hbar = 0.5 * spec.hbar();
  Matrix qq = half_hbar * u.transpose() * w.cwiseInverse().asDiagonal() * u;
  Matrix pp = half_hbar * u.transpose() * w.asDiagonal() * u;
  qq = 0.5 * (qq + qq.transpose()).eval();
  pp = 0.5 * (pp + pp.transpose()).eval();
  return CovarianceMatrix::from_blocks(qq, pp);
}

}  // namespace gaussinfo
