#include "gaussinfo/discrete_states.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include <Eigen/Eigenvalues>

#include "gaussinfo/errors.hpp"

namespace gaussinfo {

namespace {

constexpr double kHermitianTol = 1e-12;
constexpr double kTraceTol = 1e-12;
constexpr double kNegativeTol = 1e-10;
constexpr double kDropTol = 1e-12;

}  // namespace

StateVector StateVector::normalized(CVector amplitudes) {
  if (amplitudes.size() == 0) throw InvalidArgument("state vector is empty");
  if (!amplitudes.allFinite()) throw InvalidArgument("state vector has non-finite entries");
  const double norm = amplitudes.norm();
  if (!(norm > 0.0)) throw InvalidArgument("cannot normalize the zero vector");
  return StateVector(amplitudes / norm);
}

DensityMatrix::DensityMatrix(CMatrix rho) : rho_(std::move(rho)) {
  if (rho_.rows() != rho_.cols() || rho_.rows() == 0) {
    throw InvalidArgument("density matrix must be square and nonempty");
  }
  if (!rho_.allFinite()) throw InvalidArgument("density matrix has non-finite entries");
  if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol) {
    throw InvalidArgument("density matrix is not Hermitian");
  }
  rho_ = 0.5 * (rho_ + rho_.adjoint()).eval();
  if (std::abs(rho_.trace() - Complex(1.0, 0.0)) > kTraceTol) {
    throw InvalidArgument("density matrix trace is not 1");
  }

  Eigen::SelfAdjointEigenSolver<CMatrix> eig(rho_);
  const Vector& ev = eig.eigenvalues();
  if (ev.minCoeff() < -kNegativeTol) {
    throw InvalidArgument("density matrix has a negative eigenvalue");
  }
  if (ev.minCoeff() < 0.0) {
    const Vector clamped = ev.cwiseMax(0.0);
    rho_ = eig.eigenvectors() * (clamped / clamped.sum()).asDiagonal() *
           eig.eigenvectors().adjoint();
  }
}

Vector DensityMatrix::eigenvalues() const {
  return Eigen::SelfAdjointEigenSolver<CMatrix>(rho_, Eigen::EigenvaluesOnly).eigenvalues();
}

DensityMatrix from_pure(const StateVector& psi) {
  return DensityMatrix(psi.amplitudes() * psi.amplitudes().adjoint());
}

double purity_discrete(const DensityMatrix& rho) {
  // Tr rho^2 = sum_ij |rho_ij|^2 for Hermitian rho.
  return rho.matrix().cwiseAbs2().sum();
}

DensityMatrix partial_trace(const DensityMatrix& rho, Index dim_a, Index dim_b,
                            Subsystem keep) {
  if (dim_a < 1 || dim_b < 1 || dim_a * dim_b != rho.dim()) {
    throw InvalidArgument("subsystem dimensions do not match the density matrix");
  }
  const CMatrix& m = rho.matrix();
  if (keep == Subsystem::A) {
    CMatrix out = CMatrix::Zero(dim_a, dim_a);
    for (Index i = 0; i < dim_a; ++i)
      for (Index j = 0; j < dim_a; ++j)
        for (Index k = 0; k < dim_b; ++k) out(i, j) += m(i * dim_b + k, j * dim_b + k);
    return DensityMatrix(std::move(out));
  }
  CMatrix out = CMatrix::Zero(dim_b, dim_b);
  for (Index i = 0; i < dim_b; ++i)
    for (Index j = 0; j < dim_b; ++j)
      for (Index k = 0; k < dim_a; ++k) out(i, j) += m(k * dim_b + i, k * dim_b + j);
  return DensityMatrix(std::move(out));
}

double von_neumann_discrete(const DensityMatrix& rho) {
  double s = 0.0;
  for (double lambda : rho.eigenvalues()) {
    if (lambda > kDropTol) s -= lambda * std::log(lambda);
  }
  return std::max(s, 0.0);
}

double linear_entropy_discrete(const DensityMatrix& rho) {
  const double n = static_cast<double>(rho.dim());
  if (rho.dim() == 1) return 0.0;
  return n / (n - 1.0) * (1.0 - purity_discrete(rho));
}

double expectation(const DensityMatrix& rho, const CMatrix& obs) {
  if (obs.rows() != rho.dim() || obs.cols() != rho.dim()) {
    throw InvalidArgument("observable dimension does not match the state");
  }
  if ((obs - obs.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol * std::max(1.0, obs.cwiseAbs().maxCoeff())) {
    throw InvalidArgument("observable is not Hermitian");
  }
  return (obs * rho.matrix()).trace().real();
}

std::array<CMatrix, 3> spin_half_operators(double hbar) {
  const Complex i(0.0, 1.0);
  CMatrix sx(2, 2), sy(2, 2), sz(2, 2);
  sx << 0.0, 1.0, 1.0, 0.0;
  sy << 0.0, -i, i, 0.0;
  sz << 1.0, 0.0, 0.0, -1.0;
  const double half = 0.5 * hbar;
  return {half * sx, half * sy, half * sz};
}

}  // namespace gaussinfo
