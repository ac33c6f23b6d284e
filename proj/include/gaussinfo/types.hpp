#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Core>

namespace gaussinfo {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Largest |a_ij - a_ji| relative to the largest |a_ij| (absolute for a zero
/// matrix).
template <typename Derived>
double asymmetry(const Eigen::MatrixBase<Derived>& a) {
  const double scale = a.cwiseAbs().maxCoeff();
  const double diff = (a - a.adjoint()).cwiseAbs().maxCoeff();
  return scale > 0.0 ? diff / scale : diff;
}

}  // namespace gaussinfo
