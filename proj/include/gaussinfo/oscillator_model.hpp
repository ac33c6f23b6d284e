#pragma once

#include "gaussinfo/gaussian_info.hpp"
#include "gaussinfo/types.hpp"

namespace gaussinfo {

/// Coupling matrix K of H = (p.p + q.K.q)/2 for unit-mass oscillators, in
/// units of frequency squared. Symmetric and positive definite, both checked
/// at construction.
class CouplingMatrix {
 public:
  explicit CouplingMatrix(Matrix k);

  Index size() const { return k_.rows(); }
  const Matrix& matrix() const { return k_; }

 private:
  Matrix k_;
};

enum class Boundary { open, periodic };

/// Nearest-neighbour chain: sum_i k0 q_i^2 + sum_<ij> k1 (q_i - q_j)^2.
/// The periodic bond (n, 1) is only added for n >= 3; shorter rings have no
/// bond that the open chain lacks.
CouplingMatrix build_chain(Index n, double k0, double k1, Boundary boundary);

/// K = U^T diag(w)^2 U. Rows of `u` are orthonormal eigenvectors of K, `w`
/// ascending.
struct NormalModes {
  Matrix u;
  Vector w;

  Index size() const { return w.size(); }
};

NormalModes normal_modes(const CouplingMatrix& k);

class GroundStateSpec {
 public:
  explicit GroundStateSpec(NormalModes modes, double hbar = 1.0);

  const NormalModes& modes() const { return modes_; }
  double hbar() const { return hbar_; }

 private:
  NormalModes modes_;
  double hbar_;
};

/// sigma_qq = (hbar/2) U^T W^{-1} U, sigma_pp = (hbar/2) U^T W U, sigma_qp = 0.
CovarianceMatrix ground_state_covariance(const GroundStateSpec& spec);

}  // namespace gaussinfo
