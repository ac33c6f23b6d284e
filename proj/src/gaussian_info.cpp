#include "gaussinfo/gaussian_info.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "gaussinfo/errors.hpp"

namespace gaussinfo {

namespace {

constexpr double kSymmetryTol = 1e-12;
constexpr double kPsdTol = 1e-10;
constexpr double kNuFloorTol = 1e-9;

// log det of a positive-definite matrix through its Cholesky factor.
double log_det_pd(const Matrix& a, const char* what) {
  Eigen::LLT<Matrix> llt(a);
  if (llt.info() != Eigen::Success) {
    throw NotPositiveDefinite(std::string(what) + " is not positive definite");
  }
  return 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
}

void require_positive_hbar(double hbar) {
  if (!(hbar > 0.0) || !std::isfinite(hbar)) {
    throw InvalidArgument("hbar must be positive and finite");
  }
}

}  // namespace

CovarianceMatrix::CovarianceMatrix(Matrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() == 0 ||
      entries_.rows() % 2 != 0) {
    throw InvalidArgument("covariance matrix must be square with even, nonzero dimension");
  }
  if (!entries_.allFinite()) {
    throw InvalidArgument("covariance matrix has non-finite entries");
  }
  if (asymmetry(entries_) > kSymmetryTol) {
    throw InvalidArgument("covariance matrix is not symmetric");
  }
  entries_ = 0.5 * (entries_ + entries_.transpose()).eval();
  const double scale = std::max(1.0, entries_.cwiseAbs().maxCoeff());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(entries_, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -kPsdTol * scale) {
    throw NotPositiveDefinite("covariance matrix is not positive semidefinite");
  }
}

CovarianceMatrix CovarianceMatrix::from_blocks(const Matrix& qq, const Matrix& pp) {
  return from_blocks(qq, pp, Matrix::Zero(qq.rows(), qq.cols()));
}

CovarianceMatrix CovarianceMatrix::from_blocks(const Matrix& qq, const Matrix& pp,
                                               const Matrix& qp) {
  const Index n = qq.rows();
  if (qq.cols() != n || pp.rows() != n || pp.cols() != n || qp.rows() != n ||
      qp.cols() != n) {
    throw InvalidArgument("covariance blocks have mismatched shapes");
  }
  Matrix s(2 * n, 2 * n);
  s << qq, qp, qp.transpose(), pp;
  return CovarianceMatrix(std::move(s));
}

CovarianceMatrix CovarianceMatrix::direct_sum(const CovarianceMatrix& a,
                                              const CovarianceMatrix& b) {
  const Index na = a.modes();
  const Index nb = b.modes();
  const Index n = na + nb;
  Matrix s = Matrix::Zero(2 * n, 2 * n);
  // Each of the four (q/p) blocks of a and b lands in the matching block of
  // the sum.
  for (int rb = 0; rb < 2; ++rb) {
    for (int cb = 0; cb < 2; ++cb) {
      s.block(rb * n, cb * n, na, na) = a.matrix().block(rb * na, cb * na, na, na);
      s.block(rb * n + na, cb * n + na, nb, nb) =
          b.matrix().block(rb * nb, cb * nb, nb, nb);
    }
  }
  return CovarianceMatrix(std::move(s));
}

Matrix symplectic_form(Index n) {
  Matrix omega = Matrix::Zero(2 * n, 2 * n);
  omega.topRightCorner(n, n).setIdentity();
  omega.bottomLeftCorner(n, n) = -Matrix::Identity(n, n);
  return omega;
}

MeanVector::MeanVector(Vector d) : d_(std::move(d)) {
  if (!d_.allFinite()) throw InvalidArgument("mean vector has non-finite entries");
  if (d_.size() % 2 != 0) throw InvalidArgument("mean vector must have even length");
}

std::vector<double> symplectic_eigenvalues(const CovarianceMatrix& sigma) {
  const Index n = sigma.modes();
  log_det_pd(sigma.matrix(), "covariance matrix");

  const Matrix omega_sigma = symplectic_form(n) * sigma.matrix();
  Eigen::EigenSolver<Matrix> eig(omega_sigma, false);
  if (eig.info() != Eigen::Success) {
    throw NumericalBreakdown("eigen-decomposition of Omega*sigma failed");
  }
  std::vector<double> moduli;
  moduli.reserve(static_cast<std::size_t>(2 * n));
  for (Index i = 0; i < 2 * n; ++i) moduli.push_back(std::abs(eig.eigenvalues()(i).imag()));
  std::sort(moduli.begin(), moduli.end());

  // Eigenvalues come in conjugate pairs +-i nu; after sorting the moduli each
  // nu appears twice in a row.
  std::vector<double> nu(static_cast<std::size_t>(n));
  for (std::size_t k = 0; k < nu.size(); ++k) {
    nu[k] = 0.5 * (moduli[2 * k] + moduli[2 * k + 1]);
  }
  return nu;
}

double purity(const CovarianceMatrix& sigma, double hbar) {
  require_positive_hbar(hbar);
  const double n = static_cast<double>(sigma.modes());
  const double log_det = log_det_pd(sigma.matrix(), "covariance matrix");
  return std::exp(n * std::log(0.5 * hbar) - 0.5 * log_det);
}

double linear_entropy_gaussian(const CovarianceMatrix& sigma, double hbar) {
  return 1.0 - purity(sigma, hbar);
}

double mode_entropy(double nu) {
  if (nu < 0.5 - kNuFloorTol) {
    throw UnphysicalState("symplectic eigenvalue " + std::to_string(nu) + " is below 1/2");
  }
  if (nu <= 0.5) return 0.0;
  const double plus = nu + 0.5;
  const double minus = nu - 0.5;
  return plus * std::log(plus) - minus * std::log(minus);
}

double von_neumann_entropy_gaussian(const CovarianceMatrix& sigma, double hbar) {
  require_positive_hbar(hbar);
  const CovarianceMatrix scaled(sigma.matrix() / hbar);
  double s = 0.0;
  for (double nu : symplectic_eigenvalues(scaled)) s += mode_entropy(nu);
  return s;
}

PhysicalityReport check_physical(const CovarianceMatrix& sigma, double hbar) {
  require_positive_hbar(hbar);
  PhysicalityReport report;
  try {
    const auto nu = symplectic_eigenvalues(CovarianceMatrix(sigma.matrix() / hbar));
    report.min_nu = nu.front();
    report.is_physical = report.min_nu >= 0.5 - kNuFloorTol;
  } catch (const NotPositiveDefinite&) {
    report.min_nu = 0.0;
    report.is_physical = false;
  }
  return report;
}

double wigner_density(const CovarianceMatrix& sigma, const MeanVector& d, double hbar,
                      const Vector& r) {
  require_positive_hbar(hbar);
  const Index dim = sigma.matrix().rows();
  if (d.size() != dim || r.size() != dim) {
    throw InvalidArgument("phase-space point and mean vector must match sigma");
  }
  Eigen::LLT<Matrix> llt(sigma.matrix());
  if (llt.info() != Eigen::Success) {
    throw NotPositiveDefinite("Wigner function needs a positive-definite sigma");
  }
  const Vector delta = r - d.vector();
  const double quad = delta.dot(llt.solve(delta));
  const double n = static_cast<double>(sigma.modes());
  // det(sigma/hbar) = det(sigma) / hbar^{2N}
  const double log_det_scaled =
      2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum() -
      2.0 * n * std::log(hbar);
  const double log_norm = n * std::log(2.0 * std::numbers::pi * hbar) + 0.5 * log_det_scaled;
  return std::exp(-0.5 * quad - log_norm);
}

}  // namespace gaussinfo
