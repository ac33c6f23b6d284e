#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/QR>

namespace gaussinfo::oracle {

namespace {

// Trapezoid rule on a uniform tensor grid; `f` gets the grid point.
double trapezoid_nd(const Vector& center, const Vector& half_widths, const std::vector<int>& n,
                    const std::function<double(const Vector&)>& f) {
  const Index dims = center.size();
  Vector h(dims);
  for (Index k = 0; k < dims; ++k) h(k) = 2.0 * half_widths(k) / (n[static_cast<std::size_t>(k)] - 1);

  std::vector<int> idx(static_cast<std::size_t>(dims), 0);
  Vector x(dims);
  double total = 0.0;
  while (true) {
    double weight = 1.0;
    for (Index k = 0; k < dims; ++k) {
      const int i = idx[static_cast<std::size_t>(k)];
      x(k) = center(k) - half_widths(k) + i * h(k);
      if (i == 0 || i == n[static_cast<std::size_t>(k)] - 1) weight *= 0.5;
    }
    total += weight * f(x);

    Index k = 0;
    while (k < dims) {
      auto& i = idx[static_cast<std::size_t>(k)];
      if (++i < n[static_cast<std::size_t>(k)]) break;
      i = 0;
      ++k;
    }
    if (k == dims) break;
  }
  return total * h.prod();
}

Matrix gaussian_matrix(Index rows, Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = normal(rng);
  return m;
}

CMatrix complex_gaussian_matrix(Index rows, Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = Complex(normal(rng), normal(rng));
  return m;
}

}  // namespace

double purity_quadrature_two_osc(double k0, double k1, double hbar, const QuadratureSpec& grid) {
  const double wp = std::sqrt(k0);
  const double wm = std::sqrt(k0 + 2.0 * k1);
  const double beta = (wp - wm) * (wp - wm) / (4.0 * hbar * (wp + wm));
  const double gamma = 2.0 * wp * wm / (hbar * (wp + wm)) + beta;
  const double prefactor = std::sqrt(2.0 * wp * wm / (std::numbers::pi * hbar * (wp + wm)));

  auto rho = [&](double q, double qp) {
    return prefactor * std::exp(-0.5 * gamma * (q * q + qp * qp) + beta * q * qp);
  };
  // rho^2 ~ exp(-gamma (q^2 + q'^2) + 2 beta q q'); widest direction has
  // precision 2 (gamma - beta).
  const double width = grid.half_width / std::sqrt(2.0 * (gamma - beta));
  const Vector center = Vector::Zero(2);
  const Vector half = Vector::Constant(2, width);
  auto integrand = [&](const Vector& x) {
    const double r = rho(x(0), x(1));
    return r * r;
  };

  int points = grid.points;
  double previous = trapezoid_nd(center, half, {points, points}, integrand);
  for (int level = 0; level < grid.max_refinements; ++level) {
    points = 2 * points - 1;
    const double current = trapezoid_nd(center, half, {points, points}, integrand);
    if (std::abs(current - previous) < grid.tolerance / 10.0) return current;
    previous = current;
  }
  throw QuadratureNotConverged("purity quadrature did not settle within the refinement budget");
}

ResummedSpectrum spectrum_resum(double xi, int cutoff) {
  if (!(xi >= 0.0 && xi < 1.0)) throw InvalidArgument("xi must lie in [0, 1)");
  if (cutoff < 1) throw InvalidArgument("cutoff must be positive");
  ResummedSpectrum out;
  const double log_one_minus = std::log1p(-xi);
  for (int n = 0; n < cutoff; ++n) {
    const double p = (1.0 - xi) * std::pow(xi, n);
    if (p == 0.0) break;
    out.prob_sum += p;
    out.purity += p * p;
    const double log_p = log_one_minus + (n == 0 ? 0.0 : n * std::log(xi));
    out.entropy -= p * log_p;
  }
  if (xi > 0.0) {
    const double tail = std::pow(xi, cutoff);
    const double c = static_cast<double>(cutoff);
    out.prob_bound = tail;
    out.entropy_bound =
        tail * (-log_one_minus + (-std::log(xi)) * (c * (1.0 - xi) + xi) / (1.0 - xi));
  }
  return out;
}

ModeSpectrum srednicki_literal(const Matrix& sigma_pp, Index n) {
  const Index total = sigma_pp.rows();
  if (n < 1 || n >= total) throw InvalidSubsystem("kept block size out of range");
  const Index rest = total - n;
  const Matrix a = sigma_pp.topLeftCorner(n, n);
  const Matrix b = sigma_pp.topRightCorner(n, rest);
  const Matrix c = sigma_pp.bottomRightCorner(rest, rest);

  Eigen::FullPivLU<Matrix> lu_c(c);
  if (!lu_c.isInvertible()) throw SingularEnvironmentBlock("C is singular");
  const Matrix m = b * lu_c.inverse() * b.transpose();

  // A - M/2 = lambda^T Theta lambda
  const Matrix t = a - 0.5 * m;
  Eigen::SelfAdjointEigenSolver<Matrix> eig_t(0.5 * (t + t.transpose()));
  const Matrix lambda = eig_t.eigenvectors().transpose();
  const Vector theta = eig_t.eigenvalues();
  if (theta.minCoeff() <= 0.0) throw NumericalBreakdown("A - M/2 is not positive definite");
  const Vector theta_inv_sqrt = theta.cwiseSqrt().cwiseInverse();

  Matrix v = theta_inv_sqrt.asDiagonal() * lambda * m * lambda.transpose() *
             theta_inv_sqrt.asDiagonal() / 2.0;
  v = 0.5 * (v + v.transpose()).eval();

  // V = eta^T varphi eta
  Eigen::SelfAdjointEigenSolver<Matrix> eig_v(v);
  std::vector<double> phi(eig_v.eigenvalues().data(), eig_v.eigenvalues().data() + n);
  std::sort(phi.begin(), phi.end(), std::greater<>());

  ModeSpectrum s{Vector(n), Vector(n), Vector(n)};
  for (Index i = 0; i < n; ++i) {
    const double p = std::clamp(phi[static_cast<std::size_t>(i)], 0.0, 1.0);
    s.phi(i) = p;
    s.xi(i) = p / (1.0 + std::sqrt((1.0 - p) * (1.0 + p)));
    s.nu(i) = (1.0 + s.xi(i)) / (2.0 * (1.0 - s.xi(i)));
  }
  return s;
}

MonteCarloCovariance angle_average_mc(const NormalModes& modes, const Vector& actions,
                                      int samples, std::uint64_t seed) {
  const Index n = modes.size();
  if (actions.size() != n) throw InvalidArgument("one action per mode");
  if (samples < 2) throw InvalidArgument("need at least two samples");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);

  const Vector q_amp = (2.0 * actions.cwiseQuotient(modes.w)).cwiseSqrt();
  const Vector p_amp = (2.0 * actions.cwiseProduct(modes.w)).cwiseSqrt();
  const Matrix ut = modes.u.transpose();

  Vector sum = Vector::Zero(2 * n);
  Matrix sum_outer = Matrix::Zero(2 * n, 2 * n);
  Matrix sum_outer_sq = Matrix::Zero(2 * n, 2 * n);
  Vector big_q(n), big_p(n), r(2 * n);
  for (int s = 0; s < samples; ++s) {
    for (Index a = 0; a < n; ++a) {
      const double phi = angle(rng);
      big_q(a) = q_amp(a) * std::cos(phi);
      big_p(a) = -p_amp(a) * std::sin(phi);
    }
    r.head(n) = ut * big_q;
    r.tail(n) = ut * big_p;
    sum += r;
    const Matrix outer = r * r.transpose();
    sum_outer += outer;
    sum_outer_sq += outer.cwiseProduct(outer);
  }
  const double count = static_cast<double>(samples);
  const Vector mean = sum / count;
  const Matrix second = sum_outer / count;
  MonteCarloCovariance out;
  out.mean = second - mean * mean.transpose();
  const Matrix var = (sum_outer_sq / count - second.cwiseProduct(second)).cwiseMax(0.0);
  out.std_error = (var / count).cwiseSqrt();
  return out;
}

double wigner_normalization(const CovarianceMatrix& sigma, const MeanVector& d, double hbar,
                            int points_per_axis, double half_width) {
  const Index dims = sigma.matrix().rows();
  if (dims > 4) throw InvalidArgument("quadrature supports one or two modes");
  const Matrix precision = sigma.matrix().inverse();
  Vector half(dims);
  std::vector<int> n(static_cast<std::size_t>(dims));
  for (Index k = 0; k < dims; ++k) {
    const double marginal_sd = std::sqrt(sigma(k, k));
    const double conditional_sd = 1.0 / std::sqrt(precision(k, k));
    half(k) = half_width * marginal_sd;
    // keep the step below half a conditional standard deviation
    const int needed = static_cast<int>(std::ceil(2.0 * half(k) / (0.5 * conditional_sd))) + 1;
    n[static_cast<std::size_t>(k)] = std::max(points_per_axis, needed);
  }
  return trapezoid_nd(d.vector(), half, n,
                      [&](const Vector& x) { return wigner_density(sigma, d, hbar, x); });
}

double wigner_marginal(const CovarianceMatrix& sigma, const MeanVector& d, double hbar,
                       Index coordinate, double value, int points_per_axis, double half_width) {
  const Index dims = sigma.matrix().rows();
  if (dims > 4) throw InvalidArgument("quadrature supports one or two modes");
  if (coordinate < 0 || coordinate >= dims) throw InvalidArgument("coordinate out of range");
  const Index rest = dims - 1;
  Vector center(rest), half(rest);
  std::vector<int> n(static_cast<std::size_t>(rest));
  const Matrix precision = sigma.matrix().inverse();
  for (Index k = 0, j = 0; k < dims; ++k) {
    if (k == coordinate) continue;
    center(j) = d.vector()(k);
    half(j) = half_width * std::sqrt(sigma(k, k));
    const double conditional_sd = 1.0 / std::sqrt(precision(k, k));
    const int needed = static_cast<int>(std::ceil(2.0 * half(j) / (0.5 * conditional_sd))) + 1;
    n[static_cast<std::size_t>(j)] = std::max(points_per_axis, needed);
    ++j;
  }
  Vector r(dims);
  return trapezoid_nd(center, half, n, [&](const Vector& x) {
    for (Index k = 0, j = 0; k < dims; ++k) r(k) = k == coordinate ? value : x(j++);
    return wigner_density(sigma, d, hbar, r);
  });
}

std::vector<double> williamson_literal(const CovarianceMatrix& sigma) {
  const Index n = sigma.modes();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(sigma.matrix());
  if (eig.eigenvalues().minCoeff() <= 0.0) throw NotPositiveDefinite("sigma is not PD");
  const Matrix inv_sqrt = eig.operatorInverseSqrt();

  Matrix omega = Matrix::Zero(2 * n, 2 * n);
  omega.topRightCorner(n, n).setIdentity();
  omega.bottomLeftCorner(n, n) = -Matrix::Identity(n, n);
  const Matrix omega_prime = inv_sqrt * omega * inv_sqrt;

  // i * Omega' is Hermitian with eigenvalues +-1/nu.
  const CMatrix herm = Complex(0.0, 1.0) * omega_prime.cast<Complex>();
  Eigen::SelfAdjointEigenSolver<CMatrix> eig_h(herm, Eigen::EigenvaluesOnly);
  std::vector<double> nu;
  for (Index i = 0; i < 2 * n; ++i) {
    const double ev = eig_h.eigenvalues()(i);
    if (ev > 0.0) nu.push_back(1.0 / ev);
  }
  std::sort(nu.begin(), nu.end());
  return nu;
}

Matrix random_pd(Index n, double lo, double hi, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const Matrix q = Eigen::HouseholderQR<Matrix>(gaussian_matrix(n, n, rng)).householderQ();
  std::uniform_real_distribution<double> spread(lo, hi);
  Vector ev(n);
  for (Index i = 0; i < n; ++i) ev(i) = spread(rng);
  const Matrix m = q * ev.asDiagonal() * q.transpose();
  return 0.5 * (m + m.transpose());
}

CMatrix random_unitary(Index dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Eigen::HouseholderQR<CMatrix> qr(complex_gaussian_matrix(dim, dim, rng));
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index i = 0; i < dim; ++i) {
    const Complex d = r(i, i);
    q.col(i) *= d / std::abs(d);
  }
  return q;
}

Matrix random_symplectic(Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto passive = [&](std::uint64_t s) {
    const CMatrix u = random_unitary(n, s);
    Matrix o(2 * n, 2 * n);
    o << u.real(), -u.imag(), u.imag(), u.real();
    return o;
  };
  Matrix shear = Matrix::Identity(2 * n, 2 * n);
  const Matrix g = gaussian_matrix(n, n, rng);
  shear.bottomLeftCorner(n, n) = 0.3 * (g + g.transpose());
  std::uniform_real_distribution<double> log_squeeze(-0.7, 0.7);
  Vector d(2 * n);
  for (Index i = 0; i < n; ++i) {
    d(i) = std::exp(log_squeeze(rng));
    d(n + i) = 1.0 / d(i);
  }
  return passive(seed + 1) * d.asDiagonal() * shear * passive(seed + 2);
}

CMatrix random_density(Index dim, Index rank, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const CMatrix g = complex_gaussian_matrix(dim, rank, rng);
  const CMatrix rho = g * g.adjoint();
  return rho / rho.trace().real();
}

}  // namespace gaussinfo::oracle
