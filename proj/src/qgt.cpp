#include "gaussinfo/qgt.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "gaussinfo/errors.hpp"

namespace gaussinfo {

namespace {

constexpr double kHermitianTol = 1e-12;
constexpr double kGapTol = 1e-10;

void require_hermitian(const CMatrix& h, const char* what) {
  if (h.rows() != h.cols() || h.rows() == 0) {
    throw InvalidArgument(std::string(what) + " must be square and nonempty");
  }
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if ((h - h.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol * scale) {
    throw InvalidArgument(std::string(what) + " is not Hermitian");
  }
}

struct Eigensystem {
  Vector energies;
  CMatrix vectors;
};

Eigensystem diagonalize(const CMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(h);
  if (eig.info() != Eigen::Success) throw NumericalBreakdown("Hamiltonian diagonalization failed");
  return {eig.eigenvalues(), eig.eigenvectors()};
}

void require_gap(const Vector& energies, Index level) {
  if (level < 0 || level >= energies.size()) {
    throw InvalidArgument("eigenstate index out of range");
  }
  for (Index m = 0; m < energies.size(); ++m) {
    if (m != level && std::abs(energies(m) - energies(level)) <= kGapTol) {
      throw DegenerateLevel("level " + std::to_string(level) + " is degenerate with level " +
                            std::to_string(m));
    }
  }
}

}  // namespace

CMatrix ParametrizedHamiltonian::hamiltonian() const {
  CMatrix m = h(params);
  require_hermitian(m, "Hamiltonian");
  return m;
}

std::vector<CMatrix> ParametrizedHamiltonian::derivatives() const {
  if (dh) {
    std::vector<CMatrix> d = (*dh)(params);
    if (static_cast<Index>(d.size()) != params.size()) {
      throw InvalidArgument("derivative count must equal the parameter count");
    }
    for (const CMatrix& di : d) require_hermitian(di, "Hamiltonian derivative");
    return d;
  }
  std::vector<CMatrix> d;
  d.reserve(static_cast<std::size_t>(params.size()));
  for (Index i = 0; i < params.size(); ++i) {
    const double step = fd_relative_step * std::max(1.0, std::abs(params(i)));
    Vector up = params;
    Vector down = params;
    up(i) += step;
    down(i) -= step;
    CMatrix di = (h(up) - h(down)) / (2.0 * step);
    di = 0.5 * (di + di.adjoint()).eval();
    d.push_back(std::move(di));
  }
  return d;
}

GeometricTensor qgt_from_eigensystem(const Vector& energies, const CMatrix& vectors,
                                     const std::vector<CMatrix>& derivatives, Index level) {
  require_gap(energies, level);
  const Index dim = energies.size();
  const Index p = static_cast<Index>(derivatives.size());

  // Row i: <n| d_i H |m> for every m.
  CMatrix elements(p, dim);
  const CVector ket_n = vectors.col(level);
  for (Index i = 0; i < p; ++i) {
    elements.row(i) = (vectors.adjoint() * (derivatives[static_cast<std::size_t>(i)] * ket_n))
                          .adjoint();
  }

  CMatrix g_complex = CMatrix::Zero(p, p);
  for (Index m = 0; m < dim; ++m) {
    if (m == level) continue;
    const double gap = energies(m) - energies(level);
    const double w = 1.0 / (gap * gap);
    for (Index i = 0; i < p; ++i) {
      for (Index j = 0; j < p; ++j) {
        // <n|d_i H|m><m|d_j H|n> = elements(i,m) * conj(elements(j,m))
        g_complex(i, j) += w * elements(i, m) * std::conj(elements(j, m));
      }
    }
  }
  GeometricTensor t;
  const Matrix re = g_complex.real();
  const Matrix im = g_complex.imag();
  t.g = 0.5 * (re + re.transpose());
  t.f = im - im.transpose();  // F = 2 Im G, antisymmetrized
  return t;
}

GeometricTensor qgt_perturbative(const ParametrizedHamiltonian& ph, Index level) {
  const Eigensystem es = diagonalize(ph.hamiltonian());
  return qgt_from_eigensystem(es.energies, es.vectors, ph.derivatives(), level);
}

double fidelity_susceptibility(const ParametrizedHamiltonian& ph, Index level,
                               const Vector& direction) {
  const std::vector<CMatrix> d = ph.derivatives();
  if (direction.size() != static_cast<Index>(d.size())) {
    throw InvalidArgument("direction must have one entry per parameter");
  }
  const Eigensystem es = diagonalize(ph.hamiltonian());
  require_gap(es.energies, level);

  CMatrix dv = CMatrix::Zero(es.vectors.rows(), es.vectors.cols());
  for (std::size_t i = 0; i < d.size(); ++i) dv += direction(static_cast<Index>(i)) * d[i];

  const CVector column = es.vectors.adjoint() * (dv * es.vectors.col(level));
  double chi = 0.0;
  for (Index m = 0; m < es.energies.size(); ++m) {
    if (m == level) continue;
    const double gap = es.energies(level) - es.energies(m);
    chi += std::norm(column(m)) / (gap * gap);
  }
  return chi;
}

double fidelity_susceptibility(const ParametrizedHamiltonian& ph, Index level) {
  if (ph.params.size() != 1) {
    throw InvalidArgument("a direction is required for multi-parameter families");
  }
  return fidelity_susceptibility(ph, level, Vector::Ones(1));
}

Matrix phase_space_qmt(const CovarianceMatrix& sigma, double hbar) {
  if (!(hbar > 0.0)) throw InvalidArgument("hbar must be positive");
  const Index n = sigma.modes();
  Matrix g(2 * n, 2 * n);
  g.topLeftCorner(n, n) = sigma.pp();
  g.bottomRightCorner(n, n) = sigma.qq();
  // g_{q_a p_b} = -sigma_{p_a q_b}
  g.topRightCorner(n, n) = -sigma.qp().transpose();
  g.bottomLeftCorner(n, n) = -sigma.qp();
  return g / (hbar * hbar);
}

double fidelity_quadratic(const Matrix& g, const Vector& dlambda) {
  if (g.rows() != g.cols() || g.rows() != dlambda.size()) {
    throw InvalidArgument("metric and displacement dimensions disagree");
  }
  return std::max(0.0, 1.0 - 0.5 * dlambda.dot(g * dlambda));
}

namespace families {

namespace {

CMatrix position(Index dim, double hbar, double omega) {
  const CMatrix a = annihilation(dim);
  return std::sqrt(hbar / (2.0 * omega)) * (a + a.adjoint());
}

CMatrix momentum(Index dim, double hbar, double omega) {
  const CMatrix a = annihilation(dim);
  return Complex(0.0, std::sqrt(hbar * omega / 2.0)) * (a.adjoint() - a);
}

CMatrix pauli(char which) {
  CMatrix s(2, 2);
  switch (which) {
    case 'x': s << 0.0, 1.0, 1.0, 0.0; break;
    case 'z': s << 1.0, 0.0, 0.0, -1.0; break;
    default: throw InvalidArgument("unknown Pauli matrix");
  }
  return s;
}

void require_dim(Index dim) {
  if (dim < 2) throw InvalidArgument("Fock truncation needs at least two levels");
}

}  // namespace

CMatrix annihilation(Index dim) {
  CMatrix a = CMatrix::Zero(dim, dim);
  for (Index n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

ParametrizedHamiltonian oscillator_frequency(double omega, Index dim, double hbar,
                                             double omega_ref) {
  require_dim(dim);
  if (!(omega > 0.0) || !(omega_ref > 0.0) || !(hbar > 0.0)) {
    throw InvalidArgument("frequencies and hbar must be positive");
  }
  const CMatrix q = position(dim, hbar, omega_ref);
  const CMatrix p = momentum(dim, hbar, omega_ref);
  const CMatrix q2 = q * q;
  const CMatrix p2 = p * p;
  ParametrizedHamiltonian ph;
  ph.h = [q2, p2](const Vector& x) -> CMatrix { return 0.5 * p2 + 0.5 * x(0) * x(0) * q2; };
  ph.dh = [q2](const Vector& x) -> std::vector<CMatrix> { return {x(0) * q2}; };
  ph.params = Vector::Constant(1, omega);
  return ph;
}

ParametrizedHamiltonian oscillator_translation(double lambda, double omega, Index dim,
                                               double hbar) {
  require_dim(dim);
  if (!(omega > 0.0) || !(hbar > 0.0)) throw InvalidArgument("omega and hbar must be positive");
  const CMatrix q = position(dim, hbar, omega);
  const CMatrix p = momentum(dim, hbar, omega);
  const CMatrix id = CMatrix::Identity(dim, dim);
  ParametrizedHamiltonian ph;
  ph.h = [q, p, id, omega](const Vector& x) -> CMatrix {
    const CMatrix shifted = q - x(0) * id;
    return 0.5 * p * p + 0.5 * omega * omega * shifted * shifted;
  };
  ph.dh = [q, id, omega](const Vector& x) -> std::vector<CMatrix> {
    return {-omega * omega * (q - x(0) * id)};
  };
  ph.params = Vector::Constant(1, lambda);
  return ph;
}

ParametrizedHamiltonian avoided_crossing(double lambda, double delta) {
  const CMatrix sz = pauli('z');
  const CMatrix sx = pauli('x');
  ParametrizedHamiltonian ph;
  ph.h = [sz, sx, delta](const Vector& x) -> CMatrix { return x(0) * sz + delta * sx; };
  ph.dh = [sz](const Vector&) -> std::vector<CMatrix> { return {sz}; };
  ph.params = Vector::Constant(1, lambda);
  return ph;
}

ParametrizedHamiltonian commuting(double lambda) {
  const CMatrix sz = pauli('z');
  ParametrizedHamiltonian ph;
  ph.h = [sz](const Vector& x) -> CMatrix { return x(0) * sz; };
  ph.dh = [sz](const Vector&) -> std::vector<CMatrix> { return {sz}; };
  ph.params = Vector::Constant(1, lambda);
  return ph;
}

}  // namespace families

}  // namespace gaussinfo
