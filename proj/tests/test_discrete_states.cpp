#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "doctest.h"
#include "gaussinfo/discrete_states.hpp"
#include "gaussinfo/errors.hpp"
#include "oracle.hpp"

using namespace gaussinfo;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

DensityMatrix bell() {
  CVector psi = CVector::Zero(4);
  psi(0) = kInvSqrt2;
  psi(3) = kInvSqrt2;
  return from_pure(StateVector::normalized(psi));
}

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace

TEST_CASE("StateVector normalizes and rejects the zero vector") {
  CVector v(2);
  v << 3.0, Complex(0.0, 4.0);
  const StateVector s = StateVector::normalized(v);
  CHECK(s.amplitudes().norm() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(s.amplitudes()(0) - Complex(0.6, 0.0)) < 1e-15);
  CHECK_THROWS_AS(StateVector::normalized(CVector::Zero(3)), InvalidArgument);
  CHECK_THROWS_AS(StateVector::normalized(CVector(0)), InvalidArgument);
}

TEST_CASE("DensityMatrix validation and repair") {
  CMatrix not_herm = 0.5 * CMatrix::Identity(2, 2);
  not_herm(0, 1) = Complex(0.0, 0.1);
  CHECK_THROWS_AS(DensityMatrix{not_herm}, InvalidArgument);
  CHECK_THROWS_AS(DensityMatrix{CMatrix(CMatrix::Identity(2, 2))}, InvalidArgument);

  CMatrix neg = CMatrix::Zero(2, 2);
  neg(0, 0) = 1.1;
  neg(1, 1) = -0.1;
  CHECK_THROWS_AS(DensityMatrix{neg}, InvalidArgument);

  // tiny negative eigenvalues are clamped
  CMatrix tiny = CMatrix::Zero(2, 2);
  tiny(0, 0) = 1.0 + 5e-11;
  tiny(1, 1) = -5e-11;
  const DensityMatrix repaired(tiny);
  CHECK(repaired.eigenvalues().minCoeff() >= 0.0);
  CHECK(std::abs(repaired.matrix().trace() - Complex(1.0)) < 1e-15);
}

TEST_CASE("from_pure: worked examples") {
  CHECK(max_abs(bell().matrix() - []{
    CMatrix e = CMatrix::Zero(4, 4);
    e(0, 0) = e(0, 3) = e(3, 0) = e(3, 3) = 0.5;
    return e;
  }()) < 1e-15);

  CVector zero(2);
  zero << 1.0, 0.0;
  CMatrix diag10 = CMatrix::Zero(2, 2);
  diag10(0, 0) = 1.0;
  CHECK(max_abs(from_pure(StateVector::normalized(zero)).matrix() - diag10) == 0.0);

  CVector sup(2);
  sup << kInvSqrt2, kInvSqrt2;
  CHECK(max_abs(from_pure(StateVector::normalized(sup)).matrix() - CMatrix::Constant(2, 2, 0.5)) <
        1e-15);
}

TEST_CASE("purity_discrete") {
  CHECK(purity_discrete(bell()) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(purity_discrete(DensityMatrix(0.5 * CMatrix::Identity(2, 2))) == 0.5);
  for (Index d : {3, 5, 8}) {
    CHECK(purity_discrete(DensityMatrix(CMatrix::Identity(d, d) / static_cast<double>(d))) ==
          doctest::Approx(1.0 / static_cast<double>(d)).epsilon(1e-14));
  }
}

TEST_CASE("partial_trace: Bell, product states and errors") {
  const DensityMatrix rho_a = partial_trace(bell(), 2, 2, Subsystem::A);
  CHECK(max_abs(rho_a.matrix() - 0.5 * CMatrix::Identity(2, 2)) < 1e-15);
  CHECK(max_abs(partial_trace(bell(), 2, 2, Subsystem::B).matrix() - 0.5 * CMatrix::Identity(2, 2)) <
        1e-15);

  const CMatrix a = oracle::random_density(2, 2, 11);
  const CMatrix b = oracle::random_density(3, 3, 12);
  const DensityMatrix ab(kron(a, b));
  CHECK(max_abs(partial_trace(ab, 2, 3, Subsystem::A).matrix() - a) < 1e-14);
  CHECK(max_abs(partial_trace(ab, 2, 3, Subsystem::B).matrix() - b) < 1e-14);

  CHECK_THROWS_AS(partial_trace(bell(), 3, 2, Subsystem::A), InvalidArgument);
  CHECK_THROWS_AS(partial_trace(bell(), 0, 4, Subsystem::A), InvalidArgument);
}

TEST_CASE("partial_trace: Schmidt symmetry and trace preservation") {
  for (int trial = 0; trial < 50; ++trial) {
    const CMatrix u = oracle::random_unitary(4, 100 + trial);
    const DensityMatrix psi = from_pure(StateVector::normalized(u.col(0)));
    const DensityMatrix ra = partial_trace(psi, 2, 2, Subsystem::A);
    const DensityMatrix rb = partial_trace(psi, 2, 2, Subsystem::B);
    CHECK((ra.eigenvalues() - rb.eigenvalues()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(std::abs(ra.matrix().trace() - Complex(1.0)) < 1e-14);
    CHECK(max_abs(ra.matrix() - ra.matrix().adjoint()) < 1e-15);
    CHECK(ra.eigenvalues().minCoeff() >= 0.0);
  }
}

TEST_CASE("von_neumann_discrete") {
  CHECK(von_neumann_discrete(partial_trace(bell(), 2, 2, Subsystem::A)) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK(von_neumann_discrete(bell()) == doctest::Approx(0.0));
  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = 0.75;
  d(1, 1) = 0.25;
  const double expected = -0.75 * std::log(0.75) - 0.25 * std::log(0.25);
  CHECK(von_neumann_discrete(DensityMatrix(d)) == doctest::Approx(expected).epsilon(1e-14));
  CHECK(std::abs(expected - 0.5623351) < 1e-7);
}

TEST_CASE("linear_entropy_discrete") {
  CHECK(linear_entropy_discrete(bell()) == doctest::Approx(0.0));
  CHECK(linear_entropy_discrete(DensityMatrix(0.5 * CMatrix::Identity(2, 2))) == 1.0);
  CHECK(linear_entropy_discrete(DensityMatrix(CMatrix::Identity(5, 5) / 5.0)) ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(linear_entropy_discrete(DensityMatrix(CMatrix::Identity(1, 1))) == 0.0);
}

TEST_CASE("expectation values of spin operators") {
  for (double hbar : {1.0, 0.5}) {
    const auto s = spin_half_operators(hbar);
    CVector sup(2);
    sup << kInvSqrt2, kInvSqrt2;
    const DensityMatrix plus_x = from_pure(StateVector::normalized(sup));
    CHECK(expectation(plus_x, s[0]) == doctest::Approx(hbar / 2).epsilon(1e-14));
    CHECK(std::abs(expectation(plus_x, s[1])) < 1e-15);
    CHECK(std::abs(expectation(plus_x, s[2])) < 1e-15);

    const DensityMatrix oven(0.5 * CMatrix::Identity(2, 2));
    for (const auto& op : s) CHECK(expectation(oven, op) == 0.0);

    // [s_x, s_y] = i hbar s_z
    CHECK(max_abs(s[0] * s[1] - s[1] * s[0] - Complex(0.0, hbar) * s[2]) < 1e-15);
  }
  const DensityMatrix r(oracle::random_density(3, 2, 5));
  CHECK(expectation(r, CMatrix::Identity(3, 3)) == doctest::Approx(1.0).epsilon(1e-14));
  CMatrix non_herm = CMatrix::Zero(3, 3);
  non_herm(0, 1) = 1.0;
  CHECK_THROWS_AS(expectation(r, non_herm), InvalidArgument);
  CHECK_THROWS_AS(expectation(r, CMatrix::Identity(2, 2)), InvalidArgument);
}

TEST_CASE("unitary invariance of purity and entropies") {
  for (int trial = 0; trial < 40; ++trial) {
    const Index dim = 2 + trial % 5;
    const DensityMatrix rho(oracle::random_density(dim, 1 + trial % dim, 700 + trial));
    const CMatrix u = oracle::random_unitary(dim, 800 + trial);
    const CMatrix rotated = u * rho.matrix() * u.adjoint();
    const DensityMatrix sigma(CMatrix((rotated + rotated.adjoint()) / 2.0));
    CHECK(std::abs(purity_discrete(rho) - purity_discrete(sigma)) < 1e-10);
    CHECK(std::abs(linear_entropy_discrete(rho) - linear_entropy_discrete(sigma)) < 1e-10);
    CHECK(std::abs(von_neumann_discrete(rho) - von_neumann_discrete(sigma)) < 1e-10);
  }
}

TEST_CASE("subadditivity and Araki-Lieb on random two-qubit states") {
  for (int trial = 0; trial < 500; ++trial) {
    const DensityMatrix rho(oracle::random_density(4, 1 + trial % 4, 10000 + trial));
    const double s_ab = von_neumann_discrete(rho);
    const double s_a = von_neumann_discrete(partial_trace(rho, 2, 2, Subsystem::A));
    const double s_b = von_neumann_discrete(partial_trace(rho, 2, 2, Subsystem::B));
    CHECK(s_ab <= s_a + s_b + 1e-10);
    CHECK(s_ab >= std::abs(s_a - s_b) - 1e-10);
  }
}
