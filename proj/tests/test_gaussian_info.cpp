#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "doctest.h"
#include "gaussinfo/errors.hpp"
#include "gaussinfo/gaussian_info.hpp"
#include "gaussinfo/oscillator_model.hpp"
#include "gaussinfo/reduction_spectrum.hpp"
#include "oracle.hpp"

using namespace gaussinfo;

namespace {

CovarianceMatrix one_mode(double qq, double pp, double qp = 0.0) {
  Matrix m(2, 2);
  m << qq, qp, qp, pp;
  return CovarianceMatrix(m);
}

CovarianceMatrix two_osc_ground(double k0, double k1, double hbar) {
  return ground_state_covariance(
      GroundStateSpec(normal_modes(build_chain(2, k0, k1, Boundary::open)), hbar));
}

CovarianceMatrix random_state(Index n, std::uint64_t seed, double hbar = 1.0) {
  // thermal-like diagonal with nu >= 1/2, dressed by a random symplectic map
  Vector nus(n);
  for (Index k = 0; k < n; ++k) nus(k) = 0.5 + 0.37 * static_cast<double>((seed + 3 * k) % 7);
  Vector diag(2 * n);
  diag << nus, nus;
  const Matrix s = oracle::random_symplectic(n, seed);
  return CovarianceMatrix(hbar * s * diag.asDiagonal() * s.transpose());
}

}  // namespace

TEST_CASE("CovarianceMatrix construction checks") {
  CHECK_THROWS_AS(CovarianceMatrix(Matrix(3, 3)), InvalidArgument);
  CHECK_THROWS_AS(CovarianceMatrix(Matrix(2, 4)), InvalidArgument);
  CHECK_THROWS_AS(CovarianceMatrix(Matrix(0, 0)), InvalidArgument);

  Matrix asym = Matrix::Identity(2, 2);
  asym(0, 1) = 0.1;
  CHECK_THROWS_AS(CovarianceMatrix{asym}, InvalidArgument);

  Matrix neg = Matrix::Identity(2, 2);
  neg(1, 1) = -0.5;
  CHECK_THROWS_AS(CovarianceMatrix{neg}, NotPositiveDefinite);

  Matrix nan = Matrix::Identity(2, 2);
  nan(0, 0) = std::nan("");
  CHECK_THROWS_AS(CovarianceMatrix{nan}, InvalidArgument);

  const CovarianceMatrix ok = CovarianceMatrix::from_blocks(Matrix::Identity(2, 2),
                                                           2 * Matrix::Identity(2, 2));
  CHECK(ok.modes() == 2);
  CHECK(ok(2, 2) == 2.0);
  CHECK(ok.qp().isZero());
}

TEST_CASE("MeanVector checks") {
  CHECK_THROWS_AS(MeanVector(Vector::Zero(3)), InvalidArgument);
  Vector bad = Vector::Zero(2);
  bad(1) = INFINITY;
  CHECK_THROWS_AS(MeanVector{bad}, InvalidArgument);
  CHECK(MeanVector::zero(3).size() == 6);
}

TEST_CASE("symplectic_form squares to minus identity") {
  for (Index n : {1, 2, 5}) {
    const Matrix omega = symplectic_form(n);
    CHECK(omega.transpose() == -omega);
    CHECK(omega * omega == -Matrix::Identity(2 * n, 2 * n));
  }
}

TEST_CASE("symplectic_eigenvalues: one mode equals sqrt(det)") {
  const CovarianceMatrix s = one_mode(0.8, 1.9, 0.3);
  const auto nu = symplectic_eigenvalues(s);
  REQUIRE(nu.size() == 1);
  CHECK(nu[0] == doctest::Approx(std::sqrt(s.matrix().determinant())).epsilon(1e-12));
  CHECK(nu[0] == doctest::Approx(std::sqrt(0.8 * 1.9 - 0.09)).epsilon(1e-12));
}

TEST_CASE("symplectic_eigenvalues: vacuum and reduced two-oscillator block") {
  const auto vac = symplectic_eigenvalues(CovarianceMatrix(0.5 * Matrix::Identity(6, 6)));
  for (double v : vac) CHECK(v == doctest::Approx(0.5).epsilon(1e-14));

  for (double k1 : {0.5, 4.0, 8.0}) {
    const double wp = 1.0, wm = std::sqrt(1.0 + 2 * k1);
    const std::vector<Index> keep{0};
    const CovarianceMatrix reduced = reduce_covariance(two_osc_ground(1.0, k1, 1.0), keep);
    CHECK(symplectic_eigenvalues(reduced)[0] ==
          doctest::Approx((wp + wm) / (4 * std::sqrt(wp * wm))).epsilon(1e-13));
  }
}

TEST_CASE("symplectic_eigenvalues: rejects singular sigma") {
  Matrix singular = Matrix::Zero(2, 2);
  singular(0, 0) = 1.0;
  CHECK_THROWS_AS(symplectic_eigenvalues(CovarianceMatrix(singular)), NotPositiveDefinite);
}

TEST_CASE("symplectic_eigenvalues agree with the literal Williamson construction") {
  for (int trial = 0; trial < 30; ++trial) {
    const Index n = 1 + trial % 6;
    const CovarianceMatrix s(oracle::random_pd(2 * n, 0.2, 5.0, 500 + trial));
    const auto fast = symplectic_eigenvalues(s);
    const auto slow = oracle::williamson_literal(s);
    REQUIRE(fast.size() == slow.size());
    for (std::size_t k = 0; k < fast.size(); ++k) {
      CHECK(fast[k] == doctest::Approx(slow[k]).epsilon(1e-10));
    }
  }
}

TEST_CASE("symplectic invariance of spectra, purity and entropy") {
  for (int trial = 0; trial < 25; ++trial) {
    const Index n = 1 + trial % 5;
    const CovarianceMatrix s = random_state(n, 40 + trial);
    const Matrix sym = oracle::random_symplectic(n, 900 + trial);
    const Matrix omega = symplectic_form(n);
    REQUIRE((sym * omega * sym.transpose() - omega).cwiseAbs().maxCoeff() < 1e-10);

    const CovarianceMatrix t(sym * s.matrix() * sym.transpose());
    const auto a = symplectic_eigenvalues(s);
    const auto b = symplectic_eigenvalues(t);
    for (std::size_t k = 0; k < a.size(); ++k) CHECK(std::abs(a[k] - b[k]) < 1e-9 * std::max(1.0, a[k]));
    CHECK(purity(t, 1.0) == doctest::Approx(purity(s, 1.0)).epsilon(1e-9));
    CHECK(std::abs(von_neumann_entropy_gaussian(t, 1.0) - von_neumann_entropy_gaussian(s, 1.0)) <
          1e-8);
  }
}

TEST_CASE("det sigma equals hbar^(2N) times the squared symplectic eigenvalues") {
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = 1 + trial % 6;
    const double hbar = 0.4 + 0.2 * trial;
    const CovarianceMatrix s = random_state(n, 200 + trial, hbar);
    const auto nu = symplectic_eigenvalues(CovarianceMatrix(s.matrix() / hbar));
    double prod = std::pow(hbar, 2.0 * static_cast<double>(n));
    double inv_purity = 1.0;
    for (double v : nu) {
      prod *= v * v;
      inv_purity *= 2 * v;
    }
    CHECK(std::abs(s.matrix().determinant() / prod - 1.0) < 1e-9);
    CHECK(purity(s, hbar) == doctest::Approx(1.0 / inv_purity).epsilon(1e-10));
  }
}

TEST_CASE("purity: pure and reduced two-oscillator states") {
  for (double hbar : {1.0, 0.25, 3.0}) {
    CHECK(purity(two_osc_ground(1.0, 2.0, hbar), hbar) == doctest::Approx(1.0).epsilon(1e-13));
  }
  const std::vector<Index> keep{0};
  const CovarianceMatrix reduced = reduce_covariance(two_osc_ground(1.0, 4.0, 1.0), keep);
  CHECK(purity(reduced, 1.0) == doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-13));
  CHECK(std::abs(purity(reduced, 1.0) - 0.8660254) < 1e-7);
  CHECK(linear_entropy_gaussian(reduced, 1.0) == doctest::Approx(1 - std::sqrt(3.0) / 2).epsilon(1e-12));
  CHECK(std::abs(linear_entropy_gaussian(reduced, 1.0) - 0.1339746) < 1e-7);
  CHECK(linear_entropy_gaussian(two_osc_ground(1.0, 0.0, 1.0), 1.0) == doctest::Approx(0.0));
  CHECK_THROWS_AS(purity(reduced, 0.0), InvalidArgument);
}

TEST_CASE("product rule and additivity on block-diagonal sigma") {
  for (int trial = 0; trial < 20; ++trial) {
    const CovarianceMatrix a = random_state(1 + trial % 3, 300 + trial);
    const CovarianceMatrix b = random_state(1 + trial % 4, 400 + trial);
    const CovarianceMatrix ab = CovarianceMatrix::direct_sum(a, b);
    CHECK(ab.modes() == a.modes() + b.modes());
    CHECK(std::abs(purity(ab, 1.0) - purity(a, 1.0) * purity(b, 1.0)) < 1e-12);
    CHECK(std::abs(von_neumann_entropy_gaussian(ab, 1.0) -
                   (von_neumann_entropy_gaussian(a, 1.0) + von_neumann_entropy_gaussian(b, 1.0))) <
          1e-10);
  }
}

TEST_CASE("mode_entropy: branch point, growth and rejection below one half") {
  CHECK(mode_entropy(0.5) == 0.0);
  CHECK(mode_entropy(0.5 - 5e-10) == 0.0);
  CHECK_THROWS_AS(mode_entropy(0.49), UnphysicalState);
  CHECK(mode_entropy(1.0) > mode_entropy(0.75));
  const double nu = 1.0 / std::sqrt(3.0);
  CHECK(mode_entropy(nu) == doctest::Approx((nu + 0.5) * std::log(nu + 0.5) -
                                            (nu - 0.5) * std::log(nu - 0.5)));
}

TEST_CASE("von_neumann_entropy_gaussian: examples") {
  CHECK(von_neumann_entropy_gaussian(CovarianceMatrix(0.5 * Matrix::Identity(4, 4)), 1.0) == 0.0);
  CHECK(von_neumann_entropy_gaussian(two_osc_ground(1.0, 3.0, 1.0), 1.0) < 1e-9);

  const std::vector<Index> keep{0};
  const CovarianceMatrix reduced = reduce_covariance(two_osc_ground(1.0, 4.0, 1.0), keep);
  CHECK(symplectic_eigenvalues(reduced)[0] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-13));
  const double s = von_neumann_entropy_gaussian(reduced, 1.0);
  CHECK(s == doctest::Approx(mode_entropy(1.0 / std::sqrt(3.0))).epsilon(1e-12));
  CHECK(std::abs(s - 0.27823866770789) < 1e-12);

  // hbar enters only through sigma / hbar
  const CovarianceMatrix reduced2 = reduce_covariance(two_osc_ground(1.0, 4.0, 2.5), keep);
  CHECK(von_neumann_entropy_gaussian(reduced2, 2.5) == doctest::Approx(s).epsilon(1e-12));

  CHECK_THROWS_AS(von_neumann_entropy_gaussian(one_mode(0.4, 0.4), 1.0), UnphysicalState);
}

TEST_CASE("check_physical") {
  const auto vac = check_physical(two_osc_ground(1.0, 1.0, 1.0), 1.0);
  CHECK(vac.is_physical);
  CHECK(vac.min_nu == doctest::Approx(0.5).epsilon(1e-12));

  for (double hbar : {1.0, 2.0}) {
    const auto bad = check_physical(one_mode(0.4 * hbar, 0.4 * hbar), hbar);
    CHECK_FALSE(bad.is_physical);
    CHECK(bad.min_nu == doctest::Approx(0.4).epsilon(1e-13));
  }

  const double wm = 3.0;
  const std::vector<Index> keep{1};
  const auto red = check_physical(reduce_covariance(two_osc_ground(1.0, 4.0, 1.0), keep), 1.0);
  CHECK(red.is_physical);
  CHECK(red.min_nu == doctest::Approx((1 + wm) / (4 * std::sqrt(wm))).epsilon(1e-13));

  Matrix singular = Matrix::Zero(2, 2);
  singular(1, 1) = 1.0;
  const auto sing = check_physical(CovarianceMatrix(singular), 1.0);
  CHECK_FALSE(sing.is_physical);
  CHECK(sing.min_nu == 0.0);
}

TEST_CASE("wigner_density: peak value and symmetry") {
  const CovarianceMatrix s = one_mode(0.5, 0.5);
  const MeanVector d = MeanVector::zero(1);
  const double peak = wigner_density(s, d, 1.0, Vector::Zero(2));
  CHECK(peak == doctest::Approx(1.0 / (2 * std::numbers::pi * std::sqrt(0.25))).epsilon(1e-14));
  CHECK(peak == doctest::Approx(1.0 / std::numbers::pi).epsilon(1e-14));

  Vector mean(2);
  mean << 0.3, -1.1;
  const CovarianceMatrix sq = one_mode(0.2, 1.25, 0.1);
  const Vector off(Vector::Constant(2, 0.4));
  CHECK(wigner_density(sq, MeanVector(mean), 1.0, mean + off) ==
        doctest::Approx(wigner_density(sq, MeanVector(mean), 1.0, mean - off)).epsilon(1e-14));
  CHECK(wigner_density(sq, MeanVector(mean), 1.0, mean) >
        wigner_density(sq, MeanVector(mean), 1.0, mean + off));
}

TEST_CASE("wigner_density: normalization and marginals by quadrature") {
  const double hbar = 1.0;
  CHECK(std::abs(oracle::wigner_normalization(one_mode(0.5, 0.5), MeanVector::zero(1), hbar) - 1) <
        1e-6);
  CHECK(std::abs(oracle::wigner_normalization(one_mode(4.0, 0.25 / 4.0), MeanVector::zero(1), hbar) -
                 1) < 1e-6);
  CHECK(std::abs(oracle::wigner_normalization(one_mode(1.3, 0.9, 0.4), MeanVector::zero(1), 2.0) -
                 1) < 1e-6);

  Vector mean(4);
  mean << 0.5, -0.2, 0.1, 0.3;
  CHECK(std::abs(oracle::wigner_normalization(two_osc_ground(1.0, 2.0, hbar), MeanVector(mean),
                                              hbar) -
                 1) < 1e-6);

  auto gauss = [](double x, double mean, double var) {
    return std::exp(-(x - mean) * (x - mean) / (2 * var)) / std::sqrt(2 * std::numbers::pi * var);
  };
  const CovarianceMatrix vac = one_mode(0.5, 0.5);
  double worst = 0.0;
  for (double q = -3.0; q <= 3.0; q += 0.25) {
    const double marginal = oracle::wigner_marginal(vac, MeanVector::zero(1), hbar, 0, q);
    worst = std::max(worst, std::abs(marginal - gauss(q, 0.0, 0.5)));
  }
  CHECK(worst < 1e-6);

  // every coordinate of a correlated two-mode state
  const CovarianceMatrix two = two_osc_ground(1.0, 2.0, hbar);
  worst = 0.0;
  for (Index k = 0; k < 4; ++k) {
    const double sd = std::sqrt(two(k, k));
    for (double t = -2.5; t <= 2.5; t += 1.25) {
      const double x = mean(k) + t * sd;
      const double marginal = oracle::wigner_marginal(two, MeanVector(mean), hbar, k, x, 32);
      worst = std::max(worst, std::abs(marginal - gauss(x, mean(k), two(k, k))));
    }
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("wigner_density: input validation") {
  CHECK_THROWS_AS(wigner_density(one_mode(0.5, 0.5), MeanVector::zero(2), 1.0, Vector::Zero(2)),
                  InvalidArgument);
  Matrix singular = Matrix::Zero(2, 2);
  singular(0, 0) = 1.0;
  CHECK_THROWS_AS(wigner_density(CovarianceMatrix(singular), MeanVector::zero(1), 1.0, Vector::Zero(2)),
                  NotPositiveDefinite);
}
