#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "resilim/errors.hpp"
#include "resilim/gramian.hpp"
#include "resilim/model.hpp"
#include "resilim/pendula.hpp"

using namespace resilim;

TEST_CASE("scalar gramian matches the closed form") {
  // a = -1, b = 1: W(T) = (1 - exp(-2T)) / 2.
  Eigen::MatrixXd a(1, 1), b(1, 1);
  a << -1.0;
  b << 1.0;
  const Gramian g = gramian(a, b, 1.0);
  CHECK(g.w(0, 0) == doctest::Approx((1.0 - std::exp(-2.0)) / 2.0).epsilon(1e-10));
  CHECK(g.horizon == 1.0);
  CHECK(g.numerical_rank == 1);
}

TEST_CASE("drift-free gramian is B B^T times the horizon") {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(3, 3);
  Eigen::MatrixXd b(3, 2);
  b << 1, 0, 0, 2, 0, 0;
  const Gramian g = gramian(a, b, 2.5);
  CHECK((g.w - 2.5 * b * b.transpose()).norm() < 1e-12);
  CHECK(g.numerical_rank == 2);  // third state is untouched
}

TEST_CASE("zero horizon yields the zero gramian") {
  Eigen::MatrixXd a(2, 2);
  a << -1, 0, 0, -2;
  const Gramian g = gramian(a, Eigen::MatrixXd::Identity(2, 2), 0.0);
  CHECK(g.w.isZero(0.0));
  CHECK(g.numerical_rank == 0);
}

TEST_CASE("gramian spectral fields are ordered and consistent") {
  std::mt19937 rng(41);
  const Eigen::MatrixXd a = testutil::random_stable(5, rng);
  const Eigen::MatrixXd b = testutil::random_gaussian(5, 2, rng);
  const Gramian g = gramian(a, b, 3.0);
  for (Eigen::Index i = 1; i < g.eigenvalues.size(); ++i) {
    CHECK(g.eigenvalues(i) <= g.eigenvalues(i - 1));
  }
  CHECK(g.eigenvalues.minCoeff() >= 0.0);
  // reconstruction from the decomposition
  const Eigen::MatrixXd rebuilt =
      g.eigenvectors * g.eigenvalues.asDiagonal() * g.eigenvectors.transpose();
  CHECK((rebuilt - g.w).norm() < 1e-10 * g.w.norm());
}

TEST_CASE("quadrupling the step count leaves the integral unchanged at 4th order") {
  const LtiSystem sys = pendula::build({}, {pendula::Pendulum::left},
                                       {pendula::Pendulum::left});
  const Gramian coarse = gramian(sys.a, sys.b_attack, 15.0, 2000);
  const Gramian fine = gramian(sys.a, sys.b_attack, 15.0, 8000);
  CHECK((coarse.w - fine.w).norm() < 1e-6 * fine.w.norm());
}

TEST_CASE("infinite-horizon gramian solves the Lyapunov equation") {
  std::mt19937 rng(42);
  const Eigen::MatrixXd a = testutil::random_stable(4, rng, -0.8);
  const Eigen::MatrixXd b = testutil::random_gaussian(4, 2, rng);
  const Gramian inf_g = gramian_infinite(a, b);
  const Eigen::MatrixXd residual =
      a * inf_g.w + inf_g.w * a.transpose() + b * b.transpose();
  CHECK(residual.norm() < 1e-11 * inf_g.w.norm());
  CHECK(std::isinf(inf_g.horizon));

  // The finite-horizon integral approaches it once transients die out.
  const Gramian long_g = gramian(a, b, 40.0, 8000);
  CHECK((long_g.w - inf_g.w).norm() < 1e-8 * inf_g.w.norm());

  Eigen::MatrixXd unstable(1, 1);
  unstable << 0.1;
  CHECK_THROWS_AS(gramian_infinite(unstable, Eigen::MatrixXd::Identity(1, 1)),
                  NumericalError);
}

TEST_CASE("defender tilde gramian conjugates by the backward drift") {
  std::mt19937 rng(43);
  const Eigen::MatrixXd a = testutil::random_stable(4, rng);
  const Eigen::MatrixXd b = testutil::random_gaussian(4, 2, rng);
  const double span = 2.0;
  const Gramian w_d = gramian(a, b, span);
  const Gramian tilde = defender_tilde_gramian(a, w_d, span);
  const Eigen::MatrixXd e = matrix_exponential(a, -span);
  CHECK((tilde.w - e * w_d.w * e.transpose()).norm() < 1e-12 * tilde.w.norm());

  // A Gramian computed for one span cannot price another.
  CHECK_THROWS_AS(defender_tilde_gramian(a, w_d, span * 2.0), ParseError);
  CHECK_THROWS_AS(defender_tilde_gramian(a, gramian_infinite(a, b), span), ParseError);
}

TEST_CASE("extended inverse matches the true inverse on full rank") {
  std::mt19937 rng(44);
  const Eigen::MatrixXd spd = testutil::random_spd(4, rng);
  const Gramian g = Gramian::from_matrix(spd, 1.0);
  REQUIRE(g.full_rank());
  const ExtendedInverse inv = extended_inverse(g);
  const Eigen::VectorXd x = testutil::random_unit_vector(4, rng);
  CHECK((g.w * inv.apply(x) - x).norm() < 1e-9);
  CHECK(inv.quadratic_form(x) ==
        doctest::Approx(x.dot(g.w.llt().solve(x))).epsilon(1e-10));
}

TEST_CASE("extended inverse prices unreachable directions at big M") {
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(2, 2);
  w(0, 0) = 4.0;  // rank 1: second axis unreachable
  const Gramian g = Gramian::from_matrix(w, 1.0);
  REQUIRE(g.numerical_rank == 1);

  const ExtendedInverse inv = extended_inverse(g);
  CHECK(inv.big_m == doctest::Approx(1e12 / 4.0));
  CHECK(inv.quadratic_form(Eigen::Vector2d(1.0, 0.0)) == doctest::Approx(0.25));
  CHECK(inv.quadratic_form(Eigen::Vector2d(0.0, 1.0)) == doctest::Approx(inv.big_m));

  // A custom M below the largest finite inverse eigenvalue is inconsistent.
  CHECK_THROWS_AS(extended_inverse(g, 0.1), ParseError);
  const ExtendedInverse custom = extended_inverse(g, 1e9);
  CHECK(custom.big_m == 1e9);
}

TEST_CASE("matrix exponential closed forms") {
  Eigen::MatrixXd nilpotent(2, 2);
  nilpotent << 0, 1, 0, 0;
  const Eigen::MatrixXd shear = matrix_exponential(nilpotent, 3.0);
  CHECK(shear(0, 0) == doctest::Approx(1.0));
  CHECK(shear(0, 1) == doctest::Approx(3.0));
  CHECK(shear(1, 0) == doctest::Approx(0.0));

  Eigen::MatrixXd rotation(2, 2);
  rotation << 0, -1, 1, 0;
  const double theta = 0.7;
  const Eigen::MatrixXd rot = matrix_exponential(rotation, theta);
  CHECK(rot(0, 0) == doctest::Approx(std::cos(theta)));
  CHECK(rot(1, 0) == doctest::Approx(std::sin(theta)));

  std::mt19937 rng(45);
  const Eigen::MatrixXd a = testutil::random_gaussian(4, 4, rng);
  const Eigen::MatrixXd forward = matrix_exponential(a, 0.9);
  const Eigen::MatrixXd backward = matrix_exponential(a, -0.9);
  CHECK((forward * backward - Eigen::MatrixXd::Identity(4, 4)).norm() < 1e-10);
}

TEST_CASE("gramian input validation") {
  Eigen::MatrixXd a(2, 2);
  a << -1, 0, 0, -1;
  const Eigen::MatrixXd b = Eigen::MatrixXd::Identity(2, 2);
  CHECK_THROWS_AS(gramian(a, b, -1.0), ParseError);
  CHECK_THROWS_AS(gramian(a, Eigen::MatrixXd::Identity(3, 3), 1.0), ParseError);
  CHECK_THROWS_AS(Gramian::from_matrix(Eigen::MatrixXd::Ones(2, 3), 1.0), ParseError);
  // clearly indefinite input is rejected, not clamped
  Eigen::MatrixXd indefinite(2, 2);
  indefinite << 1, 0, 0, -1;
  CHECK_THROWS_AS(Gramian::from_matrix(indefinite, 1.0), NumericalError);
}
