#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "resilim/errors.hpp"
#include "resilim/pendula.hpp"
#include "resilim/resilience.hpp"

using namespace resilim;

namespace {

LtiSystem make_system(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b_attack,
                      const Eigen::MatrixXd& b_defend) {
  LtiSystem sys;
  sys.a = a;
  sys.b_attack = b_attack;
  sys.b_defend = b_defend;
  return sys;
}

// Tolerance for reference values quoted with two decimals.
bool close_table_value(double got, double expected) {
  const double tol = std::max(0.05, 0.02 * std::abs(expected));
  return std::abs(got - expected) <= tol;
}

}  // namespace

TEST_CASE("identical roles on a driftless plant give rho = 1") {
  // A = 0 makes W~_d equal W_d, so matching input maps tie the contest.
  const Eigen::MatrixXd b = (Eigen::MatrixXd(2, 2) << 1.0, 0.5, 0.5, 2.0).finished();
  const LtiSystem sys = make_system(Eigen::MatrixXd::Zero(2, 2), b, b);
  const ResilienceResult res = resilience_index(sys, 2.0, 2.0);
  CHECK(res.rho == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(res.lambda_max == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(res.degenerate);      // every direction ties: the pencil is identity
  CHECK_FALSE(res.a_stable);  // A = 0 is only marginally stable
}

TEST_CASE("scalar system: the drift discounts the defender by exp(2|a|T)") {
  // Attack needs x1^2/W to displace; the defense target has already
  // decayed to exp(a T) x1, so its energy carries exp(2 a T). The ratio
  // is exp(-2 a T) = e^2 for a = -1, T = 1, independent of x1.
  Eigen::MatrixXd a(1, 1), b(1, 1);
  a << -1.0;
  b << 1.0;
  const LtiSystem sys = make_system(a, b, b);
  const ResilienceResult res = resilience_index(sys, 1.0, 1.0);
  CHECK(res.rho == doctest::Approx(std::exp(2.0)).epsilon(1e-9));
  CHECK(res.lambda_max == doctest::Approx(std::exp(-2.0)).epsilon(1e-9));
  for (const double x : {0.3, -2.0, 11.0}) {
    CHECK(energy_ratio_theoretical(sys, Eigen::VectorXd::Constant(1, x), 1.0, 1.0) ==
          doctest::Approx(std::exp(2.0)).epsilon(1e-9));
  }
}

TEST_CASE("pendula indices reproduce the reference table entries") {
  const LtiSystem all_all = pendula::build(
      {}, pendula::parse_pendulum_set("all"), pendula::parse_pendulum_set("all"));
  const ResilienceResult res = resilience_index(all_all, 15.0, 15.0);
  CHECK(close_table_value(res.rho, 7.32));
  CHECK(res.a_stable);
  CHECK_FALSE(res.degenerate);

  const LtiSystem left_middle = pendula::build(
      {}, pendula::parse_pendulum_set("left"), pendula::parse_pendulum_set("middle"));
  CHECK(close_table_value(resilience_index(left_middle, 15.0, 15.0).rho, 0.04));
}

TEST_CASE("x_worst attains the index and no displacement beats it") {
  const LtiSystem sys = pendula::build(
      {}, pendula::parse_pendulum_set("all"), pendula::parse_pendulum_set("all"));
  const ResilienceResult res = resilience_index(sys, 15.0, 15.0);
  REQUIRE(std::isfinite(res.rho));
  CHECK(res.x_worst.norm() == doctest::Approx(1.0));

  const double at_worst = energy_ratio_theoretical(sys, res.x_worst, 15.0, 15.0);
  CHECK(at_worst == doctest::Approx(res.rho).epsilon(1e-6));

  std::mt19937 rng(61);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::VectorXd x = testutil::random_unit_vector(6, rng);
    CHECK(energy_ratio_theoretical(sys, x, 15.0, 15.0) >= res.rho - 1e-8);
  }
}

TEST_CASE("the reported eigenvector solves the generalized pencil") {
  const LtiSystem sys = pendula::build(
      {}, pendula::parse_pendulum_set("all"), pendula::parse_pendulum_set("left"));
  const ResilienceResult res = resilience_index(sys, 15.0, 15.0);
  const Eigen::VectorXd residual =
      res.attack_gramian.w * res.eigenvector -
      res.lambda_max * res.defense_tilde.w * res.eigenvector;
  CHECK(residual.norm() <= 1e-6 * res.attack_gramian.w.norm() * res.eigenvector.norm());
  // sign convention: first component above roundoff is positive
  for (Eigen::Index i = 0; i < res.x_worst.size(); ++i) {
    if (std::abs(res.x_worst(i)) > 1e-12) {
      CHECK(res.x_worst(i) > 0.0);
      break;
    }
  }
}

TEST_CASE("input scaling moves the index quadratically") {
  const LtiSystem base = pendula::build(
      {}, pendula::parse_pendulum_set("all"), pendula::parse_pendulum_set("left"));
  const double rho = resilience_index(base, 15.0, 15.0).rho;

  LtiSystem scaled_attack = base;
  scaled_attack.b_attack *= 2.0;
  CHECK(resilience_index(scaled_attack, 15.0, 15.0).rho ==
        doctest::Approx(rho / 4.0).epsilon(1e-10));

  LtiSystem scaled_defense = base;
  scaled_defense.b_defend *= 3.0;
  CHECK(resilience_index(scaled_defense, 15.0, 15.0).rho ==
        doctest::Approx(rho * 9.0).epsilon(1e-10));
}

TEST_CASE("the index is invariant under orthogonal state changes") {
  std::mt19937 rng(62);
  const LtiSystem base = pendula::build(
      {}, pendula::parse_pendulum_set("middle"), pendula::parse_pendulum_set("all"));
  const Eigen::MatrixXd q = testutil::random_orthogonal(6, rng);
  LtiSystem rotated;
  rotated.a = q * base.a * q.transpose();
  rotated.b_attack = q * base.b_attack;
  rotated.b_defend = q * base.b_defend;
  CHECK(resilience_index(rotated, 15.0, 15.0).rho ==
        doctest::Approx(resilience_index(base, 15.0, 15.0).rho).epsilon(1e-8));
}

TEST_CASE("mirror symmetry of the chain swaps left and right exactly") {
  // With uniform damping the chain is invariant under swapping the outer
  // pendula, so configurations map onto each other under that swap.
  pendula::PendulaParams symmetric;
  symmetric.damping = {0.1, 0.1, 0.1};
  const auto rho_of = [&](const pendula::PendulaParams& p, const char* att,
                          const char* def) {
    return resilience_index(pendula::build(p, pendula::parse_pendulum_set(att),
                                           pendula::parse_pendulum_set(def)),
                            15.0, 15.0)
        .rho;
  };
  CHECK(rho_of(symmetric, "left", "right") ==
        doctest::Approx(rho_of(symmetric, "right", "left")).epsilon(1e-10));
  CHECK(rho_of(symmetric, "left", "left") ==
        doctest::Approx(rho_of(symmetric, "right", "right")).epsilon(1e-10));

  // with the reference damping, same-side and cross-side defense against
  // the left attacker still land within a couple of percent
  const pendula::PendulaParams reference;
  const double same = rho_of(reference, "left", "left");
  const double cross = rho_of(reference, "left", "right");
  CHECK(std::abs(cross - same) < 0.02 * same);
}

TEST_CASE("uncontrollable defenders are rejected with the lost dimension") {
  Eigen::MatrixXd a(2, 2);
  a << 0, 1, 0, 0;
  Eigen::MatrixXd b_ok(2, 1), b_bad(2, 1);
  b_ok << 0, 1;
  b_bad << 1, 0;
  const LtiSystem sys = make_system(a, b_ok, b_bad);
  try {
    resilience_index(sys, 1.0, 1.0);
    FAIL("expected UncontrollableError");
  } catch (const UncontrollableError& e) {
    CHECK(e.unreachable_dimension() == 1);
  }
}

TEST_CASE("an attacker with no reach gives the infinite sentinel") {
  Eigen::MatrixXd a(2, 2);
  a << -1, 0, 0, -2;
  const LtiSystem sys = make_system(a, Eigen::MatrixXd::Zero(2, 1),
                                    Eigen::MatrixXd::Identity(2, 2));
  const ResilienceResult res = resilience_index(sys, 1.0, 1.0);
  CHECK(std::isinf(res.rho));
  CHECK(res.lambda_max <= kGramianRankTolerance);
}

TEST_CASE("a repeated top eigenvalue is flagged as degenerate") {
  const LtiSystem sys = make_system(Eigen::MatrixXd::Zero(2, 2),
                                    Eigen::MatrixXd::Identity(2, 2),
                                    Eigen::MatrixXd::Identity(2, 2));
  const ResilienceResult res = resilience_index(sys, 1.0, 1.0);
  CHECK(res.degenerate);
  CHECK(res.rho == doctest::Approx(1.0));
}

TEST_CASE("lemma_check: three routes, one number") {
  SUBCASE("identical matrices") {
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(3, 3);
    const LemmaCheck check = lemma_check(id, id);
    CHECK(check.inverse_form == doctest::Approx(1.0));
    CHECK(check.direct_min_form == doctest::Approx(1.0));
    CHECK(check.reciprocal_max_form == doctest::Approx(1.0));
    CHECK(check.relation_angle < 1e-6);
  }
  SUBCASE("diagonal case solvable by enumerating axes") {
    Eigen::MatrixXd a = Eigen::Vector2d(4.0, 1.0).asDiagonal();
    const LemmaCheck check = lemma_check(a, Eigen::MatrixXd::Identity(2, 2));
    CHECK(check.inverse_form == doctest::Approx(0.25));
    CHECK(check.direct_min_form == doctest::Approx(0.25));
    CHECK(check.reciprocal_max_form == doctest::Approx(0.25));
  }
  SUBCASE("random SPD pairs") {
    std::mt19937 rng(63);
    for (int trial = 0; trial < 10; ++trial) {
      const Eigen::Index n = 2 + static_cast<Eigen::Index>(trial % 5);
      const LemmaCheck check =
          lemma_check(testutil::random_spd(n, rng), testutil::random_spd(n, rng));
      CHECK(check.direct_min_form ==
            doctest::Approx(check.inverse_form).epsilon(1e-8));
      CHECK(check.reciprocal_max_form ==
            doctest::Approx(check.inverse_form).epsilon(1e-8));
      CHECK(check.relation_angle < 1e-6);
    }
  }
  SUBCASE("rejects non-SPD input") {
    Eigen::MatrixXd indefinite(2, 2);
    indefinite << 1, 0, 0, -1;
    CHECK_THROWS_AS(lemma_check(indefinite, Eigen::MatrixXd::Identity(2, 2)),
                    NumericalError);
  }
}

TEST_CASE("sweep entries equal independent index evaluations") {
  const LtiSystem sys = pendula::build(
      {}, pendula::parse_pendulum_set("all"), pendula::parse_pendulum_set("left"));
  const std::vector<double> deltas = {2.0, 15.0};
  const auto results = sweep(sys, deltas);
  REQUIRE(results.size() == 2);
  for (std::size_t i = 0; i < results.size(); ++i) {
    CHECK(results[i].first == deltas[i]);
    CHECK(results[i].second.rho == resilience_index(sys, deltas[i], deltas[i]).rho);
  }
}

TEST_CASE("placement table reproduces the reference cross product") {
  const pendula::OptionSet options = pendula::standard_option_set();
  const Eigen::MatrixXd a = pendula::dynamics_matrix({});
  const PlacementTable table =
      placement_table(a, options.attackers, options.defenders, 15.0, 15.0);

  REQUIRE(table.rho.rows() == 4);
  REQUIRE(table.rho.cols() == 4);
  CHECK(close_table_value(table.rho(1, 3), 10.95));  // middle attacker, all defenders
  CHECK(close_table_value(table.rho(3, 3), 7.32));
  CHECK(close_table_value(table.rho(1, 1), 6.79));

  // the all-defender column dominates the single-pendulum columns row-wise
  for (Eigen::Index i = 0; i < 4; ++i) {
    for (Eigen::Index j = 0; j < 3; ++j) {
      CHECK(table.rho(i, 3) >= table.rho(i, j));
    }
    CHECK(table.best_defender[i] == 3);
  }
  // the all-attacker row undercuts every defender column
  for (Eigen::Index j = 0; j < 4; ++j) {
    CHECK(table.worst_attacker[j] == 3);
  }
}

TEST_CASE("permuting options permutes the table without changing values") {
  const pendula::OptionSet options = pendula::standard_option_set();
  const Eigen::MatrixXd a = pendula::dynamics_matrix({});
  NamedMatrices reversed_attackers(options.attackers.rbegin(), options.attackers.rend());
  const PlacementTable base =
      placement_table(a, options.attackers, options.defenders, 15.0, 15.0);
  const PlacementTable flipped =
      placement_table(a, reversed_attackers, options.defenders, 15.0, 15.0);
  for (Eigen::Index i = 0; i < 4; ++i) {
    CHECK((flipped.rho.row(i) - base.rho.row(3 - i)).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("uncontrollable defender options flag their column but keep the table") {
  Eigen::MatrixXd a(2, 2);
  a << 0, 1, 0, 0;
  NamedMatrices attackers = {{"full", Eigen::MatrixXd::Identity(2, 2)}};
  NamedMatrices defenders = {
      {"good", (Eigen::MatrixXd(2, 1) << 0, 1).finished()},
      {"bad", (Eigen::MatrixXd(2, 1) << 1, 0).finished()},
  };
  const PlacementTable table = placement_table(a, attackers, defenders, 1.0, 1.0);
  CHECK(table.defender_controllable[0]);
  CHECK_FALSE(table.defender_controllable[1]);
  CHECK(std::isfinite(table.rho(0, 0)));
  CHECK(std::isnan(table.rho(0, 1)));
  CHECK(table.best_defender[0] == 0);
  CHECK(table.worst_attacker[1] == -1);  // no usable cell in the bad column
}

TEST_CASE("horizon validation") {
  const LtiSystem sys = pendula::build(
      {}, pendula::parse_pendulum_set("all"), pendula::parse_pendulum_set("all"));
  CHECK_THROWS_AS(resilience_index(sys, 0.0, 1.0), ParseError);
  CHECK_THROWS_AS(resilience_index(sys, 1.0, -1.0), ParseError);
  CHECK_THROWS_AS(energy_ratio_theoretical(sys, Eigen::VectorXd::Zero(6), 1.0, 1.0),
                  ParseError);  // zero displacement
}
