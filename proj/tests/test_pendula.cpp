#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "helpers.hpp"
#include "resilim/errors.hpp"
#include "resilim/gramian.hpp"
#include "resilim/model.hpp"
#include "resilim/pendula.hpp"

using namespace resilim;
using pendula::parse_pendulum_set;
using pendula::PendulaParams;
using pendula::Pendulum;
using pendula::PendulumSet;

TEST_CASE("parameter validation rejects non-positive values") {
  PendulaParams params;
  params.mass = 0.0;
  CHECK_THROWS_AS(params.validate(), ParseError);
  params = {};
  params.damping[2] = -0.1;
  CHECK_THROWS_AS(params.validate(), ParseError);
  CHECK_NOTHROW(PendulaParams{}.validate());
}

TEST_CASE("selector parsing") {
  const PendulumSet left = {Pendulum::left};
  const PendulumSet outer = {Pendulum::left, Pendulum::right};
  const PendulumSet all = {Pendulum::left, Pendulum::middle, Pendulum::right};
  CHECK(parse_pendulum_set("left") == left);
  CHECK(parse_pendulum_set("right+left") == outer);
  CHECK(parse_pendulum_set("left+left") == left);
  CHECK(parse_pendulum_set("all") == all);
  CHECK(parse_pendulum_set("left+middle+right") == parse_pendulum_set("all"));
  CHECK_THROWS_AS(parse_pendulum_set("center"), ParseError);
  CHECK_THROWS_AS(parse_pendulum_set(""), ParseError);

  CHECK(pendula::to_string(parse_pendulum_set("right+left")) == "left+right");
  CHECK(pendula::to_string(parse_pendulum_set("middle+left+right")) == "all");
  CHECK(pendula::to_string(parse_pendulum_set("middle")) == "middle");
}

TEST_CASE("dynamics matrix entries at the default parameters") {
  const Eigen::MatrixXd a = pendula::dynamics_matrix({});
  REQUIRE(a.rows() == 6);
  REQUIRE(a.cols() == 6);
  // kinematic half: d(theta)/dt = dtheta
  CHECK(a.topLeftCorner(3, 3).isZero(0.0));
  CHECK(a.topRightCorner(3, 3).isIdentity(0.0));
  // gravity + one spring on the outer pendula, two springs in the middle
  CHECK(a(3, 0) == doctest::Approx(-20.0));
  CHECK(a(3, 1) == doctest::Approx(10.0));
  CHECK(a(3, 2) == 0.0);  // no spring between the outer pair
  CHECK(a(4, 1) == doctest::Approx(-30.0));
  CHECK(a(4, 0) == doctest::Approx(10.0));
  CHECK(a(4, 2) == doctest::Approx(10.0));
  CHECK(a(5, 2) == doctest::Approx(-20.0));
  // per-pendulum damping on the velocity diagonal
  CHECK(a(3, 3) == doctest::Approx(-0.1));
  CHECK(a(4, 4) == doctest::Approx(-0.1));
  CHECK(a(5, 5) == doctest::Approx(-0.3));
  CHECK(a(3, 4) == 0.0);
}

TEST_CASE("zero coupling decouples the pendula") {
  PendulaParams params;
  params.spring = 1e-300;  // effectively uncoupled but still valid
  const Eigen::MatrixXd a = pendula::dynamics_matrix(params);
  CHECK(a(3, 1) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(a(4, 0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(a(3, 0) == doctest::Approx(-10.0));  // only gravity remains
}

TEST_CASE("input matrices carry the lever-arm coefficients") {
  PendulaParams params;
  params.mass = 2.0;
  params.length = 3.0;
  const Eigen::MatrixXd b_att =
      pendula::attack_matrix(params, parse_pendulum_set("middle"));
  REQUIRE(b_att.rows() == 6);
  REQUIRE(b_att.cols() == 1);
  CHECK(b_att(4, 0) == doctest::Approx(1.0 / 6.0));  // 1/(m l)
  CHECK(b_att.norm() == doctest::Approx(1.0 / 6.0));

  const Eigen::MatrixXd b_def =
      pendula::defend_matrix(params, parse_pendulum_set("left+right"));
  REQUIRE(b_def.cols() == 2);
  CHECK(b_def(3, 0) == doctest::Approx(1.0 / 18.0));  // 1/(m l^2)
  CHECK(b_def(5, 1) == doctest::Approx(1.0 / 18.0));
  CHECK(b_def(4, 0) == 0.0);
  CHECK(b_def(4, 1) == 0.0);
}

TEST_CASE("assembled benchmark system") {
  const LtiSystem sys = pendula::build({}, parse_pendulum_set("all"),
                                       parse_pendulum_set("left"));
  const std::vector<std::string> expected_labels = {
      "theta_1", "theta_2", "theta_3", "dtheta_1", "dtheta_2", "dtheta_3"};
  CHECK(sys.labels == expected_labels);
  CHECK(sys.b_attack.cols() == 3);
  CHECK(sys.b_defend.cols() == 1);
  CHECK(is_stable(sys.a).stable);
  CHECK(characteristic_time(sys.a) == doctest::Approx(15.0).epsilon(1e-3));
}

TEST_CASE("a single middle actuator reaches the whole state space") {
  const LtiSystem sys = pendula::build({}, parse_pendulum_set("middle"),
                                       parse_pendulum_set("middle"));
  const ControllabilityReport report = controllability(sys.a, sys.b_attack);
  CHECK(report.numerical_rank == 6);
  CHECK(report.is_controllable);
}

TEST_CASE("standard option set lists the four placements for both roles") {
  const pendula::OptionSet options = pendula::standard_option_set();
  REQUIRE(options.attackers.size() == 4);
  REQUIRE(options.defenders.size() == 4);
  const std::vector<std::string> expected = {"left", "middle", "right", "all"};
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(options.attackers[i].first == expected[i]);
    CHECK(options.defenders[i].first == expected[i]);
  }
  // default params: attack coefficient 1/(m l) = 1, defend 1/(m l^2) = 1
  CHECK(options.attackers[3].second.isApprox(
      pendula::attack_matrix({}, parse_pendulum_set("all")), 0.0));
  CHECK(options.defenders[0].second(3, 0) == doctest::Approx(1.0));
}

TEST_CASE("free motion dissipates the physical energy") {
  const PendulaParams p;
  const Eigen::MatrixXd a = pendula::dynamics_matrix(p);
  const auto energy = [&](const Eigen::VectorXd& x) {
    const auto theta = x.head(3);
    const auto dtheta = x.tail(3);
    double e = 0.5 * p.mass * p.length * p.length * dtheta.squaredNorm() +
               0.5 * p.mass * p.gravity * p.length * theta.squaredNorm();
    e += 0.5 * p.spring * p.length * p.length *
         (std::pow(theta(0) - theta(1), 2) + std::pow(theta(1) - theta(2), 2));
    return e;
  };

  Eigen::VectorXd x(6);
  x << 0.4, -0.2, 0.1, 0.0, 0.5, -0.3;
  const Eigen::MatrixXd step = matrix_exponential(a, 0.05);
  double previous = energy(x);
  for (int k = 0; k < 200; ++k) {
    x = step * x;
    const double current = energy(x);
    CHECK(current <= previous + 1e-12 * previous);
    previous = current;
  }
  // light damping: after 10 s roughly a quarter of the energy remains
  CHECK(previous < 0.3 * energy((Eigen::VectorXd(6) << 0.4, -0.2, 0.1, 0.0, 0.5, -0.3).finished()));
}
