#include "resilim/pendula.hpp"

#include <algorithm>
#include <sstream>

#include "resilim/errors.hpp"

namespace resilim::pendula {

namespace {

constexpr int kCount = 3;

Eigen::MatrixXd input_matrix(double coefficient, const PendulumSet& set) {
  if (set.empty()) {
    throw ParseError("pendulum selection must not be empty");
  }
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(2 * kCount, static_cast<int>(set.size()));
  for (std::size_t col = 0; col < set.size(); ++col) {
    b(kCount + static_cast<int>(set[col]), static_cast<int>(col)) = coefficient;
  }
  return b;
}

}  // namespace

void PendulaParams::validate() const {
  if (!(mass > 0.0) || !(length > 0.0) || !(spring > 0.0) || !(gravity > 0.0)) {
    throw ParseError("pendula parameters must be positive");
  }
  for (const double d : damping) {
    if (!(d > 0.0)) {
      throw ParseError("pendula damping coefficients must be positive");
    }
  }
}

PendulumSet parse_pendulum_set(const std::string& text) {
  PendulumSet set;
  std::stringstream stream(text);
  std::string token;
  while (std::getline(stream, token, '+')) {
    if (token == "left") {
      set.push_back(Pendulum::left);
    } else if (token == "middle") {
      set.push_back(Pendulum::middle);
    } else if (token == "right") {
      set.push_back(Pendulum::right);
    } else if (token == "all") {
      set = {Pendulum::left, Pendulum::middle, Pendulum::right};
    } else {
      throw ParseError("unknown pendulum selector '" + token +
                       "' (expected left, middle, right, all, or a '+'-joined set)");
    }
  }
  // Canonical order, duplicates collapsed: the set names a subset, not a
  // column sequence.
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  if (set.empty()) {
    throw ParseError("pendulum selection must not be empty");
  }
  return set;
}

std::string to_string(const PendulumSet& set) {
  if (set.size() == kCount) {
    return "all";
  }
  static const char* const names[] = {"left", "middle", "right"};
  std::string out;
  for (const Pendulum p : set) {
    if (!out.empty()) {
      out += '+';
    }
    out += names[static_cast<int>(p)];
  }
  return out;
}

Eigen::MatrixXd dynamics_matrix(const PendulaParams& params) {
  params.validate();
  const double m = params.mass;
  const double l = params.length;
  // Linearized torque balance per pendulum:
  //   m l dd(theta_i) = -m g theta_i - sum_j k l (theta_i - theta_j)
  //                     - d_i d(theta_i) + inputs,
  // neighbours j along the 1-2-3 chain.
  Eigen::Matrix3d chain;
  chain << 1, -1, 0,
          -1, 2, -1,
           0, -1, 1;
  const Eigen::Matrix3d stiffness = -(params.gravity / l) * Eigen::Matrix3d::Identity()
                                    - (params.spring / m) * chain;
  Eigen::Vector3d damping(params.damping[0], params.damping[1], params.damping[2]);
  const Eigen::Matrix3d friction = (-damping / (m * l)).asDiagonal();

  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2 * kCount, 2 * kCount);
  a.topRightCorner(kCount, kCount).setIdentity();
  a.bottomLeftCorner(kCount, kCount) = stiffness;
  a.bottomRightCorner(kCount, kCount) = friction;
  return a;
}

Eigen::MatrixXd attack_matrix(const PendulaParams& params, const PendulumSet& set) {
  params.validate();
  // Forces F_i on the masses enter as F_i / (m l).
  return input_matrix(1.0 / (params.mass * params.length), set);
}

Eigen::MatrixXd defend_matrix(const PendulaParams& params, const PendulumSet& set) {
  params.validate();
  // Torques tau_i at the pivots enter as tau_i / (m l^2).
  return input_matrix(1.0 / (params.mass * params.length * params.length), set);
}

LtiSystem build(const PendulaParams& params, const PendulumSet& attacker,
                const PendulumSet& defender) {
  LtiSystem sys;
  sys.a = dynamics_matrix(params);
  sys.b_attack = attack_matrix(params, attacker);
  sys.b_defend = defend_matrix(params, defender);
  sys.labels = {"theta_1", "theta_2", "theta_3",
                "dtheta_1", "dtheta_2", "dtheta_3"};
  sys.validate();
  return sys;
}

OptionSet standard_option_set(const PendulaParams& params) {
  static const std::pair<const char*, PendulumSet> kOptions[] = {
      {"left", {Pendulum::left}},
      {"middle", {Pendulum::middle}},
      {"right", {Pendulum::right}},
      {"all", {Pendulum::left, Pendulum::middle, Pendulum::right}},
  };
  OptionSet set;
  for (const auto& [name, pendula] : kOptions) {
    set.attackers.emplace_back(name, attack_matrix(params, pendula));
    set.defenders.emplace_back(name, defend_matrix(params, pendula));
  }
  return set;
}

}  // namespace resilim::pendula
