#pragma once

#include <array>
#include <string>
#include <vector>

#include "resilim/model.hpp"
#include "resilim/resilience.hpp"

namespace resilim::pendula {

/// Three pendula on a line, coupled by springs between neighbours.
/// Attack forces act on the masses, defender torques on the bases.
struct PendulaParams {
  double mass = 1.0;      ///< kg
  double length = 1.0;    ///< m
  double spring = 10.0;   ///< N/m
  double gravity = 10.0;  ///< m/s^2
  std::array<double, 3> damping = {0.1, 0.1, 0.3};  ///< 1/s, per pendulum

  void validate() const;  ///< all parameters must be positive
};

enum class Pendulum : int { left = 0, middle = 1, right = 2 };

using PendulumSet = std::vector<Pendulum>;

/// Parse "left", "middle", "right", "all", or a '+'-joined combination.
PendulumSet parse_pendulum_set(const std::string& text);
std::string to_string(const PendulumSet& set);

/// Linearized dynamics with state [theta_1..3, dtheta_1..3].
Eigen::MatrixXd dynamics_matrix(const PendulaParams& params);

/// Attacker force columns: 1/(m l) into the velocity row of each
/// selected pendulum.
Eigen::MatrixXd attack_matrix(const PendulaParams& params, const PendulumSet& set);

/// Defender torque columns: 1/(m l^2) into the velocity row of each
/// selected pendulum.
Eigen::MatrixXd defend_matrix(const PendulaParams& params, const PendulumSet& set);

/// Assemble the benchmark system for one attacker/defender selection.
LtiSystem build(const PendulaParams& params, const PendulumSet& attacker,
                const PendulumSet& defender);

/// The four per-side input options (left, middle, right, all) for both roles.
struct OptionSet {
  NamedMatrices attackers;
  NamedMatrices defenders;
};

OptionSet standard_option_set(const PendulaParams& params = {});

}  // namespace resilim::pendula
