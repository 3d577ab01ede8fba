#pragma once

#include <Eigen/Dense>

#include "resilim/gramian.hpp"

namespace resilim {

/// Fraction of |dx| allowed outside the numerically ranked range of the
/// Gramian before a transfer target counts as unreachable.
inline constexpr double kUnreachableTolerance = 1e-6;

/// Fixed-time state transfer: reach x_goal from x_start in `span` time units.
struct TransferTask {
  Eigen::VectorXd x_start;
  Eigen::VectorXd x_goal;
  double span = 0.0;
};

/// Uniformly sampled states and inputs over a time window.
struct Trajectory {
  Eigen::VectorXd times;   ///< samples+1 instants, uniform spacing
  Eigen::MatrixXd states;  ///< n x (samples+1), column per instant
  Eigen::MatrixXd inputs;  ///< m x (samples+1)
  double energy = 0.0;     ///< integral of |u|^2 over the window

  double dt() const { return times.size() > 1 ? times(1) - times(0) : 0.0; }
};

struct MinEnergy {
  double value = 0.0;            ///< dx^T W^{-1} dx
  bool target_reachable = true;  ///< false when dx leaves the range of W
};

/// Controlled part of the transfer: dx = x_goal - exp(A span) x_start.
Eigen::VectorXd delta_x(const TransferTask& task, const Eigen::MatrixXd& a);

/// Minimum input energy for the task, via a linear solve against the
/// full-rank Gramian or the extended inverse otherwise. A target outside
/// the reachable subspace is flagged, with the (big-M sized) extended
/// energy still reported.
MinEnergy optimal_energy(const TransferTask& task, const Gramian& g,
                         const Eigen::MatrixXd& a);

/// Minimum-energy open-loop control
///   u*(t) = B^T exp(A^T (t1 - t)) W^{-1} dx
/// sampled on a uniform grid of `samples` intervals, with the state
/// trajectory integrated alongside. Throws UnreachableError when the
/// target leaves the reachable subspace.
Trajectory optimal_control(const TransferTask& task, const Gramian& g,
                           const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                           int samples = 2000);

/// Composite Simpson quadrature of |u(t)|^2 over a uniform grid
/// (trapezoid on the leftover segment when the count is odd).
double integrate_energy(const Eigen::MatrixXd& inputs, double dt);

}  // namespace resilim
