#pragma once

#include <Eigen/Dense>

namespace resilim {

/// Relative eigenvalue cutoff separating the controllable part of a
/// Gramian spectrum from its numerical null space.
inline constexpr double kGramianRankTolerance = 1e-9;

/// Finite-horizon controllability Gramian together with its spectral
/// decomposition. The matrix is symmetrized on construction and
/// eigenvalues within roundoff of zero are clamped to zero.
struct Gramian {
  Eigen::MatrixXd w;             ///< symmetric PSD n x n
  double horizon = 0.0;          ///< span of the integration window, +inf for the Lyapunov limit
  Eigen::VectorXd eigenvalues;   ///< nonincreasing, >= 0
  Eigen::MatrixXd eigenvectors;  ///< orthogonal, columns ordered like eigenvalues
  Eigen::Index numerical_rank = 0;

  Eigen::Index n() const { return w.rows(); }
  bool full_rank() const { return numerical_rank == w.rows(); }

  /// Symmetrize, decompose and rank a raw Gramian matrix.
  static Gramian from_matrix(const Eigen::MatrixXd& w, double horizon,
                             double rank_tolerance = kGramianRankTolerance);
};

/// Spectral inverse that maps null-space directions to a very large
/// number M instead of dropping them: reaching an uncontrollable
/// direction costs enormous (but finite) energy.
struct ExtendedInverse {
  Eigen::MatrixXd basis;                ///< eigenvectors of the Gramian
  Eigen::VectorXd inverse_eigenvalues;  ///< 1/lambda_i on the range, M on the null space
  double big_m = 0.0;

  /// W^{-1} x in the extended sense.
  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
  /// x^T W^{-1} x in the extended sense.
  double quadratic_form(const Eigen::VectorXd& x) const;
};

/// Step count heuristic for the Gramian integrator: at least 2000 steps
/// and at least 200 per characteristic time of `a` over the horizon.
int default_gramian_steps(const Eigen::MatrixXd& a, double horizon);

/// Controllability Gramian over a window of length `horizon`, integrating
///   dW/dt = A W + W A^T + B B^T,  W(0) = 0
/// with fixed-step classical RK4. steps <= 0 selects the default count.
Gramian gramian(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                double horizon, int steps = 0);

/// Steady-state Gramian solving A W + W A^T = -B B^T for stable `a`,
/// via the vectorized dense linear system. Horizon is recorded as +inf.
Gramian gramian_infinite(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

/// Defender Gramian pulled back through the free drift over the defense
/// window: E W_d E^T with E = exp(-span * A). Its inverse prices the
/// defender's minimum restoration energy from a displacement at the
/// start of the window.
Gramian defender_tilde_gramian(const Eigen::MatrixXd& a, const Gramian& w_d,
                               double defense_span);

/// big_m <= 0 selects the default 1e12 / lambda_max.
ExtendedInverse extended_inverse(const Gramian& g, double big_m = 0.0);

/// exp(a * t) by scaling-and-squaring with Pade approximation.
Eigen::MatrixXd matrix_exponential(const Eigen::MatrixXd& a, double t);

}  // namespace resilim
