#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>

#include "resilim/minenergy.hpp"
#include "resilim/model.hpp"
#include "resilim/resilience.hpp"

namespace resilim {

enum class EpisodeKind {
  min_energy,   ///< open-loop minimum-energy attack, then minimum-energy restoration
  lq_feedback,  ///< minimum-energy attack against an always-on LQ state feedback
};

/// One simulated attack/defense episode with measured energies set
/// against the theoretical index.
struct ScenarioReport {
  EpisodeKind kind = EpisodeKind::min_energy;
  Trajectory attack_trajectory;   ///< attack window; inputs are u_a
  Trajectory defense_trajectory;  ///< restoration window (min_energy) or the
                                  ///< whole episode (lq_feedback); inputs are u_d
  double attack_energy = 0.0;
  double defense_energy = 0.0;
  double measured_ratio = 0.0;    ///< attack_energy / defense_energy
  bool ratio_defined = true;      ///< false for the zero-scale episode
  double theoretical_rho = 0.0;
  double terminal_error = 0.0;    ///< |x(end) - x0|
  double attack_horizon = 0.0;
  double defense_horizon = 0.0;   ///< observation tail for lq_feedback
};

/// Continuous LQ state feedback u_d = -K x.
struct LqController {
  Eigen::MatrixXd gain;      ///< m_d x n
  Eigen::MatrixXd q_weight;
  Eigen::MatrixXd r_weight;
  Eigen::MatrixXd p_matrix;  ///< Riccati solution, Lyapunov certificate of the loop
  double closed_loop_abscissa = 0.0;
  std::string note;          ///< non-empty for degenerate designs (e.g. zero input map)
};

/// Phase 1: minimum-energy attack from the origin to
/// scale * x_worst over the attack window, defender idle. Phase 2:
/// minimum-energy restoration back to the origin, attacker idle. The
/// restoration starts from the state the attack actually reached.
ScenarioReport run_min_energy_episode(const LtiSystem& sys, double x_worst_scale,
                                      double attack_horizon, double defense_horizon,
                                      int samples = 2000);

/// Solve the continuous algebraic Riccati equation by Newton-Kleinman
/// iteration (zero initial gain; requires stable A or a stabilizable
/// pair reachable from it). Throws NumericalError on non-convergence.
LqController design_lqr(const LtiSystem& sys, const Eigen::MatrixXd& q_weight,
                        const Eigen::MatrixXd& r_weight);

/// Scale factor r such that design_lqr(sys, I, r*I) yields a closed loop
/// whose characteristic time matches `target_time`. Bisection on a
/// bracketing log-range; throws NumericalError when no bracket exists.
double calibrate_lqr_scale(const LtiSystem& sys, double target_time,
                           double relative_tolerance = 1e-3);

/// Minimum-energy attack designed against the closed loop A - B_d K,
/// reaching the worst-case displacement at the attack horizon while the
/// LQ feedback stays active through `observe_until`. Defense energy
/// integrates |K x|^2 over the whole window. theoretical_rho is the
/// closed-loop index for the same windows.
ScenarioReport run_lq_episode(const LtiSystem& sys, const LqController& controller,
                              double attack_horizon, double observe_until,
                              int samples = 4000);

/// Spearman rank correlation (average ranks on ties).
double ranking_agreement(const std::vector<double>& measured_ratios,
                         const std::vector<double>& indices);
double ranking_agreement(const std::vector<ScenarioReport>& reports,
                         const std::vector<ResilienceResult>& indices);

/// Episode CSV: t, states, attacker inputs, defender inputs, phase label.
/// Reproduces the data behind trajectory plots.
void write_episode_csv(std::ostream& out, const ScenarioReport& report,
                       const LtiSystem& sys, int precision = 6);

}  // namespace resilim
