#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "resilim/gramian.hpp"
#include "resilim/model.hpp"

namespace resilim {

/// Resilience index of an attack/defense window pair, computed from the
/// generalized eigenvalue problem W_a x = lambda W~_d x.
///
/// rho = 1/lambda_max is the worst-case ratio of attacker energy (to
/// create a displacement) over defender energy (to restore it). x_worst
/// is the displacement attaining that ratio; it relates to the
/// attaining generalized eigenvector v by x_worst ~ W~_d v.
struct ResilienceResult {
  double rho = 0.0;         ///< +inf when the attacker cannot move the system
  double lambda_max = 0.0;
  Eigen::VectorXd x_worst;      ///< unit norm, first nonzero component positive
  Eigen::VectorXd eigenvector;  ///< attaining generalized eigenvector, unit norm
  double attack_horizon = 0.0;
  double defense_horizon = 0.0;
  bool degenerate = false;   ///< lambda_max numerically multiple; x_worst is one of many
  bool a_stable = true;      ///< false: index evaluated mechanically for unstable A
  Gramian attack_gramian;
  Gramian defense_tilde;     ///< W~_d, the denominator quadratic form
};

/// Cross product of resilience indices over named attacker/defender
/// input-matrix options.
struct PlacementTable {
  std::vector<std::string> attacker_names;
  std::vector<std::string> defender_names;
  Eigen::MatrixXd rho;  ///< row = attacker, col = defender; NaN for flagged cells
  std::vector<bool> defender_controllable;       ///< per column
  std::vector<Eigen::Index> best_defender;       ///< argmax_j rho(i, j) per attacker row
  std::vector<Eigen::Index> worst_attacker;      ///< argmin_i rho(i, j) per defender column
};

/// Three independent routes to the same extremal Rayleigh quotient of an
/// SPD pair, plus the residual angle of the minimizer relation
/// x_l = B x_mr between the inverse-form and direct-form optimizers.
struct LemmaCheck {
  double inverse_form = 0.0;        ///< min x^T A^{-1} x / x^T B^{-1} x
  double direct_min_form = 0.0;     ///< min x^T B x / x^T A x
  double reciprocal_max_form = 0.0; ///< (max x^T A x / x^T B x)^{-1}
  double relation_angle = 0.0;      ///< angle between x_l and B x_mr, radians
};

using NamedMatrices = std::vector<std::pair<std::string, Eigen::MatrixXd>>;

/// Resilience index rho(t0, t1, t2) with attack window t1-t0 and defense
/// window t2-t1. Requires a controllable defender pair; the attack pair
/// may be uncontrollable (the inversion-free route never inverts W_a).
/// steps <= 0 selects the default Gramian integrator resolution.
ResilienceResult resilience_index(const LtiSystem& sys, double attack_horizon,
                                  double defense_horizon, int steps = 0);

/// Energy ratio (x1^T W_a^{-1} x1)/(x1^T W~_d^{-1} x1) for a specific
/// displacement x1, extended inverses applied where a Gramian is rank
/// deficient. Minimized by x_worst, where it equals rho.
double energy_ratio_theoretical(const LtiSystem& sys, const Eigen::VectorXd& x1,
                                double attack_horizon, double defense_horizon,
                                int steps = 0);

LemmaCheck lemma_check(const Eigen::MatrixXd& a_spd, const Eigen::MatrixXd& b_spd);

/// rho(0, dt, 2*dt) for each entry of `horizons` (attack span == defense
/// span == dt). Entries are computed independently.
std::vector<std::pair<double, ResilienceResult>> sweep(
    const LtiSystem& sys, const std::vector<double>& horizons, int steps = 0);

/// Full attacker x defender cross product of resilience indices.
/// Cells whose defender pair is uncontrollable are flagged and reported
/// as NaN; the table is still produced.
PlacementTable placement_table(const Eigen::MatrixXd& a,
                               const NamedMatrices& attacker_options,
                               const NamedMatrices& defender_options,
                               double attack_horizon, double defense_horizon,
                               int steps = 0);

}  // namespace resilim
