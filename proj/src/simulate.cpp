#include "resilim/simulate.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <ostream>
#include <vector>

#include "resilim/errors.hpp"
#include "resilim/gramian.hpp"

namespace resilim {

namespace {

// Solve A^T P + P A = -S for symmetric S via the vectorized dense
// system (I (x) A^T + A^T (x) I) vec(P) = -vec(S). Fine for the small
// state dimensions this library targets.
Eigen::MatrixXd lyapunov_dual(const Eigen::MatrixXd& a, const Eigen::MatrixXd& s) {
  const Eigen::Index n = a.rows();
  const Eigen::MatrixXd at = a.transpose();
  Eigen::MatrixXd big = Eigen::MatrixXd::Zero(n * n, n * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    big.block(i * n, i * n, n, n) = at;  // I (x) A^T
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index k = 0; k < n; ++k) {
        big(j * n + k, i * n + k) += at(j, i);  // A^T (x) I
      }
    }
  }
  const Eigen::VectorXd rhs = -Eigen::Map<const Eigen::VectorXd>(s.data(), n * n);
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(big);
  const Eigen::VectorXd vec_p = lu.solve(rhs);
  if (!vec_p.allFinite()) {
    throw NumericalError("Lyapunov solve produced non-finite entries");
  }
  Eigen::MatrixXd p = Eigen::Map<const Eigen::MatrixXd>(vec_p.data(), n, n);
  return 0.5 * (p + p.transpose());
}

// Free drift x' = a x sampled on `intervals` uniform steps, RK4 with
// fixed substeps to match the controlled-phase integrator.
Eigen::MatrixXd drift_states(const Eigen::MatrixXd& a, const Eigen::VectorXd& x0,
                             double span, int intervals) {
  const Eigen::Index n = a.rows();
  Eigen::MatrixXd states(n, intervals + 1);
  Eigen::VectorXd x = x0;
  states.col(0) = x;
  const double dt = span / intervals;
  constexpr int kSubsteps = 4;
  const double h = dt / kSubsteps;
  for (int k = 0; k < intervals; ++k) {
    for (int s = 0; s < kSubsteps; ++s) {
      const Eigen::VectorXd k1 = a * x;
      const Eigen::VectorXd k2 = a * (x + 0.5 * h * k1);
      const Eigen::VectorXd k3 = a * (x + 0.5 * h * k2);
      const Eigen::VectorXd k4 = a * (x + h * k3);
      x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    states.col(k + 1) = x;
  }
  if (!states.allFinite()) {
    throw NumericalError("free-drift integration diverged");
  }
  return states;
}

std::vector<double> average_ranks(const std::vector<double>& values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return values[i] < values[j]; });
  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) {
      ++j;
    }
    const double shared = 0.5 * static_cast<double>(i + j) + 1.0;  // average rank
    for (std::size_t k = i; k <= j; ++k) {
      ranks[order[k]] = shared;
    }
    i = j + 1;
  }
  return ranks;
}

void append_csv_row(std::ostream& out, double t, const Eigen::VectorXd& x,
                    const Eigen::VectorXd& ua, const Eigen::VectorXd& ud,
                    const char* phase) {
  out << t;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    out << ',' << x(i);
  }
  for (Eigen::Index i = 0; i < ua.size(); ++i) {
    out << ',' << ua(i);
  }
  for (Eigen::Index i = 0; i < ud.size(); ++i) {
    out << ',' << ud(i);
  }
  out << ',' << phase << '\n';
}

}  // namespace

ScenarioReport run_min_energy_episode(const LtiSystem& sys, double x_worst_scale,
                                      double attack_horizon, double defense_horizon,
                                      int samples) {
  if (!std::isfinite(x_worst_scale)) {
    throw ParseError("x_worst_scale must be finite");
  }
  const ResilienceResult index =
      resilience_index(sys, attack_horizon, defense_horizon);

  ScenarioReport report;
  report.kind = EpisodeKind::min_energy;
  report.theoretical_rho = index.rho;
  report.attack_horizon = attack_horizon;
  report.defense_horizon = defense_horizon;

  // Phase 1: attacker drives 0 -> scale * x_worst, defender idle.
  TransferTask attack_task;
  attack_task.x_start = Eigen::VectorXd::Zero(sys.n());
  attack_task.x_goal = x_worst_scale * index.x_worst;
  attack_task.span = attack_horizon;
  report.attack_trajectory = optimal_control(attack_task, index.attack_gramian,
                                             sys.a, sys.b_attack, samples);
  report.attack_energy = report.attack_trajectory.energy;

  // Phase 2: defender restores the state the attack actually reached
  // (exact handoff), attacker idle.
  TransferTask defense_task;
  defense_task.x_start = report.attack_trajectory.states.col(samples);
  defense_task.x_goal = Eigen::VectorXd::Zero(sys.n());
  defense_task.span = defense_horizon;
  const Gramian w_d = gramian(sys.a, sys.b_defend, defense_horizon);
  report.defense_trajectory =
      optimal_control(defense_task, w_d, sys.a, sys.b_defend, samples);
  report.defense_energy = report.defense_trajectory.energy;

  report.terminal_error = report.defense_trajectory.states.col(samples).norm();
  report.ratio_defined = report.defense_energy > 0.0;
  report.measured_ratio =
      report.ratio_defined ? report.attack_energy / report.defense_energy
                           : std::numeric_limits<double>::quiet_NaN();
  return report;
}

LqController design_lqr(const LtiSystem& sys, const Eigen::MatrixXd& q_weight,
                        const Eigen::MatrixXd& r_weight) {
  sys.validate();
  const Eigen::Index n = sys.n();
  const Eigen::Index m = sys.defend_inputs();
  if (q_weight.rows() != n || q_weight.cols() != n) {
    throw ParseError("Q must be n x n");
  }
  if (r_weight.rows() != m || r_weight.cols() != m) {
    throw ParseError("R must be m_d x m_d");
  }
  if ((q_weight - q_weight.transpose()).norm() > 1e-10 * std::max(1.0, q_weight.norm()) ||
      (r_weight - r_weight.transpose()).norm() > 1e-10 * std::max(1.0, r_weight.norm())) {
    throw ParseError("Q and R must be symmetric");
  }
  Eigen::LLT<Eigen::MatrixXd> r_chol(r_weight);
  if (r_chol.info() != Eigen::Success) {
    throw ParseError("R must be positive definite");
  }

  LqController controller;
  controller.q_weight = q_weight;
  controller.r_weight = r_weight;

  const bool a_stable = is_stable(sys.a).stable;
  if (sys.b_defend.norm() == 0.0) {
    // Nothing to actuate. Stable A keeps the loop well-defined: K = 0.
    if (!a_stable) {
      throw NumericalError("zero defender input map with unstable A is not stabilizable");
    }
    controller.gain = Eigen::MatrixXd::Zero(m, n);
    controller.p_matrix = lyapunov_dual(sys.a, q_weight);
    controller.closed_loop_abscissa = is_stable(sys.a).spectral_abscissa;
    controller.note = "zero defender input map: feedback disabled, K = 0";
    return controller;
  }
  if (!a_stable) {
    throw NumericalError(
        "Newton-Kleinman iteration is seeded with zero gain and needs a stable A");
  }

  // Newton-Kleinman: K_0 = 0; P_k solves the Lyapunov equation of the
  // current loop, K_{k+1} = R^{-1} B_d^T P_k. Quadratic convergence from
  // any stabilizing seed.
  Eigen::MatrixXd k_gain = Eigen::MatrixXd::Zero(m, n);
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  bool converged = false;
  for (int iteration = 0; iteration < 100; ++iteration) {
    const Eigen::MatrixXd a_loop = sys.a - sys.b_defend * k_gain;
    const Eigen::MatrixXd s = q_weight + k_gain.transpose() * r_weight * k_gain;
    const Eigen::MatrixXd p_next = lyapunov_dual(a_loop, s);
    const double delta = (p_next - p).norm();
    p = p_next;
    k_gain = r_chol.solve(sys.b_defend.transpose() * p);
    if (delta <= 1e-12 * std::max(1.0, p.norm())) {
      converged = true;
      break;
    }
  }
  const Eigen::MatrixXd residual = sys.a.transpose() * p + p * sys.a -
                                   p * sys.b_defend * r_chol.solve(sys.b_defend.transpose() * p) +
                                   q_weight;
  if (!converged || residual.norm() > 1e-8 * std::max(1.0, q_weight.norm())) {
    throw NumericalError("Riccati iteration did not converge to the required residual");
  }

  controller.gain = k_gain;
  controller.p_matrix = p;
  controller.closed_loop_abscissa =
      is_stable(sys.a - sys.b_defend * k_gain).spectral_abscissa;
  return controller;
}

double calibrate_lqr_scale(const LtiSystem& sys, double target_time,
                           double relative_tolerance) {
  if (!(target_time > 0.0) || !std::isfinite(target_time)) {
    throw ParseError("target closed-loop time must be positive and finite");
  }
  const Eigen::Index n = sys.n();
  const Eigen::MatrixXd q = Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd r0 =
      Eigen::MatrixXd::Identity(sys.defend_inputs(), sys.defend_inputs());

  const auto loop_time = [&](double log_r) {
    const LqController c = design_lqr(sys, q, std::pow(10.0, log_r) * r0);
    return characteristic_time(sys.a - sys.b_defend * c.gain);
  };

  // Cheap control (small r) gives an aggressive loop (small T); expensive
  // control approaches the open loop. Scan for a bracket, then bisect.
  double lo = -6.0, hi = 6.0;
  double t_lo = loop_time(lo), t_hi = loop_time(hi);
  if (!((t_lo - target_time) * (t_hi - target_time) < 0.0)) {
    throw NumericalError("target closed-loop time is outside the reachable range");
  }
  for (int iteration = 0; iteration < 200; ++iteration) {
    const double mid = 0.5 * (lo + hi);
    const double t_mid = loop_time(mid);
    if (std::abs(t_mid - target_time) <= relative_tolerance * target_time) {
      return std::pow(10.0, mid);
    }
    if ((t_mid - target_time) * (t_lo - target_time) < 0.0) {
      hi = mid;
      t_hi = t_mid;
    } else {
      lo = mid;
      t_lo = t_mid;
    }
  }
  throw NumericalError("closed-loop time calibration did not converge");
}

ScenarioReport run_lq_episode(const LtiSystem& sys, const LqController& controller,
                              double attack_horizon, double observe_until,
                              int samples) {
  sys.validate();
  if (!(observe_until > attack_horizon)) {
    throw ParseError("observe_until must exceed the attack horizon");
  }
  if (samples < 8) {
    throw ParseError("lq episode needs at least 8 sample intervals");
  }
  if (controller.gain.rows() != sys.defend_inputs() ||
      controller.gain.cols() != sys.n()) {
    throw ParseError("controller gain dimensions do not match the system");
  }
  const Eigen::MatrixXd a_cl = sys.a - sys.b_defend * controller.gain;
  if (!is_stable(a_cl).stable) {
    throw ParseError("controller does not stabilize the system");
  }

  // The attacker knows the control law: everything below runs on the
  // closed-loop matrix, including the index the episode is scored against.
  LtiSystem closed = sys;
  closed.a = a_cl;
  const double tail = observe_until - attack_horizon;
  const ResilienceResult index = resilience_index(closed, attack_horizon, tail);

  ScenarioReport report;
  report.kind = EpisodeKind::lq_feedback;
  report.theoretical_rho = index.rho;
  report.attack_horizon = attack_horizon;
  report.defense_horizon = tail;

  int attack_samples = static_cast<int>(
      std::lround(samples * attack_horizon / observe_until));
  attack_samples = std::clamp(attack_samples, 2, samples - 2);
  const int tail_samples = samples - attack_samples;

  // Phase 1: minimum-energy attack against A_cl, LQ feedback absorbed in
  // the drift. Phase 2: free closed loop.
  TransferTask attack_task;
  attack_task.x_start = Eigen::VectorXd::Zero(sys.n());
  attack_task.x_goal = index.x_worst;
  attack_task.span = attack_horizon;
  report.attack_trajectory = optimal_control(attack_task, index.attack_gramian,
                                             a_cl, sys.b_attack, attack_samples);
  report.attack_energy = report.attack_trajectory.energy;

  const Eigen::MatrixXd tail_states = drift_states(
      a_cl, report.attack_trajectory.states.col(attack_samples), tail, tail_samples);

  // Defense trajectory covers the whole episode; the defender input is
  // the feedback u_d = -K x throughout.
  Trajectory& defense = report.defense_trajectory;
  defense.times.resize(samples + 1);
  defense.times.head(attack_samples + 1) = report.attack_trajectory.times;
  defense.times.tail(tail_samples) =
      Eigen::VectorXd::LinSpaced(tail_samples, attack_horizon + tail / tail_samples,
                                 observe_until);
  defense.states.resize(sys.n(), samples + 1);
  defense.states.leftCols(attack_samples + 1) = report.attack_trajectory.states;
  defense.states.rightCols(tail_samples) = tail_states.rightCols(tail_samples);
  defense.inputs = -controller.gain * defense.states;
  defense.energy =
      integrate_energy(defense.inputs.leftCols(attack_samples + 1),
                       attack_horizon / attack_samples) +
      integrate_energy(defense.inputs.rightCols(tail_samples + 1),
                       tail / tail_samples);
  report.defense_energy = defense.energy;

  report.terminal_error = defense.states.col(samples).norm();
  report.ratio_defined = report.defense_energy > 0.0;
  report.measured_ratio =
      report.ratio_defined ? report.attack_energy / report.defense_energy
                           : std::numeric_limits<double>::quiet_NaN();
  return report;
}

double ranking_agreement(const std::vector<double>& measured_ratios,
                         const std::vector<double>& indices) {
  if (measured_ratios.size() != indices.size() || measured_ratios.size() < 2) {
    throw ParseError("ranking_agreement needs two equal-length lists of at least 2");
  }
  const std::vector<double> ra = average_ranks(measured_ratios);
  const std::vector<double> rb = average_ranks(indices);
  const double n = static_cast<double>(ra.size());
  const double mean = (n + 1.0) / 2.0;
  double cov = 0.0, var_a = 0.0, var_b = 0.0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    cov += (ra[i] - mean) * (rb[i] - mean);
    var_a += (ra[i] - mean) * (ra[i] - mean);
    var_b += (rb[i] - mean) * (rb[i] - mean);
  }
  if (var_a == 0.0 || var_b == 0.0) {
    throw ParseError("ranking_agreement is undefined when one list is constant");
  }
  return cov / std::sqrt(var_a * var_b);
}

double ranking_agreement(const std::vector<ScenarioReport>& reports,
                         const std::vector<ResilienceResult>& indices) {
  if (reports.size() != indices.size()) {
    throw ParseError("ranking_agreement needs matching report/index lists");
  }
  std::vector<double> measured, theoretical;
  measured.reserve(reports.size());
  theoretical.reserve(indices.size());
  for (const ScenarioReport& r : reports) {
    measured.push_back(r.measured_ratio);
  }
  for (const ResilienceResult& r : indices) {
    theoretical.push_back(r.rho);
  }
  return ranking_agreement(measured, theoretical);
}

void write_episode_csv(std::ostream& out, const ScenarioReport& report,
                       const LtiSystem& sys, int precision) {
  const Eigen::Index n = sys.n();
  const Eigen::Index ma = sys.attack_inputs();
  const Eigen::Index md = sys.defend_inputs();
  out << std::setprecision(precision);

  out << "t";
  for (Eigen::Index i = 0; i < n; ++i) {
    if (static_cast<std::size_t>(n) == sys.labels.size()) {
      out << ',' << sys.labels[i];
    } else {
      out << ",x" << (i + 1);
    }
  }
  for (Eigen::Index i = 0; i < ma; ++i) {
    out << ",ua_" << (i + 1);
  }
  for (Eigen::Index i = 0; i < md; ++i) {
    out << ",ud_" << (i + 1);
  }
  out << ",phase\n";

  const Eigen::VectorXd zero_a = Eigen::VectorXd::Zero(ma);
  const Eigen::VectorXd zero_d = Eigen::VectorXd::Zero(md);
  const Trajectory& attack = report.attack_trajectory;
  const Trajectory& defense = report.defense_trajectory;

  if (report.kind == EpisodeKind::min_energy) {
    for (Eigen::Index k = 0; k < attack.times.size(); ++k) {
      append_csv_row(out, attack.times(k), attack.states.col(k),
                     attack.inputs.col(k), zero_d, "attack");
    }
    // Skip the duplicated handoff sample; defense times restart at zero.
    for (Eigen::Index k = 1; k < defense.times.size(); ++k) {
      append_csv_row(out, report.attack_horizon + defense.times(k),
                     defense.states.col(k), zero_a, defense.inputs.col(k),
                     "restore");
    }
  } else {
    const Eigen::Index attack_cols = attack.times.size();
    for (Eigen::Index k = 0; k < defense.times.size(); ++k) {
      const bool in_attack = k < attack_cols;
      append_csv_row(out, defense.times(k), defense.states.col(k),
                     in_attack ? attack.inputs.col(k) : zero_a,
                     defense.inputs.col(k), in_attack ? "attack" : "observe");
    }
  }
}

}  // namespace resilim
