#include "resilim/resilience.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <sstream>

#include "resilim/errors.hpp"
#include "resilim/minenergy.hpp"

namespace resilim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_horizons(double attack_horizon, double defense_horizon) {
  if (!(attack_horizon > 0.0) || !std::isfinite(attack_horizon) ||
      !(defense_horizon > 0.0) || !std::isfinite(defense_horizon)) {
    throw ParseError("horizons must be positive and finite");
  }
}

// Fix the sign so the first component above roundoff is positive, then
// normalize. Eigenvectors are sign-ambiguous; tests want determinism.
Eigen::VectorXd canonical_direction(Eigen::VectorXd x) {
  const double norm = x.norm();
  if (norm == 0.0) {
    return x;
  }
  x /= norm;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (std::abs(x(i)) > 1e-12) {
      if (x(i) < 0.0) {
        x = -x;
      }
      break;
    }
  }
  return x;
}

// Cholesky factor of W~_d, rejecting rank-deficient defenders with a
// diagnostic naming the unreachable subspace dimension.
Eigen::MatrixXd defender_cholesky(const Gramian& tilde) {
  if (!tilde.full_rank()) {
    const int missing = static_cast<int>(tilde.n() - tilde.numerical_rank);
    std::ostringstream msg;
    msg << "defender pair is not controllable: the defense Gramian has a "
        << missing << "-dimensional unreachable subspace (rank "
        << tilde.numerical_rank << " of " << tilde.n() << ")";
    throw UncontrollableError(msg.str(), missing);
  }
  Eigen::LLT<Eigen::MatrixXd> chol(tilde.w);
  if (chol.info() != Eigen::Success) {
    throw NumericalError("Cholesky of the defense Gramian failed despite full numerical rank");
  }
  return chol.matrixL();
}

}  // namespace

ResilienceResult resilience_index(const LtiSystem& sys, double attack_horizon,
                                  double defense_horizon, int steps) {
  check_horizons(attack_horizon, defense_horizon);
  sys.validate();

  ResilienceResult result;
  result.attack_horizon = attack_horizon;
  result.defense_horizon = defense_horizon;
  result.a_stable = is_stable(sys.a).stable;
  result.attack_gramian = gramian(sys.a, sys.b_attack, attack_horizon, steps);
  const Gramian w_d = gramian(sys.a, sys.b_defend, defense_horizon, steps);
  result.defense_tilde = defender_tilde_gramian(sys.a, w_d, defense_horizon);

  // Whitened pencil: with W~_d = L L^T, the generalized problem
  // W_a x = lambda W~_d x becomes the ordinary symmetric problem
  // M v = lambda v for M = L^{-1} W_a L^{-T}. W_a is never inverted,
  // so a rank-deficient attacker is fine.
  const Eigen::MatrixXd l = defender_cholesky(result.defense_tilde);
  Eigen::MatrixXd m = l.triangularView<Eigen::Lower>().solve(result.attack_gramian.w);
  m = l.triangularView<Eigen::Lower>().solve(m.transpose()).eval();
  m = 0.5 * (m + m.transpose()).eval();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m);
  if (eig.info() != Eigen::Success) {
    throw NumericalError("eigendecomposition of the whitened pencil failed");
  }
  const Eigen::Index n = m.rows();
  result.lambda_max = eig.eigenvalues()(n - 1);
  if (n > 1) {
    const double gap = result.lambda_max - eig.eigenvalues()(n - 2);
    result.degenerate = gap < 1e-8 * std::max(1.0, std::abs(result.lambda_max));
  }

  const Eigen::VectorXd v = eig.eigenvectors().col(n - 1);
  // x_worst = L v is the displacement minimizing the energy ratio
  // (x^T W_a^{-1} x)/(x^T W~_d^{-1} x); the generalized eigenvector of
  // the pencil itself is L^{-T} v. They coincide only for commuting
  // Gramians, so both are reported.
  result.x_worst = canonical_direction(l * v);
  result.eigenvector =
      canonical_direction(l.transpose().triangularView<Eigen::Upper>().solve(v));

  if (result.lambda_max <= kGramianRankTolerance) {
    result.rho = kInf;  // attacker cannot move the system
  } else {
    result.rho = 1.0 / result.lambda_max;
  }
  return result;
}

double energy_ratio_theoretical(const LtiSystem& sys, const Eigen::VectorXd& x1,
                                double attack_horizon, double defense_horizon,
                                int steps) {
  check_horizons(attack_horizon, defense_horizon);
  sys.validate();
  if (x1.size() != sys.n()) {
    throw ParseError("x1 must match the state dimension");
  }
  if (x1.norm() == 0.0) {
    throw ParseError("x1 must be nonzero");
  }
  const Gramian w_a = gramian(sys.a, sys.b_attack, attack_horizon, steps);
  const Gramian w_d = gramian(sys.a, sys.b_defend, defense_horizon, steps);
  const Gramian tilde = defender_tilde_gramian(sys.a, w_d, defense_horizon);
  const double attack_cost = extended_inverse(w_a).quadratic_form(x1);
  const double defense_cost = extended_inverse(tilde).quadratic_form(x1);
  if (defense_cost <= 0.0) {
    throw NumericalError("defense energy form is not positive");
  }
  return attack_cost / defense_cost;
}

LemmaCheck lemma_check(const Eigen::MatrixXd& a_spd, const Eigen::MatrixXd& b_spd) {
  if (a_spd.rows() != a_spd.cols() || b_spd.rows() != b_spd.cols() ||
      a_spd.rows() != b_spd.rows()) {
    throw ParseError("lemma_check expects square matrices of equal size");
  }
  Eigen::LLT<Eigen::MatrixXd> chol_a(a_spd);
  Eigen::LLT<Eigen::MatrixXd> chol_b(b_spd);
  if (chol_a.info() != Eigen::Success || chol_b.info() != Eigen::Success) {
    throw NumericalError("lemma_check inputs must be symmetric positive definite");
  }
  const Eigen::Index n = a_spd.rows();
  LemmaCheck out;

  // Route 1: min x^T A^{-1} x / x^T B^{-1} x over the explicit inverses.
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd a_inv = chol_a.solve(id);
  const Eigen::MatrixXd b_inv = chol_b.solve(id);
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ge_inv(
      0.5 * (a_inv + a_inv.transpose()), 0.5 * (b_inv + b_inv.transpose()));
  if (ge_inv.info() != Eigen::Success) {
    throw NumericalError("generalized eigensolver failed on the inverse pair");
  }
  out.inverse_form = ge_inv.eigenvalues()(0);
  const Eigen::VectorXd x_l = ge_inv.eigenvectors().col(0);

  // Route 2: min x^T B x / x^T A x (pencil (B, A), smallest eigenvalue).
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ge_min(b_spd, a_spd);
  if (ge_min.info() != Eigen::Success) {
    throw NumericalError("generalized eigensolver failed on the direct pair");
  }
  out.direct_min_form = ge_min.eigenvalues()(0);
  const Eigen::VectorXd x_mr = ge_min.eigenvectors().col(0);

  // Route 3: reciprocal of max x^T A x / x^T B x, via Cholesky whitening
  // of B by hand (independent of Eigen's generalized solver).
  const Eigen::MatrixXd l = chol_b.matrixL();
  Eigen::MatrixXd m = l.triangularView<Eigen::Lower>().solve(a_spd);
  m = l.triangularView<Eigen::Lower>().solve(m.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (m + m.transpose()));
  if (eig.info() != Eigen::Success) {
    throw NumericalError("whitened eigendecomposition failed");
  }
  out.reciprocal_max_form = 1.0 / eig.eigenvalues()(n - 1);

  // Minimizer relation: the route-1 optimizer is B times the route-2 one.
  const Eigen::VectorXd bx = b_spd * x_mr;
  const double cosine =
      std::min(1.0, std::abs(x_l.dot(bx)) / (x_l.norm() * bx.norm()));
  out.relation_angle = std::acos(cosine);
  return out;
}

std::vector<std::pair<double, ResilienceResult>> sweep(
    const LtiSystem& sys, const std::vector<double>& horizons, int steps) {
  std::vector<std::pair<double, ResilienceResult>> out;
  out.reserve(horizons.size());
  for (const double dt : horizons) {
    out.emplace_back(dt, resilience_index(sys, dt, dt, steps));
  }
  return out;
}

PlacementTable placement_table(const Eigen::MatrixXd& a,
                               const NamedMatrices& attacker_options,
                               const NamedMatrices& defender_options,
                               double attack_horizon, double defense_horizon,
                               int steps) {
  check_horizons(attack_horizon, defense_horizon);
  if (attacker_options.empty() || defender_options.empty()) {
    throw ParseError("placement_table needs at least one option per side");
  }
  PlacementTable table;
  const Eigen::Index rows = static_cast<Eigen::Index>(attacker_options.size());
  const Eigen::Index cols = static_cast<Eigen::Index>(defender_options.size());
  table.rho.setConstant(rows, cols, std::numeric_limits<double>::quiet_NaN());
  table.defender_controllable.assign(cols, true);

  for (const auto& [name, b] : attacker_options) {
    table.attacker_names.push_back(name);
    if (b.rows() != a.rows()) {
      throw ParseError("attacker option '" + name + "' row count does not match A");
    }
  }
  for (const auto& [name, b] : defender_options) {
    table.defender_names.push_back(name);
    if (b.rows() != a.rows()) {
      throw ParseError("defender option '" + name + "' row count does not match A");
    }
  }

  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      LtiSystem sys;
      sys.a = a;
      sys.b_attack = attacker_options[i].second;
      sys.b_defend = defender_options[j].second;
      try {
        table.rho(i, j) =
            resilience_index(sys, attack_horizon, defense_horizon, steps).rho;
      } catch (const UncontrollableError&) {
        table.defender_controllable[j] = false;  // cell flagged, table kept
      }
    }
  }

  table.best_defender.assign(rows, -1);
  for (Eigen::Index i = 0; i < rows; ++i) {
    double best = -kInf;
    for (Eigen::Index j = 0; j < cols; ++j) {
      if (!std::isnan(table.rho(i, j)) && table.rho(i, j) > best) {
        best = table.rho(i, j);
        table.best_defender[i] = j;
      }
    }
  }
  table.worst_attacker.assign(cols, -1);
  for (Eigen::Index j = 0; j < cols; ++j) {
    double worst = kInf;
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (!std::isnan(table.rho(i, j)) && table.rho(i, j) < worst) {
        worst = table.rho(i, j);
        table.worst_attacker[j] = i;
      }
    }
  }
  return table;
}

}  // namespace resilim
