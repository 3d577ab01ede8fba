#include "resilim/minenergy.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <sstream>

#include "resilim/errors.hpp"

namespace resilim {

namespace {

void check_task(const TransferTask& task, const Eigen::MatrixXd& a) {
  if (task.span <= 0.0 || !std::isfinite(task.span)) {
    throw ParseError("transfer task span must be positive and finite");
  }
  if (task.x_start.size() != a.rows() || task.x_goal.size() != a.rows()) {
    throw ParseError("transfer task vectors must match the state dimension");
  }
  if (!task.x_start.allFinite() || !task.x_goal.allFinite()) {
    throw ParseError("transfer task vectors must be finite");
  }
}

// Component of dx outside the numerically ranked range of W, as a
// fraction of |dx|.
double unreachable_fraction(const Gramian& g, const Eigen::VectorXd& dx) {
  const double norm = dx.norm();
  if (norm == 0.0 || g.numerical_rank == g.n()) {
    return 0.0;
  }
  const Eigen::Index null_dim = g.n() - g.numerical_rank;
  const Eigen::VectorXd null_coords =
      g.eigenvectors.rightCols(null_dim).transpose() * dx;
  return null_coords.norm() / norm;
}

}  // namespace

Eigen::VectorXd delta_x(const TransferTask& task, const Eigen::MatrixXd& a) {
  check_task(task, a);
  return task.x_goal - matrix_exponential(a, task.span) * task.x_start;
}

MinEnergy optimal_energy(const TransferTask& task, const Gramian& g,
                         const Eigen::MatrixXd& a) {
  check_task(task, a);
  const Eigen::VectorXd dx = delta_x(task, a);
  MinEnergy result;
  if (dx.norm() == 0.0) {
    return result;
  }
  if (g.full_rank()) {
    Eigen::LLT<Eigen::MatrixXd> chol(g.w);
    if (chol.info() == Eigen::Success) {
      result.value = dx.dot(chol.solve(dx));
      return result;
    }
    // Fall through to the spectral route when Cholesky stalls on a
    // barely-positive matrix.
  }
  result.target_reachable = unreachable_fraction(g, dx) <= kUnreachableTolerance;
  result.value = extended_inverse(g).quadratic_form(dx);
  return result;
}

Trajectory optimal_control(const TransferTask& task, const Gramian& g,
                           const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                           int samples) {
  check_task(task, a);
  if (b.rows() != a.rows()) {
    throw ParseError("optimal_control: B must have one row per state");
  }
  if (samples < 2) {
    throw ParseError("optimal_control: need at least 2 sample intervals");
  }
  const Eigen::Index n = a.rows();
  const Eigen::Index m = b.cols();
  const Eigen::VectorXd dx = delta_x(task, a);

  Eigen::VectorXd y;  // W^{-1} dx
  if (dx.norm() == 0.0) {
    y = Eigen::VectorXd::Zero(n);
  } else if (g.full_rank()) {
    Eigen::LLT<Eigen::MatrixXd> chol(g.w);
    if (chol.info() != Eigen::Success) {
      throw NumericalError("optimal_control: Gramian Cholesky failed");
    }
    y = chol.solve(dx);
  } else {
    const double fraction = unreachable_fraction(g, dx);
    if (fraction > kUnreachableTolerance) {
      std::ostringstream msg;
      msg << "transfer target is unreachable: fraction " << fraction
          << " of the displacement lies outside the controllable subspace";
      throw UnreachableError(msg.str());
    }
    y = extended_inverse(g).apply(dx);
  }

  // u*(t) = B^T phi(t) with the adjoint phi(t) = exp(A^T (t1 - t)) y,
  // so the pair [x; phi] obeys the linear system
  //   dx/dt = A x + B B^T phi,   dphi/dt = -A^T phi.
  const double dt = task.span / samples;
  Trajectory traj;
  traj.times = Eigen::VectorXd::LinSpaced(samples + 1, 0.0, task.span);
  traj.states.resize(n, samples + 1);
  traj.inputs.resize(m, samples + 1);

  Eigen::VectorXd x = task.x_start;
  Eigen::VectorXd phi = matrix_exponential(a.transpose(), task.span) * y;
  traj.states.col(0) = x;
  traj.inputs.col(0) = b.transpose() * phi;

  const Eigen::MatrixXd bbt = b * b.transpose();
  const auto step = [&](Eigen::VectorXd& xs, Eigen::VectorXd& ps, double h) {
    const auto fx = [&](const Eigen::VectorXd& xv, const Eigen::VectorXd& pv) {
      return (a * xv + bbt * pv).eval();
    };
    const auto fp = [&](const Eigen::VectorXd& pv) { return (-a.transpose() * pv).eval(); };
    const Eigen::VectorXd k1x = fx(xs, ps), k1p = fp(ps);
    const Eigen::VectorXd k2x = fx(xs + 0.5 * h * k1x, ps + 0.5 * h * k1p),
                          k2p = fp(ps + 0.5 * h * k1p);
    const Eigen::VectorXd k3x = fx(xs + 0.5 * h * k2x, ps + 0.5 * h * k2p),
                          k3p = fp(ps + 0.5 * h * k2p);
    const Eigen::VectorXd k4x = fx(xs + h * k3x, ps + h * k3p), k4p = fp(ps + h * k3p);
    xs += (h / 6.0) * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
    ps += (h / 6.0) * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
  };

  constexpr int kSubsteps = 4;
  for (int k = 0; k < samples; ++k) {
    for (int s = 0; s < kSubsteps; ++s) {
      step(x, phi, dt / kSubsteps);
    }
    traj.states.col(k + 1) = x;
    traj.inputs.col(k + 1) = b.transpose() * phi;
  }
  if (!traj.states.allFinite()) {
    throw NumericalError("optimal_control: state integration diverged");
  }
  traj.energy = integrate_energy(traj.inputs, dt);
  return traj;
}

double integrate_energy(const Eigen::MatrixXd& inputs, double dt) {
  const Eigen::Index k = inputs.cols();
  if (k < 2) {
    throw ParseError("integrate_energy: need at least 2 samples");
  }
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw ParseError("integrate_energy: dt must be positive and finite");
  }
  const Eigen::VectorXd f = inputs.colwise().squaredNorm().transpose();
  const Eigen::Index segments = k - 1;
  const Eigen::Index simpson_pairs = segments / 2;
  double total = 0.0;
  for (Eigen::Index p = 0; p < simpson_pairs; ++p) {
    total += (dt / 3.0) * (f(2 * p) + 4.0 * f(2 * p + 1) + f(2 * p + 2));
  }
  if (segments % 2 != 0) {
    total += 0.5 * dt * (f(k - 2) + f(k - 1));
  }
  return total;
}

}  // namespace resilim
