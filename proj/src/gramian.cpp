#include "resilim/gramian.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <unsupported/Eigen/MatrixFunctions>

#include "resilim/errors.hpp"
#include "resilim/model.hpp"

namespace resilim {

Gramian Gramian::from_matrix(const Eigen::MatrixXd& w, double horizon,
                             double rank_tolerance) {
  if (w.rows() != w.cols()) {
    throw ParseError("Gramian matrix must be square");
  }
  Gramian g;
  g.w = 0.5 * (w + w.transpose());
  g.horizon = horizon;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(g.w);
  if (eig.info() != Eigen::Success) {
    throw NumericalError("Gramian eigendecomposition failed");
  }
  const Eigen::Index n = w.rows();
  // Eigen orders ascending; store nonincreasing.
  g.eigenvalues = eig.eigenvalues().reverse();
  g.eigenvectors = eig.eigenvectors().rowwise().reverse();
  const double lambda_max = g.eigenvalues.size() > 0 ? g.eigenvalues(0) : 0.0;
  const double cutoff = rank_tolerance * std::max(lambda_max, 0.0);
  g.numerical_rank = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (g.eigenvalues(i) > cutoff) {
      ++g.numerical_rank;
    } else if (g.eigenvalues(i) < 0.0) {
      if (g.eigenvalues(i) < -cutoff) {
        throw NumericalError("Gramian is indefinite beyond roundoff tolerance");
      }
      g.eigenvalues(i) = 0.0;
    }
  }
  return g;
}

Eigen::VectorXd ExtendedInverse::apply(const Eigen::VectorXd& x) const {
  return basis * inverse_eigenvalues.cwiseProduct(basis.transpose() * x).matrix();
}

double ExtendedInverse::quadratic_form(const Eigen::VectorXd& x) const {
  const Eigen::VectorXd coords = basis.transpose() * x;
  return (inverse_eigenvalues.array() * coords.array().square()).sum();
}

int default_gramian_steps(const Eigen::MatrixXd& a, double horizon) {
  const double t_sys = characteristic_time(a);
  double steps = 2000.0;
  if (std::isfinite(t_sys) && t_sys > 0.0) {
    steps = std::max(steps, std::ceil(200.0 * horizon / t_sys));
  }
  return static_cast<int>(steps);
}

Gramian gramian(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                double horizon, int steps) {
  if (a.rows() != a.cols() || b.rows() != a.rows()) {
    throw ParseError("gramian: A must be square and B conformable");
  }
  if (horizon < 0.0 || !std::isfinite(horizon)) {
    throw ParseError("gramian: horizon must be finite and >= 0");
  }
  const Eigen::Index n = a.rows();
  if (horizon == 0.0) {
    return Gramian::from_matrix(Eigen::MatrixXd::Zero(n, n), 0.0);
  }
  if (steps <= 0) {
    steps = default_gramian_steps(a, horizon);
  }
  const Eigen::MatrixXd c = b * b.transpose();
  const double dt = horizon / steps;
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  const auto rhs = [&](const Eigen::MatrixXd& x) -> Eigen::MatrixXd {
    return a * x + x * a.transpose() + c;
  };
  for (int k = 0; k < steps; ++k) {
    const Eigen::MatrixXd k1 = rhs(w);
    const Eigen::MatrixXd k2 = rhs(w + 0.5 * dt * k1);
    const Eigen::MatrixXd k3 = rhs(w + 0.5 * dt * k2);
    const Eigen::MatrixXd k4 = rhs(w + dt * k3);
    w += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  if (!w.allFinite()) {
    std::ostringstream msg;
    msg << "gramian integration diverged over horizon " << horizon << " with "
        << steps << " steps (stiff or unstable dynamics)";
    throw NumericalError(msg.str());
  }
  return Gramian::from_matrix(w, horizon);
}

Gramian gramian_infinite(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.rows() != a.cols() || b.rows() != a.rows()) {
    throw ParseError("gramian_infinite: A must be square and B conformable");
  }
  const StabilityReport stability = is_stable(a);
  if (!stability.stable) {
    std::ostringstream msg;
    msg << "gramian_infinite requires stable A (spectral abscissa "
        << stability.spectral_abscissa << ")";
    throw NumericalError(msg.str());
  }
  // Vectorize A W + W A^T = -B B^T:  (I (x) A + A (x) I) vec(W) = -vec(B B^T).
  const Eigen::Index n = a.rows();
  Eigen::MatrixXd kron = Eigen::MatrixXd::Zero(n * n, n * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    kron.block(i * n, i * n, n, n) += a;
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index k = 0; k < n; ++k) {
        kron(i * n + k, j * n + k) += a(i, j);
      }
    }
  }
  const Eigen::MatrixXd c = b * b.transpose();
  const Eigen::VectorXd rhs = -Eigen::Map<const Eigen::VectorXd>(c.data(), n * n);
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(kron);
  const Eigen::VectorXd vec_w = lu.solve(rhs);
  if (!vec_w.allFinite()) {
    throw NumericalError("gramian_infinite: singular Lyapunov operator");
  }
  const Eigen::MatrixXd w = Eigen::Map<const Eigen::MatrixXd>(vec_w.data(), n, n);
  return Gramian::from_matrix(w, std::numeric_limits<double>::infinity());
}

Gramian defender_tilde_gramian(const Eigen::MatrixXd& a, const Gramian& w_d,
                               double defense_span) {
  if (defense_span <= 0.0) {
    throw ParseError("defender_tilde_gramian: defense span must be positive");
  }
  if (a.rows() != w_d.n()) {
    throw ParseError("defender_tilde_gramian: dimension mismatch");
  }
  if (!(std::abs(w_d.horizon - defense_span) <=
        1e-12 * std::max(1.0, std::abs(defense_span)))) {
    throw ParseError("defender_tilde_gramian: Gramian horizon does not match the span");
  }
  const Eigen::MatrixXd drift = matrix_exponential(a, -defense_span);
  return Gramian::from_matrix(drift * w_d.w * drift.transpose(), defense_span);
}

ExtendedInverse extended_inverse(const Gramian& g, double big_m) {
  const double lambda_max = g.eigenvalues.size() > 0 ? g.eigenvalues(0) : 0.0;
  if (big_m <= 0.0) {
    big_m = lambda_max > 0.0 ? 1e12 / lambda_max : 1e12;
  }
  if (g.numerical_rank > 0) {
    const double lambda_min_pos = g.eigenvalues(g.numerical_rank - 1);
    if (big_m <= 1.0 / lambda_min_pos) {
      throw ParseError("extended_inverse: M must exceed the largest finite inverse eigenvalue");
    }
  }
  ExtendedInverse inv;
  inv.basis = g.eigenvectors;
  inv.big_m = big_m;
  inv.inverse_eigenvalues.resize(g.eigenvalues.size());
  for (Eigen::Index i = 0; i < g.eigenvalues.size(); ++i) {
    inv.inverse_eigenvalues(i) = i < g.numerical_rank ? 1.0 / g.eigenvalues(i) : big_m;
  }
  return inv;
}

Eigen::MatrixXd matrix_exponential(const Eigen::MatrixXd& a, double t) {
  if (a.rows() != a.cols()) {
    throw ParseError("matrix_exponential: matrix must be square");
  }
  if (!a.allFinite() || !std::isfinite(t)) {
    throw NumericalError("matrix_exponential: non-finite input");
  }
  const Eigen::MatrixXd result = (a * t).exp();
  if (!result.allFinite()) {
    std::ostringstream msg;
    msg << "matrix_exponential overflow at scaled norm " << (a * t).norm();
    throw NumericalError(msg.str());
  }
  return result;
}

}  // namespace resilim
