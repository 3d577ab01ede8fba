#pragma once

// Shared helpers for the test binaries: deterministic random matrices
// and an independent brute-force oracle for minimum transfer energy.

#include <Eigen/Dense>
#include <random>

#include "resilim/gramian.hpp"

namespace testutil {

inline Eigen::MatrixXd random_gaussian(Eigen::Index rows, Eigen::Index cols,
                                       std::mt19937& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      m(i, j) = dist(rng);
    }
  }
  return m;
}

inline Eigen::VectorXd random_unit_vector(Eigen::Index n, std::mt19937& rng) {
  Eigen::VectorXd v = random_gaussian(n, 1, rng);
  return v / v.norm();
}

inline Eigen::MatrixXd random_orthogonal(Eigen::Index n, std::mt19937& rng) {
  const Eigen::MatrixXd g = random_gaussian(n, n, rng);
  return Eigen::HouseholderQR<Eigen::MatrixXd>(g).householderQ();
}

// SPD with log-uniform spectrum in [0.1, 10].
inline Eigen::MatrixXd random_spd(Eigen::Index n, std::mt19937& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  const Eigen::MatrixXd q = random_orthogonal(n, rng);
  Eigen::VectorXd eigs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    eigs(i) = std::pow(10.0, dist(rng));
  }
  return q * eigs.asDiagonal() * q.transpose();
}

// Random matrix shifted to a prescribed spectral abscissa < 0.
inline Eigen::MatrixXd random_stable(Eigen::Index n, std::mt19937& rng,
                                     double abscissa = -0.5) {
  Eigen::MatrixXd a = random_gaussian(n, n, rng);
  const double current =
      Eigen::EigenSolver<Eigen::MatrixXd>(a).eigenvalues().real().maxCoeff();
  a -= (current - abscissa) * Eigen::MatrixXd::Identity(n, n);
  return a;
}

// Least-norm piecewise-constant transfer 0 -> x_goal over `span` split
// into `segments` pieces: discretize exactly per segment, assemble the
// reachability matrix, and take the minimum-norm solution. The continuous
// energy of that input is h * |u|^2. Independent of the Gramian route.
inline double brute_force_energy(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                                 const Eigen::VectorXd& x_goal, double span,
                                 int segments) {
  const Eigen::Index n = a.rows();
  const Eigen::Index m = b.cols();
  const double h = span / segments;

  // One-step input map psi = integral_0^h exp(A s) B ds via the block
  // exponential [[A, B], [0, 0]].
  Eigen::MatrixXd block = Eigen::MatrixXd::Zero(n + m, n + m);
  block.topLeftCorner(n, n) = a;
  block.topRightCorner(n, m) = b;
  const Eigen::MatrixXd block_exp = resilim::matrix_exponential(block, h);
  const Eigen::MatrixXd psi = block_exp.topRightCorner(n, m);
  const Eigen::MatrixXd step = resilim::matrix_exponential(a, h);

  // Columns of the reachability matrix: segment k contributes
  // exp(A (segments-1-k) h) psi.
  Eigen::MatrixXd reach(n, m * segments);
  Eigen::MatrixXd lead = Eigen::MatrixXd::Identity(n, n);
  for (int k = segments - 1; k >= 0; --k) {
    reach.middleCols(static_cast<Eigen::Index>(k) * m, m) = lead * psi;
    lead = step * lead;
  }

  const Eigen::MatrixXd gram = reach * reach.transpose();
  const Eigen::VectorXd u = reach.transpose() * gram.llt().solve(x_goal);
  return h * u.squaredNorm();
}

}  // namespace testutil
