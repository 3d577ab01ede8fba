#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>
#include <vector>

namespace resilim {

/// Continuous-time LTI plant with separate attacker and defender inputs:
///   dx/dt = A x + B_a u_a + B_d u_d
struct LtiSystem {
  Eigen::MatrixXd a;         ///< n x n state dynamics
  Eigen::MatrixXd b_attack;  ///< n x m_a attacker input map
  Eigen::MatrixXd b_defend;  ///< n x m_d defender input map
  std::vector<std::string> labels;  ///< optional state names, size n when present

  Eigen::Index n() const { return a.rows(); }
  Eigen::Index attack_inputs() const { return b_attack.cols(); }
  Eigen::Index defend_inputs() const { return b_defend.cols(); }

  /// Throws ParseError if the matrices are not a valid system
  /// (A not square, row-count mismatch, empty inputs, non-finite entries).
  void validate() const;
};

struct ControllabilityReport {
  Eigen::Index numerical_rank = 0;
  bool is_controllable = false;
  double rank_tolerance = 0.0;  ///< relative singular-value cutoff used
};

struct StabilityReport {
  bool stable = false;
  double spectral_abscissa = 0.0;  ///< max real part of the eigenvalues
};

/// Parse a system document: JSON object with keys "A", "Ba", "Bd"
/// (row lists) and an optional "labels" array of state names.
LtiSystem load_system(std::istream& in);
LtiSystem load_system_file(const std::string& path);

/// Serialize back to the document format accepted by load_system.
/// Round-trips all matrix entries bit-exactly.
void save_system(const LtiSystem& sys, std::ostream& out);
void save_system_file(const LtiSystem& sys, const std::string& path);

/// Numerical rank of the Kalman matrix [B, AB, ..., A^{n-1}B] by SVD.
/// Singular values below tolerance * sigma_max count as zero.
ControllabilityReport controllability(const Eigen::MatrixXd& a,
                                      const Eigen::MatrixXd& b,
                                      double tolerance = 1e-9);

/// Stable iff the spectral abscissa of `a` is strictly negative.
StabilityReport is_stable(const Eigen::MatrixXd& a);

/// 1 / |spectral abscissa|: the decay time of the slowest mode.
/// +inf when `a` is not strictly stable.
double characteristic_time(const Eigen::MatrixXd& a);

}  // namespace resilim
