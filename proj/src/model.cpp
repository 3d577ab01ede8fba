#include "resilim/model.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <fstream>
#include <limits>
#include <sstream>

#include "resilim/errors.hpp"
#include <json.hpp>

namespace resilim {

namespace {

Eigen::MatrixXd matrix_from_json(const nlohmann::json& doc, const std::string& key) {
  if (!doc.contains(key)) {
    throw ParseError("system document is missing key \"" + key + "\"");
  }
  const auto& rows = doc.at(key);
  if (!rows.is_array() || rows.empty()) {
    throw ParseError("\"" + key + "\" must be a non-empty list of rows");
  }
  const std::size_t ncols = rows.front().is_array() ? rows.front().size() : 0;
  if (ncols == 0) {
    throw ParseError("\"" + key + "\" rows must be non-empty numeric lists");
  }
  Eigen::MatrixXd m(rows.size(), ncols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows.at(i);
    if (!row.is_array() || row.size() != ncols) {
      throw ParseError("\"" + key + "\" has ragged rows (row " + std::to_string(i) + ")");
    }
    for (std::size_t j = 0; j < ncols; ++j) {
      if (!row.at(j).is_number()) {
        throw ParseError("\"" + key + "\" contains a non-numeric entry");
      }
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = row.at(j).get<double>();
    }
  }
  return m;
}

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back(m(i, j));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

void LtiSystem::validate() const {
  if (a.rows() == 0 || a.rows() != a.cols()) {
    std::ostringstream msg;
    msg << "A must be square and non-empty, got " << a.rows() << "x" << a.cols();
    throw ParseError(msg.str());
  }
  if (b_attack.rows() != a.rows() || b_defend.rows() != a.rows()) {
    std::ostringstream msg;
    msg << "row-count mismatch: A has " << a.rows() << " rows, Ba has "
        << b_attack.rows() << ", Bd has " << b_defend.rows();
    throw ParseError(msg.str());
  }
  if (b_attack.cols() == 0 || b_defend.cols() == 0) {
    throw ParseError("Ba and Bd must each have at least one column");
  }
  if (!a.allFinite() || !b_attack.allFinite() || !b_defend.allFinite()) {
    throw ParseError("system matrices contain non-finite entries");
  }
  if (!labels.empty() && labels.size() != static_cast<std::size_t>(a.rows())) {
    throw ParseError("labels must name every state");
  }
}

LtiSystem load_system(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("system document is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    throw ParseError("system document must be a JSON object");
  }
  LtiSystem sys;
  sys.a = matrix_from_json(doc, "A");
  sys.b_attack = matrix_from_json(doc, "Ba");
  sys.b_defend = matrix_from_json(doc, "Bd");
  if (doc.contains("labels")) {
    for (const auto& label : doc.at("labels")) {
      if (!label.is_string()) {
        throw ParseError("\"labels\" must be a list of strings");
      }
      sys.labels.push_back(label.get<std::string>());
    }
  }
  sys.validate();
  return sys;
}

LtiSystem load_system_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open system document: " + path);
  }
  return load_system(in);
}

void save_system(const LtiSystem& sys, std::ostream& out) {
  sys.validate();
  nlohmann::json doc;
  doc["A"] = matrix_to_json(sys.a);
  doc["Ba"] = matrix_to_json(sys.b_attack);
  doc["Bd"] = matrix_to_json(sys.b_defend);
  if (!sys.labels.empty()) {
    doc["labels"] = sys.labels;
  }
  out << doc.dump(2) << "\n";
}

void save_system_file(const LtiSystem& sys, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw ParseError("cannot write system document: " + path);
  }
  save_system(sys, out);
}

ControllabilityReport controllability(const Eigen::MatrixXd& a,
                                      const Eigen::MatrixXd& b, double tolerance) {
  if (a.rows() != a.cols() || b.rows() != a.rows()) {
    throw ParseError("controllability: A must be square and B conformable");
  }
  if (tolerance <= 0.0) {
    throw ParseError("controllability: tolerance must be positive");
  }
  const Eigen::Index n = a.rows();
  const Eigen::Index m = b.cols();
  Eigen::MatrixXd kalman(n, n * m);
  Eigen::MatrixXd block = b;
  for (Eigen::Index k = 0; k < n; ++k) {
    kalman.middleCols(k * m, m) = block;
    block = a * block;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(kalman);
  const Eigen::VectorXd& sv = svd.singularValues();
  ControllabilityReport report;
  report.rank_tolerance = tolerance;
  const double cutoff = sv.size() > 0 ? tolerance * sv(0) : 0.0;
  report.numerical_rank = (sv.array() > cutoff).count();
  report.is_controllable = report.numerical_rank == n;
  return report;
}

StabilityReport is_stable(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw ParseError("is_stable: A must be square and non-empty");
  }
  if (!a.allFinite()) {
    throw NumericalError("is_stable: matrix has non-finite entries");
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(a, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("is_stable: eigenvalue iteration failed");
  }
  StabilityReport report;
  report.spectral_abscissa = solver.eigenvalues().real().maxCoeff();
  report.stable = report.spectral_abscissa < 0.0;
  return report;
}

double characteristic_time(const Eigen::MatrixXd& a) {
  const StabilityReport report = is_stable(a);
  if (!report.stable) {
    return std::numeric_limits<double>::infinity();
  }
  return 1.0 / -report.spectral_abscissa;
}

}  // namespace resilim
