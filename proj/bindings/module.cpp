#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "resilim/errors.hpp"
#include "resilim/gramian.hpp"
#include "resilim/minenergy.hpp"
#include "resilim/model.hpp"
#include "resilim/pendula.hpp"
#include "resilim/resilience.hpp"
#include "resilim/simulate.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace resilim;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Control-energy resilience of LTI systems under adversarial disturbance";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);
  py::register_exception<UnreachableError>(m, "UnreachableError", PyExc_RuntimeError);
  py::register_exception<UncontrollableError>(m, "UncontrollableError", PyExc_RuntimeError);

  py::class_<LtiSystem>(m, "LtiSystem")
      .def(py::init<>())
      .def(py::init([](Eigen::MatrixXd a, Eigen::MatrixXd b_attack,
                       Eigen::MatrixXd b_defend) {
             LtiSystem sys;
             sys.a = std::move(a);
             sys.b_attack = std::move(b_attack);
             sys.b_defend = std::move(b_defend);
             sys.validate();
             return sys;
           }),
           "a"_a, "b_attack"_a, "b_defend"_a)
      .def_readwrite("a", &LtiSystem::a)
      .def_readwrite("b_attack", &LtiSystem::b_attack)
      .def_readwrite("b_defend", &LtiSystem::b_defend)
      .def_readwrite("labels", &LtiSystem::labels)
      .def("validate", &LtiSystem::validate)
      .def_property_readonly("n", &LtiSystem::n);

  py::class_<Gramian>(m, "Gramian")
      .def_readonly("w", &Gramian::w)
      .def_readonly("horizon", &Gramian::horizon)
      .def_readonly("eigenvalues", &Gramian::eigenvalues)
      .def_readonly("eigenvectors", &Gramian::eigenvectors)
      .def_readonly("numerical_rank", &Gramian::numerical_rank)
      .def("full_rank", &Gramian::full_rank);

  py::class_<Trajectory>(m, "Trajectory")
      .def_readonly("times", &Trajectory::times)
      .def_readonly("states", &Trajectory::states)
      .def_readonly("inputs", &Trajectory::inputs)
      .def_readonly("energy", &Trajectory::energy);

  py::class_<MinEnergy>(m, "MinEnergy")
      .def_readonly("value", &MinEnergy::value)
      .def_readonly("target_reachable", &MinEnergy::target_reachable);

  py::class_<TransferTask>(m, "TransferTask")
      .def(py::init([](Eigen::VectorXd x_start, Eigen::VectorXd x_goal, double span) {
             TransferTask task;
             task.x_start = std::move(x_start);
             task.x_goal = std::move(x_goal);
             task.span = span;
             return task;
           }),
           "x_start"_a, "x_goal"_a, "span"_a)
      .def_readwrite("x_start", &TransferTask::x_start)
      .def_readwrite("x_goal", &TransferTask::x_goal)
      .def_readwrite("span", &TransferTask::span);

  py::class_<ResilienceResult>(m, "ResilienceResult")
      .def_readonly("rho", &ResilienceResult::rho)
      .def_readonly("lambda_max", &ResilienceResult::lambda_max)
      .def_readonly("x_worst", &ResilienceResult::x_worst)
      .def_readonly("eigenvector", &ResilienceResult::eigenvector)
      .def_readonly("attack_horizon", &ResilienceResult::attack_horizon)
      .def_readonly("defense_horizon", &ResilienceResult::defense_horizon)
      .def_readonly("degenerate", &ResilienceResult::degenerate)
      .def_readonly("a_stable", &ResilienceResult::a_stable)
      .def_readonly("attack_gramian", &ResilienceResult::attack_gramian)
      .def_readonly("defense_tilde", &ResilienceResult::defense_tilde);

  py::class_<PlacementTable>(m, "PlacementTable")
      .def_readonly("attacker_names", &PlacementTable::attacker_names)
      .def_readonly("defender_names", &PlacementTable::defender_names)
      .def_readonly("rho", &PlacementTable::rho)
      .def_readonly("defender_controllable", &PlacementTable::defender_controllable)
      .def_readonly("best_defender", &PlacementTable::best_defender)
      .def_readonly("worst_attacker", &PlacementTable::worst_attacker);

  py::class_<LemmaCheck>(m, "LemmaCheck")
      .def_readonly("inverse_form", &LemmaCheck::inverse_form)
      .def_readonly("direct_min_form", &LemmaCheck::direct_min_form)
      .def_readonly("reciprocal_max_form", &LemmaCheck::reciprocal_max_form)
      .def_readonly("relation_angle", &LemmaCheck::relation_angle);

  py::enum_<EpisodeKind>(m, "EpisodeKind")
      .value("min_energy", EpisodeKind::min_energy)
      .value("lq_feedback", EpisodeKind::lq_feedback);

  py::class_<ScenarioReport>(m, "ScenarioReport")
      .def_readonly("kind", &ScenarioReport::kind)
      .def_readonly("attack_trajectory", &ScenarioReport::attack_trajectory)
      .def_readonly("defense_trajectory", &ScenarioReport::defense_trajectory)
      .def_readonly("attack_energy", &ScenarioReport::attack_energy)
      .def_readonly("defense_energy", &ScenarioReport::defense_energy)
      .def_readonly("measured_ratio", &ScenarioReport::measured_ratio)
      .def_readonly("ratio_defined", &ScenarioReport::ratio_defined)
      .def_readonly("theoretical_rho", &ScenarioReport::theoretical_rho)
      .def_readonly("terminal_error", &ScenarioReport::terminal_error)
      .def_readonly("attack_horizon", &ScenarioReport::attack_horizon)
      .def_readonly("defense_horizon", &ScenarioReport::defense_horizon);

  py::class_<LqController>(m, "LqController")
      .def_readonly("gain", &LqController::gain)
      .def_readonly("q_weight", &LqController::q_weight)
      .def_readonly("r_weight", &LqController::r_weight)
      .def_readonly("p_matrix", &LqController::p_matrix)
      .def_readonly("closed_loop_abscissa", &LqController::closed_loop_abscissa)
      .def_readonly("note", &LqController::note);

  // model
  m.def("load_system", &load_system_file, "path"_a,
        "Read a system document (JSON with A, Ba, Bd, optional labels)");
  m.def("save_system", &save_system_file, "sys"_a, "path"_a);
  m.def(
      "controllability",
      [](const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double tolerance) {
        const ControllabilityReport r = controllability(a, b, tolerance);
        return py::make_tuple(r.numerical_rank, r.is_controllable);
      },
      "a"_a, "b"_a, "tolerance"_a = 1e-9,
      "Numerical rank of the Kalman matrix and whether the pair is controllable");
  m.def(
      "is_stable", [](const Eigen::MatrixXd& a) { return is_stable(a).stable; },
      "a"_a);
  m.def("characteristic_time", &characteristic_time, "a"_a);

  // gramian
  m.def("gramian", &gramian, "a"_a, "b"_a, "horizon"_a, "steps"_a = 0);
  m.def("gramian_infinite", &gramian_infinite, "a"_a, "b"_a);
  m.def("defender_tilde_gramian", &defender_tilde_gramian, "a"_a, "w_d"_a,
        "defense_span"_a);
  m.def("matrix_exponential", &matrix_exponential, "a"_a, "t"_a);

  // minenergy
  m.def("delta_x", &delta_x, "task"_a, "a"_a);
  m.def("optimal_energy", &optimal_energy, "task"_a, "gramian"_a, "a"_a);
  m.def("optimal_control", &optimal_control, "task"_a, "gramian"_a, "a"_a, "b"_a,
        "samples"_a = 2000);

  // resilience
  m.def("resilience_index", &resilience_index, "sys"_a, "attack_horizon"_a,
        "defense_horizon"_a, "steps"_a = 0);
  m.def("energy_ratio_theoretical", &energy_ratio_theoretical, "sys"_a, "x1"_a,
        "attack_horizon"_a, "defense_horizon"_a, "steps"_a = 0);
  m.def("lemma_check", &lemma_check, "a_spd"_a, "b_spd"_a);
  m.def("sweep", &sweep, "sys"_a, "horizons"_a, "steps"_a = 0);
  m.def("placement_table", &placement_table, "a"_a, "attacker_options"_a,
        "defender_options"_a, "attack_horizon"_a, "defense_horizon"_a, "steps"_a = 0);

  // simulate
  m.def("run_min_energy_episode", &run_min_energy_episode, "sys"_a,
        "x_worst_scale"_a, "attack_horizon"_a, "defense_horizon"_a,
        "samples"_a = 2000);
  m.def("design_lqr", &design_lqr, "sys"_a, "q_weight"_a, "r_weight"_a);
  m.def("calibrate_lqr_scale", &calibrate_lqr_scale, "sys"_a, "target_time"_a,
        "relative_tolerance"_a = 1e-3);
  m.def("run_lq_episode", &run_lq_episode, "sys"_a, "controller"_a,
        "attack_horizon"_a, "observe_until"_a, "samples"_a = 4000);
  m.def(
      "ranking_agreement",
      [](const std::vector<double>& measured, const std::vector<double>& indices) {
        return ranking_agreement(measured, indices);
      },
      "measured_ratios"_a, "indices"_a,
      "Spearman rank correlation with average ranks on ties");
  m.def(
      "episode_csv",
      [](const ScenarioReport& report, const LtiSystem& sys, int precision) {
        std::ostringstream out;
        write_episode_csv(out, report, sys, precision);
        return out.str();
      },
      "report"_a, "sys"_a, "precision"_a = 6,
      "Episode trajectory as CSV text (t, states, inputs, phase)");

  // pendula benchmark
  auto mp = m.def_submodule("pendula", "Coupled three-pendula benchmark");
  const auto params_from = [](double mass, double length, double spring,
                              double gravity, std::array<double, 3> damping) {
    pendula::PendulaParams params;
    params.mass = mass;
    params.length = length;
    params.spring = spring;
    params.gravity = gravity;
    params.damping = damping;
    return params;
  };
  mp.def(
      "build",
      [params_from](const std::string& attacker, const std::string& defender,
                    double mass, double length, double spring, double gravity,
                    std::array<double, 3> damping) {
        return pendula::build(params_from(mass, length, spring, gravity, damping),
                              pendula::parse_pendulum_set(attacker),
                              pendula::parse_pendulum_set(defender));
      },
      "attacker"_a, "defender"_a, "mass"_a = 1.0, "length"_a = 1.0,
      "spring"_a = 10.0, "gravity"_a = 10.0,
      "damping"_a = std::array<double, 3>{0.1, 0.1, 0.3},
      "Benchmark system for one attacker/defender selection "
      "(selections: left, middle, right, all, or '+'-joined sets)");
  mp.def(
      "dynamics_matrix",
      [params_from](double mass, double length, double spring, double gravity,
                    std::array<double, 3> damping) {
        return pendula::dynamics_matrix(
            params_from(mass, length, spring, gravity, damping));
      },
      "mass"_a = 1.0, "length"_a = 1.0, "spring"_a = 10.0, "gravity"_a = 10.0,
      "damping"_a = std::array<double, 3>{0.1, 0.1, 0.3});
  mp.def("standard_option_set", [] {
    const pendula::OptionSet set = pendula::standard_option_set();
    return py::make_tuple(set.attackers, set.defenders);
  });
}
