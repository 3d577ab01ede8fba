#include "resilim/cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "resilim/errors.hpp"
#include "resilim/gramian.hpp"
#include "resilim/model.hpp"
#include "resilim/pendula.hpp"
#include "resilim/resilience.hpp"
#include "resilim/simulate.hpp"

namespace resilim::cli {

namespace {

using nlohmann::json;

// "pendula:<attacker>/<defender>" builds the benchmark; anything else is
// a system document path.
LtiSystem resolve_system(const std::string& text) {
  const std::string prefix = "pendula:";
  if (text.rfind(prefix, 0) == 0) {
    const std::string rest = text.substr(prefix.size());
    const auto slash = rest.find('/');
    if (slash == std::string::npos) {
      throw ParseError("pendula selector must look like pendula:<attacker>/<defender>");
    }
    return pendula::build({}, pendula::parse_pendulum_set(rest.substr(0, slash)),
                          pendula::parse_pendulum_set(rest.substr(slash + 1)));
  }
  return load_system_file(text);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream stream(text);
  std::string token;
  while (std::getline(stream, token, sep)) {
    parts.push_back(token);
  }
  return parts;
}

double parse_number(const std::string& text) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ParseError("not a number: '" + text + "'");
  }
  if (used != text.size()) {
    throw ParseError("not a number: '" + text + "'");
  }
  return value;
}

std::string format_number(double v, int precision) {
  if (std::isnan(v)) {
    return "nan";
  }
  if (std::isinf(v)) {
    return v > 0 ? "inf" : "-inf";
  }
  std::ostringstream s;
  s << std::setprecision(precision) << v;
  return s.str();
}

std::string format_vector(const Eigen::VectorXd& v, int precision) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i > 0) {
      out += ", ";
    }
    out += format_number(v(i), precision);
  }
  return out + "]";
}

// JSON value for possibly-infinite scalars: the sentinel becomes the
// string "inf" so documents stay valid JSON.
json json_scalar(double v) {
  if (std::isnan(v)) {
    return json("nan");
  }
  if (std::isinf(v)) {
    return json(v > 0 ? "inf" : "-inf");
  }
  return json(v);
}

json json_vector(const Eigen::VectorXd& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    arr.push_back(v(i));
  }
  return arr;
}

json json_matrix(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    rows.push_back(json_vector(m.row(i).transpose()));
  }
  return rows;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream file(path);
  if (!file) {
    throw ParseError("cannot open output file: " + path);
  }
  file << content;
  if (!file) {
    throw ParseError("failed writing output file: " + path);
  }
}

// Shared --span / --attack-span / --defense-span trio.
struct SpanOptions {
  double attack = 0.0;
  double defense = 0.0;
  double both = 0.0;

  void add_to(CLI::App* cmd, double default_both = 0.0) {
    both = default_both;
    cmd->add_option("--attack-span", attack, "Attack window length (s)");
    cmd->add_option("--defense-span", defense, "Defense window length (s)");
    cmd->add_option("--span", both, "Set both windows at once (s)");
  }

  double attack_span() const { return attack > 0.0 ? attack : both; }
  double defense_span() const { return defense > 0.0 ? defense : both; }

  void require() const {
    if (!(attack_span() > 0.0) || !(defense_span() > 0.0)) {
      throw ParseError("attack and defense spans must be given and positive "
                       "(--span or --attack-span/--defense-span)");
    }
  }
};

NamedMatrices resolve_options(const std::string& csv_list, bool defender) {
  NamedMatrices options;
  for (const std::string& token : split(csv_list, ',')) {
    const pendula::PendulumSet set = pendula::parse_pendulum_set(token);
    Eigen::MatrixXd b = defender ? pendula::defend_matrix({}, set)
                                 : pendula::attack_matrix({}, set);
    options.emplace_back(pendula::to_string(set), std::move(b));
  }
  if (options.empty()) {
    throw ParseError("option list must not be empty");
  }
  return options;
}

std::vector<double> resolve_deltas(const std::string& deltas,
                                   const std::string& log_range) {
  if (!deltas.empty() && !log_range.empty()) {
    throw ParseError("--deltas and --log-range are mutually exclusive");
  }
  std::vector<double> out;
  if (!deltas.empty()) {
    for (const std::string& token : split(deltas, ',')) {
      out.push_back(parse_number(token));
    }
  } else if (!log_range.empty()) {
    const std::vector<std::string> parts = split(log_range, ':');
    if (parts.size() != 3) {
      throw ParseError("--log-range must look like <min>:<max>:<count>");
    }
    const double lo = parse_number(parts[0]);
    const double hi = parse_number(parts[1]);
    const int count = static_cast<int>(parse_number(parts[2]));
    if (!(lo > 0.0) || !(hi >= lo) || count < 1) {
      throw ParseError("--log-range needs 0 < min <= max and count >= 1");
    }
    for (int i = 0; i < count; ++i) {
      const double f = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
      out.push_back(std::pow(10.0, std::log10(lo) + f * (std::log10(hi) - std::log10(lo))));
    }
  } else {
    throw ParseError("give --deltas or --log-range");
  }
  for (const double dt : out) {
    if (!(dt > 0.0)) {
      throw ParseError("sweep spans must be positive");
    }
  }
  return out;
}

json episode_report_json(const ScenarioReport& report) {
  json doc;
  doc["kind"] = report.kind == EpisodeKind::min_energy ? "min-energy" : "lq-feedback";
  doc["attack_energy"] = report.attack_energy;
  doc["defense_energy"] = report.defense_energy;
  doc["measured_ratio"] =
      report.ratio_defined ? json_scalar(report.measured_ratio) : json(nullptr);
  doc["theoretical_rho"] = json_scalar(report.theoretical_rho);
  doc["terminal_error"] = report.terminal_error;
  doc["attack_horizon"] = report.attack_horizon;
  doc["defense_horizon"] = report.defense_horizon;
  return doc;
}

void print_episode_summary(std::ostream& out, const ScenarioReport& report,
                           int precision) {
  out << "attack_energy = " << format_number(report.attack_energy, precision) << "\n"
      << "defense_energy = " << format_number(report.defense_energy, precision) << "\n";
  if (report.ratio_defined) {
    out << "measured_ratio = " << format_number(report.measured_ratio, precision) << "\n";
  } else {
    out << "measured_ratio = undefined (zero-energy episode)\n";
  }
  out << "theoretical_rho = " << format_number(report.theoretical_rho, precision) << "\n"
      << "terminal_error = " << format_number(report.terminal_error, precision) << "\n";
}

void maybe_write_trajectory(const std::string& path, const ScenarioReport& report,
                            const LtiSystem& sys, int precision) {
  if (path.empty()) {
    return;
  }
  std::ostringstream csv;
  write_episode_csv(csv, report, sys, precision);
  write_text_file(path, csv.str());
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"resilim: control-energy resilience of LTI systems under attack"};
  app.require_subcommand(1);
  int seed = 0;
  app.add_option("--seed", seed,
                 "Seed reserved for randomized subcommands (kept for "
                 "reproducible invocation records)");

  try {
    // ---- index ---------------------------------------------------------
    auto* index_cmd =
        app.add_subcommand("index", "Resilience index of one system");
    struct {
      std::string system;
      SpanOptions spans;
      int steps = 0;
      int precision = 6;
      std::string output;
    } index_cfg;
    index_cmd->add_option("--system", index_cfg.system,
                          "System document path or pendula:<att>/<def>")
        ->required();
    index_cfg.spans.add_to(index_cmd);
    index_cmd->add_option("--steps", index_cfg.steps, "Gramian integrator steps");
    index_cmd->add_option("--output", index_cfg.output, "Write a JSON result document");
    index_cmd->add_option("--precision", index_cfg.precision, "Printed significant digits");
    index_cmd->callback([&] {
      index_cfg.spans.require();
      const LtiSystem sys = resolve_system(index_cfg.system);
      const ResilienceResult res =
          resilience_index(sys, index_cfg.spans.attack_span(),
                           index_cfg.spans.defense_span(), index_cfg.steps);
      if (!res.a_stable) {
        err << "warning: A is not stable; the index is evaluated mechanically\n";
      }
      if (res.degenerate) {
        err << "warning: lambda_max is numerically multiple; "
               "x_worst is one minimizer of many\n";
      }
      const int p = index_cfg.precision;
      out << "rho = " << format_number(res.rho, p) << "\n"
          << "lambda_max = " << format_number(res.lambda_max, p) << "\n"
          << "x_worst = " << format_vector(res.x_worst, p) << "\n";
      if (!index_cfg.output.empty()) {
        json doc;
        doc["rho"] = json_scalar(res.rho);
        doc["lambda_max"] = res.lambda_max;
        doc["x_worst"] = json_vector(res.x_worst);
        doc["attack_horizon"] = res.attack_horizon;
        doc["defense_horizon"] = res.defense_horizon;
        doc["degenerate"] = res.degenerate;
        doc["a_stable"] = res.a_stable;
        write_text_file(index_cfg.output, doc.dump(2) + "\n");
      }
    });

    // ---- table ---------------------------------------------------------
    auto* table_cmd = app.add_subcommand(
        "table", "Attacker x defender table of resilience indices (pendula options)");
    struct {
      std::string attackers = "left,middle,right,all";
      std::string defenders = "left,middle,right,all";
      SpanOptions spans;
      int steps = 0;
      int precision = 6;
      std::string output;
    } table_cfg;
    table_cmd->add_option("--attackers", table_cfg.attackers,
                          "Comma-separated attacker options");
    table_cmd->add_option("--defenders", table_cfg.defenders,
                          "Comma-separated defender options");
    table_cfg.spans.add_to(table_cmd, 15.0);
    table_cmd->add_option("--steps", table_cfg.steps, "Gramian integrator steps");
    table_cmd->add_option("--output", table_cfg.output, "Write the CSV to a file");
    table_cmd->add_option("--precision", table_cfg.precision, "Printed significant digits");
    table_cmd->callback([&] {
      table_cfg.spans.require();
      const Eigen::MatrixXd a = pendula::dynamics_matrix({});
      const NamedMatrices attackers = resolve_options(table_cfg.attackers, false);
      const NamedMatrices defenders = resolve_options(table_cfg.defenders, true);
      const PlacementTable table =
          placement_table(a, attackers, defenders, table_cfg.spans.attack_span(),
                          table_cfg.spans.defense_span(), table_cfg.steps);
      for (std::size_t j = 0; j < table.defender_names.size(); ++j) {
        if (!table.defender_controllable[j]) {
          err << "note: defender option '" << table.defender_names[j]
              << "' is not controllable; its cells are reported as nan\n";
        }
      }
      std::ostringstream csv;
      csv << "attacker\\defender";
      for (const std::string& name : table.defender_names) {
        csv << ',' << name;
      }
      csv << '\n';
      for (Eigen::Index i = 0; i < table.rho.rows(); ++i) {
        csv << table.attacker_names[i];
        for (Eigen::Index j = 0; j < table.rho.cols(); ++j) {
          csv << ',' << format_number(table.rho(i, j), table_cfg.precision);
        }
        csv << '\n';
      }
      out << csv.str();
      if (!table_cfg.output.empty()) {
        write_text_file(table_cfg.output, csv.str());
      }
    });

    // ---- sweep ---------------------------------------------------------
    auto* sweep_cmd = app.add_subcommand(
        "sweep", "rho(0, dt, 2dt) over a list of window lengths");
    struct {
      std::string system;
      std::string attacker = "all";
      std::string defenders = "left,middle,right,all";
      std::string deltas;
      std::string log_range;
      int steps = 0;
      int precision = 6;
      std::string output;
    } sweep_cfg;
    sweep_cmd->add_option("--system", sweep_cfg.system,
                          "Sweep one explicit system instead of pendula options");
    sweep_cmd->add_option("--attacker", sweep_cfg.attacker,
                          "Pendula attacker option (ignored with --system)");
    sweep_cmd->add_option("--defenders", sweep_cfg.defenders,
                          "Pendula defender options, one column each");
    sweep_cmd->add_option("--deltas", sweep_cfg.deltas, "Comma-separated dt list (s)");
    sweep_cmd->add_option("--log-range", sweep_cfg.log_range,
                          "Log-spaced dt range <min>:<max>:<count>");
    sweep_cmd->add_option("--steps", sweep_cfg.steps, "Gramian integrator steps");
    sweep_cmd->add_option("--output", sweep_cfg.output, "Write the CSV to a file");
    sweep_cmd->add_option("--precision", sweep_cfg.precision, "Printed significant digits");
    sweep_cmd->callback([&] {
      const std::vector<double> deltas =
          resolve_deltas(sweep_cfg.deltas, sweep_cfg.log_range);
      std::vector<std::string> columns;
      std::vector<LtiSystem> systems;
      if (!sweep_cfg.system.empty()) {
        columns.push_back("rho");
        systems.push_back(resolve_system(sweep_cfg.system));
      } else {
        const pendula::PendulumSet attacker =
            pendula::parse_pendulum_set(sweep_cfg.attacker);
        for (const std::string& token : split(sweep_cfg.defenders, ',')) {
          const pendula::PendulumSet defender = pendula::parse_pendulum_set(token);
          columns.push_back(pendula::to_string(defender));
          systems.push_back(pendula::build({}, attacker, defender));
        }
      }
      std::ostringstream csv;
      csv << "dt";
      for (const std::string& name : columns) {
        csv << ',' << name;
      }
      csv << '\n';
      for (const double dt : deltas) {
        csv << format_number(dt, sweep_cfg.precision);
        for (const LtiSystem& sys : systems) {
          const ResilienceResult res =
              resilience_index(sys, dt, dt, sweep_cfg.steps);
          csv << ',' << format_number(res.rho, sweep_cfg.precision);
        }
        csv << '\n';
      }
      out << csv.str();
      if (!sweep_cfg.output.empty()) {
        write_text_file(sweep_cfg.output, csv.str());
      }
    });

    // ---- episode -------------------------------------------------------
    auto* episode_cmd = app.add_subcommand(
        "episode", "Minimum-energy attack followed by minimum-energy restoration");
    struct {
      std::string system;
      SpanOptions spans;
      double scale = 1.0;
      int samples = 2000;
      int precision = 6;
      std::string trajectory;
      std::string output;
    } episode_cfg;
    episode_cmd->add_option("--system", episode_cfg.system,
                            "System document path or pendula:<att>/<def>")
        ->required();
    episode_cfg.spans.add_to(episode_cmd);
    episode_cmd->add_option("--scale", episode_cfg.scale,
                            "Scale factor on the worst-case displacement");
    episode_cmd->add_option("--samples", episode_cfg.samples,
                            "Sample intervals per phase");
    episode_cmd->add_option("--trajectory", episode_cfg.trajectory,
                            "Write the episode CSV to a file");
    episode_cmd->add_option("--output", episode_cfg.output, "Write a JSON report");
    episode_cmd->add_option("--precision", episode_cfg.precision,
                            "Printed significant digits");
    episode_cmd->callback([&] {
      episode_cfg.spans.require();
      const LtiSystem sys = resolve_system(episode_cfg.system);
      const ScenarioReport report = run_min_energy_episode(
          sys, episode_cfg.scale, episode_cfg.spans.attack_span(),
          episode_cfg.spans.defense_span(), episode_cfg.samples);
      print_episode_summary(out, report, episode_cfg.precision);
      maybe_write_trajectory(episode_cfg.trajectory, report, sys,
                             episode_cfg.precision);
      if (!episode_cfg.output.empty()) {
        write_text_file(episode_cfg.output, episode_report_json(report).dump(2) + "\n");
      }
    });

    // ---- lq-episode ----------------------------------------------------
    auto* lq_cmd = app.add_subcommand(
        "lq-episode", "Minimum-energy attack against an always-on LQ feedback");
    struct {
      std::string system;
      std::string attacker = "all";
      std::string defender = "left";
      double attack_span = 0.0;
      double observe = 0.0;
      double target_time = 4.73;
      double r_scale = 0.0;
      int samples = 4000;
      int precision = 6;
      std::string trajectory;
      std::string output;
    } lq_cfg;
    lq_cmd->add_option("--system", lq_cfg.system,
                       "System document path or pendula:<att>/<def>");
    lq_cmd->add_option("--attacker", lq_cfg.attacker,
                       "Pendula attacker option (ignored with --system)");
    lq_cmd->add_option("--defender", lq_cfg.defender,
                       "Pendula defender option (ignored with --system)");
    lq_cmd->add_option("--attack-span", lq_cfg.attack_span, "Attack window (s)")
        ->required();
    lq_cmd->add_option("--observe", lq_cfg.observe,
                       "Episode end time; feedback stays active throughout (s)")
        ->required();
    lq_cmd->add_option("--target-time", lq_cfg.target_time,
                       "Calibrate R so the closed-loop characteristic time hits this");
    lq_cmd->add_option("--r-scale", lq_cfg.r_scale,
                       "Use R = r*I directly and skip calibration");
    lq_cmd->add_option("--samples", lq_cfg.samples, "Sample intervals for the episode");
    lq_cmd->add_option("--trajectory", lq_cfg.trajectory,
                       "Write the episode CSV to a file");
    lq_cmd->add_option("--output", lq_cfg.output, "Write a JSON report");
    lq_cmd->add_option("--precision", lq_cfg.precision, "Printed significant digits");
    lq_cmd->callback([&] {
      const LtiSystem sys =
          lq_cfg.system.empty()
              ? resolve_system("pendula:" + lq_cfg.attacker + "/" + lq_cfg.defender)
              : resolve_system(lq_cfg.system);
      const double r_scale = lq_cfg.r_scale > 0.0
                                 ? lq_cfg.r_scale
                                 : calibrate_lqr_scale(sys, lq_cfg.target_time);
      const Eigen::Index n = sys.n();
      const Eigen::Index m = sys.defend_inputs();
      const LqController controller =
          design_lqr(sys, Eigen::MatrixXd::Identity(n, n),
                     r_scale * Eigen::MatrixXd::Identity(m, m));
      if (!controller.note.empty()) {
        err << "note: " << controller.note << "\n";
      }
      const ScenarioReport report = run_lq_episode(
          sys, controller, lq_cfg.attack_span, lq_cfg.observe, lq_cfg.samples);
      const int p = lq_cfg.precision;
      out << "r_scale = " << format_number(r_scale, p) << "\n"
          << "closed_loop_time = "
          << format_number(characteristic_time(sys.a - sys.b_defend * controller.gain), p)
          << "\n";
      print_episode_summary(out, report, p);
      maybe_write_trajectory(lq_cfg.trajectory, report, sys, p);
      if (!lq_cfg.output.empty()) {
        json doc = episode_report_json(report);
        doc["r_scale"] = r_scale;
        doc["closed_loop_abscissa"] = controller.closed_loop_abscissa;
        doc["index_basis"] = "closed-loop";  // rho evaluated on A - Bd K
        write_text_file(lq_cfg.output, doc.dump(2) + "\n");
      }
    });

    // ---- pendula -------------------------------------------------------
    auto* pendula_cmd = app.add_subcommand(
        "pendula", "Emit the coupled-pendula benchmark as a system document");
    struct {
      std::string attacker = "all";
      std::string defender = "all";
      double mass = 1.0, length = 1.0, spring = 10.0, gravity = 10.0;
      std::string damping;
      std::string output;
    } pendula_cfg;
    pendula_cmd->add_option("--attacker", pendula_cfg.attacker, "Attacker selection");
    pendula_cmd->add_option("--defender", pendula_cfg.defender, "Defender selection");
    pendula_cmd->add_option("--mass", pendula_cfg.mass, "Pendulum mass (kg)");
    pendula_cmd->add_option("--length", pendula_cfg.length, "Pendulum length (m)");
    pendula_cmd->add_option("--spring", pendula_cfg.spring, "Coupling spring (N/m)");
    pendula_cmd->add_option("--gravity", pendula_cfg.gravity, "Gravity (m/s^2)");
    pendula_cmd->add_option("--damping", pendula_cfg.damping,
                            "Comma-separated damping triple (1/s)");
    pendula_cmd->add_option("--output", pendula_cfg.output,
                            "Write the document to a file instead of stdout");
    pendula_cmd->callback([&] {
      pendula::PendulaParams params;
      params.mass = pendula_cfg.mass;
      params.length = pendula_cfg.length;
      params.spring = pendula_cfg.spring;
      params.gravity = pendula_cfg.gravity;
      if (!pendula_cfg.damping.empty()) {
        const std::vector<std::string> parts = split(pendula_cfg.damping, ',');
        if (parts.size() != 3) {
          throw ParseError("--damping needs exactly three values");
        }
        for (int i = 0; i < 3; ++i) {
          params.damping[i] = parse_number(parts[i]);
        }
      }
      const LtiSystem sys =
          pendula::build(params, pendula::parse_pendulum_set(pendula_cfg.attacker),
                         pendula::parse_pendulum_set(pendula_cfg.defender));
      if (pendula_cfg.output.empty()) {
        save_system(sys, out);
      } else {
        std::ostringstream doc;
        save_system(sys, doc);
        write_text_file(pendula_cfg.output, doc.str());
      }
    });

    // ---- gramian -------------------------------------------------------
    auto* gramian_cmd = app.add_subcommand(
        "gramian", "Controllability Gramian of the attack or defense pair");
    struct {
      std::string system;
      std::string role = "attack";
      double span = 0.0;
      int steps = 0;
      std::string format = "json";
      int precision = 6;
      std::string output;
    } gramian_cfg;
    gramian_cmd->add_option("--system", gramian_cfg.system,
                            "System document path or pendula:<att>/<def>")
        ->required();
    gramian_cmd->add_option("--role", gramian_cfg.role, "attack or defend")
        ->check(CLI::IsMember({"attack", "defend"}));
    gramian_cmd->add_option("--span", gramian_cfg.span, "Window length (s)")->required();
    gramian_cmd->add_option("--steps", gramian_cfg.steps, "Gramian integrator steps");
    gramian_cmd->add_option("--format", gramian_cfg.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    gramian_cmd->add_option("--output", gramian_cfg.output, "Write to a file");
    gramian_cmd->add_option("--precision", gramian_cfg.precision,
                            "Significant digits for csv output");
    gramian_cmd->callback([&] {
      const LtiSystem sys = resolve_system(gramian_cfg.system);
      const Eigen::MatrixXd& b =
          gramian_cfg.role == "attack" ? sys.b_attack : sys.b_defend;
      const Gramian g = gramian(sys.a, b, gramian_cfg.span, gramian_cfg.steps);
      std::string text;
      if (gramian_cfg.format == "json") {
        json doc;
        doc["role"] = gramian_cfg.role;
        doc["horizon"] = g.horizon;
        doc["rank"] = g.numerical_rank;
        doc["eigenvalues"] = json_vector(g.eigenvalues);
        doc["w"] = json_matrix(g.w);
        text = doc.dump(2) + "\n";
      } else {
        std::ostringstream csv;
        for (Eigen::Index i = 0; i < g.w.rows(); ++i) {
          for (Eigen::Index j = 0; j < g.w.cols(); ++j) {
            csv << (j > 0 ? "," : "") << format_number(g.w(i, j), gramian_cfg.precision);
          }
          csv << '\n';
        }
        text = csv.str();
      }
      out << text;
      if (!gramian_cfg.output.empty()) {
        write_text_file(gramian_cfg.output, text);
      }
    });

    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e, out, err);  // --help and friends
    }
    app.exit(e, out, err);
    return kExitInputError;
  } catch (const UncontrollableError& e) {
    err << "error: " << e.what() << "\n";
    return kExitModelError;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumericalError;
  }
  return kExitOk;
}

}  // namespace resilim::cli
