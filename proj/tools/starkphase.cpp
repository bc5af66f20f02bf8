// starkphase: command-line front end for phase calculations and sweeps.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "starkphase/errors.hpp"
#include "starkphase/exact.hpp"
#include "starkphase/sweep.hpp"

namespace sp = starkphase;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitOracle = 3;

// Failure of the numeric oracle itself (as opposed to bad input).
struct OracleFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SystemFlags {
  std::string system = "two-state";
  std::string shape = "gaussian";
  std::string shape_b;
  std::optional<double> omega0;
  std::optional<double> omega0_b;
  std::optional<double> delta;
  std::optional<double> delta2;
  std::optional<double> delta3;
  double gamma = 0.0;

  void attach(CLI::App* app) {
    app->add_option("--system", system, "two-state, ladder or v")->capture_default_str();
    app->add_option("--shape", shape, "gaussian, sech or file:PATH")->capture_default_str();
    app->add_option("--shape-b", shape_b, "shape of the second pulse (default: --shape)");
    app->add_option("--omega0", omega0, "peak Rabi frequency, units of 1/T");
    app->add_option("--omega0-b", omega0_b, "peak of the second pulse (default: --omega0)");
    app->add_option("--delta", delta, "detuning, units of 1/T");
    app->add_option("--delta2", delta2, "three-state: detuning of state 2");
    app->add_option("--delta3", delta3, "three-state: detuning of state 3 (default: 2 delta2)");
    app->add_option("--gamma", gamma, "loss rate of state 2, units of 1/T")->capture_default_str();
  }

  sp::SystemSpec build() const {
    nlohmann::json j;
    const auto variant = sp::variant_from_string(system);
    if (!variant) throw sp::InvalidArgument("unknown system '" + system + "'");
    j["variant"] = std::string(sp::to_string(*variant));
    j["shape"] = shape;
    if (!shape_b.empty()) j["shape_b"] = shape_b;
    if (omega0) j["omega0"] = *omega0;
    if (omega0_b) j["omega0_b"] = *omega0_b;
    if (*variant == sp::SystemVariant::TwoState) {
      if (delta2 || delta3) throw sp::InvalidArgument("--delta2/--delta3 apply to three-state systems");
      if (delta) j["delta"] = *delta;
      j["gamma"] = gamma;
    } else {
      if (delta && delta2) throw sp::InvalidArgument("give --delta or --delta2, not both");
      if (gamma != 0.0) throw sp::InvalidArgument("--gamma applies to the two-state system");
      if (delta2 || delta) j["delta2"] = delta2 ? *delta2 : *delta;
      if (delta3) j["delta3"] = *delta3;
    }
    if (!omega0 && shape.rfind("file:", 0) != 0) throw sp::InvalidArgument("--omega0 is required");
    sp::SystemSpec s = sp::system_from_json(j);
    s.validate();
    return s;
  }

  // Axis value of the point described by the flags, for single-row output.
  double detuning() const {
    if (delta2) return *delta2;
    if (delta) return *delta;
    return 0.0;
  }
};

struct OutputFlags {
  std::string out;
  std::string format = "csv";

  void attach(CLI::App* app) {
    app->add_option("--out", out, "output file (default: stdout)");
    app->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
  }

  template <class Writer>
  void emit(Writer&& write) const {
    if (out.empty()) {
      write(std::cout);
      return;
    }
    std::ofstream f(out);
    if (!f) throw sp::InvalidArgument("cannot open output file " + out);
    write(f);
    if (!f) throw sp::InvalidArgument("failed writing " + out);
  }
};

struct ToleranceFlags {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  std::size_t max_steps = sp::PropagationOptions{}.max_steps;

  void attach(CLI::App* app) {
    app->add_option("--rel-tol", rel_tol, "propagator relative tolerance")->capture_default_str();
    app->add_option("--abs-tol", abs_tol, "propagator absolute tolerance")->capture_default_str();
    app->add_option("--max-steps", max_steps, "propagator step budget per run")->capture_default_str();
  }

  sp::PropagationOptions options() const {
    sp::PropagationOptions o;
    o.rel_tol = rel_tol;
    o.abs_tol = abs_tol;
    o.max_steps = max_steps;
    return o;
  }
};

std::vector<sp::Method> parse_methods(const std::vector<std::string>& tags) {
  std::vector<sp::Method> out;
  for (const auto& t : tags) {
    const auto m = sp::method_from_string(t);
    if (!m) throw sp::InvalidArgument("unknown method '" + t + "'");
    out.push_back(*m);
  }
  return out;
}

// Accepts plain numbers and multiples of pi: "pi", "pi/2", "3pi/4", "2*pi".
double parse_angle(const std::string& text) {
  static const std::regex pi_form(R"(^\s*([0-9.eE+-]*)\s*\*?\s*pi\s*(?:/\s*([0-9.eE+-]+))?\s*$)");
  std::smatch m;
  try {
    if (std::regex_match(text, m, pi_form)) {
      const double num = m[1].length() ? std::stod(m[1].str()) : 1.0;
      const double den = m[2].matched ? std::stod(m[2].str()) : 1.0;
      return num * std::numbers::pi / den;
    }
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw sp::InvalidArgument("cannot parse angle '" + text + "'");
}

void write_sweep(const sp::SweepResult& r, const OutputFlags& o) {
  if (o.format == "json") {
    o.emit([&](std::ostream& s) { s << sp::to_json(r).dump(2) << '\n'; });
    return;
  }
  o.emit([&](std::ostream& s) { sp::write_csv(s, r); });
  if (!o.out.empty()) {
    std::ofstream meta(o.out + ".meta.json");
    if (!meta) throw sp::InvalidArgument("cannot open " + o.out + ".meta.json");
    meta << sp::sweep_metadata(r.spec).dump(2) << '\n';
  }
}

int finish_sweep(const sp::SweepSpec& spec, const OutputFlags& o, unsigned threads) {
  const sp::SweepResult r = sp::run_sweep(spec, threads);
  write_sweep(r, o);
  for (const auto& row : r.rows)
    if (!row.oracle_error.empty()) {
      std::cerr << "starkphase: numeric oracle failed at axis " << row.axis_value << ": " << row.oracle_error
                << '\n';
      return kExitOracle;
    }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Phase shifts of off-resonant pulsed two- and three-state systems"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(STARKPHASE_VERSION));

  unsigned threads = 0;
  app.add_option("--threads", threads, "worker threads for sweeps (0: all cores)");

  // phase
  auto* phase = app.add_subcommand("phase", "All methods at a single parameter point");
  SystemFlags phase_sys;
  OutputFlags phase_out;
  ToleranceFlags phase_tol;
  std::vector<std::string> phase_methods;
  bool phase_oracle = true;
  phase_sys.attach(phase);
  phase_out.attach(phase);
  phase_tol.attach(phase);
  phase->add_option("--method", phase_methods, "method tag (repeatable; default: all applicable)");
  phase->add_flag("--oracle,!--no-oracle", phase_oracle, "include the numeric phase and errors");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Parameter sweep from a JSON spec or from flags");
  SystemFlags sweep_sys;
  OutputFlags sweep_out;
  ToleranceFlags sweep_tol;
  std::string sweep_file;
  std::string sweep_axis = "detuning";
  double sweep_from = 0.0, sweep_to = 0.0;
  std::size_t sweep_points = 200;
  std::string sweep_spacing = "linear";
  std::vector<std::string> sweep_methods;
  bool sweep_oracle = true;
  sweep_sys.attach(sweep);
  sweep_out.attach(sweep);
  sweep_tol.attach(sweep);
  auto* spec_opt = sweep->add_option("--spec", sweep_file, "JSON sweep specification")->check(CLI::ExistingFile);
  sweep->add_option("--axis", sweep_axis, "detuning, rabi or loss")->capture_default_str();
  sweep->add_option("--from", sweep_from, "first grid value (dimensionless)");
  sweep->add_option("--to", sweep_to, "last grid value (dimensionless)");
  sweep->add_option("--points", sweep_points, "number of grid points")->capture_default_str();
  sweep->add_option("--spacing", sweep_spacing, "linear or log")
      ->check(CLI::IsMember({"linear", "log"}))
      ->capture_default_str();
  sweep->add_option("--method", sweep_methods, "method tag (repeatable)");
  sweep->add_flag("--oracle,!--no-oracle", sweep_oracle, "include the numeric oracle");

  // figure
  auto* figure = app.add_subcommand("figure", "Figure-data presets fig2 ... fig7");
  std::string figure_name;
  std::size_t figure_points = 200;
  OutputFlags figure_out;
  ToleranceFlags figure_tol;
  figure->add_option("name", figure_name, "fig2, fig3, fig4, fig5, fig6 or fig7")->required();
  figure->add_option("--points", figure_points, "number of grid points")->capture_default_str();
  figure_out.attach(figure);
  figure_tol.attach(figure);

  // design
  auto* design = app.add_subcommand("design", "Sech pulse and detuning for a target phase");
  std::string design_target;
  int design_n = 1;
  std::string design_system = "two-state";
  OutputFlags design_out;
  ToleranceFlags design_tol;
  design->add_option("--target", design_target, "target phase: radians or forms like pi/2, 3pi/4")->required();
  design->add_option("--n", design_n, "pulse area index (area 2 n pi)")->capture_default_str();
  design->add_option("--system", design_system, "two-state or ladder")->capture_default_str();
  design_out.attach(design);
  design_tol.attach(design);

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Time series of the amplitudes (CSV)");
  SystemFlags sim_sys;
  OutputFlags sim_out;
  ToleranceFlags sim_tol;
  sim_sys.attach(simulate);
  sim_out.attach(simulate);
  sim_tol.attach(simulate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    if (*phase) {
      sp::SystemSpec system = phase_sys.build();
      sp::SweepSpec spec(system);
      spec.axis = sp::SweepAxis::Detuning;
      spec.grid = {system.detuning2 * system.time_unit()};
      spec.methods = phase_methods.empty() ? sp::default_methods(system) : parse_methods(phase_methods);
      spec.oracle = phase_oracle;
      spec.propagation = phase_tol.options();
      spec.name = "phase";
      return finish_sweep(spec, phase_out, 1);
    }

    if (*sweep) {
      std::optional<sp::SweepSpec> spec;
      if (*spec_opt) {
        std::ifstream in(sweep_file);
        nlohmann::json j;
        try {
          in >> j;
        } catch (const nlohmann::json::exception& e) {
          throw sp::InvalidArgument(sweep_file + ": " + e.what());
        }
        spec = sp::sweep_spec_from_json(j);
        if (sweep_out.out.empty() && !spec->output_path.empty()) sweep_out.out = spec->output_path.string();
      } else {
        spec.emplace(sweep_sys.build());
        const auto axis = sp::axis_from_string(sweep_axis);
        if (!axis) throw sp::InvalidArgument("unknown axis '" + sweep_axis + "'");
        spec->axis = *axis;
        spec->grid = sweep_spacing == "log" ? sp::log_grid(sweep_from, sweep_to, sweep_points)
                                            : sp::linear_grid(sweep_from, sweep_to, sweep_points);
        spec->methods = parse_methods(sweep_methods);
        spec->oracle = sweep_oracle;
        spec->propagation = sweep_tol.options();
        spec->validate();
      }
      return finish_sweep(*spec, sweep_out, threads);
    }

    if (*figure) {
      const auto preset = sp::figure_from_string(figure_name);
      if (!preset) throw sp::InvalidArgument("unknown figure '" + figure_name + "'");
      sp::SweepSpec spec = sp::figure_preset(*preset, figure_points);
      spec.propagation = figure_tol.options();
      return finish_sweep(spec, figure_out, threads);
    }

    if (*design) {
      const auto variant = sp::variant_from_string(design_system);
      if (!variant) throw sp::InvalidArgument("unknown system '" + design_system + "'");
      sp::DesignReport r;
      try {
        r = sp::design_command(parse_angle(design_target), design_n, *variant, design_tol.options());
      } catch (const sp::StiffnessError& e) {
        throw OracleFailure(e.what());
      } catch (const sp::ToleranceError& e) {
        throw OracleFailure(e.what());
      }
      nlohmann::json j{{"system", std::string(sp::to_string(r.variant))},
                       {"n", r.n},
                       {"target_phase", r.target_phase},
                       {"alpha", r.alpha},
                       {"delta", r.delta},
                       {"pulse_area", r.pulse_area},
                       {"exact_phase", r.exact_phase},
                       {"numeric_phase", r.numeric_phase},
                       {"phase_residual", r.phase_residual},
                       {"residual_transition", r.residual_transition}};
      design_out.emit([&](std::ostream& s) {
        if (design_out.format == "json") {
          s << j.dump(2) << '\n';
          return;
        }
        s.precision(17);
        s << "system,n,target_phase,alpha,delta,pulse_area,exact_phase,numeric_phase,phase_residual,"
             "residual_transition\n"
          << j["system"].get<std::string>() << ',' << r.n << ',' << r.target_phase << ',' << r.alpha << ','
          << r.delta << ',' << r.pulse_area << ',' << r.exact_phase << ',' << r.numeric_phase << ','
          << r.phase_residual << ',' << r.residual_transition << '\n';
      });
      return kExitOk;
    }

    if (*simulate) {
      const sp::SystemSpec system = sim_sys.build();
      sp::PropagationResult r;
      try {
        r = sp::propagate_ground(system, sim_tol.options());
      } catch (const sp::StiffnessError& e) {
        throw OracleFailure(e.what());
      } catch (const sp::ToleranceError& e) {
        throw OracleFailure(e.what());
      }
      sim_out.emit([&](std::ostream& s) {
        if (sim_out.format == "csv") {
          sp::write_time_series_csv(s, r);
          return;
        }
        nlohmann::json series = nlohmann::json::array();
        for (const auto& smp : r.time_series) {
          nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
          for (Eigen::Index k = 0; k < smp.amplitudes.size(); ++k) {
            re.push_back(smp.amplitudes[k].real());
            im.push_back(smp.amplitudes[k].imag());
          }
          series.push_back({{"t", smp.t}, {"re", re}, {"im", im}, {"phase1", smp.phase1}});
        }
        s << nlohmann::json{{"phase1", r.phase1},
                            {"populations", r.populations},
                            {"norm_defect", r.norm_defect},
                            {"series", series}}
                 .dump(2)
          << '\n';
      });
      return kExitOk;
    }
  } catch (const OracleFailure& e) {
    std::cerr << "starkphase: numeric oracle failed: " << e.what() << '\n';
    return kExitOracle;
  } catch (const sp::Error& e) {
    std::cerr << "starkphase: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "starkphase: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitOk;
}
