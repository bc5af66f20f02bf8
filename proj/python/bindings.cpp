#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "starkphase/approx.hpp"
#include "starkphase/dynamics.hpp"
#include "starkphase/errors.hpp"
#include "starkphase/exact.hpp"
#include "starkphase/pulse.hpp"
#include "starkphase/specfn.hpp"
#include "starkphase/sweep.hpp"

namespace py = pybind11;
namespace sp = starkphase;
using namespace pybind11::literals;

namespace {

sp::Method method_arg(const std::string& tag) {
  const auto m = sp::method_from_string(tag);
  if (!m) throw sp::InvalidArgument("unknown method '" + tag + "'");
  return *m;
}

sp::PropagationOptions prop_options(double rel_tol, double abs_tol, bool keep) {
  sp::PropagationOptions o;
  o.rel_tol = rel_tol;
  o.abs_tol = abs_tol;
  o.keep_time_series = keep;
  return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Phase shifts of off-resonant pulsed two- and three-state systems";
  m.attr("__version__") = STARKPHASE_VERSION;

  auto base = py::register_exception<sp::Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<sp::InvalidArgument>(m, "InvalidArgument", base.ptr());
  py::register_exception<sp::PoleError>(m, "PoleError", base.ptr());
  py::register_exception<sp::ZeroDetuningError>(m, "ZeroDetuningError", base.ptr());
  py::register_exception<sp::ThresholdUndefined>(m, "ThresholdUndefined", base.ptr());
  py::register_exception<sp::TwoPhotonPoleError>(m, "TwoPhotonPoleError", base.ptr());
  py::register_exception<sp::DegenerateError>(m, "DegenerateError", base.ptr());
  py::register_exception<sp::BranchCrossError>(m, "BranchCrossError", base.ptr());
  py::register_exception<sp::UnattainableError>(m, "UnattainableError", base.ptr());
  py::register_exception<sp::StiffnessError>(m, "StiffnessError", base.ptr());
  py::register_exception<sp::ToleranceError>(m, "ToleranceError", base.ptr());
  py::register_exception<sp::QuadratureError>(m, "QuadratureError", base.ptr());

  py::class_<sp::PulseShape>(m, "PulseShape")
      .def_static("gaussian", &sp::PulseShape::gaussian, "omega0"_a, "width"_a = 1.0)
      .def_static("sech", &sp::PulseShape::sech, "omega0"_a, "width"_a = 1.0)
      .def_static("tabulated", &sp::PulseShape::tabulated, "samples"_a)
      .def_static("from_csv", &sp::load_pulse_csv, "path"_a)
      .def_property_readonly("omega0", &sp::PulseShape::omega0)
      .def_property_readonly("width", &sp::PulseShape::width)
      .def_property_readonly("kind",
                             [](const sp::PulseShape& p) {
                               switch (p.kind()) {
                                 case sp::PulseKind::Gaussian: return "gaussian";
                                 case sp::PulseKind::Sech: return "sech";
                                 default: return "tabulated";
                               }
                             })
      .def("with_omega0", &sp::PulseShape::with_omega0, "omega0"_a)
      .def("value", &sp::PulseShape::value, "t"_a)
      .def("deriv", &sp::PulseShape::deriv, "t"_a)
      .def("second_deriv", &sp::PulseShape::second_deriv, "t"_a)
      .def(
          "support_window",
          [](const sp::PulseShape& p, double tol) {
            const auto w = p.support_window(tol);
            return py::make_tuple(w.t_initial, w.t_final);
          },
          "tol"_a = sp::kDefaultWindowTol)
      .def(
          "area",
          [](const sp::PulseShape& p, double tol) { return sp::pulse_area(p, p.support_window(tol)); },
          "tol"_a = sp::kDefaultWindowTol);

  py::class_<sp::SystemSpec>(m, "SystemSpec")
      .def_static("two_state", &sp::SystemSpec::two_state, "pulse"_a, "delta"_a, "gamma"_a = 0.0)
      .def_static("ladder", &sp::SystemSpec::ladder, "pulse12"_a, "pulse23"_a, "delta2"_a, "delta3"_a)
      .def_static("v_system", &sp::SystemSpec::v_system, "pulse12"_a, "pulse13"_a, "delta2"_a, "delta3"_a)
      .def_property_readonly("variant", [](const sp::SystemSpec& s) { return std::string(sp::to_string(s.variant)); })
      .def_readonly("delta2", &sp::SystemSpec::detuning2)
      .def_readonly("delta3", &sp::SystemSpec::detuning3)
      .def_readonly("gamma", &sp::SystemSpec::loss_rate)
      .def_property_readonly("dimension", &sp::SystemSpec::dimension)
      .def("hamiltonian", [](const sp::SystemSpec& s, double t) { return sp::hamiltonian(s, t); }, "t"_a);

  py::class_<sp::PropagationResult>(m, "PropagationResult")
      .def_readonly("final_amplitudes", &sp::PropagationResult::final_amplitudes)
      .def_readonly("populations", &sp::PropagationResult::populations)
      .def_readonly("phase1", &sp::PropagationResult::phase1)
      .def_readonly("norm_defect", &sp::PropagationResult::norm_defect)
      .def_readonly("peak_excitation", &sp::PropagationResult::peak_excitation)
      .def_property_readonly("times",
                             [](const sp::PropagationResult& r) {
                               std::vector<double> t;
                               for (const auto& s : r.time_series) t.push_back(s.t);
                               return t;
                             })
      .def_property_readonly("phase_series", [](const sp::PropagationResult& r) {
        std::vector<double> p;
        for (const auto& s : r.time_series) p.push_back(s.phase1);
        return p;
      });

  m.def(
      "propagate",
      [](const sp::SystemSpec& s, double rel_tol, double abs_tol, bool keep) {
        py::gil_scoped_release release;
        return sp::propagate_ground(s, prop_options(rel_tol, abs_tol, keep));
      },
      "system"_a, "rel_tol"_a = 1e-10, "abs_tol"_a = 1e-12, "keep_time_series"_a = false,
      "Propagate from state 1 and return the time-unwrapped phase of c1.");

  m.def("phase_ae", [](const sp::PulseShape& p, double d) { return sp::phase_ae(p, d).phase; }, "pulse"_a, "delta"_a);
  m.def("phase_ae2", [](const sp::PulseShape& p, double d) { return sp::phase_ae2(p, d).phase; }, "pulse"_a, "delta"_a);
  m.def("phase_adiabatic", [](const sp::PulseShape& p, double d) { return sp::phase_adiabatic(p, d).phase; },
        "pulse"_a, "delta"_a);
  m.def("phase_superadiabatic",
        [](const sp::PulseShape& p, double d) { return sp::phase_superadiabatic(p, d).phase; }, "pulse"_a,
        "delta"_a);
  m.def(
      "phase_lossy",
      [](const sp::PulseShape& p, double d, double g) {
        const auto e = sp::phase_and_population_lossy(p, d, g);
        return py::make_tuple(e.phase, e.population1);
      },
      "pulse"_a, "delta"_a, "gamma"_a, "Returns (phase, population1).");
  m.def("phase_adiabatic3", [](const sp::SystemSpec& s) { return sp::phase_adiabatic3(s).phase; }, "system"_a);
  m.def(
      "evaluate",
      [](const sp::SystemSpec& s, const std::string& tag) {
        const auto e = sp::evaluate_method(s, method_arg(tag));
        return py::make_tuple(e.phase, e.population1);
      },
      "system"_a, "method"_a, "Approximate or exact phase by method tag; returns (phase, population1).");
  m.def("quasienergies_ladder", &sp::quasienergies_ladder, "omega12"_a, "omega23"_a, "delta2"_a, "delta3"_a);
  m.def("quasienergies_v", &sp::quasienergies_v, "omega12"_a, "omega13"_a, "delta2"_a, "delta3"_a);

  m.def("log_gamma", &sp::log_gamma, "z"_a);
  m.def("rz_phase", &sp::rz_phase, "alpha"_a, "delta"_a);
  m.def("rz_phase_continued", &sp::rz_phase_continued, "alpha"_a, "delta"_a, "steps"_a = 256);
  m.def("rz_phase_zero_transition", &sp::rz_phase_zero_transition, "n"_a, "delta"_a);
  m.def("rz_asymptotic_phase", &sp::rz_asymptotic_phase, "alpha"_a, "delta"_a);
  m.def("design_detuning", &sp::design_detuning, "target_phase"_a, "n"_a);
  m.def("ladder_exact_phase", &sp::ladder_exact_phase, "alpha"_a, "delta"_a);
  m.def(
      "v_exact_phase",
      [](double alpha, double delta, double k12, double k13) {
        return sp::v_exact_phase({alpha, delta, k12, k13});
      },
      "alpha"_a, "delta"_a, "kappa12"_a = 1.0, "kappa13"_a = 1.0);

  // Sweep layer: JSON text in and out; the Python wrapper converts to dicts.
  m.def(
      "_run_sweep_json",
      [](const std::string& spec, unsigned threads) {
        const auto s = sp::sweep_spec_from_json(nlohmann::json::parse(spec));
        py::gil_scoped_release release;
        return sp::to_json(sp::run_sweep(s, threads)).dump();
      },
      "spec"_a, "threads"_a = 0);
  m.def(
      "_figure_json",
      [](const std::string& name, std::size_t points, unsigned threads) {
        const auto preset = sp::figure_from_string(name);
        if (!preset) throw sp::InvalidArgument("unknown figure '" + name + "'");
        const auto s = sp::figure_preset(*preset, points);
        py::gil_scoped_release release;
        return sp::to_json(sp::run_sweep(s, threads)).dump();
      },
      "name"_a, "points"_a = 200, "threads"_a = 0);
  m.def(
      "_figure_csv",
      [](const std::string& name, std::size_t points) {
        const auto preset = sp::figure_from_string(name);
        if (!preset) throw sp::InvalidArgument("unknown figure '" + name + "'");
        std::ostringstream out;
        sp::write_csv(out, sp::run_sweep(sp::figure_preset(*preset, points)));
        return out.str();
      },
      "name"_a, "points"_a = 200);
  m.def(
      "design",
      [](double target, int n, const std::string& system) {
        const auto v = sp::variant_from_string(system);
        if (!v) throw sp::InvalidArgument("unknown system '" + system + "'");
        const auto r = sp::design_command(target, n, *v);
        py::dict d;
        d["system"] = std::string(sp::to_string(r.variant));
        d["n"] = r.n;
        d["target_phase"] = r.target_phase;
        d["alpha"] = r.alpha;
        d["delta"] = r.delta;
        d["pulse_area"] = r.pulse_area;
        d["exact_phase"] = r.exact_phase;
        d["numeric_phase"] = r.numeric_phase;
        d["phase_residual"] = r.phase_residual;
        d["residual_transition"] = r.residual_transition;
        return d;
      },
      "target_phase"_a, "n"_a = 1, "system"_a = "two_state");
}
