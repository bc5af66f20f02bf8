#include "starkphase/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>

#include "starkphase/errors.hpp"
#include "starkphase/exact.hpp"
#include "starkphase/specfn.hpp"

#ifndef STARKPHASE_VERSION
#define STARKPHASE_VERSION "0.0.0"
#endif

namespace starkphase {

namespace {

using nlohmann::json;

constexpr double kPi = std::numbers::pi;

template <class E, std::size_t N>
std::optional<E> lookup(const std::array<std::pair<std::string_view, E>, N>& table, std::string_view tag) {
  for (const auto& [name, value] : table)
    if (name == tag) return value;
  return std::nullopt;
}

template <class E, std::size_t N>
std::string_view reverse_lookup(const std::array<std::pair<std::string_view, E>, N>& table, E value) {
  for (const auto& [name, v] : table)
    if (v == value) return name;
  return "unknown";
}

constexpr std::array<std::pair<std::string_view, SweepAxis>, 3> kAxes{{
    {"detuning", SweepAxis::Detuning}, {"rabi", SweepAxis::Rabi}, {"loss", SweepAxis::Loss}}};
constexpr std::array<std::pair<std::string_view, FigurePreset>, 6> kFigures{{{"fig2", FigurePreset::Fig2},
                                                                             {"fig3", FigurePreset::Fig3},
                                                                             {"fig4", FigurePreset::Fig4},
                                                                             {"fig5", FigurePreset::Fig5},
                                                                             {"fig6", FigurePreset::Fig6},
                                                                             {"fig7", FigurePreset::Fig7}}};
constexpr std::array<std::pair<std::string_view, SystemVariant>, 3> kVariants{
    {{"two_state", SystemVariant::TwoState}, {"ladder", SystemVariant::Ladder}, {"v", SystemVariant::V}}};

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return c == '-' ? '_' : static_cast<char>(std::tolower(c));
  });
  return out;
}

bool is_sech(const PulseShape& p) { return p.kind() == PulseKind::Sech; }

// Exact formulas hold only for sech pulses of one width with the detuning
// relations their factorisations rely on.
void require_exact_conditions(const SystemSpec& s, Method m) {
  const auto fail = [m](const char* why) {
    throw InvalidArgument(std::string(to_string(m)) + ": " + why);
  };
  switch (m) {
    case Method::ExactRZ:
      if (!is_sech(s.pulse_a)) fail("needs a sech pulse");
      if (s.loss_rate != 0.0) fail("needs a lossless system");
      break;
    case Method::ExactLadder:
      if (!is_sech(s.pulse_a) || !is_sech(*s.pulse_b)) fail("needs sech pulses");
      if (s.pulse_a.omega0() != s.pulse_b->omega0()) fail("needs equal couplings");
      if (s.detuning3 != 2.0 * s.detuning2) fail("needs delta3 = 2 delta2");
      break;
    case Method::ExactV:
      if (!is_sech(s.pulse_a) || !is_sech(*s.pulse_b)) fail("needs sech pulses");
      if (s.detuning3 != s.detuning2) fail("needs delta2 = delta3");
      break;
    default:
      break;
  }
}

void write_number(std::ostream& out, std::optional<double> v) {
  if (v && std::isfinite(*v))
    out << *v;
  else
    out << "nan";
}

json optional_json(std::optional<double> v) {
  if (v && std::isfinite(*v)) return *v;
  return nullptr;
}

}  // namespace

std::string_view to_string(SweepAxis axis) { return reverse_lookup(kAxes, axis); }
std::optional<SweepAxis> axis_from_string(std::string_view tag) { return lookup(kAxes, lower(tag)); }
std::string_view to_string(FigurePreset preset) { return reverse_lookup(kFigures, preset); }
std::optional<FigurePreset> figure_from_string(std::string_view tag) { return lookup(kFigures, lower(tag)); }
std::string_view to_string(SystemVariant variant) { return reverse_lookup(kVariants, variant); }
std::optional<SystemVariant> variant_from_string(std::string_view tag) {
  const std::string t = lower(tag);
  if (t == "two_state" || t == "twostate" || t == "two") return SystemVariant::TwoState;
  return lookup(kVariants, t);
}

bool method_supported(SystemVariant variant, Method method) {
  switch (method) {
    case Method::AE:
    case Method::AE2:
    case Method::Adiabatic:
    case Method::Superadiabatic:
    case Method::Numeric:
      return true;  // three-state systems use the first arm alone
    case Method::Lossy:
    case Method::ExactRZ:
      return variant == SystemVariant::TwoState;
    case Method::AE3Ladder:
    case Method::ExactLadder:
      return variant == SystemVariant::Ladder;
    case Method::AE3V:
    case Method::ExactV:
      return variant == SystemVariant::V;
    case Method::Adiabatic3:
      return variant != SystemVariant::TwoState;
  }
  return false;
}

std::vector<Method> default_methods(const SystemSpec& s) {
  switch (s.variant) {
    case SystemVariant::TwoState: {
      std::vector<Method> m{Method::AE, Method::AE2, Method::Adiabatic, Method::Superadiabatic};
      if (s.loss_rate > 0.0) m.push_back(Method::Lossy);
      if (is_sech(s.pulse_a) && s.loss_rate == 0.0) m.push_back(Method::ExactRZ);
      return m;
    }
    case SystemVariant::Ladder: {
      std::vector<Method> m{Method::AE3Ladder, Method::Adiabatic, Method::Adiabatic3};
      if (is_sech(s.pulse_a) && is_sech(*s.pulse_b) && s.pulse_a.omega0() == s.pulse_b->omega0() &&
          s.detuning3 == 2.0 * s.detuning2)
        m.push_back(Method::ExactLadder);
      return m;
    }
    case SystemVariant::V: {
      std::vector<Method> m{Method::AE3V, Method::Adiabatic, Method::Adiabatic3};
      if (is_sech(s.pulse_a) && is_sech(*s.pulse_b) && s.detuning3 == s.detuning2) m.push_back(Method::ExactV);
      return m;
    }
  }
  return {};
}

void SweepSpec::validate() const {
  system.validate();
  propagation.validate();
  if (grid.empty()) throw InvalidArgument("sweep: grid is empty");
  for (double g : grid)
    if (!std::isfinite(g)) throw InvalidArgument("sweep: non-finite grid value");
  const bool up = grid.size() < 2 || grid[1] > grid[0];
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (up ? !(grid[i] > grid[i - 1]) : !(grid[i] < grid[i - 1]))
      throw InvalidArgument("sweep: grid must be strictly monotone");
  if (axis == SweepAxis::Rabi)
    for (double g : grid)
      if (g < 0.0) throw InvalidArgument("sweep: Rabi-frequency grid must be >= 0");
  if (axis == SweepAxis::Loss) {
    if (system.variant != SystemVariant::TwoState) throw InvalidArgument("sweep: loss axis needs a two-state system");
    for (double g : grid)
      if (g < 0.0) throw InvalidArgument("sweep: loss grid must be >= 0");
  }
  for (std::size_t i = 0; i < methods.size(); ++i) {
    if (methods[i] == Method::Numeric) throw InvalidArgument("sweep: request the numeric phase with the oracle flag");
    if (!method_supported(system.variant, methods[i]))
      throw InvalidArgument("sweep: method " + std::string(to_string(methods[i])) + " is not defined for a " +
                            std::string(to_string(system.variant)) + " system");
    for (std::size_t j = 0; j < i; ++j)
      if (methods[j] == methods[i]) throw InvalidArgument("sweep: duplicate method " + std::string(to_string(methods[i])));
  }
  if (!methods.empty() || oracle) return;
  throw InvalidArgument("sweep: nothing to evaluate (no methods and no oracle)");
}

bool SweepResult::oracle_failed() const {
  return std::any_of(rows.begin(), rows.end(), [](const SweepRow& r) { return !r.oracle_error.empty(); });
}

SystemSpec apply_axis(const SystemSpec& system, SweepAxis axis, double value) {
  SystemSpec s = system;
  const double T = system.time_unit();
  switch (axis) {
    case SweepAxis::Detuning: {
      const double d2 = value / T;
      if (s.variant != SystemVariant::TwoState)
        s.detuning3 = system.detuning2 != 0.0 ? system.detuning3 * (d2 / system.detuning2) : system.detuning3;
      s.detuning2 = d2;
      break;
    }
    case SweepAxis::Rabi: {
      const double w = value / T;
      if (s.pulse_b) {
        const double a = system.pulse_a.omega0();
        s.pulse_b = s.pulse_b->with_omega0(a > 0.0 ? system.pulse_b->omega0() * (w / a) : w);
      }
      s.pulse_a = s.pulse_a.with_omega0(w);
      break;
    }
    case SweepAxis::Loss:
      s.loss_rate = value / T;
      break;
  }
  return s;
}

PhaseEstimate evaluate_method(const SystemSpec& s, Method m, const ApproxOptions& opts) {
  if (!method_supported(s.variant, m))
    throw InvalidArgument("method " + std::string(to_string(m)) + " is not defined for this system");
  const double T = s.time_unit();
  switch (m) {
    case Method::AE:
      return phase_ae(s.pulse_a, s.detuning2, opts);
    case Method::AE2:
      return phase_ae2(s.pulse_a, s.detuning2, opts);
    case Method::Adiabatic:
      return phase_adiabatic(s.pulse_a, s.detuning2, opts);
    case Method::Superadiabatic:
      return phase_superadiabatic(s.pulse_a, s.detuning2, opts);
    case Method::Lossy:
      return phase_and_population_lossy(s.pulse_a, s.detuning2, s.loss_rate, opts);
    case Method::AE3Ladder:
      return phase_ae3_ladder(s.pulse_a, *s.pulse_b, s.detuning2, s.detuning3, opts);
    case Method::AE3V:
      return phase_ae3_v(s.pulse_a, *s.pulse_b, s.detuning2, s.detuning3, opts);
    case Method::Adiabatic3:
      return phase_adiabatic3(s, opts);
    case Method::ExactRZ:
      require_exact_conditions(s, m);
      return {m, rz_phase_continued(s.pulse_a.omega0() * T, s.detuning2 * T)};
    case Method::ExactLadder:
      require_exact_conditions(s, m);
      return {m, ladder_exact_phase_continued(s.pulse_a.omega0() * T, s.detuning2 * T)};
    case Method::ExactV: {
      require_exact_conditions(s, m);
      RZParameters p{std::hypot(s.pulse_a.omega0(), s.pulse_b->omega0()) * T, s.detuning2 * T, 1.0, 0.0};
      return {m, v_exact_phase_continued(p)};
    }
    case Method::Numeric:
      break;
  }
  throw InvalidArgument("evaluate_method: use propagate for the numeric phase");
}

SweepResult run_sweep(const SweepSpec& spec, unsigned threads) {
  spec.validate();
  SweepResult result{spec, std::vector<SweepRow>(spec.grid.size())};
  const bool track_population = spec.system.variant == SystemVariant::TwoState &&
                                (spec.axis == SweepAxis::Loss || spec.system.loss_rate > 0.0 ||
                                 std::find(spec.methods.begin(), spec.methods.end(), Method::Lossy) != spec.methods.end());

  PropagationOptions prop = spec.propagation;
  prop.keep_time_series = false;

  auto evaluate_row = [&](std::size_t i) {
    SweepRow& row = result.rows[i];
    row.axis_value = spec.grid[i];
    row.cells.resize(spec.methods.size());
    std::optional<SystemSpec> point;
    try {
      point = apply_axis(spec.system, spec.axis, spec.grid[i]);
      point->validate();
    } catch (const std::exception& e) {
      row.oracle_error = e.what();
      for (auto& c : row.cells) c.error = e.what();
      return;
    }
    const SystemSpec& s = *point;
    if (spec.oracle) {
      try {
        const PropagationResult r = propagate_ground(s, prop);
        row.oracle_phase = r.phase1;
        if (track_population) row.oracle_population1 = r.populations[0];
      } catch (const std::exception& e) {
        row.oracle_error = e.what();
      }
    }
    for (std::size_t k = 0; k < spec.methods.size(); ++k) {
      SweepCell& cell = row.cells[k];
      try {
        const PhaseEstimate est = evaluate_method(s, spec.methods[k], spec.approx);
        if (!std::isfinite(est.phase)) throw Error("non-finite phase");
        cell.phase = est.phase;
        if (spec.methods[k] == Method::Lossy) cell.population1 = est.population1;
      } catch (const std::exception& e) {
        cell.error = e.what();
      }
    }
  };

  const std::size_t n = spec.grid.size();
  unsigned workers = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) evaluate_row(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) evaluate_row(i);
      });
  }

  // Oracle branch: continuous along the grid. Rows without an oracle break
  // the chain; the next valid row is compared with the last valid one.
  std::optional<double> previous;
  for (auto& row : result.rows) {
    if (!row.oracle_phase) continue;
    if (previous) row.oracle_phase = nearest_branch(*row.oracle_phase, *previous);
    previous = row.oracle_phase;
  }
  // Methods: branch nearest the oracle, or continuous along the grid without one.
  for (std::size_t k = 0; k < spec.methods.size(); ++k) {
    std::optional<double> prev_method;
    for (auto& row : result.rows) {
      SweepCell& cell = row.cells[k];
      if (!cell.phase) continue;
      if (row.oracle_phase) {
        cell.phase = nearest_branch(*cell.phase, *row.oracle_phase);
        cell.abs_error = std::abs(*cell.phase - *row.oracle_phase);
      } else if (prev_method) {
        cell.phase = nearest_branch(*cell.phase, *prev_method);
      }
      prev_method = cell.phase;
    }
  }
  return result;
}

std::vector<double> linear_grid(double from, double to, std::size_t points) {
  if (points == 0) throw InvalidArgument("grid: need at least one point");
  if (!std::isfinite(from) || !std::isfinite(to)) throw InvalidArgument("grid: non-finite bounds");
  if (points == 1) return {from};
  std::vector<double> g(points);
  for (std::size_t i = 0; i < points; ++i)
    g[i] = from + (to - from) * static_cast<double>(i) / static_cast<double>(points - 1);
  g.back() = to;
  return g;
}

std::vector<double> log_grid(double from, double to, std::size_t points) {
  if (!(from > 0.0 && to > 0.0)) throw InvalidArgument("grid: log spacing needs positive bounds");
  std::vector<double> g = linear_grid(std::log(from), std::log(to), points);
  for (double& v : g) v = std::exp(v);
  g.front() = from;
  g.back() = to;
  return g;
}

SweepSpec figure_preset(FigurePreset preset, std::size_t points) {
  if (points < 2) throw InvalidArgument("figure_preset: need at least two grid points");
  const std::vector<Method> single{Method::AE, Method::AE2, Method::Adiabatic, Method::Superadiabatic};
  SweepSpec s(SystemSpec::two_state(PulseShape::gaussian(8.0), 0.0));
  s.name = std::string(to_string(preset));
  s.oracle = true;
  switch (preset) {
    case FigurePreset::Fig2:
      s.axis = SweepAxis::Detuning;
      s.grid = linear_grid(1.0, 30.0, points);
      s.methods = single;
      s.notes = "Gaussian pulse, Omega0 T = 8; Delta T linear on [1, 30]";
      break;
    case FigurePreset::Fig3:
      s.system = SystemSpec::two_state(PulseShape::gaussian(0.0), 10.0);
      s.axis = SweepAxis::Rabi;
      s.grid = linear_grid(0.0, 20.0, points);
      s.methods = single;
      s.notes = "Gaussian pulse, Delta T = 10; Omega0 T linear on [0, 20]";
      break;
    case FigurePreset::Fig4:
      s.system = SystemSpec::two_state(PulseShape::sech(8.0), 0.0);
      s.axis = SweepAxis::Detuning;
      s.grid = linear_grid(1.0, 30.0, points);
      s.methods = single;
      s.methods.push_back(Method::ExactRZ);
      s.notes = "sech pulse, Omega0 T = 8; Delta T linear on [1, 30]";
      break;
    case FigurePreset::Fig5: {
      s.system = SystemSpec::two_state(PulseShape::gaussian(8.0), 20.0);
      s.axis = SweepAxis::Loss;
      s.grid = {0.0};
      const std::vector<double> tail = log_grid(1e-2, 10.0, points - 1);
      s.grid.insert(s.grid.end(), tail.begin(), tail.end());
      s.methods = {Method::Lossy};
      s.notes = "Gaussian pulse, Omega0 T = 8, Delta T = 20; Gamma T = 0 then log-spaced on [1e-2, 10]";
      break;
    }
    case FigurePreset::Fig6:
      s.system = SystemSpec::ladder(PulseShape::gaussian(0.0), PulseShape::gaussian(0.0), 10.0, 20.0);
      s.axis = SweepAxis::Rabi;
      s.grid = linear_grid(0.0, 20.0, points);
      s.methods = {Method::AE3Ladder, Method::Adiabatic, Method::Adiabatic3};
      s.notes = "ladder, equal Gaussian pulses, Delta2 T = 10, Delta3 T = 20; Omega0 T linear on [0, 20]";
      break;
    case FigurePreset::Fig7:
      s.system = SystemSpec::v_system(PulseShape::gaussian(0.0), PulseShape::gaussian(0.0), 10.0, 20.0);
      s.axis = SweepAxis::Rabi;
      s.grid = linear_grid(0.0, 20.0, points);
      s.methods = {Method::AE3V, Method::Adiabatic, Method::Adiabatic3};
      s.notes = "V system, equal Gaussian pulses, Delta2 T = 10, Delta3 T = 20; Omega0 T linear on [0, 20]";
      break;
  }
  return s;
}

namespace {

bool wants_population(const SweepResult& r) {
  return std::any_of(r.rows.begin(), r.rows.end(), [](const SweepRow& row) { return row.oracle_population1.has_value(); });
}

json pulse_json(const PulseShape& p) {
  json j;
  switch (p.kind()) {
    case PulseKind::Gaussian: j["shape"] = "gaussian"; break;
    case PulseKind::Sech: j["shape"] = "sech"; break;
    case PulseKind::Tabulated: j["shape"] = "tabulated"; break;
  }
  j["omega0"] = p.omega0() * p.width();
  return j;
}

json system_json(const SystemSpec& s) {
  const double T = s.time_unit();
  json j;
  j["variant"] = to_string(s.variant);
  j["pulse"] = pulse_json(s.pulse_a);
  if (s.pulse_b) j["pulse_b"] = pulse_json(*s.pulse_b);
  if (s.variant == SystemVariant::TwoState) {
    j["delta"] = s.detuning2 * T;
    j["gamma"] = s.loss_rate * T;
  } else {
    j["delta2"] = s.detuning2 * T;
    j["delta3"] = s.detuning3 * T;
  }
  return j;
}

}  // namespace

void write_csv(std::ostream& out, const SweepResult& r) {
  const auto flags = out.flags();
  const auto precision = out.precision();
  out.precision(17);
  const bool pop = wants_population(r);
  out << "axis";
  if (r.spec.oracle) {
    out << ",numeric_phase";
    if (pop) out << ",numeric_population1";
  }
  for (Method m : r.spec.methods) {
    const std::string tag(to_string(m));
    out << ',' << tag << "_phase," << tag << "_abs_error";
    if (m == Method::Lossy) out << ',' << tag << "_population1," << tag << "_population1_abs_error";
  }
  out << '\n';
  for (const SweepRow& row : r.rows) {
    out << row.axis_value;
    if (r.spec.oracle) {
      out << ',';
      write_number(out, row.oracle_phase);
      if (pop) {
        out << ',';
        write_number(out, row.oracle_population1);
      }
    }
    for (std::size_t k = 0; k < r.spec.methods.size(); ++k) {
      const SweepCell& c = row.cells[k];
      out << ',';
      write_number(out, c.phase);
      out << ',';
      write_number(out, c.abs_error);
      if (r.spec.methods[k] == Method::Lossy) {
        out << ',';
        write_number(out, c.population1);
        out << ',';
        std::optional<double> perr;
        if (c.population1 && row.oracle_population1) perr = std::abs(*c.population1 - *row.oracle_population1);
        write_number(out, perr);
      }
    }
    out << '\n';
  }
  out.flags(flags);
  out.precision(precision);
}

json sweep_metadata(const SweepSpec& spec) {
  json j;
  j["tool"] = "starkphase";
  j["version"] = STARKPHASE_VERSION;
  j["name"] = spec.name;
  if (!spec.notes.empty()) j["notes"] = spec.notes;
  j["system"] = system_json(spec.system);
  j["axis"] = to_string(spec.axis);
  j["grid"] = spec.grid;
  json methods = json::array();
  for (Method m : spec.methods) methods.push_back(to_string(m));
  j["methods"] = methods;
  j["oracle"] = spec.oracle;
  j["units"] = "dimensionless products with the pulse width T";
  j["tolerances"] = {{"rel_tol", spec.propagation.rel_tol},
                     {"abs_tol", spec.propagation.abs_tol},
                     {"window_tol", spec.propagation.window_tol},
                     {"sample_step", spec.propagation.sample_step},
                     {"max_steps", spec.propagation.max_steps},
                     {"approx_window_tol", spec.approx.window_tol},
                     {"quad_tol", spec.approx.quad_tol}};
  return j;
}

json to_json(const SweepResult& r) {
  json rows = json::array();
  for (const SweepRow& row : r.rows) {
    json jr;
    jr["axis"] = row.axis_value;
    if (r.spec.oracle) {
      jr["numeric_phase"] = optional_json(row.oracle_phase);
      if (row.oracle_population1) jr["numeric_population1"] = *row.oracle_population1;
      if (!row.oracle_error.empty()) jr["numeric_error"] = row.oracle_error;
    }
    for (std::size_t k = 0; k < r.spec.methods.size(); ++k) {
      const SweepCell& c = row.cells[k];
      json jc;
      jc["phase"] = optional_json(c.phase);
      jc["abs_error"] = optional_json(c.abs_error);
      if (c.population1) jc["population1"] = *c.population1;
      if (!c.error.empty()) jc["error"] = c.error;
      jr[std::string(to_string(r.spec.methods[k]))] = jc;
    }
    rows.push_back(jr);
  }
  return {{"metadata", sweep_metadata(r.spec)}, {"rows", rows}};
}

namespace {

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw InvalidArgument(std::string("sweep spec: bad value for '") + key + "'");
  }
}

PulseShape pulse_from_json(const json& j, const std::string& shape_key, const std::string& omega_key,
                           double default_omega) {
  const std::string shape = get_or<std::string>(j, shape_key.c_str(), "gaussian");
  const double omega0 = get_or<double>(j, omega_key.c_str(), default_omega);
  if (shape == "gaussian") return PulseShape::gaussian(omega0);
  if (shape == "sech") return PulseShape::sech(omega0);
  if (shape.rfind("file:", 0) == 0) {
    PulseShape p = load_pulse_csv(shape.substr(5));
    return j.contains(omega_key) ? p.with_omega0(omega0) : p;
  }
  throw InvalidArgument("sweep spec: unknown shape '" + shape + "'");
}

}  // namespace

SystemSpec system_from_json(const json& j) {
  if (!j.is_object()) throw InvalidArgument("sweep spec: 'system' must be an object");
  const auto variant = variant_from_string(get_or<std::string>(j, "variant", "two_state"));
  if (!variant) throw InvalidArgument("sweep spec: unknown system variant");
  const PulseShape a = pulse_from_json(j, "shape", "omega0", 0.0);
  if (*variant == SystemVariant::TwoState)
    return SystemSpec::two_state(a, get_or<double>(j, "delta", 0.0), get_or<double>(j, "gamma", 0.0));
  json jb = j;
  if (!j.contains("shape_b") && j.contains("shape")) jb["shape_b"] = j["shape"];
  const PulseShape b = pulse_from_json(jb, "shape_b", "omega0_b", a.omega0());
  const double d2 = get_or<double>(j, "delta2", get_or<double>(j, "delta", 0.0));
  const double d3 = get_or<double>(j, "delta3", 2.0 * d2);
  return *variant == SystemVariant::Ladder ? SystemSpec::ladder(a, b, d2, d3) : SystemSpec::v_system(a, b, d2, d3);
}

SweepSpec sweep_spec_from_json(const json& j) {
  if (!j.is_object()) throw InvalidArgument("sweep spec: top level must be an object");
  SweepSpec s(system_from_json(j.value("system", json::object())));
  const auto axis = axis_from_string(get_or<std::string>(j, "axis", "detuning"));
  if (!axis) throw InvalidArgument("sweep spec: unknown axis");
  s.axis = *axis;
  if (!j.contains("grid")) throw InvalidArgument("sweep spec: missing 'grid'");
  const json& g = j.at("grid");
  if (g.is_array()) {
    for (const json& v : g) {
      if (!v.is_number()) throw InvalidArgument("sweep spec: grid values must be numbers");
      s.grid.push_back(v.get<double>());
    }
  } else if (g.is_object()) {
    const double from = get_or<double>(g, "from", 0.0);
    const double to = get_or<double>(g, "to", 0.0);
    const auto points = get_or<std::size_t>(g, "points", 200);
    const std::string spacing = get_or<std::string>(g, "spacing", "linear");
    if (spacing == "linear")
      s.grid = linear_grid(from, to, points);
    else if (spacing == "log")
      s.grid = log_grid(from, to, points);
    else
      throw InvalidArgument("sweep spec: spacing must be 'linear' or 'log'");
  } else {
    throw InvalidArgument("sweep spec: 'grid' must be a list or an object");
  }
  for (const json& m : j.value("methods", json::array())) {
    if (!m.is_string()) throw InvalidArgument("sweep spec: method tags must be strings");
    const auto method = method_from_string(m.get<std::string>());
    if (!method) throw InvalidArgument("sweep spec: unknown method '" + m.get<std::string>() + "'");
    s.methods.push_back(*method);
  }
  s.oracle = get_or<bool>(j, "oracle", true);
  s.propagation.rel_tol = get_or<double>(j, "rel_tol", s.propagation.rel_tol);
  s.propagation.abs_tol = get_or<double>(j, "abs_tol", s.propagation.abs_tol);
  s.propagation.max_steps = get_or<std::size_t>(j, "max_steps", s.propagation.max_steps);
  s.name = get_or<std::string>(j, "name", s.name);
  if (j.contains("output")) s.output_path = get_or<std::string>(j, "output", "");
  s.validate();
  return s;
}

DesignReport design_command(double target_phase, int n, SystemVariant variant, const PropagationOptions& options) {
  if (n < 1) throw InvalidArgument("design: n must be a positive integer");
  DesignReport r{};
  r.variant = variant;
  r.n = n;
  r.target_phase = target_phase;
  SystemSpec system = SystemSpec::two_state(PulseShape::sech(1.0), 0.0);
  if (variant == SystemVariant::TwoState) {
    r.alpha = 2.0 * n;
    r.delta = design_detuning(target_phase, n);
    r.exact_phase = rz_phase(r.alpha, r.delta);
    system = SystemSpec::two_state(PulseShape::sech(r.alpha), r.delta);
  } else if (variant == SystemVariant::Ladder) {
    // The ladder phase is twice the two-state phase at coupling α/√2.
    if (!(target_phase > 0.0 && target_phase <= 2.0 * n * kPi))
      throw UnattainableError("design: ladder target must lie in (0, 2 n pi]");
    r.alpha = 2.0 * n * std::numbers::sqrt2;
    r.delta = design_detuning(0.5 * target_phase, n);
    r.exact_phase = ladder_exact_phase(r.alpha, r.delta);
    system = SystemSpec::ladder(PulseShape::sech(r.alpha), PulseShape::sech(r.alpha), r.delta, 2.0 * r.delta);
  } else {
    throw InvalidArgument("design: supported systems are two_state and ladder");
  }
  r.pulse_area = kPi * r.alpha;
  PropagationOptions prop = options;
  prop.keep_time_series = false;
  const PropagationResult p = propagate_ground(system, prop);
  r.numeric_phase = p.phase1;
  r.phase_residual = std::abs(wrap_to_pi(p.phase1 - target_phase));
  r.residual_transition = std::max(0.0, 1.0 - p.populations[0]);
  return r;
}

}  // namespace starkphase
