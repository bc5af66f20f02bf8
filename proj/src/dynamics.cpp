#include "starkphase/dynamics.hpp"

#include <Eigen/Dense>
#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

#include "starkphase/errors.hpp"

namespace starkphase {

namespace odeint = boost::numeric::odeint;

SystemSpec SystemSpec::two_state(PulseShape pulse, double delta, double gamma) {
  SystemSpec s{SystemVariant::TwoState, delta, 0.0, gamma, std::move(pulse), std::nullopt};
  s.validate();
  return s;
}

SystemSpec SystemSpec::ladder(PulseShape pulse12, PulseShape pulse23, double delta2, double delta3) {
  SystemSpec s{SystemVariant::Ladder, delta2, delta3, 0.0, std::move(pulse12), std::move(pulse23)};
  s.validate();
  return s;
}

SystemSpec SystemSpec::v_system(PulseShape pulse12, PulseShape pulse13, double delta2, double delta3) {
  SystemSpec s{SystemVariant::V, delta2, delta3, 0.0, std::move(pulse12), std::move(pulse13)};
  s.validate();
  return s;
}

void SystemSpec::validate() const {
  if (!std::isfinite(detuning2) || !std::isfinite(detuning3) || !std::isfinite(loss_rate))
    throw InvalidArgument("system: non-finite detuning or loss rate");
  if (loss_rate < 0.0) throw InvalidArgument("system: loss rate must be >= 0");
  if (variant == SystemVariant::TwoState) {
    if (pulse_b) throw InvalidArgument("system: two-state system takes a single pulse");
    return;
  }
  if (loss_rate != 0.0) throw InvalidArgument("system: loss rate is only supported for the two-state system");
  if (!pulse_b) throw InvalidArgument("system: three-state system needs two pulses");
  if (pulse_a.width() != pulse_b->width()) throw InvalidArgument("system: pulse widths must be equal");
}

TimeWindow SystemSpec::window(double tol) const {
  TimeWindow w = pulse_a.support_window(tol);
  if (pulse_b) {
    const TimeWindow wb = pulse_b->support_window(tol);
    w.t_initial = std::min(w.t_initial, wb.t_initial);
    w.t_final = std::max(w.t_final, wb.t_final);
  }
  return w;
}

namespace {

using Complex = std::complex<double>;
using State = std::vector<Complex>;
constexpr Complex kI{0.0, 1.0};

void fill_hamiltonian(const SystemSpec& spec, double t, Eigen::Matrix3cd& h) {
  h.setZero();
  const double wa = 0.5 * spec.pulse_a.value(t);
  switch (spec.variant) {
    case SystemVariant::TwoState:
      h(0, 1) = h(1, 0) = wa;
      h(1, 1) = Complex(spec.detuning2, -0.5 * spec.loss_rate);
      break;
    case SystemVariant::Ladder: {
      const double wb = 0.5 * spec.pulse_b->value(t);
      h(0, 1) = h(1, 0) = wa;
      h(1, 2) = h(2, 1) = wb;
      h(1, 1) = spec.detuning2;
      h(2, 2) = spec.detuning3;
      break;
    }
    case SystemVariant::V: {
      const double wb = 0.5 * spec.pulse_b->value(t);
      h(0, 1) = h(1, 0) = wa;
      h(0, 2) = h(2, 0) = wb;
      h(1, 1) = spec.detuning2;
      h(2, 2) = spec.detuning3;
      break;
    }
  }
}

struct Schrodinger {
  const SystemSpec* spec;
  int dim;

  void operator()(const State& c, State& dcdt, double t) const {
    Eigen::Matrix3cd h;
    fill_hamiltonian(*spec, t, h);
    for (int i = 0; i < dim; ++i) {
      Complex acc = 0.0;
      for (int j = 0; j < dim; ++j) acc += h(i, j) * c[j];
      dcdt[i] = -kI * acc;
    }
  }
};

double unwrap_step(double previous, double raw) {
  const double two_pi = 2.0 * std::numbers::pi;
  return raw + two_pi * std::round((previous - raw) / two_pi);
}

}  // namespace

Eigen::MatrixXcd hamiltonian(const SystemSpec& spec, double t) {
  Eigen::Matrix3cd h;
  fill_hamiltonian(spec, t, h);
  const int n = spec.dimension();
  return h.topLeftCorner(n, n);
}

void PropagationOptions::validate() const {
  if (!(rel_tol > 0.0 && rel_tol <= 1e-3) || !(abs_tol > 0.0 && abs_tol <= 1e-3))
    throw InvalidArgument("propagate: tolerances must lie in (0, 1e-3]");
  if (!(sample_step > 0.0)) throw InvalidArgument("propagate: sample step must be positive");
  if (!(window_tol > 0.0 && window_tol < 1.0)) throw InvalidArgument("propagate: window tolerance must lie in (0, 1)");
  if (max_steps == 0) throw InvalidArgument("propagate: step budget must be positive");
}

PropagationResult propagate(const SystemSpec& spec, const Eigen::VectorXcd& initial,
                            const PropagationOptions& options) {
  spec.validate();
  const int dim = spec.dimension();
  if (initial.size() != dim) throw InvalidArgument("propagate: initial state has the wrong dimension");
  if (std::abs(initial.norm() - 1.0) > 1e-12) throw InvalidArgument("propagate: initial state must be normalised");
  options.validate();

  const double unit = spec.time_unit();
  const TimeWindow win = spec.window(options.window_tol);
  const double span = win.t_final - win.t_initial;
  const auto intervals = static_cast<std::size_t>(std::ceil(span / (options.sample_step * unit)));
  const double h = span / static_cast<double>(std::max<std::size_t>(intervals, 1));
  auto sample_time = [&](std::size_t k) {
    return k == intervals ? win.t_final : win.t_initial + static_cast<double>(k) * h;
  };

  PropagationResult result;
  State x(initial.data(), initial.data() + dim);
  double phase = std::arg(x[0]);
  auto record = [&](double t, const State& c) {
    phase = unwrap_step(phase, std::arg(c[0]));
    result.peak_excitation = std::max(result.peak_excitation, 1.0 - std::norm(c[0]));
    if (options.keep_time_series) {
      Eigen::VectorXcd amp(dim);
      for (int i = 0; i < dim; ++i) amp[i] = c[i];
      result.time_series.push_back({t, std::move(amp), phase});
    }
  };
  if (options.keep_time_series) result.time_series.reserve(intervals + 1);
  record(win.t_initial, x);

  Schrodinger rhs{&spec, dim};
  auto stepper = odeint::make_dense_output(options.abs_tol, options.rel_tol, odeint::runge_kutta_dopri5<State>());
  stepper.initialize(x, win.t_initial, 1e-2 * unit);
  const double min_step = 1e-12 * unit;

  std::size_t k = 0;
  std::size_t steps = 0;
  State xs(dim);
  try {
    while (k < intervals) {
      if (++steps > options.max_steps) {
        std::ostringstream msg;
        msg << "propagate: step budget of " << options.max_steps << " exhausted at t = " << stepper.current_time();
        throw StiffnessError(msg.str());
      }
      const auto [t0, t1] = stepper.do_step(rhs);
      if (t1 - t0 < min_step) {
        std::ostringstream msg;
        msg << "propagate: step size collapsed to " << (t1 - t0) << " at t = " << t0;
        throw StiffnessError(msg.str());
      }
      while (k < intervals && sample_time(k + 1) <= t1) {
        ++k;
        stepper.calc_state(sample_time(k), xs);
        record(sample_time(k), xs);
      }
    }
  } catch (const odeint::step_adjustment_error& e) {
    throw StiffnessError(std::string("propagate: ") + e.what());
  }

  const State& last = k == 0 ? x : xs;
  result.final_amplitudes.resize(dim);
  double total = 0.0;
  for (int i = 0; i < dim; ++i) {
    result.final_amplitudes[i] = last[i];
    result.populations.push_back(std::norm(last[i]));
    total += result.populations.back();
  }
  result.phase1 = phase;
  result.norm_defect = std::abs(1.0 - total);
  if (spec.loss_rate == 0.0 && result.norm_defect > 100.0 * options.rel_tol) {
    std::ostringstream msg;
    msg << "propagate: norm defect " << result.norm_defect << " exceeds 100 x rel_tol";
    throw ToleranceError(msg.str());
  }
  return result;
}

PropagationResult propagate_ground(const SystemSpec& spec, const PropagationOptions& options) {
  Eigen::VectorXcd c0 = Eigen::VectorXcd::Zero(spec.dimension());
  c0[0] = 1.0;
  return propagate(spec, c0, options);
}

double transient_peak_excitation(const PropagationResult& result) {
  if (result.time_series.empty()) throw InvalidArgument("transient_peak_excitation: empty time series");
  double peak = 0.0;
  for (const auto& s : result.time_series) peak = std::max(peak, 1.0 - std::norm(s.amplitudes[0]));
  return peak;
}

void write_time_series_csv(std::ostream& out, const PropagationResult& result) {
  if (result.time_series.empty()) return;
  const auto dim = result.time_series.front().amplitudes.size();
  out << "t";
  for (Eigen::Index i = 1; i <= dim; ++i) out << ",re_c" << i << ",im_c" << i;
  for (Eigen::Index i = 1; i <= dim; ++i) out << ",pop" << i;
  out << ",phase1\n";
  out << std::setprecision(17);
  for (const auto& s : result.time_series) {
    out << s.t;
    for (Eigen::Index i = 0; i < dim; ++i) out << ',' << s.amplitudes[i].real() << ',' << s.amplitudes[i].imag();
    for (Eigen::Index i = 0; i < dim; ++i) out << ',' << std::norm(s.amplitudes[i]);
    out << ',' << s.phase1 << '\n';
  }
}

}  // namespace starkphase
