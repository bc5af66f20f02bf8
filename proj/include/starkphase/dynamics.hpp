#pragma once

#include <Eigen/Core>

#include <complex>
#include <iosfwd>
#include <optional>
#include <vector>

#include "starkphase/pulse.hpp"

namespace starkphase {

enum class SystemVariant { TwoState, Ladder, V };

/// Driven system in the energy picture (hbar = 1).
///
///   TwoState: [[0, Ω/2], [Ω/2, Δ - iΓ/2]]
///   Ladder:   ½[[0, Ω12, 0], [Ω12, 2Δ2, Ω23], [0, Ω23, 2Δ3]]
///   V:        ½[[0, Ω12, Ω13], [Ω12, 2Δ2, 0], [Ω13, 0, 2Δ3]]
///
/// pulse_a is Ω (or Ω12); pulse_b is Ω23 for the ladder and Ω13 for the V.
struct SystemSpec {
  SystemVariant variant;
  double detuning2;  // Δ (two-state) or Δ2
  double detuning3;  // three-state only
  double loss_rate;  // Γ, two-state only
  PulseShape pulse_a;
  std::optional<PulseShape> pulse_b;

  static SystemSpec two_state(PulseShape pulse, double delta, double gamma = 0.0);
  static SystemSpec ladder(PulseShape pulse12, PulseShape pulse23, double delta2, double delta3);
  static SystemSpec v_system(PulseShape pulse12, PulseShape pulse13, double delta2, double delta3);

  /// Throws InvalidArgument when the invariants do not hold.
  void validate() const;
  int dimension() const { return variant == SystemVariant::TwoState ? 2 : 3; }
  /// Union of the pulse support windows.
  TimeWindow window(double tol = kDefaultWindowTol) const;
  /// Time unit: the width of pulse_a.
  double time_unit() const { return pulse_a.width(); }
};

Eigen::MatrixXcd hamiltonian(const SystemSpec& spec, double t);

struct PropagationOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double window_tol = kDefaultWindowTol;
  /// Dense-output sampling step in units of the pulse width.
  double sample_step = 1.0 / 200.0;
  bool keep_time_series = true;
  /// Accepted-step budget; exceeding it is reported as StiffnessError.
  std::size_t max_steps = 10'000'000;

  void validate() const;
};

struct TimeSample {
  double t;
  Eigen::VectorXcd amplitudes;
  double phase1;  // running unwrapped arg c1
};

struct PropagationResult {
  Eigen::VectorXcd final_amplitudes;
  std::vector<double> populations;
  /// Time-unwrapped accumulated phase: c1(t_f) = |c1| exp(i phase1).
  double phase1 = 0.0;
  std::vector<TimeSample> time_series;
  double norm_defect = 0.0;
  /// 1 - |c1|^2 maximised over the samples (tracked even without a series).
  double peak_excitation = 0.0;
};

/// Integrates i dc/dt = H(t) c across the support window with an adaptive
/// Dormand-Prince 5(4) pair and dense output.
///
/// Throws StiffnessError if the step collapses below 1e-12 T or the step
/// budget runs out, and ToleranceError if a lossless run loses more than
/// 100 x rel_tol of norm.
PropagationResult propagate(const SystemSpec& spec, const Eigen::VectorXcd& initial,
                            const PropagationOptions& options = {});

/// Convenience: start in state 1.
PropagationResult propagate_ground(const SystemSpec& spec, const PropagationOptions& options = {});

/// max_t (1 - |c1(t)|^2) over the stored time series.
double transient_peak_excitation(const PropagationResult& result);

/// CSV with columns t, re/im of each amplitude, populations, running phase.
void write_time_series_csv(std::ostream& out, const PropagationResult& result);

}  // namespace starkphase
