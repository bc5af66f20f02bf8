#pragma once

#include <span>
#include <vector>

namespace starkphase {

/// Dimensionless parameters of the sech-pulse models: alpha = Ω0 T, delta = Δ T.
/// kappa12 / kappa13 weight the two arms of the V system.
struct RZParameters {
  double alpha = 0.0;
  double delta = 0.0;
  double kappa12 = 1.0;
  double kappa13 = 0.0;

  double kappa() const;
};

/// arg[Γ(½ + iδ/2)² / (Γ(½ + iδ/2 - α/2) Γ(½ + iδ/2 + α/2))] in (-π, π].
double rz_phase(double alpha, double delta);

/// Same phase continued in alpha from the no-pulse limit (φ = 0 at α = 0),
/// so it can exceed π. Matches the time-unwrapped phase of a propagation.
/// At delta = 0 the continuation passes through zeros of c1; the principal
/// value is returned there.
double rz_phase_continued(double alpha, double delta, int steps = 256);

/// Phase for pulse area 2nπ (α = 2n): nπ - 2 Σ_{k=1..n} arctan(δ / (2k - 1)).
/// Continuous in delta; equals rz_phase(2n, delta) modulo 2π.
double rz_phase_zero_transition(int n, double delta);

/// Detuning δ >= 0 with rz_phase_zero_transition(n, δ) = target.
/// Throws UnattainableError unless target lies in (0, nπ].
double design_detuning(double target_phase, int n);

/// Ladder with Ω12 = Ω23 = Ω0 sech(t/T), Δ3 = 2Δ2 = 2Δ: twice the two-state
/// phase at coupling α/√2, reduced to (-π, π].
double ladder_exact_phase(double alpha, double delta);
double ladder_exact_phase_continued(double alpha, double delta, int steps = 256);

/// V with proportional sech arms and Δ2 = Δ3 = Δ. The Morris-Shore bright
/// two-state system carries the whole phase: rz_phase(κα, δ).
double v_exact_phase(const RZParameters& p);
double v_exact_phase_continued(const RZParameters& p, int steps = 256);

/// Two-term Stirling series of the exact phases (|δ| >> max(1, α)).
double rz_asymptotic_phase(double alpha, double delta);
double ladder_asymptotic_phase(double alpha, double delta);
double v_asymptotic_phase(const RZParameters& p);

/// Adds multiples of 2π so consecutive values differ by at most π.
void unwrap_sequence(std::span<double> phases);
/// The representative of `phase` modulo 2π closest to `reference`.
double nearest_branch(double phase, double reference);

}  // namespace starkphase
