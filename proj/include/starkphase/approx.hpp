#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "starkphase/dynamics.hpp"
#include "starkphase/pulse.hpp"
#include "starkphase/quadrature.hpp"

namespace starkphase {

enum class Method {
  AE,
  AE2,
  Adiabatic,
  Superadiabatic,
  Lossy,
  AE3Ladder,
  AE3V,
  Adiabatic3,
  Numeric,
  ExactRZ,
  ExactLadder,
  ExactV,
};

/// Lower-case tag used in CSV headers and on the command line ("ae2", "exact_rz", ...).
std::string_view to_string(Method method);
std::optional<Method> method_from_string(std::string_view tag);

struct PhaseEstimate {
  Method method;
  double phase;              // radians
  double population1 = 1.0;  // only Lossy reports a value below 1
};

struct ApproxOptions {
  double window_tol = kDefaultWindowTol;
  double quad_tol = kDefaultQuadratureTol;
};

// Single-field phases. Signs follow c1(t_f) = |c1| exp(i phase); all are odd
// in delta. For delta < 0 the dressed state connected to state 1 is λ+.

/// ∫ Ω² / (4Δ) dt.
PhaseEstimate phase_ae(const PulseShape& pulse, double delta, const ApproxOptions& opts = {});

/// ∫ [Ω²/(4Δ) - (Ω⁴ + 4ΩΩ̈)/(16Δ³)] dt. Gaussian and sech pulses use the
/// closed forms; tabulated pulses are integrated numerically.
PhaseEstimate phase_ae2(const PulseShape& pulse, double delta, const ApproxOptions& opts = {});
/// Always integrates numerically (reference for the closed forms).
double phase_ae2_quadrature(const PulseShape& pulse, double delta, const ApproxOptions& opts = {});
/// Closed form for Gaussian/sech; throws InvalidArgument for tabulated pulses.
double phase_ae2_closed_form(const PulseShape& pulse, double delta);

/// ½ ∫ [√(Ω² + Δ²) - Δ] dt (dressed-state phase).
PhaseEstimate phase_adiabatic(const PulseShape& pulse, double delta, const ApproxOptions& opts = {});

/// ½ ∫ [√(Ω² + Δ² + Ω̇²Δ²/(Ω² + Δ²)²) - Δ] dt.
PhaseEstimate phase_superadiabatic(const PulseShape& pulse, double delta, const ApproxOptions& opts = {});

/// Phase -∫[λ- + Γ² sin²2θ / (16λ)] dt and population exp(-∫ Γ sin²θ dt).
/// Γ > 0 with Δ = 0 makes the phase integral diverge (ZeroDetuningError).
PhaseEstimate phase_and_population_lossy(const PulseShape& pulse, double delta, double gamma,
                                         const ApproxOptions& opts = {});

struct AdiabaticDiagnostics {
  double mixing_angle_peak;        // max θ, θ = ½ arctan(Ω/|Δ|)
  double nonadiabatic_ratio_peak;  // max |θ̇| / λ
  std::optional<double> threshold_detuning;  // Δ0; absent for tabulated pulses
};

/// Closed-form adiabaticity threshold: Gaussian 2√ln(Ω0T) / (3√3 T), sech 1/(3√6 T).
/// Throws ThresholdUndefined for a Gaussian with Ω0 T <= 1.
std::optional<double> adiabatic_threshold_detuning(const PulseShape& pulse);

AdiabaticDiagnostics adiabatic_diagnostics(const PulseShape& pulse, double delta, const ApproxOptions& opts = {});

/// ∫ Δ3 Ω12² / (4Δ2Δ3 - Ω23²) dt. Throws TwoPhotonPoleError if the
/// denominator changes sign inside the window.
PhaseEstimate phase_ae3_ladder(const PulseShape& pulse12, const PulseShape& pulse23, double delta2,
                               double delta3, const ApproxOptions& opts = {});

struct AE3LadderExpansion {
  double leading;     // ∫ Ω12² / (4Δ2)
  double correction;  // ∫ Ω12² Ω23² / (16 Δ2² Δ3)
};
AE3LadderExpansion phase_ae3_ladder_expansion(const PulseShape& pulse12, const PulseShape& pulse23,
                                              double delta2, double delta3, const ApproxOptions& opts = {});

/// Sum of the two single-arm AE phases.
PhaseEstimate phase_ae3_v(const PulseShape& pulse12, const PulseShape& pulse13, double delta2, double delta3,
                          const ApproxOptions& opts = {});

/// Real roots of ε³ + aε² + bε + c (three real roots assumed), ascending,
/// via the trigonometric parameterisation. Throws DegenerateError near a
/// triple root.
std::array<double, 3> cubic_real_roots(double a, double b, double c);

/// Instantaneous eigenvalues of the ladder Hamiltonian, ascending.
std::array<double, 3> quasienergies_ladder(double omega12, double omega23, double delta2, double delta3);
/// Instantaneous eigenvalues of the V Hamiltonian, ascending.
std::array<double, 3> quasienergies_v(double omega12, double omega13, double delta2, double delta3);

/// -∫ ε(t) dt over the quasienergy branch that starts at 0 (state 1) and is
/// followed by continuity. Throws BranchCrossError if it meets another branch.
PhaseEstimate phase_adiabatic3(const SystemSpec& spec, const ApproxOptions& opts = {});

/// Large-Δ3 ladder asymptotic: -∫ε- dt - ∫ ε- Ω23² / (4Δ3 √(Δ2² + Ω12²)) dt.
double phase_adiabatic3_asymptotic(const SystemSpec& spec, const ApproxOptions& opts = {});

}  // namespace starkphase
