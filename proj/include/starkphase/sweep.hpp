#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>
#include "starkphase/approx.hpp"
#include "starkphase/dynamics.hpp"

namespace starkphase {

enum class SweepAxis { Detuning, Rabi, Loss };
enum class FigurePreset { Fig2, Fig3, Fig4, Fig5, Fig6, Fig7 };

std::string_view to_string(SweepAxis axis);
std::optional<SweepAxis> axis_from_string(std::string_view tag);
std::string_view to_string(FigurePreset preset);
std::optional<FigurePreset> figure_from_string(std::string_view tag);
std::string_view to_string(SystemVariant variant);
std::optional<SystemVariant> variant_from_string(std::string_view tag);

/// Grid values and method phases are dimensionless (Δ T, Ω0 T, Γ T); the
/// system template fixes T through the width of its first pulse.
struct SweepSpec {
  explicit SweepSpec(SystemSpec system_template) : system(std::move(system_template)) {}

  SystemSpec system;
  SweepAxis axis = SweepAxis::Detuning;
  std::vector<double> grid;
  std::vector<Method> methods;  // Numeric is implied by `oracle`
  bool oracle = true;
  PropagationOptions propagation{};
  ApproxOptions approx{};
  std::string name = "custom";
  std::string notes;
  std::filesystem::path output_path;

  /// Throws InvalidArgument: empty or non-monotone grid, unsupported method.
  void validate() const;
};

struct SweepCell {
  std::optional<double> phase;
  std::optional<double> abs_error;
  std::optional<double> population1;  // Lossy only
  std::string error;                  // set when the method failed on this row
};

struct SweepRow {
  double axis_value = 0.0;
  std::optional<double> oracle_phase;
  std::optional<double> oracle_population1;
  std::string oracle_error;
  std::vector<SweepCell> cells;  // parallel to SweepSpec::methods
};

struct SweepResult {
  SweepSpec spec;
  std::vector<SweepRow> rows;

  bool oracle_failed() const;
};

bool method_supported(SystemVariant variant, Method method);

/// Methods reported by the single-point `phase` command for a system.
std::vector<Method> default_methods(const SystemSpec& system);

/// The system template with the axis quantity set to `value` (dimensionless).
/// Three-state detuning sweeps keep Δ3/Δ2; Rabi sweeps keep Ω0b/Ω0a.
SystemSpec apply_axis(const SystemSpec& system, SweepAxis axis, double value);

/// One approximate or exact phase for a system (Numeric excluded).
PhaseEstimate evaluate_method(const SystemSpec& system, Method method, const ApproxOptions& opts = {});

/// Evaluates every grid point, unwraps the oracle along the grid and moves
/// each method onto the branch nearest the oracle. Method failures become
/// flagged cells; rows are evaluated on `threads` workers (0: hardware).
SweepResult run_sweep(const SweepSpec& spec, unsigned threads = 0);

SweepSpec figure_preset(FigurePreset preset, std::size_t points = 200);

std::vector<double> linear_grid(double from, double to, std::size_t points);
std::vector<double> log_grid(double from, double to, std::size_t points);

/// CSV: axis, numeric_phase, then <method>_phase,<method>_abs_error per method.
void write_csv(std::ostream& out, const SweepResult& result);
nlohmann::json sweep_metadata(const SweepSpec& spec);
nlohmann::json to_json(const SweepResult& result);

/// Builds a spec from the documented JSON layout (see README).
SweepSpec sweep_spec_from_json(const nlohmann::json& j);
/// Builds a system from the "system" JSON object.
SystemSpec system_from_json(const nlohmann::json& j);

struct DesignReport {
  SystemVariant variant;
  int n;
  double target_phase;
  double alpha;          // Ω0 T
  double delta;          // Δ T
  double pulse_area;     // π Ω0 T
  double exact_phase;    // reduced to (-π, π]
  double numeric_phase;  // time-unwrapped
  double phase_residual;            // |numeric - target| modulo 2π
  double residual_transition;       // 1 - |c1|²
};

/// Sech pulse with area 2nπ (two-state) or 2nπ√2 (ladder, Δ3 = 2Δ2) and
/// the detuning producing `target_phase`, verified by propagation.
DesignReport design_command(double target_phase, int n, SystemVariant variant,
                            const PropagationOptions& options = {});

}  // namespace starkphase
