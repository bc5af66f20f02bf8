#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "starkphase/errors.hpp"
#include "starkphase/exact.hpp"
#include "starkphase/sweep.hpp"

using namespace starkphase;
using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;

std::string csv_of(const SweepResult& r) {
  std::ostringstream out;
  write_csv(out, r);
  return out.str();
}

std::size_t column(const SweepResult& r, Method m) {
  for (std::size_t k = 0; k < r.spec.methods.size(); ++k)
    if (r.spec.methods[k] == m) return k;
  throw std::out_of_range("method not in sweep");
}

}  // namespace

TEST(Presets, MatchTheirSystems) {
  const auto f2 = figure_preset(FigurePreset::Fig2);
  EXPECT_EQ(f2.grid.size(), 200u);
  EXPECT_EQ(f2.grid.front(), 1.0);
  EXPECT_EQ(f2.grid.back(), 30.0);
  EXPECT_EQ(f2.system.pulse_a.kind(), PulseKind::Gaussian);
  EXPECT_EQ(f2.system.pulse_a.omega0(), 8.0);
  EXPECT_EQ(f2.axis, SweepAxis::Detuning);
  EXPECT_EQ(f2.methods, (std::vector<Method>{Method::AE, Method::AE2, Method::Adiabatic, Method::Superadiabatic}));
  EXPECT_TRUE(f2.oracle);

  const auto f3 = figure_preset(FigurePreset::Fig3);
  EXPECT_EQ(f3.axis, SweepAxis::Rabi);
  EXPECT_EQ(f3.system.detuning2, 10.0);

  const auto f4 = figure_preset(FigurePreset::Fig4);
  EXPECT_EQ(f4.system.pulse_a.kind(), PulseKind::Sech);
  EXPECT_EQ(f4.methods.back(), Method::ExactRZ);

  const auto f5 = figure_preset(FigurePreset::Fig5);
  EXPECT_EQ(f5.axis, SweepAxis::Loss);
  EXPECT_EQ(f5.grid.size(), 200u);
  EXPECT_EQ(f5.grid[0], 0.0);
  EXPECT_EQ(f5.grid[1], 1e-2);
  EXPECT_EQ(f5.grid.back(), 10.0);
  EXPECT_NEAR(f5.grid[2] / f5.grid[1], f5.grid[3] / f5.grid[2], 1e-12);
  EXPECT_EQ(f5.system.detuning2, 20.0);
  EXPECT_EQ(f5.methods, std::vector<Method>{Method::Lossy});

  const auto f6 = figure_preset(FigurePreset::Fig6);
  EXPECT_EQ(f6.system.variant, SystemVariant::Ladder);
  EXPECT_EQ(f6.system.detuning3, 2 * f6.system.detuning2);
  EXPECT_EQ(f6.system.detuning2, 10.0);
  EXPECT_EQ(f6.methods, (std::vector<Method>{Method::AE3Ladder, Method::Adiabatic, Method::Adiabatic3}));
  const auto f7 = figure_preset(FigurePreset::Fig7);
  EXPECT_EQ(f7.system.variant, SystemVariant::V);
  EXPECT_EQ(f7.methods, (std::vector<Method>{Method::AE3V, Method::Adiabatic, Method::Adiabatic3}));
  for (auto p : {FigurePreset::Fig2, FigurePreset::Fig5, FigurePreset::Fig7}) {
    EXPECT_EQ(figure_from_string(to_string(p)), p);
    EXPECT_FALSE(figure_preset(p).notes.empty());
  }
}

TEST(Sweep, SinglePointOracleOnly) {
  SweepSpec spec(SystemSpec::two_state(PulseShape::sech(2.0), 0.0));
  spec.grid = {1.0};
  const auto r = run_sweep(spec);
  ASSERT_EQ(r.rows.size(), 1u);
  EXPECT_NEAR(*r.rows[0].oracle_phase, kPi / 2, 1e-6);
  EXPECT_TRUE(r.rows[0].cells.empty());
  EXPECT_EQ(csv_of(r).substr(0, csv_of(r).find('\n')), "axis,numeric_phase");
}

TEST(Sweep, DeterministicAcrossRunsAndThreadCounts) {
  auto spec = figure_preset(FigurePreset::Fig3, 40);
  const std::string a = csv_of(run_sweep(spec, 1));
  const std::string b = csv_of(run_sweep(spec, 1));
  const std::string c = csv_of(run_sweep(spec, 4));
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);
}

TEST(Sweep, OracleContinuousOnEveryPreset) {
  for (auto p : {FigurePreset::Fig2, FigurePreset::Fig3, FigurePreset::Fig4, FigurePreset::Fig5, FigurePreset::Fig6,
                 FigurePreset::Fig7}) {
    const auto r = run_sweep(figure_preset(p));
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
      ASSERT_TRUE(r.rows[i].oracle_phase.has_value()) << to_string(p) << " row " << i;
      if (i) EXPECT_LT(std::abs(*r.rows[i].oracle_phase - *r.rows[i - 1].oracle_phase), kPi) << to_string(p);
      for (const auto& c : r.rows[i].cells)
        if (c.abs_error) EXPECT_GE(*c.abs_error, 0.0);
    }
  }
}

TEST(Sweep, ExactColumnTracksOracleAlongGrid) {
  const auto r = run_sweep(figure_preset(FigurePreset::Fig4));
  const auto k = column(r, Method::ExactRZ);
  for (const auto& row : r.rows) EXPECT_LT(*row.cells[k].abs_error, 1e-6) << row.axis_value;
}

TEST(Sweep, Fig2OrderingOnItsValidWindow) {
  // SA < AA < AE2 < AE holds for 12 <= ΔT <= 16 at Ω0 T = 8; above ΔT ≈ 16.3
  // AE2 overtakes AA.
  auto spec = figure_preset(FigurePreset::Fig2);
  spec.grid = linear_grid(12.0, 16.0, 21);
  const auto r = run_sweep(spec);
  for (const auto& row : r.rows) {
    const double ae = *row.cells[0].abs_error, ae2 = *row.cells[1].abs_error;
    const double aa = *row.cells[2].abs_error, sa = *row.cells[3].abs_error;
    EXPECT_LT(sa, aa) << row.axis_value;
    EXPECT_LT(aa, ae2) << row.axis_value;
    EXPECT_LT(ae2, ae) << row.axis_value;
  }
}

TEST(Sweep, FailingMethodsBecomeFlaggedCells) {
  SweepSpec spec(SystemSpec::two_state(PulseShape::gaussian(4.0), 0.0));
  spec.grid = {-1.0, 0.0, 1.0};
  spec.methods = {Method::AE, Method::Adiabatic};
  const auto r = run_sweep(spec);
  EXPECT_FALSE(r.oracle_failed());
  EXPECT_FALSE(r.rows[1].cells[0].phase.has_value());
  EXPECT_FALSE(r.rows[1].cells[0].error.empty());
  EXPECT_TRUE(r.rows[1].cells[1].phase.has_value());
  EXPECT_TRUE(r.rows[0].cells[0].phase.has_value());
  const std::string csv = csv_of(r);
  EXPECT_NE(csv.find("0,"), std::string::npos);
  EXPECT_NE(csv.find("nan,nan"), std::string::npos);
  const json j = to_json(r);
  EXPECT_TRUE(j["rows"][1]["ae"]["phase"].is_null());
  EXPECT_TRUE(j["rows"][1]["ae"].contains("error"));
}

TEST(Sweep, ValidationRejectsBadSpecs) {
  SweepSpec spec(SystemSpec::two_state(PulseShape::gaussian(4.0), 1.0));
  EXPECT_THROW(run_sweep(spec), InvalidArgument);  // empty grid
  spec.grid = {1.0, 3.0, 2.0};
  EXPECT_THROW(spec.validate(), InvalidArgument);
  spec.grid = {3.0, 2.0, 1.0};
  EXPECT_NO_THROW(spec.validate());
  spec.methods = {Method::AE3Ladder};
  EXPECT_THROW(spec.validate(), InvalidArgument);
  spec.methods = {Method::AE, Method::AE};
  EXPECT_THROW(spec.validate(), InvalidArgument);
  spec.methods = {Method::Numeric};
  EXPECT_THROW(spec.validate(), InvalidArgument);
  spec.methods = {};
  spec.oracle = false;
  EXPECT_THROW(spec.validate(), InvalidArgument);

  const auto g = PulseShape::gaussian(4.0);
  SweepSpec ladder(SystemSpec::ladder(g, g, 1.0, 2.0));
  ladder.grid = {0.0, 1.0};
  ladder.axis = SweepAxis::Loss;
  EXPECT_THROW(ladder.validate(), InvalidArgument);
  ladder.axis = SweepAxis::Rabi;
  ladder.methods = {Method::Lossy};
  EXPECT_THROW(ladder.validate(), InvalidArgument);
}

TEST(Sweep, AxisSemantics) {
  const auto g = PulseShape::gaussian(4.0);
  const auto ladder = SystemSpec::ladder(g, g.with_omega0(2.0), 10.0, 20.0);
  const auto d = apply_axis(ladder, SweepAxis::Detuning, 3.0);
  EXPECT_EQ(d.detuning2, 3.0);
  EXPECT_EQ(d.detuning3, 6.0);
  const auto w = apply_axis(ladder, SweepAxis::Rabi, 8.0);
  EXPECT_EQ(w.pulse_a.omega0(), 8.0);
  EXPECT_EQ(w.pulse_b->omega0(), 4.0);
  const auto t = SystemSpec::two_state(PulseShape::sech(1.0, 2.0), 1.0);
  EXPECT_EQ(apply_axis(t, SweepAxis::Loss, 3.0).loss_rate, 1.5);  // ΓT = 3 with T = 2
  EXPECT_EQ(apply_axis(t, SweepAxis::Detuning, 3.0).detuning2, 1.5);
}

TEST(Sweep, ExactMethodsCheckTheirModel) {
  const auto g = SystemSpec::two_state(PulseShape::gaussian(2.0), 1.0);
  EXPECT_THROW(evaluate_method(g, Method::ExactRZ), InvalidArgument);
  const auto s = PulseShape::sech(2.0);
  EXPECT_THROW(evaluate_method(SystemSpec::ladder(s, s, 1.0, 3.0), Method::ExactLadder), InvalidArgument);
  EXPECT_NEAR(evaluate_method(SystemSpec::ladder(s, s, 1.0, 2.0), Method::ExactLadder).phase,
              ladder_exact_phase_continued(2.0, 1.0), 1e-15);
  EXPECT_NEAR(evaluate_method(SystemSpec::v_system(s, s, 1.0, 1.0), Method::ExactV).phase,
              rz_phase_continued(2.0 * std::numbers::sqrt2, 1.0), 1e-12);
  EXPECT_THROW(evaluate_method(SystemSpec::v_system(s, s, 1.0, 2.0), Method::ExactV), InvalidArgument);
  EXPECT_THROW(evaluate_method(g, Method::Numeric), InvalidArgument);
}

TEST(Output, CsvHeaderAndPrecision) {
  auto spec = figure_preset(FigurePreset::Fig5, 3);
  const auto r = run_sweep(spec);
  const std::string csv = csv_of(r);
  std::istringstream in(csv);
  std::string header, row0, row1;
  std::getline(in, header);
  std::getline(in, row0);
  std::getline(in, row1);
  EXPECT_EQ(header,
            "axis,numeric_phase,numeric_population1,lossy_phase,lossy_abs_error,lossy_population1,"
            "lossy_population1_abs_error");
  // 17 significant digits reproduce the double exactly.
  const std::string field = row1.substr(row1.find(',') + 1, row1.find(',', row1.find(',') + 1) - row1.find(',') - 1);
  EXPECT_EQ(std::stod(field), *r.rows[1].oracle_phase);
  EXPECT_GE(field.size(), 17u);
}

TEST(Output, MetadataEchoesInputs) {
  auto spec = figure_preset(FigurePreset::Fig6, 5);
  spec.propagation.rel_tol = 1e-9;
  const json m = sweep_metadata(spec);
  EXPECT_EQ(m["tool"], "starkphase");
  EXPECT_EQ(m["version"], STARKPHASE_VERSION);
  EXPECT_EQ(m["name"], "fig6");
  EXPECT_EQ(m["axis"], "rabi");
  EXPECT_EQ(m["grid"].size(), 5u);
  EXPECT_EQ(m["system"]["variant"], "ladder");
  EXPECT_EQ(m["system"]["delta3"], 20.0);
  EXPECT_EQ(m["tolerances"]["rel_tol"], 1e-9);
  EXPECT_EQ(m["methods"][0], "ae3_ladder");
}

TEST(Input, SpecFromJson) {
  const json j = json::parse(R"({
    "system": {"variant": "ladder", "shape": "sech", "omega0": 2.0, "delta2": 1.0},
    "axis": "detuning",
    "grid": {"from": 1, "to": 2, "points": 3},
    "methods": ["adiabatic3", "exact_ladder"],
    "rel_tol": 1e-9
  })");
  const auto s = sweep_spec_from_json(j);
  EXPECT_EQ(s.system.variant, SystemVariant::Ladder);
  EXPECT_EQ(s.system.detuning3, 2.0);
  EXPECT_EQ(s.system.pulse_b->omega0(), 2.0);
  EXPECT_EQ(s.grid, (std::vector<double>{1.0, 1.5, 2.0}));
  EXPECT_EQ(s.propagation.rel_tol, 1e-9);
  const auto r = run_sweep(s);
  EXPECT_LT(*r.rows[0].cells[1].abs_error, 1e-6);

  const auto log = sweep_spec_from_json(json::parse(
      R"({"system": {"omega0": 8, "delta": 20}, "axis": "loss", "grid": {"from": 0.1, "to": 10, "points": 3, "spacing": "log"}, "methods": ["lossy"]})"));
  EXPECT_NEAR(log.grid[1], 1.0, 1e-15);

  EXPECT_THROW(sweep_spec_from_json(json::parse(R"({"system": {"omega0": 1}, "grid": [1], "methods": ["bogus"]})")),
               InvalidArgument);
  EXPECT_THROW(sweep_spec_from_json(json::parse(R"({"system": {"omega0": 1, "shape": "box"}, "grid": [1]})")),
               InvalidArgument);
  EXPECT_THROW(sweep_spec_from_json(json::parse(R"({"system": {"omega0": 1}})")), InvalidArgument);
  EXPECT_THROW(sweep_spec_from_json(json::parse(R"({"system": {"omega0": "x"}, "grid": [1]})")), InvalidArgument);
  EXPECT_THROW(sweep_spec_from_json(json::parse("[1, 2]")), InvalidArgument);
}

TEST(Design, TwoState) {
  const auto r = design_command(kPi / 2, 1, SystemVariant::TwoState);
  EXPECT_NEAR(r.delta, 1.0, 1e-10);
  EXPECT_NEAR(r.pulse_area, 2 * kPi, 1e-14);
  EXPECT_LT(r.phase_residual, 1e-6);
  EXPECT_LT(r.residual_transition, 1e-6);
  const auto pi = design_command(kPi, 1, SystemVariant::TwoState);
  EXPECT_EQ(pi.delta, 0.0);
  EXPECT_LT(pi.phase_residual, 1e-6);
  EXPECT_THROW(design_command(4.0, 1, SystemVariant::TwoState), UnattainableError);
  EXPECT_THROW(design_command(1.0, 0, SystemVariant::TwoState), InvalidArgument);
}

TEST(Design, LadderSolvesTheDoubledPhase) {
  const auto r = design_command(kPi / 2, 1, SystemVariant::Ladder);
  EXPECT_NEAR(r.alpha, 2 * std::numbers::sqrt2, 1e-15);
  EXPECT_NEAR(r.delta, 1 + std::numbers::sqrt2, 1e-10);
  EXPECT_NEAR(r.exact_phase, kPi / 2, 1e-10);
  EXPECT_LT(r.phase_residual, 1e-6);
  EXPECT_LT(r.residual_transition, 1e-6);
  EXPECT_THROW(design_command(7.0, 1, SystemVariant::Ladder), UnattainableError);
  EXPECT_THROW(design_command(1.0, 1, SystemVariant::V), InvalidArgument);
}
