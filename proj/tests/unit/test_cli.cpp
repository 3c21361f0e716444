// Copyright 2026 The qlangevin Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "qlangevin/cli/config.hpp"
#include "qlangevin/cli/runner.hpp"
#include "qlangevin/closed_forms.hpp"

namespace qlangevin::cli {
namespace {

RunConfig sideband_config(double gamma_opt, double coupling_rate) {
  RunConfig c = parse_config_text(R"({
    "method": "exact",
    "system": {"G": 0.1},
    "baths": {"cavity": {"Gamma_opt": 0.01, "kappa": 0.067},
              "thermal": {"Gamma_m_n_th": 1e-4}}
  })");
  c.set_parameter("Gamma_opt", gamma_opt);
  c.set_parameter("G", coupling_rate);
  return c;
}

std::string expect_config_error(std::string_view text) {
  try {
    RunConfig c = parse_config_text(text);
    c.validate();
  } catch (const ConfigError& e) {
    return e.where() + ": " + e.what();
  }
  ADD_FAILURE() << "no ConfigError for " << text;
  return {};
}

TEST(Config, ParsesDefaults) {
  const RunConfig c = parse_config_text(R"({"system": {"G": 0.2}})");
  EXPECT_EQ(c.method, Method::kExact);
  EXPECT_DOUBLE_EQ(c.system.resolved_coupling_rate(), 0.2);
  EXPECT_NEAR(c.system.pair().k, 0.4, 1e-15);
  EXPECT_FALSE(c.ohmic || c.cavity || c.thermal || c.tabulated);
}

TEST(Config, CouplingFromSpringConstant) {
  const RunConfig c = parse_config_text(R"({"system": {"k": 0.4, "omega": 2.0}})");
  EXPECT_NEAR(c.system.resolved_coupling_rate(), 0.1, 1e-15);
}

TEST(Config, SyntaxErrorReportsPosition) {
  const std::string msg = expect_config_error("{\n\"system\": {\"G\": 0.2,}\n}");
  EXPECT_NE(msg.find("line 2"), std::string::npos) << msg;
  EXPECT_NE(msg.find("column"), std::string::npos) << msg;
}

TEST(Config, UnknownFieldReportsPath) {
  const std::string msg = expect_config_error(R"({"baths": {"ohmic": {"Gamma": 0.1}}})");
  EXPECT_NE(msg.find("baths.ohmic"), std::string::npos) << msg;
  EXPECT_NE(msg.find("Gamma"), std::string::npos) << msg;
}

TEST(Config, RejectsInconsistentSelections) {
  expect_config_error(R"({"system": {"G": 0.2, "k": 0.4}})");
  expect_config_error(R"({"baths": {"ohmic": {"T": 0.1, "n_th": 0.1}}})");
  expect_config_error(R"({"baths": {"cavity": {"g": 0.01, "Gamma_opt": 0.01}}})");
  expect_config_error(R"({"baths": {"cavity": {"kappa": 0.067}}})");
  expect_config_error(R"({"baths": {"ohmic": {}, "thermal": {}}})");
  expect_config_error(R"({"method": "lindblad", "baths": {"tabulated": {"path": "x.dat"}}})");
  expect_config_error(R"({"method": "quantum"})");
  expect_config_error(R"({"sweep": [{"param": "G", "min": 0, "max": 1, "count": 1}]})");
  expect_config_error(R"({"sweep": [{"param": "G", "min": 0, "max": 1, "count": 3,
                                     "scale": "log"}]})");
  expect_config_error(R"({"sweep": [{"param": "nonsense", "min": 0, "max": 1, "count": 3}]})");
  expect_config_error(R"({"sweep": [{"param": "G", "min": 0, "max": 1, "count": 3},
                                    {"param": "G", "min": 0, "max": 1, "count": 3}]})");
  expect_config_error(R"({"sweep": [{"param": "kappa", "min": 0.01, "max": 1, "count": 3}]})");
  expect_config_error(R"({"system": {"G": -0.1}})");
}

TEST(Config, SetParameter) {
  RunConfig c = sideband_config(0.01, 0.1);
  EXPECT_NEAR(c.cavity_g(), std::sqrt(0.01 * 0.067 / 4), 1e-15);
  c.set_parameter("kappa", 0.1);
  EXPECT_NEAR(c.cavity_gamma_opt(), 0.01, 1e-15);
  EXPECT_THROW(c.set_parameter("omega_c", 20.0), ConfigError);
  EXPECT_THROW(c.set_parameter("bogus", 1.0), ConfigError);
  EXPECT_TRUE(RunConfig::is_parameter("Gamma_m_n_th"));
  EXPECT_FALSE(RunConfig::is_parameter("bogus"));
}

TEST(SweepAxis, Values) {
  const SweepAxis lin{"G", 0.0, 0.2, 5, AxisScale::kLinear};
  const auto v = lin.values();
  ASSERT_EQ(v.size(), 5u);
  EXPECT_EQ(v.front(), 0.0);
  EXPECT_EQ(v.back(), 0.2);
  EXPECT_NEAR(v[2], 0.1, 1e-16);
  const SweepAxis log{"Gamma_opt", 1e-3, 1e-1, 3, AxisScale::kLog};
  const auto w = log.values();
  EXPECT_EQ(w.front(), 1e-3);
  EXPECT_NEAR(w[1], 1e-2, 1e-17);
  EXPECT_EQ(w.back(), 1e-1);
}

TEST(FormatDouble, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(1e-4), "1e-04");
  EXPECT_EQ(format_double(std::nan("")), "nan");
  EXPECT_EQ(format_double(-INFINITY), "-inf");
  for (double x : {0.21199922663873744, 1.0 / 3.0, 6.02e23, -2.5e-300}) {
    const std::string s = format_double(x);
    double back = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    EXPECT_EQ(back, x) << s;
  }
}

TEST(Point, ClosedFormWithoutBath) {
  RunConfig c = parse_config_text(R"({"method": "closed-form", "system": {"G": 0.2}})");
  EXPECT_NEAR(evaluate_point(c).en, 0.2120, 1e-4);
}

TEST(Point, LindbladIgnoresZeroTemperatureOhmicBath) {
  RunConfig c = parse_config_text(R"({"method": "lindblad", "system": {"G": 0.2},
      "baths": {"ohmic": {"Gamma_m": 0.1, "omega_c": 10, "T": 0}}})");
  EXPECT_NEAR(evaluate_point(c).en, 0.21199922663873744, 1e-10);
}

TEST(Point, ExactOhmicReduction) {
  RunConfig c = parse_config_text(R"({"system": {"G": 0.2},
      "baths": {"ohmic": {"Gamma_m": 0.1, "omega_c": 10, "T": 0}}})");
  const PointResult r = evaluate_point(c);
  EXPECT_EQ(r.flag, PointFlag::kOk);
  EXPECT_NEAR(r.en, 0.141398, 1e-5);
  EXPECT_LT(r.rel_error, 1e-6);
  EXPECT_GT(r.evaluations, 0);
}

TEST(Point, UnstableIsFlagged) {
  RunConfig c = sideband_config(0.01, 0.1);
  c.cavity->detuning = 1.0;
  EXPECT_ANY_THROW(evaluate_point(c));
  const PointResult r = evaluate_point_flagged(c);
  EXPECT_EQ(r.flag, PointFlag::kUnstable);
  EXPECT_TRUE(std::isnan(r.en));
}

TEST(Point, ReportIsJson) {
  RunConfig c = parse_config_text(R"({"method": "closed-form", "system": {"G": 0.2}})");
  const std::string s = point_report_json(c, evaluate_point(c));
  EXPECT_NE(s.find("\"E_N\""), std::string::npos) << s;
}

TEST(Sweep, DeterministicAcrossWorkerCounts) {
  RunConfig c = sideband_config(0.01, 0.1);
  c.axes = {{"Gamma_opt", 0.003, 0.1, 4, AxisScale::kLog}, {"G", 0.02, 0.2, 3, AxisScale::kLinear}};
  std::ostringstream one, three;
  write_sweep_csv(one, c, run_sweep(c, 1));
  write_sweep_csv(three, c, run_sweep(c, 3));
  EXPECT_EQ(one.str(), three.str());
  EXPECT_EQ(one.str().find('\r'), std::string::npos);
  EXPECT_EQ(one.str().substr(0, one.str().find('\n')),
            "Gamma_opt,G,E_N,c1,c2,pos_plus,mom_plus,pos_minus,mom_minus,rel_error,flag");
}

TEST(Sweep, EntangledRowsHaveSmallSymplecticEigenvalue) {
  RunConfig c = sideband_config(0.01, 0.1);
  c.axes = {{"Gamma_opt", 0.003, 0.3, 5, AxisScale::kLog}, {"G", 0.01, 0.3, 5, AxisScale::kLinear}};
  int entangled = 0;
  for (const auto& row : run_sweep(c, 1)) {
    ASSERT_EQ(row.result.flag, PointFlag::kOk);
    if (row.result.en > 0.0) {
      ++entangled;
      EXPECT_LT(row.result.spectrum.c1, 0.5);
    }
  }
  EXPECT_GT(entangled, 5);
}

TEST(Sweep, NonMonotonicInCoolingRate) {
  RunConfig c = sideband_config(0.01, 0.1);
  c.axes = {{"G", 0.05, 0.15, 3, AxisScale::kLinear},
            {"Gamma_opt", 0.003, 0.3, 9, AxisScale::kLog}};
  const auto rows = run_sweep(c, 1);
  for (std::size_t r = 0; r < 3; ++r) {
    std::vector<double> en;
    for (std::size_t i = 0; i < 9; ++i) en.push_back(rows[r * 9 + i].result.en);
    const auto best = std::max_element(en.begin(), en.end()) - en.begin();
    EXPECT_GT(best, 0) << "G row " << r;
    EXPECT_LT(best, 8) << "G row " << r;
    EXPECT_GT(en[best], en.front());
    EXPECT_GT(en[best], en.back());
  }
}

TEST(Sweep, OccupationReducesEntanglement) {
  RunConfig c = parse_config_text(R"({"method": "closed-form", "system": {"G": 0.2},
      "sweep": [{"param": "n_th", "min": 0, "max": 0.2, "count": 21}]})");
  const auto rows = run_sweep(c, 1);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_LE(rows[i].result.en, rows[i - 1].result.en);
  }
  EXPECT_GT(rows.front().result.en, 0.0);
  EXPECT_EQ(rows.back().result.en, 0.0);
}

TEST(Sweep, LowTemperatureReductionIsQuadratic) {
  RunConfig c = parse_config_text(R"({"system": {"G": 0.2},
      "baths": {"ohmic": {"Gamma_m": 0.1, "omega_c": 10, "T": 0}},
      "sweep": [{"param": "T", "min": 0.01, "max": 0.1, "count": 7, "scale": "log"}]})");
  const double en0 = evaluate_point(c).en;
  const auto rows = run_sweep(c, 1);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& row : rows) {
    const double x = std::log(row.parameters[0]);
    const double y = std::log(en0 - row.result.en);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(rows.size());
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  EXPECT_NEAR(slope, 2.0, 0.2);
}

TEST(Gmin, OhmicThresholdAndBracketInvariant) {
  RunConfig c = parse_config_text(R"({"system": {"G": 0.2},
      "baths": {"ohmic": {"Gamma_m": 0.1, "omega_c": 10, "T": 0}}})");
  const GminResult g = find_gmin(c);
  ASSERT_EQ(g.flag, PointFlag::kOk) << g.message;
  EXPECT_NEAR(g.g_min / 0.0414626, 1.0, 0.3);
  EXPECT_LE(std::abs(g.en_at_g_min), c.gmin.en_tol);
  EXPECT_GT(g.en_above, 0.0);
  RunConfig below = c;
  below.set_parameter("G", g.g_min - c.gmin.g_tol);
  EXPECT_EQ(evaluate_point(below).en, 0.0);
}

TEST(Gmin, NoBracketWhenAlreadyEntangled) {
  RunConfig c = parse_config_text(R"({"method": "closed-form", "gmin": {"G_lo": 0.1, "G_hi": 0.2}})");
  EXPECT_EQ(find_gmin(c).flag, PointFlag::kNoBracket);
}

TEST(Gmin, NoBracketWhenNeverEntangled) {
  RunConfig c = parse_config_text(R"({"method": "closed-form", "system": {"n_th": 5},
      "gmin": {"G_hi": 0.01, "max_expansions": 2}})");
  EXPECT_EQ(find_gmin(c).flag, PointFlag::kNoBracket);
}

TEST(Gmin, LindbladDependsOnlyOnEffectiveOccupation) {
  RunConfig a = parse_config_text(R"({"method": "lindblad",
      "baths": {"cavity": {"g": 0.02, "kappa": 0.067},
                "thermal": {"Gamma_m_n_th": 1e-4, "Gamma_m": 1e-6}}})");
  RunConfig b = a;
  b.cavity->g = 0.02 * std::sqrt(2.0);
  b.thermal->gamma_m_n_th = 2e-4;
  b.thermal->gamma_m = 2e-6;
  const GminResult ga = find_gmin(a);
  const GminResult gb = find_gmin(b);
  ASSERT_EQ(ga.flag, PointFlag::kOk);
  ASSERT_EQ(gb.flag, PointFlag::kOk);
  EXPECT_NEAR(gb.g_min / ga.g_min, 1.0, 1e-6);
}

TEST(Gmin, ExactCurveHasInteriorMinimumAndExceedsLindblad) {
  RunConfig c = sideband_config(0.01, 0.1);
  c.axes = {{"Gamma_opt", 0.002, 0.2, 7, AxisScale::kLog}};
  const auto exact = run_gmin_sweep(c, 1);
  c.method = Method::kLindblad;
  const auto lindblad = run_gmin_sweep(c, 1);
  std::vector<double> g;
  for (const auto& row : exact) {
    ASSERT_EQ(row.result.flag, PointFlag::kOk) << row.result.message;
    g.push_back(row.result.g_min);
  }
  const auto best = std::min_element(g.begin(), g.end()) - g.begin();
  EXPECT_GT(best, 0);
  EXPECT_LT(best, 6);
  // Large cooling rates: the Lindblad curve stays below the exact one.
  for (std::size_t i = 4; i < g.size(); ++i) {
    EXPECT_LT(lindblad[i].result.g_min, g[i]) << "Gamma_opt " << exact[i].parameters[0];
    EXPECT_LE(lindblad[i].result.g_min, lindblad[i - 1].result.g_min + 1e-4);
  }
}

TEST(Gmin, RejectsCouplingAxis) {
  RunConfig c = sideband_config(0.01, 0.1);
  c.axes = {{"G", 0.0, 0.1, 3, AxisScale::kLinear}};
  EXPECT_THROW(run_gmin_sweep(c, 1), ConfigError);
}

TEST(Gmin, BoundaryCsvHeader) {
  RunConfig c = parse_config_text(R"({"method": "closed-form",
      "sweep": [{"param": "n_th", "min": 0, "max": 0.01, "count": 2}]})");
  std::ostringstream out;
  write_boundary_csv(out, c, run_gmin_sweep(c, 1));
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')),
            "n_th,G_min,E_N_at_G_min,E_N_above,evaluations,flag");
}

}  // namespace
}  // namespace qlangevin::cli
