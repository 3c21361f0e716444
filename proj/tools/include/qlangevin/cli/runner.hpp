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

#pragma once

// Point evaluation, parameter sweeps and entanglement-threshold searches
// on top of the three solution methods.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "qlangevin/cli/config.hpp"
#include "qlangevin/closed_forms.hpp"
#include "qlangevin/langevin.hpp"
#include "qlangevin/lindblad.hpp"

namespace qlangevin::cli {

/// Row status in sweep and threshold output.
enum class PointFlag { kOk, kTolerance, kUnstable, kNoBracket };

std::string_view to_string(PointFlag f);

/// Exact-solver system for the configured baths. Normal-mode baths (cavity,
/// thermal) produce a normal-mode spec; otherwise the oscillator basis is
/// used. Throws ConfigError if the configuration has no exact model.
SystemSpec build_system_spec(const RunConfig& config);

/// Lindblad bath description. Throws ConfigError if unsupported.
LindbladBaths build_lindblad_baths(const RunConfig& config);

struct PointResult {
  double en = 0.0;
  SymplecticPair spectrum;
  ModeVariances modes;
  /// 2 m Omega_+- <eta_+-^2> and 2 <pi_+-^2> / (m Omega_+-).
  closed_form::ScaledVariances plus;
  closed_form::ScaledVariances minus;
  CovarianceMatrix covariance;
  double rel_error = 0.0;  ///< quadrature error estimate (exact method only)
  int evaluations = 0;
  PointFlag flag = PointFlag::kOk;
  std::string message;  ///< failure text when flag != ok
  std::vector<std::string> warnings;
};

/// Evaluates one configuration with its configured method. Throws on any
/// solver failure (Unstable, NotHurwitz, ToleranceNotMet, ...).
PointResult evaluate_point(const RunConfig& config);

/// As evaluate_point, but solver failures become a flagged result with NaN
/// values. ConfigError still propagates.
PointResult evaluate_point_flagged(const RunConfig& config);

/// JSON report of a point.
std::string point_report_json(const RunConfig& config, const PointResult& r);

struct SweepRow {
  std::vector<double> parameters;
  PointResult result;
};

/// Cartesian product of the sweep axes, first axis slowest. Points are
/// evaluated on `workers` threads; rows come back in grid order.
std::vector<SweepRow> run_sweep(const RunConfig& config, int workers);

void write_sweep_csv(std::ostream& out, const RunConfig& config,
                     const std::vector<SweepRow>& rows);

struct GminResult {
  double g_min = 0.0;
  double en_at_g_min = 0.0;
  double en_above = 0.0;  ///< E_N at 1.01 G_min
  int evaluations = 0;
  PointFlag flag = PointFlag::kOk;
  std::string message;
};

/// Smallest G with E_N > 0. Brackets from [G_lo, G_hi], doubling G_hi up to
/// max_expansions times, then bisects to G_tol * Omega. Returns the
/// entangled-side endpoint and checks E_N(G_min) <= en_tol and
/// E_N(1.01 G_min) > 0; a failed check is flagged as tolerance.
GminResult find_gmin(const RunConfig& config);

struct BoundaryRow {
  std::vector<double> parameters;
  GminResult result;
};

/// Threshold over the sweep grid (G itself may not be a sweep axis).
std::vector<BoundaryRow> run_gmin_sweep(const RunConfig& config, int workers);

void write_boundary_csv(std::ostream& out, const RunConfig& config,
                        const std::vector<BoundaryRow>& rows);

/// Shortest round-trip decimal form; "nan", "inf", "-inf" for non-finite.
std::string format_double(double x);

}  // namespace qlangevin::cli
