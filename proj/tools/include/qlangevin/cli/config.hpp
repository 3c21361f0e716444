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

// Run configuration for the qlangevin command-line tool.
//
// JSON schema (all quantities in the units of the oscillator frequency
// Omega; with the defaults Omega = m = 1 every number is in units of Omega):
//
//   {
//     "method": "exact" | "lindblad" | "closed-form",
//     "system": { "G": 0.2 | "k": 0.4, "omega": 1, "m": 1, "n_th": 0 },
//     "baths": {
//       "ohmic":     { "Gamma_m": 0.1, "omega_c": 10, "T": 0 | "n_th": 0 },
//       "cavity":    { "Gamma_opt": 0.01 | "g": 0.0129, "kappa": 0.067,
//                      "detuning": "optimal" | -1.0 },
//       "thermal":   { "Gamma_m_n_th": 1e-4, "Gamma_m": 1e-6 },
//       "tabulated": { "path": "spectrum.txt", "cross_path": "cross.txt" }
//     },
//     "quadrature": { "rel_tol": 1e-6, "max_subdivisions": 20000,
//                     "peak_pad": 10, "tail_cut": 200 },
//     "sweep": [ { "param": "Gamma_opt", "min": 1e-3, "max": 0.3,
//                  "count": 20, "scale": "log" } ],
//     "gmin":  { "G_lo": 0, "G_hi": 0.05, "G_tol": 1e-4, "en_tol": 1e-3 }
//   }
//
// system.n_th is the thermal occupation of undamped oscillators and only
// applies when no bath is configured. "detuning": "optimal" sets
// Delta_+- = -Omega_+- on each normal mode.

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "qlangevin/langevin.hpp"

namespace qlangevin::cli {

/// Invalid or inconsistent configuration. `where` names the JSON field (or
/// line/column for syntax errors).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& where, const std::string& what)
      : std::runtime_error(where + ": " + what), where_(where) {}
  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

enum class Method { kExact, kLindblad, kClosedForm };

std::string_view to_string(Method m);
Method parse_method(std::string_view s);

struct SystemConfig {
  double omega = 1.0;
  double m = 1.0;
  std::optional<double> coupling_rate;  ///< G
  std::optional<double> k;
  double n_th = 0.0;

  double resolved_coupling_rate() const;
  OscillatorPair pair() const;
};

struct OhmicConfig {
  double gamma_m = 0.1;
  double omega_c = 10.0;
  std::optional<double> temperature;
  std::optional<double> n_th;  ///< occupation at Omega, converted to T
};

struct CavityConfig {
  std::optional<double> gamma_opt;
  std::optional<double> g;
  double kappa = 0.067;
  std::optional<double> detuning;  ///< unset: optimal, Delta_+- = -Omega_+-
};

struct ThermalConfig {
  double gamma_m_n_th = 1e-4;
  double gamma_m = 1e-6;
};

struct TabulatedConfig {
  std::filesystem::path path;
  std::optional<std::filesystem::path> cross_path;
};

enum class AxisScale { kLinear, kLog };

struct SweepAxis {
  std::string param;
  double min = 0.0;
  double max = 1.0;
  int count = 2;
  AxisScale scale = AxisScale::kLinear;

  std::vector<double> values() const;
};

struct GminConfig {
  double g_lo = 0.0;
  double g_hi = 0.05;
  double g_tol = 1e-4;
  double en_tol = 1e-3;
  int max_expansions = 8;
};

struct RunConfig {
  Method method = Method::kExact;
  SystemConfig system;
  std::optional<OhmicConfig> ohmic;
  std::optional<CavityConfig> cavity;
  std::optional<ThermalConfig> thermal;
  std::optional<TabulatedConfig> tabulated;
  QuadratureSettings quadrature;
  std::vector<SweepAxis> axes;
  GminConfig gmin;

  /// Throws ConfigError on inconsistent settings.
  void validate() const;

  /// Sweepable parameter names: G, k, n_th, T, Gamma_m, omega_c, Gamma_opt,
  /// g, kappa, detuning, Gamma_m_n_th.
  static bool is_parameter(std::string_view name);
  /// Sets a parameter, clearing its mutually exclusive partner (g vs
  /// Gamma_opt, G vs k, T vs n_th). Throws ConfigError if the bath it belongs
  /// to is not configured.
  void set_parameter(std::string_view name, double value);

  /// Cavity coupling g and cooling rate 4 g^2 / kappa, whichever was given.
  double cavity_g() const;
  double cavity_gamma_opt() const;
  /// Ohmic temperature, converted from n_th if needed.
  double ohmic_temperature() const;
};

RunConfig parse_config(const nlohmann::json& j);
/// Parses JSON text; syntax errors are reported with line and column.
RunConfig parse_config_text(std::string_view text, const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);

}  // namespace qlangevin::cli
