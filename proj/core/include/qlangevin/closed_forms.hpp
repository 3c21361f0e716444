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

// Analytic benchmarks for identical oscillators: dissipationless thermal
// entanglement, first-order Ohmic variances at T = 0, and the optomechanical
// cooling formulas. These are oracles and fast estimates; the exact solver
// never calls them.

#include <string>
#include <vector>

#include "qlangevin/baths.hpp"
#include "qlangevin/gaussian.hpp"

namespace qlangevin::closed_form {

/// Dimensionless mode variances 2 m W <eta^2> and 2 <pi^2> / (m W).
struct ScaledVariances {
  double position = 1.0;
  double momentum = 1.0;
};

/// Converts scaled variances of both modes to ModeVariances.
ModeVariances to_mode_variances(const ScaledVariances& plus, const ScaledVariances& minus,
                                double m, double omega_plus, double omega_minus);

/// Relative-mode frequency sqrt(Omega^2 + 4 Omega G) for k = 2 m Omega G.
double omega_minus(double coupling_rate, double omega);

/// Exact normal-mode E_N of undamped oscillators with n_+ = n_- = n_th.
double en_dissipationless(double coupling_rate, double n_th, double omega = 1.0);

/// First-order T = 0 Ohmic variances of a mode at frequency W:
/// position 1 - Gamma/(pi W), momentum 1 + Gamma/(pi W) (2 ln(w_c/W) - 1).
ScaledVariances ohmic_t0_variances(const OhmicParams& p, double omega_mode);

struct Threshold {
  double value = 0.0;
  bool clamped = false;  ///< formula gave <= 0 and was clamped to 0
};

/// (Gamma/pi)(ln(w_c/Omega) - 1), clamped at 0 for w_c <= e Omega.
Threshold gmin_ohmic(const OhmicParams& p, double omega);

/// Gamma (ln(w_c/Omega) - 1) / (pi Omega ln 2).
double en_reduction_ohmic_t0(const OhmicParams& p, double omega);

/// Sideband-cooling quantities. n_eff and delta_n are always recomputed from
/// the stored rates.
struct OptomechDerived {
  double gamma_opt = 0.0;
  double n_opt = 0.0;
  double gamma_m_n_th = 0.0;
  double kappa = 0.0;

  /// Optimal detuning: n_opt = (kappa / 4 Omega)^2.
  static OptomechDerived optimal(double gamma_opt, double kappa, double gamma_m_n_th,
                                 double omega);

  double n_eff() const { return gamma_m_n_th / gamma_opt + n_opt; }
  double delta_n() const { return gamma_m_n_th / kappa; }
};

/// momentum 1 + 2 (n_eff + delta_n); position adds g^2 / W^2.
ScaledVariances optomech_variances(const OptomechDerived& d, double g, double omega_mode);

/// G_min / Omega = 2 (n_eff + delta_n) + Gamma_opt kappa / (8 Omega^2), times Omega.
double gmin_optomech(const OptomechDerived& d, double omega);

/// Advisory notes when parameters leave the regime the formulas assume.
std::vector<std::string> ohmic_regime_warnings(const OhmicParams& p, double omega);
std::vector<std::string> optomech_regime_warnings(const OptomechDerived& d, double g,
                                                  double gamma_m, double omega);

}  // namespace qlangevin::closed_form
