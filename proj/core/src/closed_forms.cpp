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

#include "qlangevin/closed_forms.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace qlangevin::closed_form {

ModeVariances to_mode_variances(const ScaledVariances& plus, const ScaledVariances& minus,
                                double m, double omega_plus, double omega_minus) {
  ModeVariances mv;
  mv.eta_plus_sq = plus.position / (2.0 * m * omega_plus);
  mv.pi_plus_sq = plus.momentum * m * omega_plus / 2.0;
  mv.eta_minus_sq = minus.position / (2.0 * m * omega_minus);
  mv.pi_minus_sq = minus.momentum * m * omega_minus / 2.0;
  return mv;
}

double omega_minus(double coupling_rate, double omega) {
  return std::sqrt(omega * omega + 4.0 * omega * coupling_rate);
}

double en_dissipationless(double coupling_rate, double n_th, double omega) {
  if (!(coupling_rate >= 0.0) || !(n_th >= 0.0)) {
    throw std::invalid_argument("en_dissipationless: need G >= 0 and n_th >= 0");
  }
  const double w_minus = omega_minus(coupling_rate, omega);
  return log_negativity(ModeVariances::thermal(1.0, omega, w_minus, n_th, n_th));
}

ScaledVariances ohmic_t0_variances(const OhmicParams& p, double omega_mode) {
  const double x = p.gamma_m / (std::numbers::pi * omega_mode);
  return {1.0 - x, 1.0 + x * (2.0 * std::log(p.omega_c / omega_mode) - 1.0)};
}

Threshold gmin_ohmic(const OhmicParams& p, double omega) {
  const double v = p.gamma_m / std::numbers::pi * (std::log(p.omega_c / omega) - 1.0);
  if (v <= 0.0) return {0.0, true};
  return {v, false};
}

double en_reduction_ohmic_t0(const OhmicParams& p, double omega) {
  return p.gamma_m * (std::log(p.omega_c / omega) - 1.0) /
         (std::numbers::pi * omega * std::numbers::ln2);
}

OptomechDerived OptomechDerived::optimal(double gamma_opt, double kappa,
                                         double gamma_m_n_th, double omega) {
  if (!(gamma_opt > 0.0) || !(kappa > 0.0) || !(gamma_m_n_th >= 0.0)) {
    throw std::invalid_argument(
        "OptomechDerived: need Gamma_opt > 0, kappa > 0, Gamma_m n_th >= 0");
  }
  const double r = kappa / (4.0 * omega);
  return {gamma_opt, r * r, gamma_m_n_th, kappa};
}

ScaledVariances optomech_variances(const OptomechDerived& d, double g, double omega_mode) {
  const double momentum = 1.0 + 2.0 * (d.n_eff() + d.delta_n());
  return {momentum + (g / omega_mode) * (g / omega_mode), momentum};
}

double gmin_optomech(const OptomechDerived& d, double omega) {
  return omega * (2.0 * (d.n_eff() + d.delta_n()) +
                  d.gamma_opt * d.kappa / (8.0 * omega * omega));
}

std::vector<std::string> ohmic_regime_warnings(const OhmicParams& p, double omega) {
  std::vector<std::string> out;
  if (p.gamma_m >= omega) out.push_back("Gamma_m >= Omega: first-order expansion invalid");
  if (p.omega_c < 5.0 * omega) out.push_back("omega_c not >> Omega");
  if (p.temperature > 0.0) out.push_back("closed forms assume T = 0");
  return out;
}

std::vector<std::string> optomech_regime_warnings(const OptomechDerived& d, double g,
                                                  double gamma_m, double omega) {
  std::vector<std::string> out;
  if (d.kappa > 0.3 * omega) out.push_back("kappa not << Omega (resolved sideband)");
  if (g > 0.3 * omega) out.push_back("g not << Omega");
  if (gamma_m > 0.0 && gamma_m > 0.1 * d.gamma_opt) {
    out.push_back("Gamma_m not << Gamma_opt");
  }
  if (d.gamma_m_n_th > 0.1 * omega) out.push_back("Gamma_m n_th not << Omega");
  return out;
}

}  // namespace qlangevin::closed_form
