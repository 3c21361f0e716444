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

// Second-moment steady state of the normal-mode Lindblad master equation
//
//   d rho/dt = -i[H, rho] + sum_{+-} down_+- D[A_+-] + up_+- D[A_+-^dag],
//   D[A] rho = 2 A rho A^dag - A^dag A rho - rho A^dag A,
//
// written as d gamma/dt = A gamma + gamma A^T + D and solved as a Lyapunov
// equation. The dissipators are number conserving, so each mode relaxes to a
// thermal state with n = up / (down - up).

#include <optional>

#include "qlangevin/baths.hpp"
#include "qlangevin/gaussian.hpp"

namespace qlangevin {

struct ModeRates {
  double omega = 1.0;  ///< mode frequency
  double down = 0.0;   ///< prefactor of D[A]
  double up = 0.0;     ///< prefactor of D[A^dag]

  double damping() const { return 2.0 * (down - up); }
  double occupation() const { return up / (down - up); }
};

struct LindbladRates {
  double m = 1.0;
  ModeRates plus;
  ModeRates minus;

  /// Throws std::invalid_argument unless down > up >= 0 for both modes.
  void validate() const;
};

/// Baths entering the Lindblad description: a thermal bath with damping
/// Gamma_m and per-mode occupations, plus optional cavity baths on each mode.
struct LindbladBaths {
  double gamma_m = 0.0;
  double n_plus = 0.0;
  double n_minus = 0.0;
  std::optional<CavityParams> cavity_plus;
  std::optional<CavityParams> cavity_minus;
};

/// Thermal: down = (Gamma_m/2)(n+1), up = (Gamma_m/2) n.
/// Cavity:  down = S(W) W l^2 / (2 Omega), up = S(-W) W l^2 / (2 Omega), with
/// l the cavity's ell_m and Omega the bare oscillator frequency.
LindbladRates lindblad_rates(const OscillatorPair& pair, const LindbladBaths& baths);

struct DriftDiffusion {
  Matrix4 drift;      ///< A
  Matrix4 diffusion;  ///< D
};

/// Moment equations in the oscillator ordering (p_A, q_A, p_B, q_B).
DriftDiffusion build_drift_diffusion(const LindbladRates& rates);

/// Unique gamma with A gamma + gamma A^T + D = 0 from the 16x16 vectorized
/// system. Throws NotHurwitz if any eigenvalue of A has Re >= 0.
CovarianceMatrix solve_lyapunov(const Matrix4& drift, const Matrix4& diffusion);

/// || A gamma + gamma A^T + D ||_F / || D ||_F.
double lyapunov_residual(const Matrix4& drift, const Matrix4& diffusion,
                         const Matrix4& gamma);

CovarianceMatrix lindblad_covariance(const OscillatorPair& pair, const LindbladBaths& baths);

/// E_N of the Lindblad steady state.
double lindblad_negativity(const OscillatorPair& pair, const LindbladBaths& baths);

}  // namespace qlangevin
