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

// Exact steady state of two coupled oscillators driven by linear quantum
// baths. In Fourier space
//
//     chi^{-1}(w)_aa = m_a (Omega_a^2 - w^2) + k + chi^F_aa(w)
//     chi^{-1}(w)_ab = -k + chi^F_ab(w)
//     <q_a q_b>_w    = sum chi_ac(w) chi_bd(-w) <F_c F_d>_w
//
// and equal-time moments are integrals of these spectra over w / 2 pi.

#include <Eigen/Core>

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "qlangevin/baths.hpp"
#include "qlangevin/gaussian.hpp"

namespace qlangevin {

using Matrix2c = Eigen::Matrix2cd;

/// Basis in which the bath arrangement is given.
enum class BathBasis {
  kOscillator,  ///< entries refer to forces F_A, F_B
  kNormalMode,  ///< entries refer to F_+, F_- coupling to eta_+, eta_-
};

/// How chi^F enters the inverse susceptibility.
enum class ResponseSign {
  kStable,     ///< + chi^F: damped for absorbing baths (default)
  kAsPrinted,  ///< - chi^F: anti-damped; kept for comparison/fault injection
};

struct SystemSpec {
  OscillatorPair pair;
  BathBasis basis = BathBasis::kOscillator;
  /// baths[i][j]: spectrum <F_i F_j>_w and response chi^F_ij. Diagonal
  /// entries are each oscillator's (or mode's) own bath; off-diagonal entries
  /// describe correlated forces and are normally absent.
  std::array<std::array<std::optional<BathModel>, 2>, 2> baths;
  ResponseSign sign = ResponseSign::kStable;
  bool declared_symmetric = false;

  /// Identical oscillators with identical independent baths.
  static SystemSpec symmetric(const OscillatorPair& pair, const BathModel& bath);
  /// Independent baths acting on the normal modes eta_+ and eta_-.
  static SystemSpec normal_modes(const OscillatorPair& pair, const BathModel& plus,
                                 const BathModel& minus);

  /// Throws std::invalid_argument on inconsistent declarations.
  void validate() const;

  /// Noise matrix <F_a F_b>_w in the oscillator basis.
  Matrix2c noise(double omega) const;
  /// Response matrix chi^F_ab(w) in the oscillator basis.
  Matrix2c response(double omega) const;
  /// Peak hints from every bath.
  std::vector<PeakHint> bath_peaks() const;
};

struct QuadratureSettings {
  double rel_tol = 1e-6;
  int max_subdivisions = 20000;
  /// Start of the algebraic tail. Defaults to
  /// 20 max(peak centres, Omega_-, 10 Omega) and never less than every peak
  /// centre + 20 widths.
  std::optional<double> tail_cut;
  /// Number of widths resolved around each peak.
  double peak_pad = 10.0;

  void validate() const;
};

/// chi(w). Throws SingularAtFrequency if |det chi^{-1}| < 1e-300.
Matrix2c susceptibility_matrix(double omega, const SystemSpec& spec);

/// Inverse susceptibility (the matrix whose determinant the stability check
/// winds around).
Matrix2c inverse_susceptibility(double omega, const SystemSpec& spec);

struct CorrelatorSpectrum {
  Matrix2c position;           ///< <q_a q_b>_w
  Matrix2c momentum;           ///< <p_a p_b>_w = m_a m_b w^2 <q_a q_b>_w
  Matrix2c momentum_position;  ///< <p_a q_b>_w = -i m_a w <q_a q_b>_w
};

CorrelatorSpectrum correlator_spectrum(double omega, const SystemSpec& spec);

/// Symmetrized position spectrum (<q_a q_b>_w + <q_b q_a>_{-w}) / 2, real
/// part. Even in w.
Eigen::Matrix2d symmetrized_position_spectrum(double omega, const SystemSpec& spec);

struct StabilityReport {
  bool stable = false;
  /// Zeros of det chi^{-1} in the upper half plane (from the winding number).
  int unstable_zeros = 0;
  /// Frequency window associated with the failure, when known.
  double region_lo = 0.0;
  double region_hi = 0.0;
  std::string diagnostic;
};

/// Nyquist test: counts zeros of det chi^{-1}(w) in the upper half plane by
/// the winding of the determinant along the real axis, closed by a large
/// semicircle on which the m_A m_B w^4 term dominates. Zeros on (or within
/// numerical reach of) the real axis are reported as failures. Never throws.
StabilityReport stability_check(const SystemSpec& spec);

struct SteadyState {
  CovarianceMatrix covariance;
  /// Absolute error estimates of each covariance entry.
  Matrix4 error;
  /// max over entries of error_ij / sqrt(gamma_ii gamma_jj).
  double rel_error = 0.0;
  int evaluations = 0;
  int panels = 0;
};

/// Integrates the correlator spectra into the 4x4 covariance matrix.
/// Throws Unstable if stability_check fails, ToleranceNotMet if the adaptive
/// refinement runs out of subdivisions or the momentum integrand does not
/// decay faster than 1/w.
SteadyState steady_covariance(const SystemSpec& spec, const QuadratureSettings& q = {});

/// Breakpoints used by steady_covariance on [0, tail_cut] (exposed for tests
/// and benchmarks).
std::vector<double> integration_breakpoints(const SystemSpec& spec,
                                            const QuadratureSettings& q,
                                            double& tail_cut);

}  // namespace qlangevin
