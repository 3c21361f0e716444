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

// Two-mode Gaussian states: covariance matrices, partial transpose,
// symplectic eigenvalues and logarithmic negativity.
//
// IMPORTANT: phase-space ordering is (p_A, q_A, p_B, q_B), momentum first.
// Most Gaussian-state references use (q, p); every index in this library
// follows the momentum-first convention below.

#include <Eigen/Core>

namespace qlangevin {

using Matrix4 = Eigen::Matrix4d;

/// Row/column index of each canonical operator in a covariance matrix.
enum Quadrature : int { kPA = 0, kQA = 1, kPB = 2, kQB = 3 };

/// Hamiltonian parameters of two harmonic oscillators joined by a spring.
/// Natural units: hbar = k_B = 1.
struct OscillatorPair {
  double m_a = 1.0;
  double m_b = 1.0;
  double omega_a = 1.0;
  double omega_b = 1.0;
  double k = 0.0;  ///< coupling spring constant (attractive, >= 0)

  /// Identical oscillators with coupling rate G = k / (2 m Omega).
  static OscillatorPair symmetric(double m, double omega, double coupling_rate);

  bool is_symmetric() const;
  /// G = k / (2 m Omega). Throws std::logic_error unless symmetric.
  double coupling_rate() const;
  /// Center-of-mass frequency Omega_+ (symmetric case).
  double omega_plus() const;
  /// Relative-motion frequency Omega_- = sqrt(Omega^2 + 2k/m) (symmetric case).
  double omega_minus() const;

  /// Throws std::invalid_argument when masses/frequencies are not positive or
  /// k is negative.
  void validate() const;
};

/// Symplectic form sigma with [R_i, R_j] = i sigma_ij in (p, q) ordering.
const Matrix4& symplectic_form();

/// Real symmetric matrix of symmetrized second moments,
/// gamma_ij = <{R_i, R_j}>/2. Partially transposed matrices are also
/// represented by this type, so physicality is checked on demand rather than
/// at construction.
class CovarianceMatrix {
 public:
  CovarianceMatrix() : gamma_(Matrix4::Zero()) {}
  /// Throws NonSymmetricInput if the asymmetry exceeds 1e-12 relative.
  explicit CovarianceMatrix(const Matrix4& gamma);

  static CovarianceMatrix vacuum(double m = 1.0, double omega = 1.0);

  const Matrix4& matrix() const { return gamma_; }
  double operator()(int i, int j) const { return gamma_(i, j); }

  /// Smallest eigenvalue of the Hermitian matrix gamma + i sigma / 2.
  double uncertainty_margin() const;
  /// gamma + i sigma / 2 >= 0 within tol.
  bool is_physical(double tol = 1e-10) const;

 private:
  Matrix4 gamma_;
};

/// Normal-mode second moments for identical oscillators, with
/// eta_+- = (q_A +- q_B)/sqrt2 and pi_+- = (p_A +- p_B)/sqrt2.
struct ModeVariances {
  double eta_plus_sq = 0.5;
  double eta_minus_sq = 0.5;
  double pi_plus_sq = 0.5;
  double pi_minus_sq = 0.5;

  /// Thermal/ground-state variances of two undamped modes:
  /// <eta^2> = (2n+1)/(2 m Omega), <pi^2> = m Omega (2n+1)/2.
  static ModeVariances thermal(double m, double omega_plus, double omega_minus,
                               double n_plus, double n_minus);

  void validate() const;
};

struct SymplecticPair {
  double c1 = 0.0;  ///< smaller
  double c2 = 0.0;  ///< larger
};

/// Time reversal of oscillator A: conjugation by diag(-1, 1, 1, 1).
CovarianceMatrix partial_transpose(const CovarianceMatrix& gamma);

/// Moduli of the eigenvalues of i sigma gamma, ascending. Input need not be
/// physical. Throws NonSymmetricInput / DegenerateMatrix (det gamma < 0).
SymplecticPair symplectic_eigenvalues(const Matrix4& gamma);

/// f(c) = -log2(2c) for c < 1/2, else 0 (exactly 0 at c = 1/2).
double negativity_term(double c);

/// E_N from the symplectic eigenvalues of the partial transpose.
double log_negativity(const CovarianceMatrix& gamma);

/// Same, returning the partially transposed spectrum alongside.
double log_negativity(const CovarianceMatrix& gamma, SymplecticPair& spectrum);

CovarianceMatrix covariance_from_mode_variances(const ModeVariances& mv);

/// Inverse of covariance_from_mode_variances (ignores p-q cross terms).
ModeVariances mode_variances(const CovarianceMatrix& gamma);

/// Normal-mode shortcut for the partially transposed spectrum:
/// c_entangling = sqrt(<eta_-^2><pi_+^2>), c_other = sqrt(<eta_+^2><pi_-^2>).
/// Only valid when p-q cross correlations vanish.
struct NormalModeSpectrum {
  double entangling = 0.0;
  double other = 0.0;
};
NormalModeSpectrum normal_mode_spectrum(const ModeVariances& mv);

/// E_N from the normal-mode shortcut.
double log_negativity(const ModeVariances& mv);

}  // namespace qlangevin
