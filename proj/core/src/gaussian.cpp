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

#include "qlangevin/gaussian.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "qlangevin/errors.hpp"

namespace qlangevin {

OscillatorPair OscillatorPair::symmetric(double m, double omega,
                                         double coupling_rate) {
  OscillatorPair pair{m, m, omega, omega, 2.0 * m * omega * coupling_rate};
  pair.validate();
  return pair;
}

bool OscillatorPair::is_symmetric() const {
  return m_a == m_b && omega_a == omega_b;
}

double OscillatorPair::coupling_rate() const {
  if (!is_symmetric()) {
    throw std::logic_error("coupling_rate: oscillators are not identical");
  }
  return k / (2.0 * m_a * omega_a);
}

double OscillatorPair::omega_plus() const {
  if (!is_symmetric()) {
    throw std::logic_error("omega_plus: oscillators are not identical");
  }
  return omega_a;
}

double OscillatorPair::omega_minus() const {
  if (!is_symmetric()) {
    throw std::logic_error("omega_minus: oscillators are not identical");
  }
  return std::sqrt(omega_a * omega_a + 2.0 * k / m_a);
}

void OscillatorPair::validate() const {
  if (!(m_a > 0.0 && m_b > 0.0)) {
    throw std::invalid_argument("OscillatorPair: masses must be positive");
  }
  if (!(omega_a > 0.0 && omega_b > 0.0)) {
    throw std::invalid_argument("OscillatorPair: frequencies must be positive");
  }
  if (!(k >= 0.0)) {
    throw std::invalid_argument("OscillatorPair: coupling k must be >= 0");
  }
}

const Matrix4& symplectic_form() {
  static const Matrix4 sigma = [] {
    Matrix4 s = Matrix4::Zero();
    // [p, q] = -i  =>  sigma(p, q) = -1.
    s(kPA, kQA) = -1.0;
    s(kQA, kPA) = 1.0;
    s(kPB, kQB) = -1.0;
    s(kQB, kPB) = 1.0;
    return s;
  }();
  return sigma;
}

namespace {

void require_symmetric(const Matrix4& gamma) {
  const double scale = gamma.cwiseAbs().maxCoeff();
  const double asym = (gamma - gamma.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * std::max(scale, 1e-300)) {
    throw NonSymmetricInput("covariance matrix is not symmetric (asymmetry " +
                            std::to_string(asym) + ")");
  }
}

}  // namespace

CovarianceMatrix::CovarianceMatrix(const Matrix4& gamma) {
  require_symmetric(gamma);
  gamma_ = 0.5 * (gamma + gamma.transpose());
}

CovarianceMatrix CovarianceMatrix::vacuum(double m, double omega) {
  Matrix4 g = Matrix4::Zero();
  g(kPA, kPA) = g(kPB, kPB) = 0.5 * m * omega;
  g(kQA, kQA) = g(kQB, kQB) = 0.5 / (m * omega);
  return CovarianceMatrix(g);
}

double CovarianceMatrix::uncertainty_margin() const {
  const Eigen::Matrix4cd h =
      gamma_.cast<std::complex<double>>() +
      std::complex<double>(0.0, 0.5) * symplectic_form().cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

bool CovarianceMatrix::is_physical(double tol) const {
  return uncertainty_margin() >= -tol;
}

ModeVariances ModeVariances::thermal(double m, double omega_plus,
                                     double omega_minus, double n_plus,
                                     double n_minus) {
  ModeVariances mv;
  mv.eta_plus_sq = (2.0 * n_plus + 1.0) / (2.0 * m * omega_plus);
  mv.eta_minus_sq = (2.0 * n_minus + 1.0) / (2.0 * m * omega_minus);
  mv.pi_plus_sq = m * omega_plus * (2.0 * n_plus + 1.0) / 2.0;
  mv.pi_minus_sq = m * omega_minus * (2.0 * n_minus + 1.0) / 2.0;
  return mv;
}

void ModeVariances::validate() const {
  if (!(eta_plus_sq > 0.0 && eta_minus_sq > 0.0 && pi_plus_sq > 0.0 &&
        pi_minus_sq > 0.0)) {
    throw std::invalid_argument("ModeVariances: variances must be positive");
  }
}

CovarianceMatrix partial_transpose(const CovarianceMatrix& gamma) {
  Matrix4 g = gamma.matrix();
  g.row(kPA) *= -1.0;
  g.col(kPA) *= -1.0;
  return CovarianceMatrix(g);
}

SymplecticPair symplectic_eigenvalues(const Matrix4& gamma) {
  require_symmetric(gamma);
  if (gamma.determinant() < 0.0) {
    throw DegenerateMatrix("symplectic_eigenvalues: det(gamma) < 0");
  }
  // i sigma gamma has eigenvalues +-c; sigma gamma has +-i c.
  const Matrix4 sg = symplectic_form() * (0.5 * (gamma + gamma.transpose()));
  Eigen::EigenSolver<Matrix4> es(sg, /*computeEigenvectors=*/false);
  std::array<double, 4> moduli{};
  for (int i = 0; i < 4; ++i) moduli[i] = std::abs(es.eigenvalues()[i]);
  std::sort(moduli.begin(), moduli.end());
  return {0.5 * (moduli[0] + moduli[1]), 0.5 * (moduli[2] + moduli[3])};
}

double negativity_term(double c) {
  if (c >= 0.5) return 0.0;
  return -std::log2(2.0 * c);
}

double log_negativity(const CovarianceMatrix& gamma, SymplecticPair& spectrum) {
  spectrum = symplectic_eigenvalues(partial_transpose(gamma).matrix());
  return negativity_term(spectrum.c1) + negativity_term(spectrum.c2);
}

double log_negativity(const CovarianceMatrix& gamma) {
  SymplecticPair unused;
  return log_negativity(gamma, unused);
}

CovarianceMatrix covariance_from_mode_variances(const ModeVariances& mv) {
  Matrix4 g = Matrix4::Zero();
  const double qq = 0.5 * (mv.eta_plus_sq + mv.eta_minus_sq);
  const double qq_cross = 0.5 * (mv.eta_plus_sq - mv.eta_minus_sq);
  const double pp = 0.5 * (mv.pi_plus_sq + mv.pi_minus_sq);
  const double pp_cross = 0.5 * (mv.pi_plus_sq - mv.pi_minus_sq);
  g(kQA, kQA) = g(kQB, kQB) = qq;
  g(kQA, kQB) = g(kQB, kQA) = qq_cross;
  g(kPA, kPA) = g(kPB, kPB) = pp;
  g(kPA, kPB) = g(kPB, kPA) = pp_cross;
  return CovarianceMatrix(g);
}

ModeVariances mode_variances(const CovarianceMatrix& gamma) {
  const Matrix4& g = gamma.matrix();
  ModeVariances mv;
  mv.eta_plus_sq = 0.5 * (g(kQA, kQA) + g(kQB, kQB)) + g(kQA, kQB);
  mv.eta_minus_sq = 0.5 * (g(kQA, kQA) + g(kQB, kQB)) - g(kQA, kQB);
  mv.pi_plus_sq = 0.5 * (g(kPA, kPA) + g(kPB, kPB)) + g(kPA, kPB);
  mv.pi_minus_sq = 0.5 * (g(kPA, kPA) + g(kPB, kPB)) - g(kPA, kPB);
  return mv;
}

NormalModeSpectrum normal_mode_spectrum(const ModeVariances& mv) {
  return {std::sqrt(mv.eta_minus_sq * mv.pi_plus_sq),
          std::sqrt(mv.eta_plus_sq * mv.pi_minus_sq)};
}

double log_negativity(const ModeVariances& mv) {
  const auto s = normal_mode_spectrum(mv);
  return negativity_term(s.entangling) + negativity_term(s.other);
}

}  // namespace qlangevin
