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

#include "qlangevin/lindblad.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qlangevin/errors.hpp"

namespace qlangevin {

void LindbladRates::validate() const {
  if (!(m > 0.0)) throw std::invalid_argument("LindbladRates: m must be > 0");
  for (const ModeRates* r : {&plus, &minus}) {
    if (!(r->omega > 0.0)) {
      throw std::invalid_argument("LindbladRates: mode frequency must be > 0");
    }
    if (!(r->up >= 0.0) || !(r->down > r->up)) {
      throw std::invalid_argument(
          "LindbladRates: need down > up >= 0 for a cooling steady state");
    }
  }
}

LindbladRates lindblad_rates(const OscillatorPair& pair, const LindbladBaths& baths) {
  pair.validate();
  if (!pair.is_symmetric()) {
    throw std::invalid_argument("lindblad_rates: normal modes need identical oscillators");
  }
  LindbladRates r;
  r.m = pair.m_a;
  const double omega = pair.omega_a;
  r.plus.omega = pair.omega_plus();
  r.minus.omega = pair.omega_minus();

  auto add = [&](ModeRates& mode, double n, const std::optional<CavityParams>& cav) {
    mode.down += 0.5 * baths.gamma_m * (n + 1.0);
    mode.up += 0.5 * baths.gamma_m * n;
    if (cav) {
      const double factor = mode.omega * cav->ell_m * cav->ell_m / (2.0 * omega);
      mode.down += cavity_spectrum(mode.omega, *cav) * factor;
      mode.up += cavity_spectrum(-mode.omega, *cav) * factor;
    }
  };
  add(r.plus, baths.n_plus, baths.cavity_plus);
  add(r.minus, baths.n_minus, baths.cavity_minus);
  r.validate();
  return r;
}

DriftDiffusion build_drift_diffusion(const LindbladRates& rates) {
  rates.validate();
  // Mode ordering (pi_+, eta_+, pi_-, eta_-):
  //   d eta/dt = pi/m - (G/2) eta,  d pi/dt = -m W^2 eta - (G/2) pi,
  //   D_pipi = (down + up) m W,     D_etaeta = (down + up) / (m W).
  Matrix4 drift_mode = Matrix4::Zero();
  Matrix4 diff_mode = Matrix4::Zero();
  const double m = rates.m;
  int offset = 0;
  for (const ModeRates* r : {&rates.plus, &rates.minus}) {
    const double half_damping = 0.5 * r->damping();
    drift_mode(offset, offset) = -half_damping;
    drift_mode(offset, offset + 1) = -m * r->omega * r->omega;
    drift_mode(offset + 1, offset) = 1.0 / m;
    drift_mode(offset + 1, offset + 1) = -half_damping;
    diff_mode(offset, offset) = (r->down + r->up) * m * r->omega;
    diff_mode(offset + 1, offset + 1) = (r->down + r->up) / (m * r->omega);
    offset += 2;
  }
  // (p_A, q_A, p_B, q_B) = T (pi_+, eta_+, pi_-, eta_-), T orthogonal.
  Matrix4 t = Matrix4::Zero();
  const double s = 1.0 / std::numbers::sqrt2;
  t(kPA, 0) = s;
  t(kPA, 2) = s;
  t(kPB, 0) = s;
  t(kPB, 2) = -s;
  t(kQA, 1) = s;
  t(kQA, 3) = s;
  t(kQB, 1) = s;
  t(kQB, 3) = -s;
  return {t * drift_mode * t.transpose(), t * diff_mode * t.transpose()};
}

double lyapunov_residual(const Matrix4& drift, const Matrix4& diffusion,
                         const Matrix4& gamma) {
  const double dn = diffusion.norm();
  using Matrix4L = Eigen::Matrix<long double, 4, 4>;
  const Matrix4L a = drift.cast<long double>();
  const Matrix4L g = gamma.cast<long double>();
  const double r =
      static_cast<double>((a * g + g * a.transpose() + diffusion.cast<long double>()).norm());
  return dn > 0.0 ? r / dn : r;
}

CovarianceMatrix solve_lyapunov(const Matrix4& drift, const Matrix4& diffusion) {
  const Eigen::EigenSolver<Matrix4> es(drift, false);
  for (int i = 0; i < 4; ++i) {
    if (!(es.eigenvalues()(i).real() < 0.0)) {
      throw NotHurwitz("solve_lyapunov: drift eigenvalue with Re = " +
                       std::to_string(es.eigenvalues()(i).real()) + " >= 0");
    }
  }
  // vec(A X + X A^T) = (I kron A + A kron I) vec(X), column-major vec.
  using Matrix16 = Eigen::Matrix<double, 16, 16>;
  using Vector16 = Eigen::Matrix<double, 16, 1>;
  Matrix16 op = Matrix16::Zero();
  for (int j = 0; j < 4; ++j) {
    for (int i = 0; i < 4; ++i) {
      const int row = i + 4 * j;
      for (int k = 0; k < 4; ++k) {
        op(row, k + 4 * j) += drift(i, k);  // (A X)_ij = A_ik X_kj
        op(row, i + 4 * k) += drift(j, k);  // (X A^T)_ij = X_ik A_jk
      }
    }
  }
  const Vector16 rhs = -Eigen::Map<const Vector16>(diffusion.data());
  const Eigen::FullPivLU<Matrix16> lu(op);
  Vector16 x = lu.solve(rhs);
  // Iterative refinement with the residual accumulated in long double.
  for (int pass = 0; pass < 3; ++pass) {
    const Vector16 r =
        (rhs.cast<long double>() - op.cast<long double>() * x.cast<long double>())
            .cast<double>();
    x += lu.solve(r);
  }
  Matrix4 gamma = Eigen::Map<const Matrix4>(x.data());
  gamma = 0.5 * (gamma + gamma.transpose());
  return CovarianceMatrix(gamma);
}

CovarianceMatrix lindblad_covariance(const OscillatorPair& pair, const LindbladBaths& baths) {
  const DriftDiffusion dd = build_drift_diffusion(lindblad_rates(pair, baths));
  return solve_lyapunov(dd.drift, dd.diffusion);
}

double lindblad_negativity(const OscillatorPair& pair, const LindbladBaths& baths) {
  return log_negativity(lindblad_covariance(pair, baths));
}

}  // namespace qlangevin
