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

#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "qlangevin/errors.hpp"
#include "qlangevin/langevin.hpp"
#include "qlangevin/lindblad.hpp"

namespace qlangevin {
namespace {

const OscillatorPair kPair = OscillatorPair::symmetric(1.0, 1.0, 0.2);

CavityParams sideband_cavity(double gamma_opt, double omega_mode, double kappa = 0.067) {
  CavityParams c;
  c.kappa = kappa;
  c.g = coupling_for_cooling_rate(gamma_opt, kappa);
  c.detuning = -omega_mode;
  return c;
}

LindbladBaths sideband_lindblad(const OscillatorPair& pair, double gamma_opt,
                            double kappa = 0.067) {
  LindbladBaths b;
  b.gamma_m = 1e-6;
  b.n_plus = b.n_minus = 1e-4 / b.gamma_m;
  b.cavity_plus = sideband_cavity(gamma_opt, pair.omega_plus(), kappa);
  b.cavity_minus = sideband_cavity(gamma_opt, pair.omega_minus(), kappa);
  return b;
}

SystemSpec sideband_spec(const OscillatorPair& pair, double gamma_opt) {
  auto mode = [&](double w) {
    const std::vector<BathModel> parts{cavity_bath(sideband_cavity(gamma_opt, w)),
                                       resonance_thermal_bath(1e-6, 100.0, pair.m_a, w)};
    return composite_bath(parts);
  };
  return SystemSpec::normal_modes(pair, mode(pair.omega_plus()), mode(pair.omega_minus()));
}

TEST(DriftDiffusion, ZeroTemperatureGivesVacuum) {
  LindbladRates r;
  r.plus = {1.0, 0.05, 0.0};
  r.minus = {1.5, 0.02, 0.0};
  const auto dd = build_drift_diffusion(r);
  const auto g = solve_lyapunov(dd.drift, dd.diffusion);
  const auto s = symplectic_eigenvalues(g.matrix());
  EXPECT_NEAR(s.c1, 0.5, 1e-12);
  EXPECT_NEAR(s.c2, 0.5, 1e-12);
}

TEST(DriftDiffusion, ThermalFixedPoint) {
  for (double n : {0.0, 0.3, 12.0}) {
    LindbladBaths b;
    b.gamma_m = 1e-3;
    b.n_plus = b.n_minus = n;
    const auto mv = mode_variances(lindblad_covariance(kPair, b));
    EXPECT_NEAR(2.0 * kPair.omega_plus() * mv.eta_plus_sq, 2 * n + 1, 1e-10 * (2 * n + 1));
    EXPECT_NEAR(2.0 * kPair.omega_minus() * mv.eta_minus_sq, 2 * n + 1, 1e-10 * (2 * n + 1));
    EXPECT_NEAR(2.0 * mv.pi_minus_sq / kPair.omega_minus(), 2 * n + 1, 1e-10 * (2 * n + 1));
  }
}

TEST(DriftDiffusion, OptomechanicalEffectiveOccupation) {
  const auto pair = OscillatorPair::symmetric(1.0, 1.0, 0.0);
  const auto mv = mode_variances(lindblad_covariance(pair, sideband_lindblad(pair, 0.01)));
  EXPECT_NEAR(2.0 * mv.eta_plus_sq, 1.020561, 1e-5);
  EXPECT_NEAR(2.0 * mv.pi_plus_sq, 1.020561, 1e-5);
}

TEST(SolveLyapunov, ScalarCase) {
  const double rate = 0.3, d = 0.7;
  const Matrix4 a = -0.5 * rate * Matrix4::Identity();
  const auto g = solve_lyapunov(a, d * Matrix4::Identity());
  EXPECT_TRUE(g.matrix().isApprox((d / rate) * Matrix4::Identity(), 1e-14));
}

TEST(SolveLyapunov, RandomResidual) {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    Matrix4 a, b;
    for (int i = 0; i < 16; ++i) {
      a(i) = n(rng);
      b(i) = n(rng);
    }
    // Shift the spectrum into the left half plane.
    const double shift = a.eigenvalues().real().maxCoeff() + 0.1 + std::abs(n(rng));
    a -= shift * Matrix4::Identity();
    const Matrix4 d = b * b.transpose() + 0.1 * Matrix4::Identity();
    const auto g = solve_lyapunov(a, d);
    EXPECT_LE(lyapunov_residual(a, d, g.matrix()), 1e-12);
  }
}

TEST(SolveLyapunov, RejectsNonHurwitzDrift) {
  Matrix4 a = -Matrix4::Identity();
  a(2, 2) = 0.0;
  EXPECT_THROW(solve_lyapunov(a, Matrix4::Identity()), NotHurwitz);
}

TEST(LindbladNegativity, ZeroTemperatureKeepsGroundStateEntanglement) {
  LindbladBaths b;
  b.gamma_m = 0.1;
  EXPECT_NEAR(lindblad_negativity(kPair, b), 0.21199922663873744, 1e-10);
}

TEST(LindbladNegativity, CloseToExactAtWeakDrive) {
  // Well above threshold, where E_N is not dominated by its zero crossing.
  const auto pair = OscillatorPair::symmetric(1.0, 1.0, 0.2);
  const double lind = lindblad_negativity(pair, sideband_lindblad(pair, 0.01));
  const double exact = log_negativity(steady_covariance(sideband_spec(pair, 0.01)).covariance);
  ASSERT_GT(exact, 0.0);
  EXPECT_NEAR(lind / exact, 1.0, 0.1);
}

TEST(LindbladNegativity, OverestimatesAtStrongDrive) {
  const auto pair = OscillatorPair::symmetric(1.0, 1.0, 0.1);
  const double lind = lindblad_negativity(pair, sideband_lindblad(pair, 0.1));
  const double exact = log_negativity(steady_covariance(sideband_spec(pair, 0.1)).covariance);
  EXPECT_GT(lind, exact);
}

TEST(LindbladProperties, EquipartitionAndResidual) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    const auto pair = OscillatorPair::symmetric(0.5 + u(rng), 0.5 + u(rng), 0.3 * u(rng));
    LindbladBaths b;
    b.gamma_m = 1e-3 + 0.1 * u(rng);
    b.n_plus = 5.0 * u(rng);
    b.n_minus = 5.0 * u(rng);
    if (t % 2 == 0) {
      b.cavity_plus = sideband_cavity(0.1 * u(rng), pair.omega_plus());
      b.cavity_minus = sideband_cavity(0.1 * u(rng), pair.omega_minus());
      const double ell = 1.0 / std::sqrt(2.0 * pair.m_a * pair.omega_a);
      b.cavity_plus->ell_m = b.cavity_minus->ell_m = ell;
    }
    const auto rates = lindblad_rates(pair, b);
    const auto dd = build_drift_diffusion(rates);
    const auto g = solve_lyapunov(dd.drift, dd.diffusion);
    EXPECT_LE(lyapunov_residual(dd.drift, dd.diffusion, g.matrix()), 1e-12);
    const auto mv = mode_variances(g);
    const double m = pair.m_a;
    for (int s = 0; s < 2; ++s) {
      const double w = s == 0 ? pair.omega_plus() : pair.omega_minus();
      const double pos = 2.0 * m * w * (s == 0 ? mv.eta_plus_sq : mv.eta_minus_sq);
      const double mom = 2.0 * (s == 0 ? mv.pi_plus_sq : mv.pi_minus_sq) / (m * w);
      EXPECT_NEAR(pos, mom, 1e-10 * pos);
    }
  }
}

TEST(LindbladRates, RequiresIdenticalOscillators) {
  OscillatorPair p = kPair;
  p.m_b = 2.0;
  EXPECT_THROW(lindblad_rates(p, {}), std::invalid_argument);
}

}  // namespace
}  // namespace qlangevin
