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

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "qlangevin/gaussian.hpp"
#include "qlangevin/langevin.hpp"
#include "qlangevin/lindblad.hpp"

namespace {

using namespace qlangevin;

void BM_SymplecticEigenvalues(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.1, 2.0);
  std::vector<Matrix4> inputs;
  for (int i = 0; i < 64; ++i) {
    ModeVariances mv;
    mv.eta_plus_sq = u(rng);
    mv.eta_minus_sq = u(rng);
    mv.pi_plus_sq = u(rng);
    mv.pi_minus_sq = u(rng);
    inputs.push_back(partial_transpose(covariance_from_mode_variances(mv)).matrix());
  }
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(symplectic_eigenvalues(inputs[i++ % inputs.size()]));
  }
}
BENCHMARK(BM_SymplecticEigenvalues);

void BM_SolveLyapunov(benchmark::State& state) {
  LindbladRates r;
  r.plus = {1.0, 0.0055, 0.0005};
  r.minus = {1.34, 0.006, 0.0007};
  const DriftDiffusion dd = build_drift_diffusion(r);
  for (auto _ : state) benchmark::DoNotOptimize(solve_lyapunov(dd.drift, dd.diffusion));
}
BENCHMARK(BM_SolveLyapunov);

void BM_SteadyCovarianceOhmic(benchmark::State& state) {
  const auto pair = OscillatorPair::symmetric(1.0, 1.0, 0.2);
  const auto spec = SystemSpec::symmetric(pair, ohmic_bath({1.0, 0.1, 10.0, 0.0}));
  QuadratureSettings q;
  q.rel_tol = std::pow(10.0, -static_cast<double>(state.range(0)));
  int evaluations = 0;
  for (auto _ : state) {
    const auto ss = steady_covariance(spec, q);
    evaluations = ss.evaluations;
    benchmark::DoNotOptimize(ss.covariance);
  }
  state.counters["evaluations"] = evaluations;
}
BENCHMARK(BM_SteadyCovarianceOhmic)->DenseRange(4, 10, 2)->Unit(benchmark::kMicrosecond);

void BM_SteadyCovarianceCavity(benchmark::State& state) {
  const auto pair = OscillatorPair::symmetric(1.0, 1.0, 0.05);
  auto mode = [&](double w) {
    CavityParams c;
    c.kappa = 0.067;
    c.g = coupling_for_cooling_rate(0.01, c.kappa);
    c.detuning = -w;
    const std::vector<BathModel> parts{cavity_bath(c), resonance_thermal_bath(1e-6, 100.0, 1.0, w)};
    return composite_bath(parts);
  };
  const auto spec = SystemSpec::normal_modes(pair, mode(pair.omega_plus()), mode(pair.omega_minus()));
  int evaluations = 0;
  for (auto _ : state) {
    const auto ss = steady_covariance(spec);
    evaluations = ss.evaluations;
    benchmark::DoNotOptimize(ss.covariance);
  }
  state.counters["evaluations"] = evaluations;
}
BENCHMARK(BM_SteadyCovarianceCavity)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
