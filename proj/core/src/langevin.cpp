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

#include "qlangevin/langevin.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "qlangevin/errors.hpp"
#include "qlangevin/quadrature.hpp"

namespace qlangevin {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Orthogonal, symmetric, involutive map between (A, B) and (+, -).
const Eigen::Matrix2d& mode_rotation() {
  static const Eigen::Matrix2d u = [] {
    Eigen::Matrix2d m;
    m << 1.0, 1.0, 1.0, -1.0;
    return Eigen::Matrix2d(m / std::numbers::sqrt2);
  }();
  return u;
}

template <class Eval>
Matrix2c assemble(const SystemSpec& spec, Eval&& eval) {
  Matrix2c m = Matrix2c::Zero();
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      if (spec.baths[i][j]) m(i, j) = eval(*spec.baths[i][j]);
    }
  }
  // A single declared cross entry stands for both orderings.
  if (spec.baths[0][1] && !spec.baths[1][0]) m(1, 0) = m(0, 1);
  if (spec.baths[1][0] && !spec.baths[0][1]) m(0, 1) = m(1, 0);
  if (spec.basis == BathBasis::kNormalMode) {
    const Eigen::Matrix2cd u = mode_rotation().cast<Complex>();
    m = u * m * u;
  }
  return m;
}

struct ModeEstimate {
  double frequency = 0.0;
  double damping = 0.0;  // energy damping rate; negative means anti-damped
};

// Undamped normal modes from K v = w^2 M v, dressed to first order by the
// bath response at the bare frequency.
std::array<ModeEstimate, 2> mode_estimates(const SystemSpec& spec) {
  const auto& p = spec.pair;
  Eigen::Matrix2d stiffness;
  stiffness << p.m_a * p.omega_a * p.omega_a + p.k, -p.k, -p.k,
      p.m_b * p.omega_b * p.omega_b + p.k;
  const Eigen::Vector2d inv_sqrt_mass(1.0 / std::sqrt(p.m_a), 1.0 / std::sqrt(p.m_b));
  const Eigen::Matrix2d reduced =
      inv_sqrt_mass.asDiagonal() * stiffness * inv_sqrt_mass.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(reduced);
  const double sign = spec.sign == ResponseSign::kStable ? 1.0 : -1.0;

  std::array<ModeEstimate, 2> out;
  for (int i = 0; i < 2; ++i) {
    const double w0 = std::sqrt(std::max(es.eigenvalues()(i), 0.0));
    // Mass-normalized displacement vector: v^T M v = 1.
    const Eigen::Vector2d v = inv_sqrt_mass.asDiagonal() * es.eigenvectors().col(i);
    const Complex proj =
        sign * (v.cast<Complex>().transpose() * spec.response(w0) * v.cast<Complex>())(0, 0);
    const double w2 = w0 * w0 + proj.real();
    out[i].frequency = w2 > 0.0 ? std::sqrt(w2) : w0;
    out[i].damping = w0 > 0.0 ? -proj.imag() / w0 : 0.0;
  }
  return out;
}

double default_tail_cut(const SystemSpec& spec, const std::vector<PeakHint>& peaks) {
  const auto modes = mode_estimates(spec);
  double reach = 10.0 * std::max(spec.pair.omega_a, spec.pair.omega_b);
  double min_cut = 0.0;
  for (const auto& m : modes) reach = std::max(reach, m.frequency);
  for (const auto& pk : peaks) {
    reach = std::max(reach, std::abs(pk.center));
    min_cut = std::max(min_cut, std::abs(pk.center) + 20.0 * pk.width);
  }
  return std::max(20.0 * reach, 1.01 * min_cut);
}

std::vector<PeakHint> all_peaks(const SystemSpec& spec) {
  std::vector<PeakHint> peaks = spec.bath_peaks();
  for (const auto& m : mode_estimates(spec)) {
    const double width = std::max(0.5 * std::abs(m.damping), 1e-12 * m.frequency);
    peaks.push_back({m.frequency, width});
  }
  return peaks;
}

}  // namespace

// --- SystemSpec -------------------------------------------------------------

SystemSpec SystemSpec::symmetric(const OscillatorPair& pair, const BathModel& bath) {
  SystemSpec s;
  s.pair = pair;
  s.basis = BathBasis::kOscillator;
  s.baths[0][0] = bath;
  s.baths[1][1] = bath;
  s.declared_symmetric = true;
  s.validate();
  return s;
}

SystemSpec SystemSpec::normal_modes(const OscillatorPair& pair, const BathModel& plus,
                                    const BathModel& minus) {
  SystemSpec s;
  s.pair = pair;
  s.basis = BathBasis::kNormalMode;
  s.baths[0][0] = plus;
  s.baths[1][1] = minus;
  s.validate();
  return s;
}

void SystemSpec::validate() const {
  pair.validate();
  if (basis == BathBasis::kNormalMode && !pair.is_symmetric()) {
    throw std::invalid_argument(
        "SystemSpec: normal-mode baths require identical oscillators");
  }
  if (declared_symmetric) {
    if (!pair.is_symmetric()) {
      throw std::invalid_argument("SystemSpec: declared symmetric but oscillators differ");
    }
    if (baths[0][1] || baths[1][0]) {
      throw std::invalid_argument(
          "SystemSpec: declared symmetric but correlated (off-diagonal) baths present");
    }
    if (!baths[0][0] || !baths[1][1] ||
        baths[0][0]->label() != baths[1][1]->label()) {
      throw std::invalid_argument(
          "SystemSpec: declared symmetric but diagonal baths differ");
    }
  }
}

Matrix2c SystemSpec::noise(double omega) const {
  return assemble(*this, [omega](const BathModel& b) { return Complex{b.spectrum(omega)}; });
}

Matrix2c SystemSpec::response(double omega) const {
  return assemble(*this, [omega](const BathModel& b) { return b.response(omega); });
}

std::vector<PeakHint> SystemSpec::bath_peaks() const {
  std::vector<PeakHint> out;
  for (const auto& row : baths) {
    for (const auto& b : row) {
      if (b) out.insert(out.end(), b->peaks().begin(), b->peaks().end());
    }
  }
  return out;
}

void QuadratureSettings::validate() const {
  if (!(rel_tol > 0.0 && rel_tol <= 1e-2)) {
    throw std::invalid_argument("QuadratureSettings: rel_tol must lie in (0, 1e-2]");
  }
  if (max_subdivisions < 1) {
    throw std::invalid_argument("QuadratureSettings: max_subdivisions must be >= 1");
  }
  if (!(peak_pad > 0.0)) {
    throw std::invalid_argument("QuadratureSettings: peak_pad must be > 0");
  }
  if (tail_cut && !(*tail_cut > 0.0)) {
    throw std::invalid_argument("QuadratureSettings: tail_cut must be > 0");
  }
}

// --- Susceptibility ---------------------------------------------------------

Matrix2c inverse_susceptibility(double omega, const SystemSpec& spec) {
  const auto& p = spec.pair;
  const double sign = spec.sign == ResponseSign::kStable ? 1.0 : -1.0;
  Matrix2c inv = sign * spec.response(omega);
  inv(0, 0) += p.m_a * (p.omega_a * p.omega_a - omega * omega) + p.k;
  inv(1, 1) += p.m_b * (p.omega_b * p.omega_b - omega * omega) + p.k;
  inv(0, 1) -= p.k;
  inv(1, 0) -= p.k;
  return inv;
}

Matrix2c susceptibility_matrix(double omega, const SystemSpec& spec) {
  const Matrix2c inv = inverse_susceptibility(omega, spec);
  const Complex det = inv(0, 0) * inv(1, 1) - inv(0, 1) * inv(1, 0);
  if (std::abs(det) < 1e-300) {
    throw SingularAtFrequency("susceptibility_matrix: det chi^{-1} vanishes", omega);
  }
  Matrix2c chi;
  chi << inv(1, 1), -inv(0, 1), -inv(1, 0), inv(0, 0);
  return chi / det;
}

CorrelatorSpectrum correlator_spectrum(double omega, const SystemSpec& spec) {
  const Matrix2c chi = susceptibility_matrix(omega, spec);
  // chi(-w) = conj(chi(w)) for a real-time response, so
  // sum chi_ac(w) chi_bd(-w) S_cd = (chi S chi^H)_ab.
  CorrelatorSpectrum out;
  out.position = chi * spec.noise(omega) * chi.adjoint();
  const Eigen::Vector2d mass(spec.pair.m_a, spec.pair.m_b);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      out.momentum(a, b) = mass(a) * mass(b) * omega * omega * out.position(a, b);
      out.momentum_position(a, b) = -kI * mass(a) * omega * out.position(a, b);
    }
  }
  return out;
}

Eigen::Matrix2d symmetrized_position_spectrum(double omega, const SystemSpec& spec) {
  const Matrix2c plus = correlator_spectrum(omega, spec).position;
  const Matrix2c minus = correlator_spectrum(-omega, spec).position;
  return 0.5 * (plus + minus.transpose()).real();
}

// --- Stability --------------------------------------------------------------

StabilityReport stability_check(const SystemSpec& spec) {
  StabilityReport report;
  try {
    spec.validate();
    const auto peaks = all_peaks(spec);
    const double scale_mass = spec.pair.m_a * spec.pair.m_b;
    auto det = [&spec](double w) {
      const Matrix2c m = inverse_susceptibility(w, spec);
      return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    };

    // Radius beyond which m_A m_B w^4 dominates the determinant.
    double radius = default_tail_cut(spec, peaks) * 10.0;
    for (int i = 0; i < 40; ++i) {
      const double lead = scale_mass * std::pow(radius, 4);
      if (std::abs(det(radius) - lead) < 0.05 * lead &&
          std::abs(det(-radius) - lead) < 0.05 * lead) {
        break;
      }
      radius *= 4.0;
    }

    // Sample grid: breakpoints mirrored to both half-axes plus log spacing.
    std::vector<double> grid{0.0};
    const double lo = 1e-6 * std::min(spec.pair.omega_a, spec.pair.omega_b);
    const int n_log = 400;
    for (int i = 0; i <= n_log; ++i) {
      grid.push_back(lo * std::pow(radius / lo, static_cast<double>(i) / n_log));
    }
    for (const auto& pk : peaks) {
      const double c = std::abs(pk.center);
      for (double f : {-10.0, -3.0, -1.0, 0.0, 1.0, 3.0, 10.0}) {
        const double x = c + f * pk.width;
        if (x > 0.0 && x < radius) grid.push_back(x);
      }
    }
    const std::size_t half = grid.size();
    for (std::size_t i = 1; i < half; ++i) grid.push_back(-grid[i]);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    double winding = 0.0;
    bool marginal = false;
    double marginal_at = 0.0;
    const double det_scale =
        scale_mass * std::pow(std::max(spec.pair.omega_a, spec.pair.omega_b), 4);

    // Phase change of det over [a, b], refined until each step is < pi/4.
    auto phase_step = [&](auto&& self, double a, Complex da, double b, Complex db,
                          int depth) -> double {
      const double step = std::arg(db / da);
      if (std::abs(step) < std::numbers::pi / 4.0) return step;
      const double mid = 0.5 * (a + b);
      if (depth > 80 || !(mid > a && mid < b) ||
          (b - a) < 64.0 * std::numeric_limits<double>::epsilon() *
                        std::max(std::abs(a), std::abs(b))) {
        if (!marginal) {
          marginal = true;
          marginal_at = mid;
        }
        return step;
      }
      const Complex dm = det(mid);
      if (std::abs(dm) < 1e-13 * det_scale && std::abs(dm.imag()) <= std::abs(dm.real())) {
        if (!marginal) {
          marginal = true;
          marginal_at = mid;
        }
      }
      return self(self, a, da, mid, dm, depth + 1) + self(self, mid, dm, b, db, depth + 1);
    };

    Complex prev = det(grid.front());
    for (std::size_t i = 1; i < grid.size(); ++i) {
      const Complex cur = det(grid[i]);
      if (std::abs(cur) < 1e-300) {
        marginal = true;
        marginal_at = grid[i];
        break;
      }
      winding += phase_step(phase_step, grid[i - 1], prev, grid[i], cur, 0);
      prev = cur;
    }

    const auto modes = mode_estimates(spec);
    if (marginal) {
      report.stable = false;
      report.region_lo = marginal_at - 1e-6 * std::abs(marginal_at);
      report.region_hi = marginal_at + 1e-6 * std::abs(marginal_at);
      std::ostringstream msg;
      msg << "zero of det chi^{-1} on the real axis near w = " << marginal_at
          << " (undamped resonance)";
      report.diagnostic = msg.str();
      return report;
    }

    // Closing semicircle contributes +4 pi (the w^4 leading term).
    const double total = winding + 4.0 * std::numbers::pi;
    report.unstable_zeros = static_cast<int>(std::lround(total / kTwoPi));
    report.stable = report.unstable_zeros == 0;
    if (!report.stable) {
      const auto worst = std::min_element(
          modes.begin(), modes.end(),
          [](const ModeEstimate& l, const ModeEstimate& r) { return l.damping < r.damping; });
      const double width = std::max(std::abs(worst->damping), 1e-3 * worst->frequency);
      report.region_lo = worst->frequency - width;
      report.region_hi = worst->frequency + width;
      std::ostringstream msg;
      msg << report.unstable_zeros
          << " zero(s) of det chi^{-1} in the upper half plane; most anti-damped mode near w = "
          << worst->frequency << " (damping estimate " << worst->damping << ")";
      report.diagnostic = msg.str();
    } else {
      report.diagnostic = "all zeros of det chi^{-1} in the lower half plane";
    }
  } catch (const std::exception& e) {
    report.stable = false;
    report.diagnostic = std::string("stability check failed: ") + e.what();
  }
  return report;
}

// --- Steady state -----------------------------------------------------------

std::vector<double> integration_breakpoints(const SystemSpec& spec,
                                            const QuadratureSettings& q,
                                            double& tail_cut) {
  const auto peaks = all_peaks(spec);
  tail_cut = q.tail_cut ? *q.tail_cut : default_tail_cut(spec, peaks);
  std::vector<double> bp{0.0, tail_cut};
  auto add = [&](double x) {
    if (x > 0.0 && x < tail_cut) bp.push_back(x);
  };
  for (const auto& pk : peaks) {
    const double c = std::abs(pk.center);
    add(c);
    if (!(pk.width > 0.0)) continue;
    for (double f : {1.0, q.peak_pad}) {
      add(c - f * pk.width);
      add(c + f * pk.width);
    }
    // Lorentzian tails of narrow peaks: a x3 ladder out to the peak's own
    // scale keeps every panel within a few decades of the width.
    for (double d = 3.0 * q.peak_pad * pk.width; d < std::max(c, pk.width); d *= 3.0) {
      add(c - d);
      add(c + d);
    }
  }
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
  return bp;
}

namespace {

constexpr int kComponents = 7;

// Folded integrand v(w) + v(-w) on w >= 0. Components:
//   0..2  Re Q_AA, Re Q_BB, Re Q_AB
//   3..5  m_a^2 w^2 Re Q_AA, m_b^2 w^2 Re Q_BB, m_a m_b w^2 Re Q_AB
//   6     w Im Q_AB
Eigen::VectorXd folded_integrand(double w, const SystemSpec& spec) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(kComponents);
  const double ma = spec.pair.m_a;
  const double mb = spec.pair.m_b;
  for (double s : {w, -w}) {
    const Matrix2c chi = susceptibility_matrix(s, spec);
    const Matrix2c q = chi * spec.noise(s) * chi.adjoint();
    const double w2 = s * s;
    v(0) += q(0, 0).real();
    v(1) += q(1, 1).real();
    v(2) += q(0, 1).real();
    v(3) += ma * ma * w2 * q(0, 0).real();
    v(4) += mb * mb * w2 * q(1, 1).real();
    v(5) += ma * mb * w2 * q(0, 1).real();
    v(6) += s * q(0, 1).imag();
  }
  return v;
}

}  // namespace

SteadyState steady_covariance(const SystemSpec& spec, const QuadratureSettings& q) {
  q.validate();
  const StabilityReport stability = stability_check(spec);
  if (!stability.stable) throw Unstable("steady_covariance: " + stability.diagnostic);

  double cut = 0.0;
  std::vector<double> bp = integration_breakpoints(spec, q, cut);

  // The momentum integrand must fall faster than 1/w for the tail to converge.
  {
    auto decay = [&](double w) {
      const Eigen::VectorXd v = folded_integrand(w, spec);
      return w * std::max(std::abs(v(3)), std::abs(v(4)));
    };
    const double near = decay(10.0 * cut);
    const double far = decay(1000.0 * cut);
    if (near > 0.0 && far > 0.5 * near) {
      throw ToleranceNotMet(
          "steady_covariance: momentum spectrum decays no faster than 1/w; "
          "the bath needs a high-frequency cutoff",
          std::numeric_limits<double>::infinity());
    }
  }

  bp.push_back(cut + 1.0);
  auto integrand = [&](double t) -> Eigen::VectorXd {
    if (t <= cut) return folded_integrand(t, spec);
    const double u = cut + 1.0 - t;
    const double w = cut / u;
    return folded_integrand(w, spec) * (cut / (u * u));
  };

  const double ma = spec.pair.m_a;
  AdaptiveOptions opt;
  opt.rel_tol = q.rel_tol;
  opt.max_subdivisions = q.max_subdivisions;
  opt.reference = [ma](const Eigen::VectorXd& v) {
    Eigen::VectorXd r(kComponents);
    r(0) = std::abs(v(0));
    r(1) = std::abs(v(1));
    r(2) = std::sqrt(std::abs(v(0) * v(1)));
    r(3) = std::abs(v(3));
    r(4) = std::abs(v(4));
    r(5) = std::sqrt(std::abs(v(3) * v(4)));
    r(6) = std::sqrt(std::abs(v(3) * v(1))) / ma;
    return r;
  };
  const AdaptiveResult res = integrate_adaptive(integrand, kComponents, bp, opt);
  if (!res.converged) {
    std::ostringstream msg;
    msg << "steady_covariance: relative error " << res.achieved_rel_error
        << " after " << q.max_subdivisions << " subdivisions (target " << q.rel_tol << ")";
    throw ToleranceNotMet(msg.str(), res.achieved_rel_error);
  }

  const double mb = spec.pair.m_b;
  auto to_matrix = [&](const Eigen::VectorXd& v) {
    Matrix4 g = Matrix4::Zero();
    g(kQA, kQA) = v(0);
    g(kQB, kQB) = v(1);
    g(kQA, kQB) = g(kQB, kQA) = v(2);
    g(kPA, kPA) = v(3);
    g(kPB, kPB) = v(4);
    g(kPA, kPB) = g(kPB, kPA) = v(5);
    g(kPA, kQB) = g(kQB, kPA) = ma * v(6);
    g(kPB, kQA) = g(kQA, kPB) = -mb * v(6);
    return Matrix4(g / kTwoPi);
  };

  SteadyState out;
  out.covariance = CovarianceMatrix(to_matrix(res.value));
  out.error = to_matrix(res.error).cwiseAbs();
  out.rel_error = res.achieved_rel_error;
  out.evaluations = res.evaluations;
  out.panels = res.panels;
  return out;
}

}  // namespace qlangevin
