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

#include "qlangevin/baths.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "qlangevin/errors.hpp"
#include "qlangevin/quadrature.hpp"

namespace qlangevin {

namespace {
constexpr Complex kI{0.0, 1.0};
}  // namespace

BathModel::BathModel(std::string label, Spectrum spectrum, Response response,
                     std::vector<PeakHint> peaks)
    : spectrum_(std::move(spectrum)),
      response_(std::move(response)),
      peaks_(std::make_shared<const std::vector<PeakHint>>(std::move(peaks))),
      label_(std::make_shared<const std::string>(std::move(label))) {}

BathModel BathModel::zero() {
  return BathModel(
      "zero", [](double) { return 0.0; }, [](double) { return Complex{}; });
}

BathModel BathModel::with_flipped_response() const {
  auto response = response_;
  return BathModel(label() + " (flipped response)", spectrum_,
                   [response](double w) { return -response(w); }, peaks());
}

// --- Ohmic ------------------------------------------------------------------

void OhmicParams::validate() const {
  if (!(m > 0.0)) throw std::invalid_argument("OhmicParams: m must be > 0");
  if (!(gamma_m > 0.0)) {
    throw std::invalid_argument("OhmicParams: Gamma_m must be > 0");
  }
  if (!(omega_c > 0.0)) {
    throw std::invalid_argument("OhmicParams: omega_c must be > 0");
  }
  if (!(temperature >= 0.0)) {
    throw std::invalid_argument("OhmicParams: T must be >= 0");
  }
}

double ohmic_spectrum(double omega, const OhmicParams& p) {
  const double cutoff = 1.0 + (omega / p.omega_c) * (omega / p.omega_c);
  const double weight = p.m * p.gamma_m;
  if (p.temperature == 0.0) {
    return omega > 0.0 ? 2.0 * weight * omega / cutoff : 0.0;
  }
  if (omega == 0.0) return 2.0 * weight * p.temperature;
  // w (coth(w/2T) + 1) = 2 w (n(w) + 1) for w > 0 and 2 |w| n(|w|) for w < 0.
  const double a = std::abs(omega);
  const double n = 1.0 / std::expm1(a / p.temperature);
  const double factor = omega > 0.0 ? n + 1.0 : n;
  return 2.0 * weight * a * factor / cutoff;
}

Complex ohmic_response(double omega, const OhmicParams& p) {
  return -kI * p.m * p.gamma_m * omega / (1.0 - kI * omega / p.omega_c);
}

BathModel ohmic_bath(const OhmicParams& p) {
  p.validate();
  std::vector<PeakHint> peaks{{p.omega_c, p.omega_c}};
  if (p.temperature > 0.0) peaks.push_back({0.0, p.temperature});
  std::ostringstream label;
  label << "ohmic(Gamma_m=" << p.gamma_m << ", omega_c=" << p.omega_c
        << ", T=" << p.temperature << ")";
  return BathModel(
      label.str(), [p](double w) { return ohmic_spectrum(w, p); },
      [p](double w) { return ohmic_response(w, p); }, std::move(peaks));
}

// --- Cavity -----------------------------------------------------------------

void CavityParams::validate() const {
  if (!(g >= 0.0)) throw std::invalid_argument("CavityParams: g must be >= 0");
  if (!(kappa > 0.0)) {
    throw std::invalid_argument("CavityParams: kappa must be > 0");
  }
  if (!(ell_m > 0.0)) {
    throw std::invalid_argument("CavityParams: ell_m must be > 0");
  }
}

double cavity_spectrum(double omega, const CavityParams& p) {
  const double x = omega + p.detuning;
  return p.force_scale() * p.kappa / (x * x + 0.25 * p.kappa * p.kappa);
}

Complex cavity_response(double omega, const CavityParams& p) {
  const Complex half_width = 0.5 * kI * p.kappa;
  return p.force_scale() * (1.0 / (omega + p.detuning + half_width) -
                            1.0 / (omega - p.detuning + half_width));
}

BathModel cavity_bath(const CavityParams& p) {
  p.validate();
  std::ostringstream label;
  label << "cavity(g=" << p.g << ", kappa=" << p.kappa
        << ", Delta=" << p.detuning << ")";
  return BathModel(
      label.str(), [p](double w) { return cavity_spectrum(w, p); },
      [p](double w) { return cavity_response(w, p); },
      {{-p.detuning, 0.5 * p.kappa}, {p.detuning, 0.5 * p.kappa}});
}

OptomechanicalRates optomechanical_rates(const CavityParams& p,
                                         double omega_mode) {
  p.validate();
  const double emission = cavity_spectrum(omega_mode, p);
  const double absorption = cavity_spectrum(-omega_mode, p);
  if (!(emission > absorption)) {
    throw HeatingRegime("optomechanical_rates: S(Omega) <= S(-Omega), no cooling");
  }
  const double diff = emission - absorption;
  return {p.ell_m * p.ell_m * diff, absorption / diff};
}

double coupling_for_cooling_rate(double gamma_opt, double kappa) {
  if (!(gamma_opt >= 0.0) || !(kappa > 0.0)) {
    throw std::invalid_argument("coupling_for_cooling_rate: need Gamma_opt >= 0, kappa > 0");
  }
  return std::sqrt(0.25 * gamma_opt * kappa);
}

// --- Resonance thermal ------------------------------------------------------

BathModel resonance_thermal_bath(double gamma_m, double n_th, double m,
                                 double omega_mode) {
  if (!(gamma_m > 0.0)) {
    throw std::invalid_argument("resonance_thermal_bath: Gamma_m must be > 0");
  }
  if (!(n_th >= 0.0)) {
    throw std::invalid_argument("resonance_thermal_bath: n_th must be >= 0");
  }
  const double emission = 2.0 * m * gamma_m * omega_mode * (n_th + 1.0);
  const double absorption = 2.0 * m * gamma_m * omega_mode * n_th;
  std::ostringstream label;
  label << "resonance-thermal(Gamma_m=" << gamma_m << ", n_th=" << n_th
        << ", Omega=" << omega_mode << ")";
  return BathModel(
      label.str(),
      [emission, absorption](double w) { return w > 0.0 ? emission : absorption; },
      [damping = m * gamma_m](double w) { return -kI * damping * w; },
      {{omega_mode, gamma_m}, {-omega_mode, gamma_m}});
}

BathModel composite_bath(std::span<const BathModel> baths) {
  if (baths.empty()) {
    throw std::invalid_argument("composite_bath: empty bath list");
  }
  if (baths.size() == 1) return baths.front();
  std::vector<BathModel> parts(baths.begin(), baths.end());
  std::vector<PeakHint> peaks;
  std::string label;
  for (const auto& b : parts) {
    peaks.insert(peaks.end(), b.peaks().begin(), b.peaks().end());
    label += (label.empty() ? "" : " + ") + b.label();
  }
  auto shared = std::make_shared<const std::vector<BathModel>>(std::move(parts));
  return BathModel(
      label,
      [shared](double w) {
        double s = 0.0;
        for (const auto& b : *shared) s += b.spectrum(w);
        return s;
      },
      [shared](double w) {
        Complex r{};
        for (const auto& b : *shared) r += b.response(w);
        return r;
      },
      std::move(peaks));
}

// --- Kramers-Kronig ---------------------------------------------------------

Complex kk_response(const BathModel::Spectrum& spectrum, double omega,
                    const KramersKronigSettings& settings) {
  // h = Im chi^F, odd in w.
  auto h = [&spectrum](double w) { return -0.5 * (spectrum(w) - spectrum(-w)); };
  const double imag = h(omega);
  const double w = std::abs(omega);

  // Re chi(w) = (1/pi) PV int_0^inf h(x) K(x) dx with
  //   K = 2x/(x^2 - w^2)                (plain)
  //   K = 2w^2/(x (x^2 - w^2))          (static value subtracted)
  // Both are written as g(x)/(x - w); the PV part is removed by subtracting
  // g(w) and adding g(w) ln((L - w)/w) analytically.
  if (w == 0.0 && settings.subtract_static) return {0.0, imag};
  auto g = [&](double x) {
    if (settings.subtract_static) return 2.0 * w * w * h(x) / (x * (x + w));
    return 2.0 * x * h(x) / (x + w);
  };
  const double cut = std::max(settings.omega_max, 4.0 * w);
  const double g_at = w > 0.0 ? g(w) : 0.0;

  std::vector<double> bp{0.0, cut, cut + 1.0};
  if (w > 0.0) bp.push_back(w);
  for (const auto& pk : settings.peaks) {
    for (double c : {std::abs(pk.center) - pk.width, std::abs(pk.center),
                     std::abs(pk.center) + pk.width}) {
      if (c > 0.0 && c < cut) bp.push_back(c);
    }
  }
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end()), bp.end());

  auto integrand = [&](double t) {
    if (t <= cut) {
      if (w == 0.0) return g(t) / t;
      return (g(t) - g_at) / (t - w);
    }
    // x = cut / u on the tail, u = cut + 1 - t in (0, 1).
    const double u = cut + 1.0 - t;
    const double x = cut / u;
    return g(x) / (x - w) * cut / (u * u);
  };

  AdaptiveOptions opt;
  opt.rel_tol = settings.rel_tol * 1e-2;
  opt.max_subdivisions = settings.max_subdivisions;
  const double scale = std::max(std::abs(imag), 1e-300);
  opt.reference = [scale](const Eigen::VectorXd& v) {
    Eigen::VectorXd r(1);
    r(0) = std::max(std::abs(v(0)), std::numbers::pi * scale);
    return r;
  };
  const AdaptiveResult res = integrate_adaptive_scalar(integrand, bp, opt);
  double integral = res.value(0);
  if (w > 0.0) integral += g_at * std::log((cut - w) / w);

  const double ref = std::max(std::abs(integral), std::numbers::pi * scale);
  const double achieved = ref > 1e-300 ? res.error(0) / ref : 0.0;
  if (achieved > settings.rel_tol) {
    throw GridTooCoarse("kk_response: error estimate " + std::to_string(achieved) +
                            " exceeds tolerance",
                        achieved);
  }
  return {integral / std::numbers::pi, imag};
}

BathModel tabulated_bath(std::istream& in, const std::string& label) {
  std::vector<double> xs;
  std::vector<double> ys;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream row(line);
    double x = 0.0;
    double y = 0.0;
    if (!(row >> x >> y)) {
      throw std::invalid_argument("tabulated_bath: line " + std::to_string(lineno) +
                                  ": expected two numbers");
    }
    if (!xs.empty() && !(x > xs.back())) {
      throw std::invalid_argument("tabulated_bath: line " + std::to_string(lineno) +
                                  ": frequencies must be strictly ascending");
    }
    if (y < 0.0) {
      throw std::invalid_argument("tabulated_bath: line " + std::to_string(lineno) +
                                  ": spectrum must be >= 0");
    }
    xs.push_back(x);
    ys.push_back(y);
  }
  if (xs.size() < 2) {
    throw std::invalid_argument("tabulated_bath: need at least two rows");
  }

  auto table = std::make_shared<const std::pair<std::vector<double>, std::vector<double>>>(
      std::move(xs), std::move(ys));
  BathModel::Spectrum spectrum = [table](double w) {
    const auto& [x, y] = *table;
    if (w < x.front() || w > x.back()) return 0.0;
    const auto it = std::upper_bound(x.begin(), x.end(), w);
    if (it == x.end()) return y.back();
    const auto i = static_cast<std::size_t>(it - x.begin());
    const double t = (w - x[i - 1]) / (x[i] - x[i - 1]);
    return y[i - 1] + t * (y[i] - y[i - 1]);
  };

  // Real part on |w| nodes; Im part is evaluated exactly from the spectrum.
  // h = Im chi^F is piecewise linear between the points +-x_i, so its
  // principal-value transform is a sum of closed-form segment terms.
  const auto& [x, y] = *table;
  std::vector<double> knots;
  for (double v : x) {
    knots.push_back(v);
    knots.push_back(-v);
  }
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
  std::vector<double> h(knots.size());
  for (std::size_t i = 0; i < knots.size(); ++i) {
    h[i] = -0.5 * (spectrum(knots[i]) - spectrum(-knots[i]));
  }

  std::vector<double> nodes;
  for (double v : x) nodes.push_back(std::abs(v));
  nodes.push_back(0.0);
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

  // PV int (a + b t)/(t - w) dt over [t0, t1] = b (t1 - t0) + h(w) ln|(t1 - w)/(t0 - w)|
  // with h(w) = a + b w. Logarithms at t == w cancel between neighbouring
  // segments and are dropped.
  auto log_dist = [](double t, double w) { return t == w ? 0.0 : std::log(std::abs(t - w)); };
  std::vector<double> real_part;
  real_part.reserve(nodes.size());
  for (double w : nodes) {
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
      const double t0 = knots[i];
      const double t1 = knots[i + 1];
      const double slope = (h[i + 1] - h[i]) / (t1 - t0);
      const double at_w = h[i] + slope * (w - t0);
      sum += slope * (t1 - t0) + at_w * (log_dist(t1, w) - log_dist(t0, w));
    }
    real_part.push_back(sum / std::numbers::pi);
  }

  auto re_table = std::make_shared<const std::pair<std::vector<double>, std::vector<double>>>(
      std::move(nodes), std::move(real_part));
  BathModel::Response response = [spectrum, re_table](double w) {
    const auto& [nx, ny] = *re_table;
    const double a = std::abs(w);
    double re = 0.0;
    if (a >= nx.back()) {
      // Beyond the table the transform falls off as 1/w^2 for an even
      // commutator weight; scale the last value accordingly.
      re = ny.back() * (nx.back() / a) * (nx.back() / a);
    } else {
      const auto it = std::upper_bound(nx.begin(), nx.end(), a);
      const auto i = static_cast<std::size_t>(it - nx.begin());
      const double t = (a - nx[i - 1]) / (nx[i] - nx[i - 1]);
      re = ny[i - 1] + t * (ny[i] - ny[i - 1]);
    }
    return Complex{re, -0.5 * (spectrum(w) - spectrum(-w))};
  };

  std::vector<PeakHint> peaks;
  const auto peak_it = std::max_element(y.begin(), y.end());
  const auto ip = static_cast<std::size_t>(peak_it - y.begin());
  const double spacing = (x.back() - x.front()) / static_cast<double>(x.size() - 1);
  peaks.push_back({x[ip], spacing});
  peaks.push_back({x.front(), spacing});
  peaks.push_back({x.back(), spacing});
  return BathModel(label, std::move(spectrum), std::move(response), std::move(peaks));
}

// --- Occupations ------------------------------------------------------------

double bose_occupation(double omega, double temperature) {
  if (!(omega > 0.0)) {
    throw std::invalid_argument("bose_occupation: omega must be > 0");
  }
  if (temperature <= 0.0) return 0.0;
  return 1.0 / std::expm1(omega / temperature);
}

double temperature_for_occupation(double omega, double n) {
  if (!(n >= 0.0)) {
    throw std::invalid_argument("temperature_for_occupation: n must be >= 0");
  }
  if (n == 0.0) return 0.0;
  return omega / std::log1p(1.0 / n);
}

}  // namespace qlangevin
