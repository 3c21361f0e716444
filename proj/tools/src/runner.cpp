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

#include "qlangevin/cli/runner.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <thread>

#include <nlohmann/json.hpp>

#include "qlangevin/baths.hpp"
#include "qlangevin/errors.hpp"

namespace qlangevin::cli {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

BathModel load_tabulated(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), "cannot open tabulated spectrum");
  try {
    return tabulated_bath(in, path.filename().string());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path.string(), e.what());
  }
}

BathModel combine(const std::vector<BathModel>& parts) {
  if (parts.size() == 1) return parts.front();
  return composite_bath(parts);
}

OhmicParams ohmic_params(const RunConfig& c) {
  return {c.system.m, c.ohmic->gamma_m, c.ohmic->omega_c, c.ohmic_temperature()};
}

CavityParams cavity_params(const RunConfig& c, double omega_mode) {
  CavityParams p;
  p.g = c.cavity_g();
  p.kappa = c.cavity->kappa;
  p.detuning = c.cavity->detuning.value_or(-omega_mode);
  p.ell_m = 1.0 / std::sqrt(2.0 * c.system.m * c.system.omega);
  return p;
}

double thermal_occupation(const RunConfig& c) {
  return c.thermal->gamma_m_n_th / c.thermal->gamma_m;
}

void fill_scaled(PointResult& r, double m, double omega_plus, double omega_minus) {
  const auto& mv = r.modes;
  r.plus = {2.0 * m * omega_plus * mv.eta_plus_sq, 2.0 * mv.pi_plus_sq / (m * omega_plus)};
  r.minus = {2.0 * m * omega_minus * mv.eta_minus_sq,
             2.0 * mv.pi_minus_sq / (m * omega_minus)};
}

PointResult from_covariance(const CovarianceMatrix& gamma, const OscillatorPair& pair) {
  PointResult r;
  r.covariance = gamma;
  r.en = log_negativity(gamma, r.spectrum);
  r.modes = mode_variances(gamma);
  fill_scaled(r, pair.m_a, pair.omega_plus(), pair.omega_minus());
  return r;
}

PointResult evaluate_exact(const RunConfig& c) {
  const SystemSpec spec = build_system_spec(c);
  const SteadyState ss = steady_covariance(spec, c.quadrature);
  PointResult r = from_covariance(ss.covariance, spec.pair);
  r.rel_error = ss.rel_error;
  r.evaluations = ss.evaluations;
  return r;
}

PointResult evaluate_lindblad(const RunConfig& c) {
  const OscillatorPair pair = c.system.pair();
  return from_covariance(lindblad_covariance(pair, build_lindblad_baths(c)), pair);
}

PointResult evaluate_closed_form(const RunConfig& c) {
  const OscillatorPair pair = c.system.pair();
  const double m = pair.m_a;
  const double omega = c.system.omega;
  const double w_plus = pair.omega_plus();
  const double w_minus = pair.omega_minus();
  PointResult r;
  if (c.tabulated) {
    throw ConfigError("baths.tabulated", "no closed form for tabulated baths");
  }
  if (!c.ohmic && !c.cavity && !c.thermal) {
    r.modes = ModeVariances::thermal(m, w_plus, w_minus, c.system.n_th, c.system.n_th);
  } else if (c.ohmic && !c.cavity) {
    if (c.ohmic_temperature() > 0.0) {
      throw ConfigError("baths.ohmic", "closed form is only available at T = 0");
    }
    const OhmicParams p = ohmic_params(c);
    r.warnings = closed_form::ohmic_regime_warnings(p, omega);
    r.modes = closed_form::to_mode_variances(closed_form::ohmic_t0_variances(p, w_plus),
                                             closed_form::ohmic_t0_variances(p, w_minus), m,
                                             w_plus, w_minus);
  } else if (c.cavity && !c.ohmic) {
    if (c.cavity->detuning) {
      throw ConfigError("baths.cavity.detuning", "closed form needs the optimal detuning");
    }
    const double g = c.cavity_g();
    const double gamma_m_n_th = c.thermal ? c.thermal->gamma_m_n_th : 0.0;
    const double gamma_m = c.thermal ? c.thermal->gamma_m : 0.0;
    const auto d = closed_form::OptomechDerived::optimal(c.cavity_gamma_opt(), c.cavity->kappa,
                                                         gamma_m_n_th, omega);
    r.warnings = closed_form::optomech_regime_warnings(d, g, gamma_m, omega);
    r.modes = closed_form::to_mode_variances(closed_form::optomech_variances(d, g, w_plus),
                                             closed_form::optomech_variances(d, g, w_minus),
                                             m, w_plus, w_minus);
  } else {
    throw ConfigError("baths", "no closed form for this bath combination");
  }
  r.modes.validate();
  r.covariance = covariance_from_mode_variances(r.modes);
  r.en = log_negativity(r.covariance, r.spectrum);
  fill_scaled(r, m, w_plus, w_minus);
  return r;
}

PointResult failed(PointFlag flag, const std::string& message) {
  PointResult r;
  r.en = kNaN;
  r.spectrum = {kNaN, kNaN};
  r.modes = {kNaN, kNaN, kNaN, kNaN};
  r.plus = {kNaN, kNaN};
  r.minus = {kNaN, kNaN};
  r.rel_error = kNaN;
  r.flag = flag;
  r.message = message;
  return r;
}

/// Grid points of the sweep axes, first axis slowest.
std::vector<std::vector<double>> grid(const RunConfig& config) {
  std::vector<std::vector<double>> values;
  for (const auto& a : config.axes) values.push_back(a.values());
  std::vector<std::vector<double>> out{{}};
  for (const auto& v : values) {
    std::vector<std::vector<double>> next;
    next.reserve(out.size() * v.size());
    for (const auto& prefix : out) {
      for (double x : v) {
        auto row = prefix;
        row.push_back(x);
        next.push_back(std::move(row));
      }
    }
    out = std::move(next);
  }
  return out;
}

RunConfig at_point(const RunConfig& config, const std::vector<double>& params) {
  RunConfig c = config;
  c.axes.clear();
  for (std::size_t i = 0; i < params.size(); ++i) {
    c.set_parameter(config.axes[i].param, params[i]);
  }
  try {
    c.validate();
  } catch (const ConfigError& e) {
    std::string where = "sweep point (";
    for (std::size_t i = 0; i < params.size(); ++i) {
      if (i) where += ", ";
      where += config.axes[i].param + "=" + format_double(params[i]);
    }
    throw ConfigError(where + ")", e.what());
  }
  return c;
}

template <class F>
void parallel_for(std::size_t n, int workers, F&& f) {
  if (workers <= 0) workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  workers = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(workers), n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) f(i);
    });
  }
  for (auto& t : pool) t.join();
}

void write_header(std::ostream& out, const RunConfig& config) {
  for (const auto& a : config.axes) out << a.param << ',';
}

void write_params(std::ostream& out, const std::vector<double>& params) {
  for (double x : params) out << format_double(x) << ',';
}

}  // namespace

std::string_view to_string(PointFlag f) {
  switch (f) {
    case PointFlag::kOk:
      return "ok";
    case PointFlag::kTolerance:
      return "tolerance";
    case PointFlag::kUnstable:
      return "unstable";
    case PointFlag::kNoBracket:
      return "no-bracket";
  }
  return "ok";
}

SystemSpec build_system_spec(const RunConfig& c) {
  const OscillatorPair pair = c.system.pair();
  std::vector<BathModel> common;
  if (c.ohmic) common.push_back(ohmic_bath(ohmic_params(c)));
  if (c.tabulated) common.push_back(load_tabulated(c.tabulated->path));

  if (c.cavity || c.thermal) {
    std::vector<BathModel> plus = common;
    std::vector<BathModel> minus = common;
    if (c.cavity) {
      plus.push_back(cavity_bath(cavity_params(c, pair.omega_plus())));
      minus.push_back(cavity_bath(cavity_params(c, pair.omega_minus())));
    }
    if (c.thermal) {
      const double n = thermal_occupation(c);
      plus.push_back(resonance_thermal_bath(c.thermal->gamma_m, n, pair.m_a, pair.omega_plus()));
      minus.push_back(
          resonance_thermal_bath(c.thermal->gamma_m, n, pair.m_a, pair.omega_minus()));
    }
    return SystemSpec::normal_modes(pair, combine(plus), combine(minus));
  }
  if (common.empty()) return SystemSpec::symmetric(pair, BathModel::zero());
  const BathModel own = combine(common);
  if (c.tabulated && c.tabulated->cross_path) {
    SystemSpec spec;
    spec.pair = pair;
    spec.basis = BathBasis::kOscillator;
    const BathModel cross = load_tabulated(*c.tabulated->cross_path);
    spec.baths[0][0] = own;
    spec.baths[1][1] = own;
    spec.baths[0][1] = cross;
    spec.baths[1][0] = cross;
    return spec;
  }
  return SystemSpec::symmetric(pair, own);
}

LindbladBaths build_lindblad_baths(const RunConfig& c) {
  if (c.tabulated) throw ConfigError("baths.tabulated", "no Lindblad form for tabulated baths");
  const OscillatorPair pair = c.system.pair();
  LindbladBaths b;
  if (c.ohmic) {
    const double t = c.ohmic_temperature();
    b.gamma_m = c.ohmic->gamma_m;
    b.n_plus = bose_occupation(pair.omega_plus(), t);
    b.n_minus = bose_occupation(pair.omega_minus(), t);
  }
  if (c.thermal) {
    b.gamma_m = c.thermal->gamma_m;
    b.n_plus = b.n_minus = thermal_occupation(c);
  }
  if (c.cavity) {
    b.cavity_plus = cavity_params(c, pair.omega_plus());
    b.cavity_minus = cavity_params(c, pair.omega_minus());
  }
  return b;
}

PointResult evaluate_point(const RunConfig& config) {
  switch (config.method) {
    case Method::kExact:
      return evaluate_exact(config);
    case Method::kLindblad:
      return evaluate_lindblad(config);
    case Method::kClosedForm:
      return evaluate_closed_form(config);
  }
  throw std::logic_error("unknown method");
}

PointResult evaluate_point_flagged(const RunConfig& config) {
  try {
    return evaluate_point(config);
  } catch (const ConfigError&) {
    throw;
  } catch (const ToleranceNotMet& e) {
    return failed(PointFlag::kTolerance, e.what());
  } catch (const GridTooCoarse& e) {
    return failed(PointFlag::kTolerance, e.what());
  } catch (const std::exception& e) {
    return failed(PointFlag::kUnstable, e.what());
  }
}

std::string point_report_json(const RunConfig& config, const PointResult& r) {
  using nlohmann::json;
  json j;
  j["method"] = std::string(to_string(config.method));
  j["flag"] = std::string(to_string(r.flag));
  j["E_N"] = r.en;
  j["symplectic_eigenvalues"] = {r.spectrum.c1, r.spectrum.c2};
  j["mode_variances"] = {{"eta_plus_sq", r.modes.eta_plus_sq},
                         {"eta_minus_sq", r.modes.eta_minus_sq},
                         {"pi_plus_sq", r.modes.pi_plus_sq},
                         {"pi_minus_sq", r.modes.pi_minus_sq}};
  j["scaled_variances"] = {
      {"position_plus", r.plus.position},   {"momentum_plus", r.plus.momentum},
      {"position_minus", r.minus.position}, {"momentum_minus", r.minus.momentum}};
  json cov = json::array();
  for (int i = 0; i < 4; ++i) {
    json row = json::array();
    for (int k = 0; k < 4; ++k) row.push_back(r.covariance(i, k));
    cov.push_back(row);
  }
  j["covariance"] = cov;
  j["covariance_order"] = {"p_A", "q_A", "p_B", "q_B"};
  if (config.method == Method::kExact) {
    j["quadrature"] = {{"rel_error", r.rel_error}, {"evaluations", r.evaluations}};
  }
  j["warnings"] = r.warnings;
  return j.dump(2) + "\n";
}

std::vector<SweepRow> run_sweep(const RunConfig& config, int workers) {
  const auto points = grid(config);
  std::vector<RunConfig> configs;
  configs.reserve(points.size());
  for (const auto& p : points) configs.push_back(at_point(config, p));
  std::vector<SweepRow> rows(points.size());
  parallel_for(points.size(), workers, [&](std::size_t i) {
    rows[i].parameters = points[i];
    rows[i].result = evaluate_point_flagged(configs[i]);
  });
  return rows;
}

void write_sweep_csv(std::ostream& out, const RunConfig& config,
                     const std::vector<SweepRow>& rows) {
  write_header(out, config);
  out << "E_N,c1,c2,pos_plus,mom_plus,pos_minus,mom_minus,rel_error,flag\n";
  for (const auto& row : rows) {
    const auto& r = row.result;
    write_params(out, row.parameters);
    for (double x : {r.en, r.spectrum.c1, r.spectrum.c2, r.plus.position, r.plus.momentum,
                     r.minus.position, r.minus.momentum, r.rel_error}) {
      out << format_double(x) << ',';
    }
    out << to_string(r.flag) << '\n';
  }
}

GminResult find_gmin(const RunConfig& config) {
  GminResult res;
  const auto& gc = config.gmin;
  auto en = [&](double g) {
    RunConfig c = config;
    c.axes.clear();
    c.set_parameter("G", g);
    ++res.evaluations;
    return evaluate_point(c).en;
  };
  try {
    double lo = gc.g_lo;
    double hi = gc.g_hi;
    if (en(lo) > 0.0) {
      res.flag = PointFlag::kNoBracket;
      res.message = "already entangled at G_lo";
      res.g_min = res.en_at_g_min = res.en_above = kNaN;
      return res;
    }
    double en_hi = en(hi);
    for (int expansions = 0; !(en_hi > 0.0); ++expansions) {
      if (expansions == gc.max_expansions) {
        res.flag = PointFlag::kNoBracket;
        res.message = "no entanglement up to G = " + format_double(hi);
        res.g_min = res.en_at_g_min = res.en_above = kNaN;
        return res;
      }
      lo = hi;
      hi *= 2.0;
      en_hi = en(hi);
    }
    const double tol = gc.g_tol * config.system.omega;
    while (hi - lo > tol) {
      const double mid = 0.5 * (lo + hi);
      const double e = en(mid);
      if (e > 0.0) {
        hi = mid;
        en_hi = e;
      } else {
        lo = mid;
      }
    }
    res.g_min = hi;
    res.en_at_g_min = en_hi;
    res.en_above = en(1.01 * hi);
    if (!(res.en_at_g_min <= gc.en_tol) || !(res.en_above > 0.0)) {
      res.flag = PointFlag::kTolerance;
      res.message = "threshold invariant failed: E_N(G_min) = " +
                    format_double(res.en_at_g_min) +
                    ", E_N(1.01 G_min) = " + format_double(res.en_above);
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const ToleranceNotMet& e) {
    res = {kNaN, kNaN, kNaN, res.evaluations, PointFlag::kTolerance, e.what()};
  } catch (const GridTooCoarse& e) {
    res = {kNaN, kNaN, kNaN, res.evaluations, PointFlag::kTolerance, e.what()};
  } catch (const std::exception& e) {
    res = {kNaN, kNaN, kNaN, res.evaluations, PointFlag::kUnstable, e.what()};
  }
  return res;
}

std::vector<BoundaryRow> run_gmin_sweep(const RunConfig& config, int workers) {
  for (std::size_t i = 0; i < config.axes.size(); ++i) {
    if (config.axes[i].param == "G" || config.axes[i].param == "k") {
      throw ConfigError("sweep[" + std::to_string(i) + "].param",
                        "the coupling is the search variable of gmin");
    }
  }
  const auto points = grid(config);
  std::vector<RunConfig> configs;
  configs.reserve(points.size());
  for (const auto& p : points) configs.push_back(at_point(config, p));
  std::vector<BoundaryRow> rows(points.size());
  parallel_for(points.size(), workers, [&](std::size_t i) {
    rows[i].parameters = points[i];
    rows[i].result = find_gmin(configs[i]);
  });
  return rows;
}

void write_boundary_csv(std::ostream& out, const RunConfig& config,
                        const std::vector<BoundaryRow>& rows) {
  write_header(out, config);
  out << "G_min,E_N_at_G_min,E_N_above,evaluations,flag\n";
  for (const auto& row : rows) {
    const auto& r = row.result;
    write_params(out, row.parameters);
    out << format_double(r.g_min) << ',' << format_double(r.en_at_g_min) << ','
        << format_double(r.en_above) << ',' << r.evaluations << ',' << to_string(r.flag)
        << '\n';
  }
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace qlangevin::cli
