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

#include "qlangevin/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qlangevin/baths.hpp"

namespace qlangevin::cli {
namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) throw ConfigError(where, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) throw ConfigError(where + "." + key, "unknown field");
  }
}

double get_number(const json& obj, const std::string& where, const char* key) {
  const auto& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(where + "." + key, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(where + "." + key, "must be finite");
  return x;
}

void read_number(const json& obj, const std::string& where, const char* key, double& out) {
  if (obj.contains(key)) out = get_number(obj, where, key);
}

void read_optional(const json& obj, const std::string& where, const char* key,
                   std::optional<double>& out) {
  if (obj.contains(key)) out = get_number(obj, where, key);
}

int get_int(const json& obj, const std::string& where, const char* key) {
  const auto& v = obj.at(key);
  if (!v.is_number_integer()) throw ConfigError(where + "." + key, "expected an integer");
  return v.get<int>();
}

std::string get_string(const json& obj, const std::string& where, const char* key) {
  const auto& v = obj.at(key);
  if (!v.is_string()) throw ConfigError(where + "." + key, "expected a string");
  return v.get<std::string>();
}

void require_positive(double x, const std::string& where) {
  if (!(x > 0.0)) throw ConfigError(where, "must be > 0");
}

void require_nonnegative(double x, const std::string& where) {
  if (!(x >= 0.0)) throw ConfigError(where, "must be >= 0");
}

std::filesystem::path resolve(const std::filesystem::path& p,
                              const std::filesystem::path& base) {
  if (p.is_absolute() || base.empty()) return p;
  return base / p;
}

RunConfig parse_impl(const json& j, const std::filesystem::path& base_dir) {
  RunConfig c;
  check_keys(j, "config", {"method", "system", "baths", "quadrature", "sweep", "gmin"});
  if (j.contains("method")) {
    try {
      c.method = parse_method(get_string(j, "config", "method"));
    } catch (const std::invalid_argument& e) {
      throw ConfigError("config.method", e.what());
    }
  }
  if (j.contains("system")) {
    const auto& s = j["system"];
    check_keys(s, "system", {"G", "k", "omega", "m", "n_th"});
    read_number(s, "system", "omega", c.system.omega);
    read_number(s, "system", "m", c.system.m);
    read_optional(s, "system", "G", c.system.coupling_rate);
    read_optional(s, "system", "k", c.system.k);
    read_number(s, "system", "n_th", c.system.n_th);
  }
  if (j.contains("baths")) {
    const auto& b = j["baths"];
    check_keys(b, "baths", {"ohmic", "cavity", "thermal", "tabulated"});
    if (b.contains("ohmic")) {
      const auto& o = b["ohmic"];
      check_keys(o, "baths.ohmic", {"Gamma_m", "omega_c", "T", "n_th"});
      OhmicConfig oc;
      read_number(o, "baths.ohmic", "Gamma_m", oc.gamma_m);
      read_number(o, "baths.ohmic", "omega_c", oc.omega_c);
      read_optional(o, "baths.ohmic", "T", oc.temperature);
      read_optional(o, "baths.ohmic", "n_th", oc.n_th);
      c.ohmic = oc;
    }
    if (b.contains("cavity")) {
      const auto& o = b["cavity"];
      check_keys(o, "baths.cavity", {"Gamma_opt", "g", "kappa", "detuning"});
      CavityConfig cc;
      read_optional(o, "baths.cavity", "Gamma_opt", cc.gamma_opt);
      read_optional(o, "baths.cavity", "g", cc.g);
      read_number(o, "baths.cavity", "kappa", cc.kappa);
      if (o.contains("detuning")) {
        const auto& d = o["detuning"];
        if (d.is_string()) {
          if (d.get<std::string>() != "optimal") {
            throw ConfigError("baths.cavity.detuning", "expected a number or \"optimal\"");
          }
        } else {
          cc.detuning = get_number(o, "baths.cavity", "detuning");
        }
      }
      c.cavity = cc;
    }
    if (b.contains("thermal")) {
      const auto& o = b["thermal"];
      check_keys(o, "baths.thermal", {"Gamma_m_n_th", "Gamma_m"});
      ThermalConfig tc;
      read_number(o, "baths.thermal", "Gamma_m_n_th", tc.gamma_m_n_th);
      read_number(o, "baths.thermal", "Gamma_m", tc.gamma_m);
      c.thermal = tc;
    }
    if (b.contains("tabulated")) {
      const auto& o = b["tabulated"];
      check_keys(o, "baths.tabulated", {"path", "cross_path"});
      TabulatedConfig tc;
      tc.path = resolve(get_string(o, "baths.tabulated", "path"), base_dir);
      if (o.contains("cross_path")) {
        tc.cross_path = resolve(get_string(o, "baths.tabulated", "cross_path"), base_dir);
      }
      c.tabulated = tc;
    }
  }
  if (j.contains("quadrature")) {
    const auto& q = j["quadrature"];
    check_keys(q, "quadrature", {"rel_tol", "max_subdivisions", "peak_pad", "tail_cut"});
    read_number(q, "quadrature", "rel_tol", c.quadrature.rel_tol);
    if (q.contains("max_subdivisions")) {
      c.quadrature.max_subdivisions = get_int(q, "quadrature", "max_subdivisions");
    }
    read_number(q, "quadrature", "peak_pad", c.quadrature.peak_pad);
    read_optional(q, "quadrature", "tail_cut", c.quadrature.tail_cut);
  }
  if (j.contains("sweep")) {
    const auto& s = j["sweep"];
    if (!s.is_array()) throw ConfigError("sweep", "expected an array of axes");
    for (std::size_t i = 0; i < s.size(); ++i) {
      const std::string where = "sweep[" + std::to_string(i) + "]";
      const auto& a = s[i];
      check_keys(a, where, {"param", "min", "max", "count", "scale"});
      SweepAxis axis;
      axis.param = get_string(a, where, "param");
      axis.min = get_number(a, where, "min");
      axis.max = get_number(a, where, "max");
      axis.count = get_int(a, where, "count");
      if (a.contains("scale")) {
        const std::string sc = get_string(a, where, "scale");
        if (sc == "linear") {
          axis.scale = AxisScale::kLinear;
        } else if (sc == "log") {
          axis.scale = AxisScale::kLog;
        } else {
          throw ConfigError(where + ".scale", "expected \"linear\" or \"log\"");
        }
      }
      c.axes.push_back(axis);
    }
  }
  if (j.contains("gmin")) {
    const auto& g = j["gmin"];
    check_keys(g, "gmin", {"G_lo", "G_hi", "G_tol", "en_tol", "max_expansions"});
    read_number(g, "gmin", "G_lo", c.gmin.g_lo);
    read_number(g, "gmin", "G_hi", c.gmin.g_hi);
    read_number(g, "gmin", "G_tol", c.gmin.g_tol);
    read_number(g, "gmin", "en_tol", c.gmin.en_tol);
    if (g.contains("max_expansions")) {
      c.gmin.max_expansions = get_int(g, "gmin", "max_expansions");
    }
  }
  c.validate();
  return c;
}

}  // namespace

std::string_view to_string(Method m) {
  switch (m) {
    case Method::kExact:
      return "exact";
    case Method::kLindblad:
      return "lindblad";
    case Method::kClosedForm:
      return "closed-form";
  }
  return "exact";
}

Method parse_method(std::string_view s) {
  if (s == "exact") return Method::kExact;
  if (s == "lindblad") return Method::kLindblad;
  if (s == "closed-form") return Method::kClosedForm;
  throw std::invalid_argument("unknown method '" + std::string(s) +
                              "' (expected exact, lindblad or closed-form)");
}

double SystemConfig::resolved_coupling_rate() const {
  if (coupling_rate) return *coupling_rate;
  if (k) return *k / (2.0 * m * omega);
  return 0.0;
}

OscillatorPair SystemConfig::pair() const {
  return OscillatorPair::symmetric(m, omega, resolved_coupling_rate());
}

std::vector<double> SweepAxis::values() const {
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double t = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
    if (scale == AxisScale::kLog) {
      out[i] = std::exp(std::log(min) + t * (std::log(max) - std::log(min)));
    } else {
      out[i] = min + t * (max - min);
    }
  }
  // Pin the endpoints exactly.
  out.front() = min;
  if (count > 1) out.back() = max;
  return out;
}

void RunConfig::validate() const {
  require_positive(system.omega, "system.omega");
  require_positive(system.m, "system.m");
  if (system.coupling_rate && system.k) {
    throw ConfigError("system", "give either G or k, not both");
  }
  require_nonnegative(system.resolved_coupling_rate(), "system.G");
  require_nonnegative(system.n_th, "system.n_th");
  if (ohmic) {
    require_positive(ohmic->gamma_m, "baths.ohmic.Gamma_m");
    require_positive(ohmic->omega_c, "baths.ohmic.omega_c");
    if (ohmic->temperature && ohmic->n_th) {
      throw ConfigError("baths.ohmic", "give either T or n_th, not both");
    }
    if (ohmic->temperature) require_nonnegative(*ohmic->temperature, "baths.ohmic.T");
    if (ohmic->n_th) require_nonnegative(*ohmic->n_th, "baths.ohmic.n_th");
  }
  if (cavity) {
    if (cavity->g && cavity->gamma_opt) {
      throw ConfigError("baths.cavity", "give either g or Gamma_opt, not both");
    }
    if (!cavity->g && !cavity->gamma_opt) {
      throw ConfigError("baths.cavity", "one of g or Gamma_opt is required");
    }
    if (cavity->g) require_nonnegative(*cavity->g, "baths.cavity.g");
    if (cavity->gamma_opt) require_nonnegative(*cavity->gamma_opt, "baths.cavity.Gamma_opt");
    require_positive(cavity->kappa, "baths.cavity.kappa");
  }
  if (thermal) {
    require_nonnegative(thermal->gamma_m_n_th, "baths.thermal.Gamma_m_n_th");
    require_positive(thermal->gamma_m, "baths.thermal.Gamma_m");
  }
  if (ohmic && thermal) {
    throw ConfigError("baths", "ohmic and thermal both describe the mechanical bath; pick one");
  }
  if (tabulated && method != Method::kExact) {
    throw ConfigError("baths.tabulated", "tabulated baths require method exact");
  }
  if (tabulated && tabulated->cross_path && (cavity || thermal)) {
    throw ConfigError("baths.tabulated.cross_path",
                      "cross-correlated baths cannot be combined with normal-mode baths");
  }
  if (system.n_th > 0.0 && (ohmic || cavity || thermal || tabulated)) {
    throw ConfigError("system.n_th", "only applies without baths; set the bath temperature");
  }
  try {
    quadrature.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("quadrature", e.what());
  }
  for (std::size_t i = 0; i < axes.size(); ++i) {
    const std::string where = "sweep[" + std::to_string(i) + "]";
    const auto& a = axes[i];
    if (!is_parameter(a.param)) {
      throw ConfigError(where + ".param", "unknown parameter '" + a.param + "'");
    }
    if (a.count < 2) throw ConfigError(where + ".count", "must be >= 2");
    if (a.scale == AxisScale::kLog && !(a.min > 0.0 && a.max > 0.0)) {
      throw ConfigError(where, "log axes need min > 0 and max > 0");
    }
    for (std::size_t k = 0; k < i; ++k) {
      if (axes[k].param == a.param) throw ConfigError(where + ".param", "duplicate axis");
    }
    RunConfig probe = *this;
    probe.axes.clear();
    try {
      probe.set_parameter(a.param, a.min);
    } catch (const ConfigError& e) {
      throw ConfigError(where + ".param", e.what());
    }
  }
  if (!(gmin.g_lo >= 0.0)) throw ConfigError("gmin.G_lo", "must be >= 0");
  if (!(gmin.g_hi > gmin.g_lo)) throw ConfigError("gmin.G_hi", "must exceed G_lo");
  require_positive(gmin.g_tol, "gmin.G_tol");
  require_positive(gmin.en_tol, "gmin.en_tol");
  if (gmin.max_expansions < 0) throw ConfigError("gmin.max_expansions", "must be >= 0");
}

bool RunConfig::is_parameter(std::string_view name) {
  for (auto p : {"G", "k", "n_th", "T", "Gamma_m", "omega_c", "Gamma_opt", "g", "kappa",
                 "detuning", "Gamma_m_n_th"}) {
    if (name == p) return true;
  }
  return false;
}

void RunConfig::set_parameter(std::string_view name, double value) {
  const std::string n(name);
  auto need = [&](bool present, const char* bath) {
    if (!present) throw ConfigError(n, std::string("parameter needs a configured ") + bath + " bath");
  };
  if (n == "G") {
    system.coupling_rate = value;
    system.k.reset();
  } else if (n == "k") {
    system.k = value;
    system.coupling_rate.reset();
  } else if (n == "n_th") {
    if (ohmic) {
      ohmic->n_th = value;
      ohmic->temperature.reset();
    } else {
      system.n_th = value;
    }
  } else if (n == "T") {
    need(ohmic.has_value(), "ohmic");
    ohmic->temperature = value;
    ohmic->n_th.reset();
  } else if (n == "Gamma_m") {
    if (ohmic) {
      ohmic->gamma_m = value;
    } else {
      need(thermal.has_value(), "ohmic or thermal");
      thermal->gamma_m = value;
    }
  } else if (n == "omega_c") {
    need(ohmic.has_value(), "ohmic");
    ohmic->omega_c = value;
  } else if (n == "Gamma_opt") {
    need(cavity.has_value(), "cavity");
    cavity->gamma_opt = value;
    cavity->g.reset();
  } else if (n == "g") {
    need(cavity.has_value(), "cavity");
    cavity->g = value;
    cavity->gamma_opt.reset();
  } else if (n == "kappa") {
    need(cavity.has_value(), "cavity");
    cavity->kappa = value;
  } else if (n == "detuning") {
    need(cavity.has_value(), "cavity");
    cavity->detuning = value;
  } else if (n == "Gamma_m_n_th") {
    need(thermal.has_value(), "thermal");
    thermal->gamma_m_n_th = value;
  } else {
    throw ConfigError(n, "unknown parameter");
  }
}

double RunConfig::cavity_g() const {
  if (!cavity) return 0.0;
  if (cavity->g) return *cavity->g;
  return coupling_for_cooling_rate(cavity->gamma_opt.value_or(0.0), cavity->kappa);
}

double RunConfig::cavity_gamma_opt() const {
  if (!cavity) return 0.0;
  if (cavity->gamma_opt) return *cavity->gamma_opt;
  const double g = cavity->g.value_or(0.0);
  return 4.0 * g * g / cavity->kappa;
}

double RunConfig::ohmic_temperature() const {
  if (!ohmic) return 0.0;
  if (ohmic->temperature) return *ohmic->temperature;
  if (ohmic->n_th && *ohmic->n_th > 0.0) {
    return temperature_for_occupation(system.omega, *ohmic->n_th);
  }
  return 0.0;
}

RunConfig parse_config(const nlohmann::json& j) { return parse_impl(j, {}); }

RunConfig parse_config_text(std::string_view text, const std::filesystem::path& base_dir) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // Translate the byte offset into line and column.
    std::size_t line = 1, col = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ConfigError("line " + std::to_string(line) + ", column " + std::to_string(col),
                      "JSON syntax error");
  }
  return parse_impl(j, base_dir);
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path.string(), "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), path.parent_path());
}

}  // namespace qlangevin::cli
