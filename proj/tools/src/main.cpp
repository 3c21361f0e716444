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

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qlangevin/cli/config.hpp"
#include "qlangevin/cli/runner.hpp"
#include "qlangevin/cli/validate.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitSolver = 2;
constexpr int kExitValidation = 3;

using qlangevin::cli::ConfigError;
using qlangevin::cli::RunConfig;

struct Options {
  std::string config_path;
  std::string method;
  std::string out;
  int workers = 1;
  std::optional<double> rel_tol;
  bool flip_ohmic = false;
};

RunConfig load(const Options& o) {
  if (o.config_path.empty()) throw ConfigError("--config", "a config file is required");
  RunConfig c = qlangevin::cli::load_config(o.config_path);
  if (!o.method.empty()) {
    try {
      c.method = qlangevin::cli::parse_method(o.method);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("--method", e.what());
    }
  }
  if (o.rel_tol) c.quadrature.rel_tol = *o.rel_tol;
  c.validate();
  return c;
}

template <class Write>
void emit(const Options& o, Write&& write) {
  if (o.out.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream file(o.out, std::ios::binary);
  if (!file) throw ConfigError("--out", "cannot open " + o.out);
  write(file);
}

int cmd_point(const Options& o) {
  const RunConfig c = load(o);
  const auto r = qlangevin::cli::evaluate_point(c);
  emit(o, [&](std::ostream& out) { out << qlangevin::cli::point_report_json(c, r); });
  for (const auto& w : r.warnings) std::cerr << "warning: " << w << '\n';
  return kExitOk;
}

int cmd_sweep(const Options& o) {
  const RunConfig c = load(o);
  if (c.axes.empty() || c.axes.size() > 2) {
    throw ConfigError("sweep", "sweep needs 1 or 2 axes");
  }
  const auto rows = qlangevin::cli::run_sweep(c, o.workers);
  emit(o, [&](std::ostream& out) { qlangevin::cli::write_sweep_csv(out, c, rows); });
  return kExitOk;
}

int cmd_gmin(const Options& o) {
  const RunConfig c = load(o);
  if (c.axes.size() > 2) throw ConfigError("sweep", "gmin takes at most 2 axes");
  const auto rows = qlangevin::cli::run_gmin_sweep(c, o.workers);
  emit(o, [&](std::ostream& out) { qlangevin::cli::write_boundary_csv(out, c, rows); });
  return kExitOk;
}

int cmd_validate(const Options& o) {
  qlangevin::cli::ValidationOptions v;
  if (o.rel_tol) v.rel_tol = *o.rel_tol;
  if (!(v.rel_tol > 0.0 && v.rel_tol <= 1e-2)) {
    throw ConfigError("--rel-tol", "must lie in (0, 1e-2]");
  }
  v.flip_ohmic_response = o.flip_ohmic;
  const auto results = qlangevin::cli::run_validation(v);
  emit(o, [&](std::ostream& out) { qlangevin::cli::print_validation_table(out, results); });
  return qlangevin::cli::validation_passed(results) ? kExitOk : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steady-state entanglement of two oscillators coupled to quantum baths"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--config", o.config_path, "JSON run configuration");
  app.add_option("--method", o.method, "Override the configured method")
      ->check(CLI::IsMember({"exact", "lindblad", "closed-form"}));
  app.add_option("--out", o.out, "Output file (default: stdout)");
  app.add_option("--workers", o.workers, "Worker threads for sweeps (0: all cores)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--rel-tol", o.rel_tol, "Override the quadrature tolerance");

  auto* point = app.add_subcommand("point", "Evaluate one configuration");
  auto* sweep = app.add_subcommand("sweep", "Evaluate a 1-D or 2-D parameter grid");
  auto* gmin = app.add_subcommand("gmin", "Find the entanglement threshold G_min");
  auto* validate = app.add_subcommand("validate", "Run the oracle and invariant battery");
  validate->add_flag("--flip-ohmic-response", o.flip_ohmic,
                     "Fault injection: flip the Ohmic response sign");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*point) return cmd_point(o);
    if (*sweep) return cmd_sweep(o);
    if (*gmin) return cmd_gmin(o);
    if (*validate) return cmd_validate(o);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return kExitSolver;
  }
  return kExitConfig;
}
