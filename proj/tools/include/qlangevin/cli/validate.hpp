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

// Oracle and invariant battery run by `qlangevin validate`.

#include <iosfwd>
#include <string>
#include <vector>

namespace qlangevin::cli {

struct ValidationOptions {
  /// Quadrature tolerance for exact-solver checks. At 1e-2 or looser,
  /// checks whose outcome depends on it report WARN instead of FAIL.
  double rel_tol = 1e-6;
  /// Fault injection: flips the sign of the Ohmic response.
  bool flip_ohmic_response = false;
};

enum class CheckStatus { kPass, kWarn, kFail };

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::kPass;
  double value = 0.0;      ///< measured deviation
  double tolerance = 0.0;  ///< allowed deviation
  std::string detail;
};

std::vector<CheckResult> run_validation(const ValidationOptions& options);

void print_validation_table(std::ostream& out, const std::vector<CheckResult>& results);

/// True if no check failed.
bool validation_passed(const std::vector<CheckResult>& results);

}  // namespace qlangevin::cli
