// Copyright 2026 The robkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "robkit/discrimination.hpp"
#include "robkit/qcore.hpp"

namespace robkit::oracle {

/// Eigenvalue test: lambda_min >= -tol.
bool eigen_is_state(const HermitianMatrix& a, double tol);

/// Multi-copy operator built from the antisymmetrizer instead of
/// interpolation: (L^dagger)^{(x)m}(P_anti) with L(eta) = ((1+s)eta - tr[eta] rho)/s.
HermitianMatrix multicopy_by_permutations(const DensityMatrix& rho, double s, int m);

/// Best two-outcome qubit discrimination value max_M tr[M q1] + tr[(I-M) q2],
/// found by a grid over parameterized POVMs plus simplex refinement.
double brute_force_binary(const CMatrix& q1, const CMatrix& q2);

struct CheckResult {
  int criterion;
  std::string name;
  bool passed;
  double measured;
  double tolerance;
  std::string detail;
};

struct SuiteConfig {
  std::uint64_t seed = 1;
  /// Replaces the numeric tolerance of every check when set. Count-based
  /// checks (zero violations) are not affected.
  std::optional<double> tol;
};

const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);

/// Runs the named suite; checks appear in criterion order.
std::vector<CheckResult> run_suite(const std::string& suite, const SuiteConfig& cfg);

}  // namespace robkit::oracle
