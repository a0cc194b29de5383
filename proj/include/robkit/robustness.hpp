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

#include <optional>
#include <string>
#include <vector>

#include "robkit/freesets.hpp"
#include "robkit/qcore.hpp"

namespace robkit {

struct RobustnessOptions {
  double s_tol = 1e-8;              // absolute bisection width on s
  double feasibility_slack = 1e-9;  // accept (1+s) sigma - rho >= -slack * I
  double s_cap = 1e6;               // doubling search gives up above this
  double gap_tol = 1e-6;            // allowed primal/dual mismatch
  double membership_tol = kMembershipTol;
};

/// Primal and dual proof of the robustness of a state against one convex
/// subset. For finite values (rho + value * tau) / (1 + value) == sigma and
/// tr[dual_x rho] - 1 is a lower bound on value.
struct RobustnessCertificate {
  double value;  // +inf when the doubling search exceeds s_cap
  DensityMatrix sigma;
  std::optional<DensityMatrix> tau;
  HermitianMatrix dual_x;
  std::string subset_label;
  double gap;
  double dual_value;  // tr[dual_x rho] - 1

  bool finite() const noexcept;
};

struct FeasibilityResult {
  bool feasible;
  std::optional<DensityMatrix> witness_sigma;
  RVector weights;  // over the subset's extreme points
  double margin;    // best lambda_min((1+s) sigma - rho) found
};

/// Decides whether some sigma in the subset satisfies (1+s) sigma >= rho, by
/// maximizing lambda_min((1+s) sum_i c_i w_i - rho) over the weight simplex.
FeasibilityResult feasibility_step(const DensityMatrix& rho,
                                   const ConvexFreeSet& set, double s,
                                   const RobustnessOptions& opts = {});

struct DualSolution {
  HermitianMatrix x;
  double objective;    // tr[x rho]
  double upper_bound;  // objective + barrier duality gap
};

/// Maximizes tr[X rho] over {X >= 0 : tr[X w] <= 1 for all extreme points w}.
/// Requires finite robustness. Throws kCertificateQuality when the solver
/// cannot certify its own optimality gap.
DualSolution solve_dual(const DensityMatrix& rho, const ConvexFreeSet& set);

/// The optimal dual operator X of solve_dual.
HermitianMatrix dual_witness(const DensityMatrix& rho, const ConvexFreeSet& set);

RobustnessCertificate robustness_convex(const DensityMatrix& rho,
                                        const ConvexFreeSet& set,
                                        const RobustnessOptions& opts = {});

struct UnionRobustness {
  double value;
  std::size_t best_index;
  std::vector<RobustnessCertificate> per_subset;

  const RobustnessCertificate& best() const { return per_subset[best_index]; }
};

/// Minimum over the subsets; ties go to the earliest subset.
UnionRobustness robustness_union(const DensityMatrix& rho, const FreeSet& set,
                                 const RobustnessOptions& opts = {});

}  // namespace robkit
