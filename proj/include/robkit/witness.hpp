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
#include <map>
#include <optional>
#include <vector>

#include "robkit/freesets.hpp"
#include "robkit/qcore.hpp"
#include "robkit/robustness.hpp"

namespace robkit {

/// m-th elementary symmetric polynomial of the eigenvalues of `a`, computed
/// from traces of powers by Newton's recursion. S_0 = 1; m must not exceed
/// the dimension.
double elementary_symmetric_S(const HermitianMatrix& a, int m);

/// S_0 .. S_upto in one pass.
std::vector<double> elementary_symmetric_all(const CMatrix& a, int upto);

/// S_m((1+s)/s * eta - rho/s). `eta` may be any unit-trace Hermitian matrix.
double shifted_S(const DensityMatrix& rho, double s, const HermitianMatrix& eta,
                 int m);
double shifted_S(const DensityMatrix& rho, double s, const DensityMatrix& eta,
                 int m);

/// State test by nonnegativity of S_1 .. S_d (each >= -tol). The trace must
/// be one within tol.
bool is_state_byrd(const HermitianMatrix& a, double tol);

/// Operator W on m copies with tr[W eta^{(x)m}] = shifted_S(rho, s, eta, m)
/// for every state eta. Built by interpolating the degree-m Bloch polynomial
/// and mapping monomials to symmetrized products of Gell-Mann matrices; the
/// result is invariant under permutations of the copies.
HermitianMatrix build_multicopy_operator(const DensityMatrix& rho, double s,
                                         int m, const Limits& limits = {});

/// Two-copy qubit operator (|r|^2/s^2 - 1) I(x)I
///   + (1+s)/s^2 sum_j [(1+s) s_j(x)s_j - r_j (I(x)s_j + s_j(x)I)].
/// Its expectation on eta(x)eta is -4 * shifted_S(rho, s, eta, 2).
HermitianMatrix qubit_closed_form(const DensityMatrix& rho, double s);

/// tr[op eta^{(x)m}] where op acts on m copies.
double multicopy_expectation(const HermitianMatrix& op, const DensityMatrix& eta,
                             int m);

struct WitnessFamily {
  DensityMatrix rho;
  double s;
  std::map<int, HermitianMatrix> members;  // m = 2..d
};

WitnessFamily build_witness_family(const DensityMatrix& rho, double s,
                                   const Limits& limits = {});

struct DeltaEstimate {
  double delta;    // estimate of -sup_{sigma in F} min_m shifted_S(sigma)
  std::map<int, double> deltas;
  bool exact;      // true when the supremum was computed exactly (d = 2)
  int evaluated;   // free states evaluated
  std::optional<DensityMatrix> maximizer;  // best free state found
};

inline constexpr double kDefaultDeltaFraction = 0.5;

/// Uniform shifts Delta_m = fraction * delta. Throws kNotApplicable when the
/// estimated delta is not positive (s is at or above the robustness, or the
/// search was too coarse).
DeltaEstimate compute_deltas(const WitnessFamily& base, const FreeSet& set,
                             int n_samples, std::uint64_t seed,
                             double fraction = kDefaultDeltaFraction);

struct ShiftedWitnessFamily {
  WitnessFamily base;
  double c;
  std::map<int, double> deltas;
  std::map<int, HermitianMatrix> members;  // -C (W_m + Delta_m I)
};

ShiftedWitnessFamily shift_family(const WitnessFamily& base,
                                  const std::map<int, double>& deltas, double c);

/// max_m tr[W~_m eta^{(x)m}].
double max_expectation(const ShiftedWitnessFamily& family,
                       const DensityMatrix& eta);

/// True iff every member has negative expectation on eta.
bool detect(const ShiftedWitnessFamily& family, const DensityMatrix& eta);

/// V + (tr[rho^2] - eps) I(x)I - 2 rho(x)I; expectation tr[(rho - eta)^2] - eps.
HermitianMatrix swap_witness(const DensityMatrix& rho, double eps);

struct BoundaryReport {
  double robustness = 0.0;
  double zeta = 0.0;
  double s_below = 0.0;
  double s_above = 0.0;
  double delta_below = 0.0;     // separation margin of the family below R
  double rho_value = 0.0;       // max_m tr[W~ rho^m] below R (must be < 0)
  double min_free_value = 0.0;  // min over checked free states of max_m (>= 0)
  int free_checked = 0;
  bool below_valid = false;
  double above_min_S = 0.0;     // min_m S_m at s_above on the certificate state
  bool above_invalidated = false;
  bool heuristic = false;

  bool passed() const { return below_valid && above_invalidated; }
};

/// Builds families just below and just above R_F(rho) and checks that the
/// lower one separates rho from sampled free states while the upper one is
/// defeated by the optimal free state of the robustness certificate.
BoundaryReport boundary_check(const DensityMatrix& rho,
                              const FreeSet& set, double zeta = 0.02,
                              int n_samples = 1000,
                              std::uint64_t seed = 1,
                              const RobustnessOptions& opts = {},
                              const Limits& limits = {});

}  // namespace robkit
