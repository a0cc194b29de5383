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

#include <cmath>

#include "doctest.h"
#include "robkit/error.hpp"
#include "robkit/freesets.hpp"
#include "robkit/witness.hpp"

using namespace robkit;

namespace {

DensityMatrix qubit(double x, double y, double z) {
  BlochVector b{2, RVector(3)};
  b.coords << x, y, z;
  return DensityMatrix(state_from_bloch(b));
}

double e2_from_eigenvalues(const HermitianMatrix& a) {
  const RVector ev = eig_hermitian(a).values;
  double s = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    for (Eigen::Index j = i + 1; j < ev.size(); ++j) s += ev(i) * ev(j);
  return s;
}

}  // namespace

TEST_CASE("S_m from power sums matches eigenvalues") {
  Rng rng(4);
  for (int d : {2, 3, 4}) {
    const HermitianMatrix a = random_hermitian(d, rng);
    CHECK(elementary_symmetric_S(a, 1) == doctest::Approx(a.trace()));
    CHECK(elementary_symmetric_S(a, 2) == doctest::Approx(e2_from_eigenvalues(a)));
    const double det = eig_hermitian(a).values.prod();
    CHECK(elementary_symmetric_S(a, d) == doctest::Approx(det));
  }
}

TEST_CASE("eigenvalue-free state test") {
  CHECK(is_state_byrd(DensityMatrix::maximally_mixed(3).hermitian(), 1e-12));
  RVector diag(3);
  diag << 0.7, 0.4, -0.1;
  CHECK_FALSE(is_state_byrd(HermitianMatrix::diagonal(diag), 1e-12));
}

TEST_CASE("multi-copy operator reproduces shifted S") {
  Rng rng(8);
  for (int d : {2, 3}) {
    const DensityMatrix rho = random_density(d, d, rng);
    const double s = 0.3;
    for (int m = 2; m <= d; ++m) {
      const HermitianMatrix w = build_multicopy_operator(rho, s, m);
      for (int t = 0; t < 5; ++t) {
        const DensityMatrix eta = random_density(d, d, rng);
        CHECK(multicopy_expectation(w, eta, m) ==
              doctest::Approx(shifted_S(rho, s, eta, m)).epsilon(1e-8));
      }
    }
  }
}

TEST_CASE("qubit closed form agrees with the general build") {
  const DensityMatrix rho = qubit(0.4, -0.2, 0.5);
  const double s = 0.35;
  const HermitianMatrix w = build_multicopy_operator(rho, s, 2);
  const HermitianMatrix q = qubit_closed_form(rho, s);
  CHECK((w.matrix() + 0.25 * q.matrix()).norm() < 1e-9);
}

TEST_CASE("build respects the operator cap") {
  const DensityMatrix rho = DensityMatrix::maximally_mixed(3);
  Limits tight;
  tight.operator_cap = 8;
  CHECK_THROWS_AS(build_multicopy_operator(rho, 0.2, 2, tight), Error);
}

TEST_CASE("SWAP witness expectation") {
  Rng rng(12);
  const DensityMatrix rho = random_density(3, 3, rng);
  const DensityMatrix eta = random_density(3, 2, rng);
  const double eps = 0.05;
  const HermitianMatrix w = swap_witness(rho, eps);
  const double expect = hs_distance_sq(rho.hermitian(), eta.hermitian()) - eps;
  CHECK(multicopy_expectation(w, eta, 2) == doctest::Approx(expect));
}

TEST_CASE("shifted family detects rho and spares free states") {
  const FreeSet set({ConvexFreeSet::incoherent(2, "z")});
  const DensityMatrix rho = qubit(0.8, 0.0, 0.3);
  const double r = 2.0 * std::abs(rho.matrix()(0, 1));
  const WitnessFamily base = build_witness_family(rho, 0.9 * r);
  const DeltaEstimate est = compute_deltas(base, set, 300, 1);
  CHECK(est.delta > 0.0);
  const ShiftedWitnessFamily fam = shift_family(base, est.deltas, 1.0);
  CHECK(detect(fam, rho));
  for (const auto& smp : sample_free(set, 200, 2)) {
    CHECK(max_expectation(fam, smp.state) >= -1e-12);
  }
}

TEST_CASE("free state has nothing to witness") {
  const FreeSet set({ConvexFreeSet::incoherent(2, "z")});
  const WitnessFamily base = build_witness_family(qubit(0, 0, 0.5), 0.1);
  try {
    compute_deltas(base, set, 100, 1);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kNotApplicable);
  }
}

TEST_CASE("witness validity switches at the robustness") {
  const FreeSet set({ConvexFreeSet::incoherent(2, "z")});
  const BoundaryReport rep = boundary_check(qubit(0.6, 0.2, -0.3), set, 0.02, 400, 3);
  CHECK(rep.below_valid);
  CHECK(rep.above_invalidated);
  CHECK(rep.passed());
}
