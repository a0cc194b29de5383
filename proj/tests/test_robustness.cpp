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
#include "robkit/robustness.hpp"

using namespace robkit;

namespace {

DensityMatrix qubit(double x, double y, double z) {
  BlochVector b{2, RVector(3)};
  b.coords << x, y, z;
  return DensityMatrix(state_from_bloch(b));
}

}  // namespace

TEST_CASE("qubit robustness of coherence equals the l1 norm") {
  const auto z = ConvexFreeSet::incoherent(2, "z");
  Rng rng(21);
  for (int t = 0; t < 8; ++t) {
    const DensityMatrix rho = random_density(2, 1 + t % 2, rng);
    const auto cert = robustness_convex(rho, z);
    CHECK(cert.value == doctest::Approx(2.0 * std::abs(rho.matrix()(0, 1))).epsilon(1e-6));
    CHECK(cert.gap <= 1e-6);
  }
}

TEST_CASE("plus state and free states") {
  const auto z = ConvexFreeSet::incoherent(2, "z");
  CHECK(robustness_convex(qubit(1, 0, 0), z).value == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(robustness_convex(qubit(0, 0, 0.4), z).value == doctest::Approx(0.0));
}

TEST_CASE("certificate reproduces the optimal decomposition") {
  const auto z = ConvexFreeSet::incoherent(2, "z");
  const DensityMatrix rho = qubit(0.5, 0.3, 0.6);
  const auto c = robustness_convex(rho, z);
  REQUIRE(c.finite());
  REQUIRE(c.tau.has_value());
  const CMatrix lhs = (rho.matrix() + c.value * c.tau->matrix()) / (1.0 + c.value);
  CHECK((lhs - c.sigma.matrix()).norm() < 1e-6);
  CHECK(membership(c.sigma, z, 1e-6));
  CHECK(c.dual_x.min_eigenvalue() >= -1e-9);
  CHECK(std::abs(c.dual_value - c.value) <= 1e-6);
}

TEST_CASE("union robustness is the subset minimum") {
  const FreeSet set({ConvexFreeSet::incoherent(2, "z"),
                     ConvexFreeSet::incoherent(qubit_axis_basis(0), "x")});
  const DensityMatrix rho = qubit(0.5, 0.3, 0.6);
  const auto u = robustness_union(rho, set);
  REQUIRE(u.per_subset.size() == 2);
  CHECK(u.value == doctest::Approx(std::sqrt(0.25 + 0.09)).epsilon(1e-6));
  CHECK(u.per_subset[1].value == doctest::Approx(std::sqrt(0.09 + 0.36)).epsilon(1e-6));
  CHECK(u.best().subset_label == "z");
}

TEST_CASE("state outside a polytope's span has infinite robustness") {
  const auto p = ConvexFreeSet::polytope({DensityMatrix::basis_state(2, 0)}, "pt");
  const auto c = robustness_convex(qubit(0, 0, -1), p);
  CHECK_FALSE(c.finite());
}

TEST_CASE("qutrit maximally coherent state") {
  const auto z = ConvexFreeSet::incoherent(3, "z");
  CVector psi = CVector::Constant(3, 1.0 / std::sqrt(3.0));
  const auto c = robustness_convex(DensityMatrix::pure(psi), z);
  // l1 coherence of a pure state with equal amplitudes is d - 1
  CHECK(c.value == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("dimension mismatch") {
  CHECK_THROWS_AS(robustness_convex(qubit(0, 0, 1), ConvexFreeSet::incoherent(3, "z")), Error);
}
