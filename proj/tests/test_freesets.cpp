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

#include "doctest.h"
#include "robkit/error.hpp"
#include "robkit/freesets.hpp"

using namespace robkit;

TEST_CASE("incoherent membership") {
  const auto z = ConvexFreeSet::incoherent(2, "z");
  CHECK(membership(DensityMatrix::maximally_mixed(2), z));
  CHECK(membership(DensityMatrix::basis_state(2, 1), z));
  CMatrix plus(2, 2);
  plus << 0.5, 0.5, 0.5, 0.5;
  CHECK_FALSE(membership(DensityMatrix(plus), z));

  const auto x = ConvexFreeSet::incoherent(qubit_axis_basis(0), "x");
  CHECK(membership(DensityMatrix(plus), x));
}

TEST_CASE("polytope membership and linear maximization") {
  CMatrix plus(2, 2);
  plus << 0.5, 0.5, 0.5, 0.5;
  const auto poly = ConvexFreeSet::polytope(
      {DensityMatrix::basis_state(2, 0), DensityMatrix(plus)}, "p");
  CMatrix mid(2, 2);
  mid << 0.75, 0.25, 0.25, 0.25;
  CHECK(membership(DensityMatrix(mid), poly));
  CHECK_FALSE(membership(DensityMatrix::basis_state(2, 1), poly));

  CMatrix xop(2, 2);
  xop << 0, 1, 1, 0;
  const LinearMax lm = max_linear(HermitianMatrix(xop), poly);
  CHECK(lm.value == doctest::Approx(1.0));
}

TEST_CASE("nearest point projects onto the diagonal") {
  const auto z = ConvexFreeSet::incoherent(2, "z");
  CMatrix plus(2, 2);
  plus << 0.5, 0.5, 0.5, 0.5;
  const Projection p = nearest_point(z, HermitianMatrix(plus));
  CHECK(p.point.matrix()(0, 0).real() == doctest::Approx(0.5));
  CHECK(std::abs(p.point.matrix()(0, 1)) < 1e-12);
  CHECK(p.distance_sq == doctest::Approx(0.5));
}

TEST_CASE("free set dimension checks") {
  CHECK_THROWS_AS(FreeSet({ConvexFreeSet::incoherent(2, "a"), ConvexFreeSet::incoherent(3, "b")}),
                  Error);
  CHECK_THROWS_AS(FreeSet(std::vector<ConvexFreeSet>{}), Error);
}

TEST_CASE("free samples are members with matching weights") {
  const FreeSet set({ConvexFreeSet::incoherent(3, "z")});
  const auto samples = sample_free(set, 50, 5);
  REQUIRE(samples.size() == 50);
  for (const auto& s : samples) {
    CHECK(membership(s.state, set.subsets()[s.subset]));
    CHECK(s.weights.sum() == doctest::Approx(1.0));
  }
}
