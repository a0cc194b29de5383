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
#include "robkit/qcore.hpp"

using namespace robkit;

namespace {

ErrorKind kind_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected robkit::Error");
  return ErrorKind::kNumeric;
}

}  // namespace

TEST_CASE("density matrix validation") {
  CMatrix m(2, 2);
  m << 0.5, 0.5, 0.5, 0.5;
  CHECK(DensityMatrix(m).purity() == doctest::Approx(1.0));

  CMatrix neg(2, 2);
  neg << 1.2, 0, 0, -0.2;
  CHECK(kind_of([&] { DensityMatrix{neg}; }) == ErrorKind::kInvalidArgument);

  CMatrix trace2 = CMatrix::Identity(2, 2);
  CHECK(kind_of([&] { DensityMatrix{trace2}; }) == ErrorKind::kInvalidArgument);

  CMatrix nonherm(2, 2);
  nonherm << 0.5, 0.3, 0.1, 0.5;
  CHECK_THROWS_AS(HermitianMatrix{nonherm}, Error);
}

TEST_CASE("qubit Bloch coordinates follow x, y, z order") {
  BlochVector x{2, RVector::Zero(3)};
  x.coords << 1.0, 0.0, 0.0;
  const DensityMatrix plus(state_from_bloch(x));
  CHECK(plus.matrix()(0, 1).real() == doctest::Approx(0.5));

  x.coords << 0.0, 0.0, 1.0;
  const DensityMatrix zero(state_from_bloch(x));
  CHECK(zero.matrix()(0, 0).real() == doctest::Approx(1.0));
}

TEST_CASE("Bloch round trip in d = 3 and 4") {
  Rng rng(7);
  for (int d : {3, 4}) {
    for (int t = 0; t < 10; ++t) {
      const DensityMatrix rho = random_density(d, d, rng);
      const BlochVector x = bloch_from_state(rho);
      CHECK(x.coords.size() == d * d - 1);
      const HermitianMatrix back = state_from_bloch(x);
      CHECK((back.matrix() - rho.matrix()).norm() < 1e-12);
      // pure states sit on the unit sphere under this scaling
    }
    const DensityMatrix pure = DensityMatrix::basis_state(d, 0);
    CHECK(bloch_from_state(pure).coords.norm() == doctest::Approx(1.0));
  }
}

TEST_CASE("swap operator and tensor powers") {
  const HermitianMatrix v = swap_operator(3);
  CHECK((v.matrix() * v.matrix() - CMatrix::Identity(9, 9)).norm() < 1e-14);
  CHECK(v.trace() == doctest::Approx(3.0));

  Rng rng(3);
  const DensityMatrix a = random_density(2, 2, rng);
  const HermitianMatrix a3 = tensor_power(a.hermitian(), 3);
  CHECK(a3.dim() == 8);
  CHECK(a3.trace() == doctest::Approx(1.0));
  CHECK(kind_of([&] { tensor_power(a.hermitian(), 9, 256); }) == ErrorKind::kSizeCap);
}

TEST_CASE("copy symmetrization is idempotent") {
  Rng rng(11);
  const HermitianMatrix h = random_hermitian(8, rng);
  const CMatrix s1 = symmetrize_copies(h.matrix(), 2, 3);
  const CMatrix s2 = symmetrize_copies(s1, 2, 3);
  CHECK((s1 - s2).norm() < 1e-12);
}

TEST_CASE("Hermitian norms and eigenvalues") {
  RVector diag(3);
  diag << 2.0, -1.0, 0.5;
  const HermitianMatrix h = HermitianMatrix::diagonal(diag);
  CHECK(h.min_eigenvalue() == doctest::Approx(-1.0));
  CHECK(h.max_eigenvalue() == doctest::Approx(2.0));
  CHECK(h.operator_norm() == doctest::Approx(2.0));
  CHECK(h.trace_norm() == doctest::Approx(3.5));
}
