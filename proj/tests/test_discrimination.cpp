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
#include <variant>

#include "doctest.h"
#include "robkit/discrimination.hpp"
#include "robkit/error.hpp"
#include "robkit/robustness.hpp"

using namespace robkit;

namespace {

DensityMatrix qubit(double x, double y, double z) {
  BlochVector b{2, RVector(3)};
  b.coords << x, y, z;
  return DensityMatrix(state_from_bloch(b));
}

FreeSet z_and_x() {
  return FreeSet({ConvexFreeSet::incoherent(2, "z"),
                  ConvexFreeSet::incoherent(qubit_axis_basis(0), "x")});
}

}  // namespace

TEST_CASE("POVM validation") {
  const HermitianMatrix half = HermitianMatrix::identity(2) * 0.5;
  CHECK_NOTHROW(POVM({half, half}));
  CHECK_THROWS_AS(POVM({half}), Error);
  RVector diag(2);
  diag << 1.5, 0.5;
  RVector rest(2);
  rest << -0.5, 0.5;
  CHECK_THROWS_AS(POVM({HermitianMatrix::diagonal(diag), HermitianMatrix::diagonal(rest)}),
                  Error);
}

TEST_CASE("priors must form a distribution") {
  const Channel c = Channel::constant(2, DensityMatrix::maximally_mixed(2));
  CHECK_THROWS_AS(ChannelEnsemble({0.5, 0.6}, {c, c}), Error);
}

TEST_CASE("flag states") {
  const FlagState f(5, {{3, 0.5}, {1, 0.2}}, 0.06);
  CHECK(f.probability(3) == doctest::Approx(0.56));
  CHECK(f.probability(0) == doctest::Approx(0.06));
  CHECK(f.dense().matrix().trace().real() == doctest::Approx(1.0));
  CHECK(f.entries().front().first == 1);
  CHECK_THROWS_AS(FlagState(3, {{0, 0.9}}, 0.1), Error);
}

TEST_CASE("Helstrom value for two constant channels") {
  const DensityMatrix a = qubit(0, 0, 1);
  const DensityMatrix b = qubit(1, 0, 0);
  const ChannelEnsemble ens({0.4, 0.6}, {Channel::constant(2, a), Channel::constant(2, b)});
  const auto opt = optimal_measurement(ens, DensityMatrix::maximally_mixed(2));
  const HermitianMatrix diff = a.hermitian() * 0.4 - b.hermitian() * 0.6;
  CHECK(opt.exact);
  CHECK(opt.value == doctest::Approx(0.5 * (1.0 + diff.trace_norm())));
  CHECK(success_probability(ens, opt.measurement, DensityMatrix::maximally_mixed(2)) ==
        doctest::Approx(opt.value));
}

TEST_CASE("induced effect reproduces the success probability") {
  Rng rng(5);
  const POVM in = random_povm(2, 2, rng);
  const Channel c1 = Channel::measure_prepare(in.elements(), {qubit(0, 0, 1), qubit(0, 0, -1)});
  const Channel c2 = Channel::constant(2, DensityMatrix::maximally_mixed(2));
  const ChannelEnsemble ens({0.5, 0.5}, {c1, c2});
  const Measurement m = random_povm(2, 2, rng);
  const DensityMatrix rho = random_density(2, 2, rng);
  const HermitianMatrix g = induced_effect(ens, m);
  CHECK(g.inner(rho.hermitian()) == doctest::Approx(success_probability(ens, m, rho)));
}

TEST_CASE("achieving ensemble closed form") {
  const DensityMatrix rho = qubit(0.6, 0.1, 0.2);
  const auto cert = robustness_convex(rho, ConvexFreeSet::incoherent(2, "z"));
  const int n = 50;
  const ChannelEnsemble ens = achieving_ensemble(cert.dual_x, n);
  CHECK(ens.size() == static_cast<std::size_t>(n));
  CHECK(ens.flag_outputs());
  const double a = cert.dual_x.inner(rho.hermitian()) / cert.dual_x.operator_norm();
  const double expect = (1.0 - 1.0 / n) * a + 1.0 / n;
  CHECK(success_probability(ens, FlagDecision::identity(n), rho) == doctest::Approx(expect));
  CHECK(optimal_measurement(ens, rho).value == doctest::Approx(expect));
}

TEST_CASE("worst-case advantage approaches 1 + R") {
  const DensityMatrix plus = qubit(1, 0, 0);
  const FreeSet z({ConvexFreeSet::incoherent(2, "z")});
  const auto adv = worst_case_advantage(plus, z, 10000);
  CHECK(adv.target == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(adv.passed());

  const auto both = worst_case_advantage(qubit(0.5, 0.3, 0.6), z_and_x(), 10000);
  CHECK(both.per_subset.size() == 2);
  CHECK(both.passed());
}

TEST_CASE("qualitative advantage over every sampled free state") {
  const auto rep = verify_qualitative_advantage(qubit(0.5, 0.3, 0.6), z_and_x(), 300, 1);
  CHECK(rep.min_ratio > 1.0);
  CHECK(rep.passed());
}

TEST_CASE("free states give no qualitative advantage") {
  CHECK_THROWS_AS(verify_qualitative_advantage(qubit(0, 0, 0.3), z_and_x(), 100, 1), Error);
}
