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
#include <string>
#include <vector>

#include "robkit/qcore.hpp"

namespace robkit {

enum class SubsetKind { kPolytope, kIncoherent };

/// One closed convex piece of a free set: either the convex hull of finitely
/// many states, or the states diagonal in a fixed orthonormal basis
/// {U diag(p) U^dagger}.
class ConvexFreeSet {
 public:
  static ConvexFreeSet polytope(std::vector<DensityMatrix> vertices,
                                std::string label);
  /// Columns of `basis` are the basis vectors; must be unitary within 1e-10.
  static ConvexFreeSet incoherent(const CMatrix& basis, std::string label);
  /// Incoherent states of the computational basis.
  static ConvexFreeSet incoherent(int d, std::string label);

  int dim() const noexcept { return dim_; }
  SubsetKind kind() const noexcept { return kind_; }
  const std::string& label() const noexcept { return label_; }
  /// Vertices of a polytope, or the basis projectors of an incoherent set.
  const std::vector<DensityMatrix>& extreme_points() const noexcept {
    return extreme_;
  }
  /// Basis unitary of an incoherent set (identity for polytopes).
  const CMatrix& basis() const noexcept { return basis_; }

  /// sum_i w_i * extreme_points()[i]; w must be a probability vector.
  DensityMatrix mixture(const RVector& weights) const;

 private:
  ConvexFreeSet() = default;
  int dim_ = 0;
  SubsetKind kind_ = SubsetKind::kPolytope;
  std::string label_;
  std::vector<DensityMatrix> extreme_;
  CMatrix basis_;
};

/// Finite union of convex pieces of equal dimension. The union itself is not
/// assumed convex.
class FreeSet {
 public:
  explicit FreeSet(std::vector<ConvexFreeSet> subsets);

  int dim() const noexcept { return dim_; }
  const std::vector<ConvexFreeSet>& subsets() const noexcept { return subsets_; }

 private:
  int dim_;
  std::vector<ConvexFreeSet> subsets_;
};

inline constexpr double kMembershipTol = 1e-8;

bool membership(const DensityMatrix& sigma, const ConvexFreeSet& set,
                double tol = kMembershipTol);

struct LinearMax {
  double value;
  DensityMatrix argmax;
};

/// Exact max of tr[X sigma] over the set (attained at an extreme point).
LinearMax max_linear(const HermitianMatrix& x, const ConvexFreeSet& set);

std::vector<DensityMatrix> extreme_points(const ConvexFreeSet& set);

struct FreeSample {
  DensityMatrix state;
  std::size_t subset;
  RVector weights;  // over the subset's extreme points
};

/// n states drawn by picking a subset uniformly, then a Dirichlet(1,...,1)
/// mixture of its extreme points.
std::vector<FreeSample> sample_free(const FreeSet& set, int n,
                                    std::uint64_t seed);

struct Projection {
  RVector weights;  // over extreme_points()
  DensityMatrix point;
  double distance_sq;  // tr[(point - target)^2]
};

/// Hilbert-Schmidt nearest point of the set to an arbitrary Hermitian target.
Projection nearest_point(const ConvexFreeSet& set, const HermitianMatrix& target);

/// Eigenbasis of the qubit Pauli operator along `axis` (0 = x, 1 = y, 2 = z),
/// ordered +1 then -1.
CMatrix qubit_axis_basis(int axis);

}  // namespace robkit
