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

#include "robkit/freesets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "linalg_detail.hpp"
#include "robkit/error.hpp"

namespace robkit {

namespace {

constexpr int kMaxEnumeratedVertices = 14;

void check_dims(int a, int b) {
  require(a == b, ErrorKind::kDimensionMismatch,
          "dimension mismatch: " + std::to_string(a) + " vs " +
              std::to_string(b));
}

double objective(const RMatrix& gram, const RVector& h, const RVector& c) {
  return c.dot(gram * c) - 2.0 * h.dot(c);
}

// min c'Gc - 2h'c over the simplex.
RVector simplex_qp(const RMatrix& gram, const RVector& h) {
  const auto n = static_cast<int>(h.size());
  if (n == 1) return RVector::Ones(1);
  if (n <= kMaxEnumeratedVertices) {
    RVector best;
    double best_val = std::numeric_limits<double>::infinity();
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      std::vector<int> idx;
      for (int i = 0; i < n; ++i)
        if (mask & (1u << i)) idx.push_back(i);
      const auto k = static_cast<Eigen::Index>(idx.size());
      RMatrix kkt = RMatrix::Zero(k + 1, k + 1);
      RVector rhs(k + 1);
      for (Eigen::Index a = 0; a < k; ++a) {
        for (Eigen::Index b = 0; b < k; ++b)
          kkt(a, b) = gram(idx[static_cast<std::size_t>(a)],
                           idx[static_cast<std::size_t>(b)]);
        kkt(a, k) = 1.0;
        kkt(k, a) = 1.0;
        rhs(a) = h(idx[static_cast<std::size_t>(a)]);
      }
      rhs(k) = 1.0;
      const RVector sol = kkt.completeOrthogonalDecomposition().solve(rhs);
      if ((kkt * sol - rhs).norm() > 1e-9) continue;
      if (sol.head(k).minCoeff() < -1e-13) continue;
      RVector c = RVector::Zero(n);
      for (Eigen::Index a = 0; a < k; ++a)
        c(idx[static_cast<std::size_t>(a)]) = std::max(0.0, sol(a));
      c /= c.sum();
      const double val = objective(gram, h, c);
      if (val < best_val) {
        best_val = val;
        best = c;
      }
    }
    return best;
  }
  // Accelerated projected gradient for larger vertex sets.
  const double lip = 2.0 * gram.operatorNorm();
  RVector c = RVector::Constant(n, 1.0 / n);
  RVector y = c;
  double t = 1.0;
  for (int it = 0; it < 20000; ++it) {
    const RVector grad = 2.0 * (gram * y - h);
    const RVector next = detail::project_to_simplex(y - grad / lip);
    const double tn = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    y = next + ((t - 1.0) / tn) * (next - c);
    if ((next - c).norm() < 1e-15) {
      c = next;
      break;
    }
    c = next;
    t = tn;
  }
  return c;
}

}  // namespace

ConvexFreeSet ConvexFreeSet::polytope(std::vector<DensityMatrix> vertices,
                                      std::string label) {
  require(!vertices.empty(), ErrorKind::kInvalidArgument,
          "polytope needs at least one vertex");
  const int d = vertices.front().dim();
  for (const auto& v : vertices) check_dims(v.dim(), d);
  ConvexFreeSet set;
  set.dim_ = d;
  set.kind_ = SubsetKind::kPolytope;
  set.label_ = std::move(label);
  set.extreme_ = std::move(vertices);
  set.basis_ = CMatrix::Identity(d, d);
  return set;
}

ConvexFreeSet ConvexFreeSet::incoherent(const CMatrix& basis,
                                        std::string label) {
  require(basis.rows() == basis.cols() && basis.rows() >= 2,
          ErrorKind::kInvalidDimension, "basis must be square with d >= 2");
  const auto d = static_cast<int>(basis.rows());
  const double err =
      (basis.adjoint() * basis - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
  require(err <= 1e-10, ErrorKind::kInvalidArgument,
          "basis matrix is not unitary (error " + std::to_string(err) + ")");
  ConvexFreeSet set;
  set.dim_ = d;
  set.kind_ = SubsetKind::kIncoherent;
  set.label_ = std::move(label);
  set.basis_ = basis;
  for (int k = 0; k < d; ++k)
    set.extreme_.push_back(DensityMatrix(HermitianMatrix::projector(basis.col(k))));
  return set;
}

ConvexFreeSet ConvexFreeSet::incoherent(int d, std::string label) {
  require(d >= 2, ErrorKind::kInvalidDimension, "dimension must be at least 2");
  return incoherent(CMatrix::Identity(d, d), std::move(label));
}

DensityMatrix ConvexFreeSet::mixture(const RVector& weights) const {
  require(weights.size() == static_cast<Eigen::Index>(extreme_.size()),
          ErrorKind::kDimensionMismatch, "weight count differs from vertex count");
  CMatrix m = CMatrix::Zero(dim_, dim_);
  for (std::size_t i = 0; i < extreme_.size(); ++i)
    m += weights(static_cast<Eigen::Index>(i)) * extreme_[i].matrix();
  return DensityMatrix(HermitianMatrix(m));
}

FreeSet::FreeSet(std::vector<ConvexFreeSet> subsets)
    : dim_(0), subsets_(std::move(subsets)) {
  require(!subsets_.empty(), ErrorKind::kInvalidArgument,
          "free set needs at least one convex subset");
  dim_ = subsets_.front().dim();
  for (const auto& s : subsets_) check_dims(s.dim(), dim_);
}

bool membership(const DensityMatrix& sigma, const ConvexFreeSet& set,
                double tol) {
  check_dims(sigma.dim(), set.dim());
  require(tol > 0.0, ErrorKind::kInvalidArgument, "tolerance must be positive");
  if (set.kind() == SubsetKind::kIncoherent) {
    CMatrix rotated = set.basis().adjoint() * sigma.matrix() * set.basis();
    rotated.diagonal().setZero();
    return rotated.norm() <= tol;
  }
  const auto& verts = set.extreme_points();
  const auto n = static_cast<Eigen::Index>(verts.size());
  const Eigen::Index d2 = static_cast<Eigen::Index>(set.dim()) * set.dim();
  RMatrix a(d2 + 1, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    a.col(i).head(d2) =
        detail::hermitian_coords(verts[static_cast<std::size_t>(i)].matrix());
    a(d2, i) = 1.0;
  }
  RVector b(d2 + 1);
  b.head(d2) = detail::hermitian_coords(sigma.matrix());
  b(d2) = 1.0;
  const detail::PhaseOneResult lp = detail::phase_one_simplex(a, b);
  const double residual = (a * lp.x - b).cwiseAbs().maxCoeff();
  return residual <= tol;
}

LinearMax max_linear(const HermitianMatrix& x, const ConvexFreeSet& set) {
  check_dims(x.dim(), set.dim());
  const auto& verts = set.extreme_points();
  std::size_t best = 0;
  double best_val = -std::numeric_limits<double>::infinity();
  if (set.kind() == SubsetKind::kIncoherent) {
    const CMatrix rotated = set.basis().adjoint() * x.matrix() * set.basis();
    for (std::size_t k = 0; k < verts.size(); ++k) {
      const double v = rotated(static_cast<Eigen::Index>(k),
                               static_cast<Eigen::Index>(k)).real();
      if (v > best_val) {
        best_val = v;
        best = k;
      }
    }
  } else {
    for (std::size_t k = 0; k < verts.size(); ++k) {
      const double v = x.inner(verts[k].hermitian());
      if (v > best_val) {
        best_val = v;
        best = k;
      }
    }
  }
  return LinearMax{best_val, verts[best]};
}

std::vector<DensityMatrix> extreme_points(const ConvexFreeSet& set) {
  return set.extreme_points();
}

std::vector<FreeSample> sample_free(const FreeSet& set, int n,
                                    std::uint64_t seed) {
  require(n >= 1, ErrorKind::kInvalidArgument, "sample count must be >= 1");
  Rng rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, set.subsets().size() - 1);
  std::exponential_distribution<double> expo(1.0);
  std::vector<FreeSample> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int s = 0; s < n; ++s) {
    const std::size_t k = pick(rng);
    const ConvexFreeSet& subset = set.subsets()[k];
    RVector w(static_cast<Eigen::Index>(subset.extreme_points().size()));
    for (Eigen::Index i = 0; i < w.size(); ++i) w(i) = expo(rng);
    w /= w.sum();
    out.push_back(FreeSample{subset.mixture(w), k, w});
  }
  return out;
}

Projection nearest_point(const ConvexFreeSet& set,
                         const HermitianMatrix& target) {
  check_dims(target.dim(), set.dim());
  const auto& verts = set.extreme_points();
  const auto n = static_cast<Eigen::Index>(verts.size());
  RVector c;
  if (set.kind() == SubsetKind::kIncoherent) {
    const CMatrix rotated = set.basis().adjoint() * target.matrix() * set.basis();
    c = detail::project_to_simplex(rotated.diagonal().real());
  } else {
    RMatrix gram(n, n);
    RVector h(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto& vi = verts[static_cast<std::size_t>(i)].hermitian();
      h(i) = vi.inner(target);
      for (Eigen::Index j = 0; j < n; ++j)
        gram(i, j) = vi.inner(verts[static_cast<std::size_t>(j)].hermitian());
    }
    c = simplex_qp(gram, h);
  }
  DensityMatrix point = set.mixture(c);
  const double dist = hs_distance_sq(point.hermitian(), target);
  return Projection{c, std::move(point), dist};
}

CMatrix qubit_axis_basis(int axis) {
  require(axis >= 0 && axis <= 2, ErrorKind::kInvalidArgument,
          "axis must be 0, 1 or 2");
  const double r = 1.0 / std::sqrt(2.0);
  const Complex i(0.0, 1.0);
  CMatrix u(2, 2);
  switch (axis) {
    case 0:
      u << r, r, r, -r;
      break;
    case 1:
      u << r, r, i * r, -i * r;
      break;
    default:
      u = CMatrix::Identity(2, 2);
  }
  return u;
}

}  // namespace robkit
