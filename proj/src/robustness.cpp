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

#include "robkit/robustness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "robkit/error.hpp"

namespace robkit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kFinalMu = 1e-14;

struct Cholesky {
  bool ok = false;
  double logdet = 0.0;
  CMatrix inverse;
};

Cholesky factor(const CMatrix& z) {
  Cholesky out;
  Eigen::LLT<CMatrix> llt(z);
  if (llt.info() != Eigen::Success) return out;
  const CMatrix& packed = llt.matrixLLT();
  for (Eigen::Index i = 0; i < packed.rows(); ++i) {
    const double v = packed(i, i).real();
    if (!(v > 0.0)) return out;
    out.logdet += 2.0 * std::log(v);
  }
  out.inverse = llt.solve(CMatrix::Identity(z.rows(), z.cols()));
  out.ok = true;
  return out;
}

double re_trace_product(const CMatrix& a, const CMatrix& b) {
  return (a.array() * b.transpose().array()).sum().real();
}

// Barrier method for max t s.t. (1+s) sum_i c_i w_i - rho - t I > 0, c in the
// simplex. Stops early once the sign of the optimum relative to -slack is
// certain.
class LambdaMinMaximizer {
 public:
  LambdaMinMaximizer(const DensityMatrix& rho, const ConvexFreeSet& set,
                     double s)
      : rho_(rho.matrix()), d_(rho.dim()) {
    for (const auto& w : set.extreme_points())
      b_.push_back((1.0 + s) * w.matrix());
    n_ = static_cast<Eigen::Index>(b_.size());
  }

  struct Outcome {
    RVector c;
    double t;
    double upper;
  };

  Outcome run(double slack) {
    RVector c = RVector::Constant(n_, 1.0 / static_cast<double>(n_));
    double t = lambda_min(c) - 1.0;
    double mu = 0.1;
    const double degree = static_cast<double>(d_ + n_);
    double upper = kInf;
    for (;;) {
      center(c, t, mu);
      upper = t + 2.0 * degree * mu;
      if (t >= -slack || upper < -slack || mu <= kFinalMu) break;
      mu *= 0.1;
    }
    // The barrier point keeps c in the open simplex; the actual lambda_min of
    // the final weights is at least t.
    return Outcome{c, std::max(t, lambda_min(c)), upper};
  }

  double lambda_min(const RVector& c) const {
    return HermitianMatrix(combination(c)).min_eigenvalue();
  }

 private:
  CMatrix combination(const RVector& c) const {
    CMatrix z = -rho_;
    for (Eigen::Index i = 0; i < n_; ++i) z += c(i) * b_[static_cast<std::size_t>(i)];
    return z;
  }

  double barrier(const RVector& c, double t, double mu, bool* ok) const {
    if (c.minCoeff() <= 0.0) {
      *ok = false;
      return kInf;
    }
    CMatrix z = combination(c);
    z.diagonal().array() -= t;
    const Cholesky ch = factor(z);
    if (!ch.ok) {
      *ok = false;
      return kInf;
    }
    *ok = true;
    return -t - mu * (ch.logdet + c.array().log().sum());
  }

  void center(RVector& c, double& t, double mu) const {
    const Eigen::Index nv = n_ + 1;
    for (int iter = 0; iter < 100; ++iter) {
      CMatrix z = combination(c);
      z.diagonal().array() -= t;
      const Cholesky ch = factor(z);
      if (!ch.ok) return;
      const CMatrix& zi = ch.inverse;
      std::vector<CMatrix> p(static_cast<std::size_t>(n_));
      for (Eigen::Index i = 0; i < n_; ++i)
        p[static_cast<std::size_t>(i)] = zi * b_[static_cast<std::size_t>(i)];
      RVector g(nv);
      RMatrix h = RMatrix::Zero(nv, nv);
      for (Eigen::Index i = 0; i < n_; ++i) {
        const auto& pi = p[static_cast<std::size_t>(i)];
        g(i) = -mu * (pi.trace().real() + 1.0 / c(i));
        for (Eigen::Index j = i; j < n_; ++j) {
          const double v = mu * re_trace_product(pi, p[static_cast<std::size_t>(j)]);
          h(i, j) = v;
          h(j, i) = v;
        }
        h(i, i) += mu / (c(i) * c(i));
        const double ct = -mu * re_trace_product(pi, zi);
        h(i, n_) = ct;
        h(n_, i) = ct;
      }
      g(n_) = -1.0 + mu * zi.trace().real();
      h(n_, n_) = mu * re_trace_product(zi, zi);

      RMatrix kkt = RMatrix::Zero(nv + 1, nv + 1);
      kkt.topLeftCorner(nv, nv) = h;
      kkt.block(0, nv, n_, 1).setOnes();
      kkt.block(nv, 0, 1, n_).setOnes();
      RVector rhs = RVector::Zero(nv + 1);
      rhs.head(nv) = -g;
      const RVector sol = kkt.partialPivLu().solve(rhs);
      const RVector dx = sol.head(nv);
      const double decrement = -g.dot(dx);
      if (!(decrement > 1e-12)) return;

      bool ok = false;
      const double f0 = barrier(c, t, mu, &ok);
      double alpha = 1.0;
      for (Eigen::Index i = 0; i < n_; ++i)
        if (dx(i) < 0.0) alpha = std::min(alpha, -0.99 * c(i) / dx(i));
      bool stepped = false;
      for (int ls = 0; ls < 60; ++ls) {
        const RVector cn = c + alpha * dx.head(n_);
        const double tn = t + alpha * dx(n_);
        const double f1 = barrier(cn, tn, mu, &ok);
        if (ok && f1 <= f0 - 0.25 * alpha * decrement) {
          c = cn / cn.sum();
          t = tn;
          stepped = true;
          break;
        }
        alpha *= 0.5;
      }
      if (!stepped) return;
      if (decrement < 1e-14) return;
    }
  }

  CMatrix rho_;
  int d_;
  Eigen::Index n_ = 0;
  std::vector<CMatrix> b_;
};

// Orthonormal basis of the support of the barycenter of the extreme points.
CMatrix support_basis(const ConvexFreeSet& set) {
  const int d = set.dim();
  CMatrix bary = CMatrix::Zero(d, d);
  for (const auto& w : set.extreme_points()) bary += w.matrix();
  const EigenDecomposition e = eig_hermitian(HermitianMatrix(bary));
  const double top = e.values.maxCoeff();
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < e.values.size(); ++i)
    if (e.values(i) > 1e-10 * top) keep.push_back(i);
  CMatrix v(d, static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k)
    v.col(static_cast<Eigen::Index>(k)) = e.vectors.col(keep[k]);
  return v;
}

// Orthonormal (under Re tr[AB]) basis of r x r Hermitian matrices.
std::vector<CMatrix> hermitian_basis(Eigen::Index r) {
  std::vector<CMatrix> out;
  const double h = 1.0 / std::sqrt(2.0);
  const Complex i(0.0, 1.0);
  for (Eigen::Index j = 0; j < r; ++j) {
    CMatrix e = CMatrix::Zero(r, r);
    e(j, j) = 1.0;
    out.push_back(e);
  }
  for (Eigen::Index j = 0; j < r; ++j)
    for (Eigen::Index k = j + 1; k < r; ++k) {
      CMatrix e = CMatrix::Zero(r, r);
      e(j, k) = h;
      e(k, j) = h;
      out.push_back(e);
      CMatrix f = CMatrix::Zero(r, r);
      f(j, k) = -i * h;
      f(k, j) = i * h;
      out.push_back(f);
    }
  return out;
}

DensityMatrix clipped_state(const CMatrix& m) {
  return DensityMatrix::nearest_from(HermitianMatrix(CMatrix((m + m.adjoint()) * 0.5)));
}

}  // namespace

bool RobustnessCertificate::finite() const noexcept {
  return std::isfinite(value);
}

FeasibilityResult feasibility_step(const DensityMatrix& rho,
                                   const ConvexFreeSet& set, double s,
                                   const RobustnessOptions& opts) {
  require(rho.dim() == set.dim(), ErrorKind::kDimensionMismatch,
          "state and free set dimensions differ");
  require(s >= 0.0 && std::isfinite(s), ErrorKind::kInvalidArgument,
          "feasibility step needs finite s >= 0");
  LambdaMinMaximizer solver(rho, set, s);
  const auto out = solver.run(opts.feasibility_slack);
  FeasibilityResult res{out.t >= -opts.feasibility_slack, std::nullopt, out.c,
                        out.t};
  if (res.feasible) res.witness_sigma = set.mixture(out.c);
  return res;
}

DualSolution solve_dual(const DensityMatrix& rho, const ConvexFreeSet& set) {
  require(rho.dim() == set.dim(), ErrorKind::kDimensionMismatch,
          "state and free set dimensions differ");
  const CMatrix v = support_basis(set);
  const Eigen::Index r = v.cols();
  const CMatrix proj = v * v.adjoint();
  const double leak = (rho.matrix() - proj * rho.matrix() * proj).norm();
  require(leak <= 1e-9, ErrorKind::kNotApplicable,
          "state is not supported inside the free subset; robustness is infinite");

  const std::vector<CMatrix> basis = hermitian_basis(r);
  const auto nb = static_cast<Eigen::Index>(basis.size());
  const auto& verts = set.extreme_points();
  const auto nw = static_cast<Eigen::Index>(verts.size());
  // Objective and constraint coefficients in the reduced coordinates.
  RVector q(nb);
  RMatrix a(nw, nb);
  for (Eigen::Index k = 0; k < nb; ++k) {
    const CMatrix f = v * basis[static_cast<std::size_t>(k)] * v.adjoint();
    q(k) = re_trace_product(f, rho.matrix());
    for (Eigen::Index i = 0; i < nw; ++i)
      a(i, k) = re_trace_product(f, verts[static_cast<std::size_t>(i)].matrix());
  }

  auto assemble = [&](const RVector& y) {
    CMatrix m = CMatrix::Zero(r, r);
    for (Eigen::Index k = 0; k < nb; ++k) m += y(k) * basis[static_cast<std::size_t>(k)];
    return m;
  };

  double top = 0.0;
  for (const auto& w : verts) top = std::max(top, re_trace_product(proj, w.matrix()));
  RVector y = RVector::Zero(nb);
  for (Eigen::Index j = 0; j < r; ++j) y(j) = 0.5 / top;

  auto barrier = [&](const RVector& yy, double mu, bool* ok) {
    const RVector slack = RVector::Ones(nw) - a * yy;
    if (slack.minCoeff() <= 0.0) {
      *ok = false;
      return kInf;
    }
    const Cholesky ch = factor(assemble(yy));
    if (!ch.ok) {
      *ok = false;
      return kInf;
    }
    *ok = true;
    return -q.dot(yy) - mu * (ch.logdet + slack.array().log().sum());
  };

  const double degree = static_cast<double>(r + nw);
  double mu = 0.1;
  for (;;) {
    for (int iter = 0; iter < 100; ++iter) {
      const Cholesky ch = factor(assemble(y));
      if (!ch.ok) break;
      const RVector slack = RVector::Ones(nw) - a * y;
      std::vector<CMatrix> p(static_cast<std::size_t>(nb));
      for (Eigen::Index k = 0; k < nb; ++k)
        p[static_cast<std::size_t>(k)] = ch.inverse * basis[static_cast<std::size_t>(k)];
      RVector g(nb);
      RMatrix h(nb, nb);
      const RMatrix as = slack.cwiseInverse().asDiagonal() * a;
      for (Eigen::Index k = 0; k < nb; ++k) {
        g(k) = -q(k) - mu * (p[static_cast<std::size_t>(k)].trace().real() -
                             as.col(k).sum());
        for (Eigen::Index l = k; l < nb; ++l) {
          const double val =
              mu * (re_trace_product(p[static_cast<std::size_t>(k)],
                                     p[static_cast<std::size_t>(l)]) +
                    as.col(k).dot(as.col(l)));
          h(k, l) = val;
          h(l, k) = val;
        }
      }
      const RVector dy = h.ldlt().solve(-g);
      const double decrement = -g.dot(dy);
      if (!(decrement > 1e-12)) break;
      bool ok = false;
      const double f0 = barrier(y, mu, &ok);
      double alpha = 1.0;
      bool stepped = false;
      for (int ls = 0; ls < 60; ++ls) {
        const RVector yn = y + alpha * dy;
        const double f1 = barrier(yn, mu, &ok);
        if (ok && f1 <= f0 - 0.25 * alpha * decrement) {
          y = yn;
          stepped = true;
          break;
        }
        alpha *= 0.5;
      }
      if (!stepped || decrement < 1e-14) break;
    }
    if (mu <= kFinalMu) break;
    mu *= 0.1;
  }

  const CMatrix xr = assemble(y);
  CMatrix x = v * xr * v.adjoint();
  x = (x + x.adjoint()) * 0.5;
  HermitianMatrix xh(x);
  // Rescale so the constraint tr[X w] <= 1 holds exactly.
  double worst = 0.0;
  for (const auto& w : verts) worst = std::max(worst, xh.inner(w.hermitian()));
  if (worst > 1.0) xh = xh * (1.0 / worst);
  const double objective = xh.inner(rho.hermitian());
  const double bound = objective + 2.0 * degree * mu;
  if (!std::isfinite(objective) || 2.0 * degree * mu > 1e-9) {
    throw NumericError(ErrorKind::kCertificateQuality,
                       "dual solver did not certify its optimality gap",
                       bound - objective);
  }
  return DualSolution{xh, objective, bound};
}

HermitianMatrix dual_witness(const DensityMatrix& rho,
                             const ConvexFreeSet& set) {
  return solve_dual(rho, set).x;
}

RobustnessCertificate robustness_convex(const DensityMatrix& rho,
                                        const ConvexFreeSet& set,
                                        const RobustnessOptions& opts) {
  require(rho.dim() == set.dim(), ErrorKind::kDimensionMismatch,
          "state and free set dimensions differ");
  const int d = rho.dim();

  if (membership(rho, set, opts.membership_tol)) {
    const DualSolution dual = solve_dual(rho, set);
    const double dv = dual.objective - 1.0;
    return RobustnessCertificate{0.0,     rho,          std::nullopt,
                                 dual.x,  set.label(),  std::abs(dv),
                                 dv};
  }

  double lo = 0.0;
  double hi = 1.0;
  FeasibilityResult at_hi = feasibility_step(rho, set, hi, opts);
  while (!at_hi.feasible) {
    lo = hi;
    hi *= 2.0;
    if (hi > opts.s_cap) {
      // Infinite robustness: certify with an operator supported off the
      // reach of the subset, scaled past the cap.
      const CMatrix v = support_basis(set);
      const CMatrix perp = CMatrix::Identity(d, d) - v * v.adjoint();
      const double weight = re_trace_product(perp, rho.matrix());
      HermitianMatrix x = HermitianMatrix::zero(d);
      if (weight > 1e-12) {
        x = HermitianMatrix(CMatrix((perp + perp.adjoint()) * 0.5)) *
            (2.0 * (1.0 + opts.s_cap) / weight);
      }
      const FeasibilityResult last = feasibility_step(rho, set, opts.s_cap, opts);
      return RobustnessCertificate{kInf,   set.mixture(last.weights),
                                   std::nullopt, x,
                                   set.label(),  kInf,
                                   x.inner(rho.hermitian()) - 1.0};
    }
    at_hi = feasibility_step(rho, set, hi, opts);
  }
  while (hi - lo > opts.s_tol) {
    const double mid = 0.5 * (lo + hi);
    FeasibilityResult r = feasibility_step(rho, set, mid, opts);
    if (r.feasible) {
      hi = mid;
      at_hi = std::move(r);
    } else {
      lo = mid;
    }
  }

  const double s = hi;
  const DensityMatrix sigma = *at_hi.witness_sigma;
  const DensityMatrix tau =
      clipped_state(((1.0 + s) * sigma.matrix() - rho.matrix()) / s);
  const DualSolution dual = solve_dual(rho, set);
  const double dv = dual.objective - 1.0;
  const double gap = std::abs(s - dv);
  if (gap > opts.gap_tol) {
    throw NumericError(ErrorKind::kCertificateQuality,
                       "primal and dual robustness disagree by " +
                           std::to_string(gap),
                       gap);
  }
  return RobustnessCertificate{s, sigma, tau, dual.x, set.label(), gap, dv};
}

UnionRobustness robustness_union(const DensityMatrix& rho, const FreeSet& set,
                                 const RobustnessOptions& opts) {
  require(rho.dim() == set.dim(), ErrorKind::kDimensionMismatch,
          "state and free set dimensions differ");
  std::vector<RobustnessCertificate> certs;
  certs.reserve(set.subsets().size());
  for (const auto& subset : set.subsets())
    certs.push_back(robustness_convex(rho, subset, opts));
  std::size_t best = 0;
  for (std::size_t k = 1; k < certs.size(); ++k)
    if (certs[k].value < certs[best].value) best = k;
  const double value = certs[best].value;
  return UnionRobustness{value, best, std::move(certs)};
}

}  // namespace robkit
