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

#include "robkit/witness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "linalg_detail.hpp"
#include "robkit/error.hpp"

namespace robkit {
namespace {

constexpr double kConditionLimit = 1e10;
constexpr int kNodeAttempts = 5;
constexpr std::uint64_t kNodeSeed = 0x6a09e667f3bcc908ULL;

void require_positive_s(double s) {
  require(std::isfinite(s) && s > 0.0, ErrorKind::kInvalidArgument,
          "mixing parameter s must be positive");
}

CMatrix shifted_argument(const DensityMatrix& rho, double s, const CMatrix& eta) {
  return ((1.0 + s) * eta - rho.matrix()) / s;
}

// Nondecreasing index tuples of every length 0..m over [0, n).
std::vector<std::vector<int>> monomials(int n, int m) {
  std::vector<std::vector<int>> out;
  out.emplace_back();
  std::vector<std::vector<int>> layer{{}};
  for (int k = 1; k <= m; ++k) {
    std::vector<std::vector<int>> next;
    for (const auto& t : layer) {
      const int start = t.empty() ? 0 : t.back();
      for (int j = start; j < n; ++j) {
        auto u = t;
        u.push_back(j);
        next.push_back(std::move(u));
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

double monomial_value(const std::vector<int>& t, const RVector& x) {
  double v = 1.0;
  for (int j : t) v *= x(j);
  return v;
}

std::vector<double> expectations(const std::map<int, HermitianMatrix>& members,
                                 const DensityMatrix& eta) {
  std::vector<double> out;
  CMatrix power = eta.matrix();
  int level = 1;
  for (const auto& [m, op] : members) {
    require(op.dim() == static_cast<int>(std::lround(std::pow(eta.dim(), m))),
            ErrorKind::kDimensionMismatch, "witness and state dimensions differ");
    while (level < m) {
      power = kron(power, eta.matrix());
      ++level;
    }
    out.push_back(op.inner(power));
  }
  return out;
}

}  // namespace

std::vector<double> elementary_symmetric_all(const CMatrix& a, int upto) {
  require(a.rows() == a.cols(), ErrorKind::kDimensionMismatch,
          "matrix must be square");
  require(upto >= 0 && upto <= a.rows(), ErrorKind::kInvalidArgument,
          "order must lie between 0 and the dimension");
  std::vector<double> p(static_cast<std::size_t>(upto) + 1, 0.0);
  CMatrix power = CMatrix::Identity(a.rows(), a.cols());
  for (int l = 1; l <= upto; ++l) {
    power = power * a;
    p[static_cast<std::size_t>(l)] = power.trace().real();
  }
  std::vector<double> e(static_cast<std::size_t>(upto) + 1, 0.0);
  e[0] = 1.0;
  for (int k = 1; k <= upto; ++k) {
    double acc = 0.0;
    for (int l = 1; l <= k; ++l) {
      const double sign = (l % 2 == 1) ? 1.0 : -1.0;
      acc += sign * p[static_cast<std::size_t>(l)] * e[static_cast<std::size_t>(k - l)];
    }
    e[static_cast<std::size_t>(k)] = acc / k;
  }
  return e;
}

double elementary_symmetric_S(const HermitianMatrix& a, int m) {
  require(m >= 0 && m <= a.dim(), ErrorKind::kInvalidArgument,
          "order must lie between 0 and the dimension");
  return elementary_symmetric_all(a.matrix(), m)[static_cast<std::size_t>(m)];
}

double shifted_S(const DensityMatrix& rho, double s, const HermitianMatrix& eta,
                 int m) {
  require_positive_s(s);
  require(rho.dim() == eta.dim(), ErrorKind::kDimensionMismatch,
          "state dimensions differ");
  require(m >= 1 && m <= rho.dim(), ErrorKind::kInvalidArgument,
          "order must lie between 1 and the dimension");
  return elementary_symmetric_all(shifted_argument(rho, s, eta.matrix()),
                                  m)[static_cast<std::size_t>(m)];
}

double shifted_S(const DensityMatrix& rho, double s, const DensityMatrix& eta,
                 int m) {
  return shifted_S(rho, s, eta.hermitian(), m);
}

bool is_state_byrd(const HermitianMatrix& a, double tol) {
  require(tol >= 0.0, ErrorKind::kInvalidArgument, "tolerance must be nonnegative");
  require(std::abs(a.trace() - 1.0) <= std::max(tol, 1e-12),
          ErrorKind::kInvalidArgument, "Byrd test needs a unit-trace matrix");
  const auto e = elementary_symmetric_all(a.matrix(), a.dim());
  for (std::size_t k = 1; k < e.size(); ++k)
    if (e[k] < -tol) return false;
  return true;
}

HermitianMatrix build_multicopy_operator(const DensityMatrix& rho, double s,
                                         int m, const Limits& limits) {
  require_positive_s(s);
  const int d = rho.dim();
  require(m >= 2 && m <= d, ErrorKind::kInvalidArgument,
          "copy count must lie between 2 and the dimension");
  const double full = std::pow(static_cast<double>(d), m);
  require(full <= static_cast<double>(limits.operator_cap), ErrorKind::kSizeCap,
          "multi-copy operator exceeds the size cap");

  const int n = d * d - 1;
  const auto monos = monomials(n, m);
  const auto count = static_cast<Eigen::Index>(monos.size());

  RVector coeffs;
  bool solved = false;
  for (int attempt = 0; attempt < kNodeAttempts && !solved; ++attempt) {
    Rng rng(kNodeSeed + static_cast<std::uint64_t>(attempt));
    std::normal_distribution<double> gauss(0.0, 1.0 / std::sqrt(static_cast<double>(n)));
    RMatrix vander(count, count);
    RVector values(count);
    BlochVector node{d, RVector(n)};
    for (Eigen::Index r = 0; r < count; ++r) {
      for (int j = 0; j < n; ++j) node.coords(j) = gauss(rng);
      for (Eigen::Index c = 0; c < count; ++c)
        vander(r, c) = monomial_value(monos[static_cast<std::size_t>(c)], node.coords);
      values(r) = elementary_symmetric_all(
          shifted_argument(rho, s, state_from_bloch(node).matrix()),
          m)[static_cast<std::size_t>(m)];
    }
    Eigen::PartialPivLU<RMatrix> lu(vander);
    const double rcond = lu.rcond();
    if (!(rcond > 0.0) || 1.0 / rcond > kConditionLimit) continue;
    coeffs = lu.solve(values);
    for (int refine = 0; refine < 2; ++refine) coeffs += lu.solve(values - vander * coeffs);
    solved = true;
  }
  if (!solved)
    fail(ErrorKind::kConstruction,
         "interpolation system ill-conditioned for every node set");

  const GellMannBasis basis = gell_mann_basis(d);
  const double kappa = bloch_scale(d);
  const CMatrix eye = CMatrix::Identity(d, d);
  const auto side = static_cast<Eigen::Index>(std::lround(full));
  CMatrix total = CMatrix::Zero(side, side);
  for (Eigen::Index c = 0; c < count; ++c) {
    const auto& t = monos[static_cast<std::size_t>(c)];
    const double weight = coeffs(c) * std::pow(kappa, static_cast<double>(t.size()));
    if (weight == 0.0) continue;
    CMatrix op = t.empty() ? eye : basis.elements[static_cast<std::size_t>(t[0])].matrix();
    for (int k = 1; k < m; ++k) {
      const auto uk = static_cast<std::size_t>(k);
      op = kron(op, uk < t.size() ? basis.elements[static_cast<std::size_t>(t[uk])].matrix()
                                  : eye);
    }
    total += weight * op;
  }
  CMatrix sym = symmetrize_copies(total, d, m);
  return HermitianMatrix(CMatrix(0.5 * (sym + sym.adjoint())));
}

HermitianMatrix qubit_closed_form(const DensityMatrix& rho, double s) {
  require_positive_s(s);
  require(rho.dim() == 2, ErrorKind::kInvalidDimension,
          "closed form is defined for qubits only");
  const GellMannBasis paulis = gell_mann_basis(2);
  const RVector r = bloch_from_state(rho).coords;
  const CMatrix eye = CMatrix::Identity(2, 2);
  CMatrix out = (r.squaredNorm() / (s * s) - 1.0) * CMatrix::Identity(4, 4);
  const double pre = (1.0 + s) / (s * s);
  for (int j = 0; j < 3; ++j) {
    const CMatrix& p = paulis.elements[static_cast<std::size_t>(j)].matrix();
    out += pre * ((1.0 + s) * kron(p, p) - r(j) * (kron(eye, p) + kron(p, eye)));
  }
  return HermitianMatrix(out);
}

double multicopy_expectation(const HermitianMatrix& op, const DensityMatrix& eta,
                             int m) {
  require(m >= 1, ErrorKind::kInvalidArgument, "copy count must be positive");
  const HermitianMatrix power =
      tensor_power(eta.hermitian(), m, static_cast<std::size_t>(op.dim()));
  require(power.dim() == op.dim(), ErrorKind::kDimensionMismatch,
          "operator and state dimensions differ");
  return op.inner(power);
}

WitnessFamily build_witness_family(const DensityMatrix& rho, double s,
                                   const Limits& limits) {
  require_positive_s(s);
  require(rho.dim() <= limits.max_dim, ErrorKind::kSizeCap,
          "dimension exceeds the configured cap");
  WitnessFamily fam{rho, s, {}};
  for (int m = 2; m <= rho.dim(); ++m)
    fam.members.emplace(m, build_multicopy_operator(rho, s, m, limits));
  return fam;
}

DeltaEstimate compute_deltas(const WitnessFamily& base, const FreeSet& set,
                             int n_samples, std::uint64_t seed, double fraction) {
  const int d = base.rho.dim();
  require(set.dim() == d, ErrorKind::kDimensionMismatch,
          "free set and state dimensions differ");
  require(n_samples >= 1, ErrorKind::kInvalidArgument, "sample count must be >= 1");
  require(fraction > 0.0 && fraction < 1.0, ErrorKind::kInvalidArgument,
          "delta fraction must lie in (0, 1)");

  const auto objective = [&](const DensityMatrix& sigma) {
    const auto e = elementary_symmetric_all(
        shifted_argument(base.rho, base.s, sigma.matrix()), d);
    return *std::min_element(e.begin() + 2, e.end());
  };

  double best = -std::numeric_limits<double>::infinity();
  std::optional<DensityMatrix> best_state;
  int evaluated = 0;
  const auto consider = [&](const DensityMatrix& sigma) {
    const double v = objective(sigma);
    ++evaluated;
    if (v > best) {
      best = v;
      best_state = sigma;
    }
    return v;
  };

  // Per subset: candidate starting weights ranked by objective value.
  std::vector<std::vector<std::pair<double, RVector>>> starts(set.subsets().size());
  for (const auto& sample : sample_free(set, n_samples, seed))
    starts[sample.subset].emplace_back(consider(sample.state), sample.weights);

  const HermitianMatrix target = base.rho.hermitian() * (1.0 / (1.0 + base.s));
  for (std::size_t k = 0; k < set.subsets().size(); ++k) {
    const ConvexFreeSet& subset = set.subsets()[k];
    const auto& verts = subset.extreme_points();
    for (std::size_t i = 0; i < verts.size(); ++i) {
      RVector w = RVector::Zero(static_cast<Eigen::Index>(verts.size()));
      w(static_cast<Eigen::Index>(i)) = 1.0;
      starts[k].emplace_back(consider(verts[i]), w);
    }
    // The Hilbert-Schmidt nearest point to rho / (1 + s) maximizes the m = 2
    // term exactly; for qubits that is the whole objective.
    const Projection proj = nearest_point(subset, target);
    starts[k].emplace_back(consider(proj.point), proj.weights);
  }

  const bool exact = d == 2;
  if (!exact) {
    constexpr std::size_t kStarts = 4;
    for (std::size_t k = 0; k < set.subsets().size(); ++k) {
      const ConvexFreeSet& subset = set.subsets()[k];
      auto& cand = starts[k];
      std::sort(cand.begin(), cand.end(),
                [](const auto& a, const auto& b) { return a.first > b.first; });
      const std::size_t used = std::min(kStarts, cand.size());
      for (std::size_t i = 0; i < used; ++i) {
        RVector theta = cand[i].second.array().max(1e-12).log().matrix();
        const auto neg = [&](const RVector& t) {
          RVector w = (t.array() - t.maxCoeff()).exp().matrix();
          w /= w.sum();
          return -objective(subset.mixture(w));
        };
        const auto res = detail::nelder_mead(neg, theta, 1.0, 1e-13, 2000);
        RVector w = (res.x.array() - res.x.maxCoeff()).exp().matrix();
        w /= w.sum();
        consider(subset.mixture(w));
      }
    }
  }

  const double delta = -best;
  if (!(delta > 0.0))
    fail(ErrorKind::kNotApplicable,
         "free states reach nonnegative shifted S values; s is not below the "
         "robustness or the search is too coarse");
  DeltaEstimate out{delta, {}, exact, evaluated, best_state};
  for (int m = 2; m <= d; ++m) out.deltas.emplace(m, fraction * delta);
  return out;
}

ShiftedWitnessFamily shift_family(const WitnessFamily& base,
                                  const std::map<int, double>& deltas, double c) {
  require(std::isfinite(c) && c > 0.0, ErrorKind::kInvalidArgument,
          "normalization constant must be positive");
  ShiftedWitnessFamily out{base, c, {}, {}};
  for (const auto& [m, w] : base.members) {
    const auto it = deltas.find(m);
    require(it != deltas.end(), ErrorKind::kInvalidArgument,
            "missing shift for a family member");
    require(std::isfinite(it->second) && it->second > 0.0,
            ErrorKind::kInvalidArgument, "shifts must be positive");
    out.deltas.emplace(m, it->second);
    out.members.emplace(
        m, (w + HermitianMatrix::identity(w.dim()) * it->second) * (-c));
  }
  return out;
}

double max_expectation(const ShiftedWitnessFamily& family,
                       const DensityMatrix& eta) {
  const auto vals = expectations(family.members, eta);
  return *std::max_element(vals.begin(), vals.end());
}

bool detect(const ShiftedWitnessFamily& family, const DensityMatrix& eta) {
  return max_expectation(family, eta) < 0.0;
}

HermitianMatrix swap_witness(const DensityMatrix& rho, double eps) {
  require(std::isfinite(eps) && eps > 0.0, ErrorKind::kInvalidArgument,
          "epsilon must be positive");
  const int d = rho.dim();
  const CMatrix eye = CMatrix::Identity(d, d);
  CMatrix out = swap_operator(d).matrix() +
                (rho.purity() - eps) * CMatrix::Identity(d * d, d * d) -
                2.0 * kron(rho.matrix(), eye);
  return HermitianMatrix(out);
}

BoundaryReport boundary_check(const DensityMatrix& rho,
                              const FreeSet& set, double zeta,
                              int n_samples, std::uint64_t seed,
                              const RobustnessOptions& opts,
                              const Limits& limits) {
  require(zeta > 0.0 && zeta < 1.0, ErrorKind::kInvalidArgument,
          "zeta must lie in (0, 1)");
  const UnionRobustness rob = robustness_union(rho, set, opts);
  if (!(rob.value > 0.0) || !std::isfinite(rob.value))
    fail(ErrorKind::kNotApplicable,
         "boundary check needs a finite, positive robustness");

  BoundaryReport rep;
  rep.robustness = rob.value;
  rep.zeta = zeta;
  rep.s_below = (1.0 - zeta) * rob.value;
  rep.s_above = (1.0 + zeta) * rob.value;

  const WitnessFamily below = build_witness_family(rho, rep.s_below, limits);
  try {
    const DeltaEstimate est = compute_deltas(below, set, n_samples, seed);
    rep.delta_below = est.delta;
    rep.heuristic = !est.exact;
    const ShiftedWitnessFamily fam = shift_family(below, est.deltas, 1.0);
    rep.rho_value = max_expectation(fam, rho);
    double worst = std::numeric_limits<double>::infinity();
    const auto check = [&](const DensityMatrix& sigma) {
      worst = std::min(worst, max_expectation(fam, sigma));
      ++rep.free_checked;
    };
    for (const auto& sample : sample_free(set, n_samples, seed + 1)) check(sample.state);
    for (const auto& subset : set.subsets())
      for (const auto& v : subset.extreme_points()) check(v);
    if (est.maximizer) check(*est.maximizer);
    rep.min_free_value = worst;
    rep.below_valid = rep.rho_value < 0.0 && worst >= 0.0;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kNotApplicable) throw;
    rep.below_valid = false;
  }

  // Above R the certificate's free state keeps every W_m expectation
  // nonnegative, so any positive shift makes the family flag a free state.
  const WitnessFamily above = build_witness_family(rho, rep.s_above, limits);
  const auto vals = expectations(above.members, rob.best().sigma);
  rep.above_min_S = *std::min_element(vals.begin(), vals.end());
  rep.above_invalidated = rep.above_min_S >= -1e-10;
  return rep;
}

}  // namespace robkit
