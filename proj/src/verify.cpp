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

#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>

#include "linalg_detail.hpp"
#include "robkit/error.hpp"
#include "robkit/freesets.hpp"
#include "robkit/robustness.hpp"
#include "robkit/witness.hpp"

namespace robkit::oracle {
namespace {

using Checks = std::vector<CheckResult>;

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

Rng check_rng(const SuiteConfig& cfg, std::uint64_t salt) {
  return Rng(cfg.seed * 0x9e3779b97f4a7c15ULL + salt);
}

double tolerance(const SuiteConfig& cfg, double fallback) {
  return cfg.tol.value_or(fallback);
}

CheckResult bounded(int criterion, std::string name, double measured, double tol,
                    std::string detail) {
  return CheckResult{criterion, std::move(name), measured <= tol, measured, tol,
                     std::move(detail)};
}

CheckResult counted(int criterion, std::string name, int violations,
                    std::string detail) {
  return CheckResult{criterion, std::move(name), violations == 0,
                     static_cast<double>(violations), 0.0, std::move(detail)};
}

FreeSet incoherent_z() { return FreeSet({ConvexFreeSet::incoherent(2, "z")}); }

FreeSet union_zx() {
  return FreeSet({ConvexFreeSet::incoherent(qubit_axis_basis(2), "z"),
                  ConvexFreeSet::incoherent(qubit_axis_basis(0), "x")});
}

DensityMatrix plus_state() {
  CVector v(2);
  v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  return DensityMatrix::pure(v);
}

HermitianMatrix traceless(const HermitianMatrix& h) {
  const int d = h.dim();
  return h - HermitianMatrix::identity(d) * (h.trace() / d);
}

// Unit-trace Hermitian test matrices: generic ones and ones pushed to within
// 1e-10 .. 1e-5 of the PSD boundary on either side.
HermitianMatrix unit_trace_sample(int d, int i, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  switch (i % 4) {
    case 0:
      return HermitianMatrix::identity(d) * (1.0 / d) +
             traceless(random_hermitian(d, rng)) * (0.5 * u(rng));
    case 1:
      return random_density(d, d, rng).hermitian() +
             traceless(random_hermitian(d, rng)) * (0.1 * u(rng));
    default: {
      const DensityMatrix base = random_density(d, d - 1, rng);
      const auto eig = eig_hermitian(base.hermitian());
      const CVector v = eig.vectors.col(0);
      const double mag = std::pow(10.0, -10.0 + 5.0 * u(rng));
      const double eps = (u(rng) < 0.5 ? -1.0 : 1.0) * mag;
      return base.hermitian() +
             traceless(HermitianMatrix::projector(v)) * eps;
    }
  }
}

std::vector<double> random_priors(int n, Rng& rng) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> p(static_cast<std::size_t>(n));
  double total = 0.0;
  for (auto& x : p) total += (x = e(rng));
  for (auto& x : p) x /= total;
  // Force an exact unit sum.
  p.back() = 1.0 - std::accumulate(p.begin(), p.end() - 1, 0.0);
  return p;
}

Channel random_channel(int din, int dout, Rng& rng) {
  std::uniform_int_distribution<int> pick(0, 3);
  const int kind = pick(rng);
  if (kind == 0) return Channel::constant(din, OutputState(random_density(dout, dout, rng)));
  const int outcomes = kind == 1 ? 3 : 2;
  const POVM effects = random_povm(din, outcomes, rng);
  std::vector<OutputState> outs;
  for (int j = 0; j < outcomes; ++j) outs.emplace_back(random_density(dout, dout, rng));
  return Channel::measure_prepare(effects.elements(), std::move(outs));
}

CMatrix weighted_output(const ChannelEnsemble& ens, std::size_t i,
                        const DensityMatrix& input) {
  const Channel& ch = ens.channels()[i];
  const auto w = ch.outcome_weights(input.hermitian());
  CMatrix out = CMatrix::Zero(ch.out_dim(), ch.out_dim());
  for (std::size_t j = 0; j < w.size(); ++j)
    out += w[j] * std::get<DensityMatrix>(ch.outputs()[j]).matrix();
  return ens.priors()[i] * out;
}

// ---------------------------------------------------------------------------

Checks check_byrd(const SuiteConfig& cfg) {
  Rng rng = check_rng(cfg, 1);
  const double band = tolerance(cfg, 1e-8);
  int outside = 0, inside = 0, total = 0;
  for (int d : {2, 3, 4}) {
    for (int i = 0; i < 1000; ++i) {
      const HermitianMatrix a = unit_trace_sample(d, i, rng);
      const bool byrd = is_state_byrd(a, 0.0);
      const bool eig = eigen_is_state(a, 0.0);
      ++total;
      if (byrd == eig) continue;
      if (std::abs(a.min_eigenvalue()) <= band) {
        ++inside;
      } else {
        ++outside;
      }
    }
  }
  return {counted(1, "byrd_vs_eigenvalues", outside,
                  std::to_string(total) + " matrices, " + std::to_string(inside) +
                      " disagreements inside the " + sci(band) + " band")};
}

Checks check_multicopy(const SuiteConfig& cfg) {
  Rng rng = check_rng(cfg, 2);
  const double tol = tolerance(cfg, 1e-8);
  double contract = 0.0, cross = 0.0, perm_sym = 0.0;
  int cases = 0;
  for (int d : {2, 3}) {
    for (double s : {0.1, 0.5, 1.0, 5.0}) {
      const DensityMatrix rho = random_density(d, d, rng);
      for (int m = 2; m <= d; ++m) {
        const HermitianMatrix w = build_multicopy_operator(rho, s, m);
        for (int k = 0; k < 100; ++k) {
          const DensityMatrix eta = random_density(d, d, rng);
          contract = std::max(contract, std::abs(multicopy_expectation(w, eta, m) -
                                                 shifted_S(rho, s, eta, m)));
        }
        const HermitianMatrix alt = multicopy_by_permutations(rho, s, m);
        cross = std::max(cross, (w.matrix() - alt.matrix()).cwiseAbs().maxCoeff());
        perm_sym = std::max(
            perm_sym,
            (symmetrize_copies(w.matrix(), d, m) - w.matrix()).cwiseAbs().maxCoeff());
        ++cases;
      }
    }
  }
  const std::string what = std::to_string(cases) + " (d, s, m) cases";
  return {bounded(2, "multicopy_contract", contract, tol,
                  what + " x 100 states, max |tr[W eta^m] - S|"),
          bounded(2, "multicopy_permutation_route", cross, tol,
                  what + ", max entry difference vs antisymmetrizer route"),
          bounded(2, "multicopy_copy_symmetry", perm_sym, tolerance(cfg, 1e-10),
                  what + ", max entry change under copy symmetrization")};
}

Checks check_closed_form(const SuiteConfig& cfg) {
  Rng rng = check_rng(cfg, 3);
  std::uniform_real_distribution<double> logs(std::log(0.1), std::log(10.0));
  double worst = 0.0, expect = 0.0;
  for (int i = 0; i < 50; ++i) {
    const DensityMatrix rho = random_density(2, 2, rng);
    const double s = std::exp(logs(rng));
    const HermitianMatrix w = build_multicopy_operator(rho, s, 2);
    const CMatrix q = symmetrize_copies(qubit_closed_form(rho, s).matrix(), 2, 2);
    worst = std::max(worst, (w.matrix() + 0.25 * q).cwiseAbs().maxCoeff());
    const DensityMatrix eta = random_density(2, 2, rng);
    expect = std::max(expect, std::abs(qubit_closed_form(rho, s).inner(
                                           tensor_power(eta.hermitian(), 2)) +
                                       4.0 * shifted_S(rho, s, eta, 2)));
  }
  return {bounded(3, "qubit_closed_form", worst, tolerance(cfg, 1e-9),
                  "50 (rho, s), max entry |W + Q/4|; expectation vs -4 S: " + sci(expect))};
}

Checks check_boundary(const SuiteConfig& cfg) {
  Rng rng = check_rng(cfg, 4);
  const FreeSet fz = incoherent_z();
  int failures = 0;
  double min_delta = std::numeric_limits<double>::infinity();
  double min_above = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 20; ++i) {
    const DensityMatrix rho = random_density(2, 2, rng);
    const BoundaryReport rep = boundary_check(
        rho, fz, 0.02, 1000, cfg.seed + static_cast<std::uint64_t>(i));
    if (!rep.passed()) ++failures;
    min_delta = std::min(min_delta, rep.delta_below);
    min_above = std::min(min_above, rep.above_min_S);
  }
  return {counted(4, "robustness_boundary", failures,
                  "20 qubit states vs incoherent-z at (1 -+ 0.02) R; min delta below " +
                      sci(min_delta) + ", min S above " + sci(min_above))};
}

Checks check_cross_validation(const SuiteConfig& cfg) {
  Rng rng = check_rng(cfg, 5);
  const double tol = tolerance(cfg, 1e-6);
  const FreeSet fz = incoherent_z();
  double gap = 0.0, l1 = 0.0;
  for (int i = 0; i < 20; ++i) {
    const DensityMatrix rho = random_density(2, 2, rng);
    const auto cert = robustness_convex(rho, fz.subsets().front());
    gap = std::max(gap, std::abs(cert.value - cert.dual_value));
    l1 = std::max(l1, std::abs(cert.value - 2.0 * std::abs(rho.matrix()(0, 1))));
  }
  for (int d : {3, 4}) {
    const DensityMatrix rho = random_density(d, d, rng);
    const auto cert = robustness_convex(rho, ConvexFreeSet::incoherent(d, "diag"));
    gap = std::max(gap, std::abs(cert.value - cert.dual_value));
  }
  const auto plus = robustness_convex(plus_state(), fz.subsets().front());
  const double plus_err = std::abs(plus.value - 1.0);
  return {bounded(4, "primal_dual_agreement", gap, tol,
                  "20 qubits + d = 3, 4 vs incoherent, max |R - (tr[X rho] - 1)|"),
          bounded(4, "qubit_l1_oracle", l1, tol, "20 qubits, max |R - 2|rho_01||"),
          bounded(4, "plus_state_robustness", plus_err, tol,
                  "R(|+>) = " + sci(plus.value))};
}

Checks check_qualitative(const SuiteConfig& cfg) {
  Rng rng = check_rng(cfg, 6);
  const FreeSet f = union_zx();
  int failures = 0;
  double worst_slack = std::numeric_limits<double>::infinity();
  double min_margin = std::numeric_limits<double>::infinity();
  double max_spread = 0.0;
  for (int i = 0; i < 20; ++i) {
    const DensityMatrix rho = random_density(2, 2, rng);
    const QualitativeReport rep = verify_qualitative_advantage(
        rho, f, 1000, cfg.seed + static_cast<std::uint64_t>(i));
    if (!rep.passed()) ++failures;
    worst_slack = std::min(worst_slack, rep.margin - 3.0 * rep.std_error);
    min_margin = std::min(min_margin, rep.margin);
    max_spread = std::max(max_spread, rep.spread_error);
  }
  return {counted(5, "qualitative_advantage", failures,
                  "20 qubits vs union(z, x) at s = 0.9 R; min margin " + sci(min_margin) +
                      ", min (margin - 3 SE) " + sci(worst_slack) +
                      ", max ratio-spread SE " + sci(max_spread))};
}

Checks check_quantitative(const SuiteConfig& cfg) {
  Rng rng = check_rng(cfg, 7);
  const FreeSet f = union_zx();
  const double rel_tol = tolerance(cfg, 2e-3);
  double rel = 0.0, union_diff = 0.0;
  for (int i = 0; i < 20; ++i) {
    const DensityMatrix rho = random_density(2, 2, rng);
    const WorstCaseAdvantage w = worst_case_advantage(rho, f, 10000);
    rel = std::max(rel, std::abs(w.value - w.target) / w.target);
    double direct = std::numeric_limits<double>::infinity();
    for (const auto& k : f.subsets()) direct = std::min(direct, robustness_convex(rho, k).value);
    union_diff = std::max(union_diff, std::abs(robustness_union(rho, f).value - direct));
  }

  // Upper-bound side: random tasks never beat 1 + R_k.
  double excess = -std::numeric_limits<double>::infinity();
  int violations = 0;
  std::uniform_int_distribution<int> nch(2, 3), dout(2, 3);
  for (int t = 0; t < 100; ++t) {
    const DensityMatrix rho = random_density(2, 2, rng);
    const int n = nch(rng);
    const int od = dout(rng);
    std::vector<Channel> chans;
    for (int i = 0; i < n; ++i) chans.push_back(random_channel(2, od, rng));
    const ChannelEnsemble ens(random_priors(n, rng), std::move(chans));
    const Measurement m = random_povm(od, n, rng);
    for (const auto& k : f.subsets()) {
      const double r = robustness_convex(rho, k).value;
      const double adv = fixed_task_advantage(rho, k, ens, m);
      excess = std::max(excess, adv - (1.0 + r));
      if (adv > 1.0 + r + 1e-6) ++violations;
    }
  }
  return {bounded(6, "worst_case_advantage", rel, rel_tol,
                  "20 qubits vs union(z, x), N = 10^4, max |achieved - (1 + R_F)| / (1 + R_F)"),
          bounded(6, "union_is_min_of_subsets", union_diff, tolerance(cfg, 1e-8),
                  "union value vs independently recomputed subset minimum"),
          counted(6, "advantage_upper_bound", violations,
                  "100 random (ensemble, POVM) pairs x 2 subsets; max advantage - (1 + R_k) = " +
                      sci(excess))};
}

Checks check_swap(const SuiteConfig& cfg) {
  Rng rng = check_rng(cfg, 8);
  std::uniform_int_distribution<int> dim(2, 4);
  std::uniform_real_distribution<double> u(0.01, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const int d = dim(rng);
    const DensityMatrix rho = random_density(d, d, rng);
    const DensityMatrix eta = random_density(d, d, rng);
    const double eps = u(rng);
    const double lhs = swap_witness(rho, eps).inner(tensor_power(eta.hermitian(), 2));
    const double rhs = hs_distance_sq(rho.hermitian(), eta.hermitian()) - eps;
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return {bounded(7, "swap_witness_identity", worst, tolerance(cfg, 1e-10),
                  "100 random (rho, eta, eps), d in {2, 3, 4}")};
}

Checks check_helstrom(const SuiteConfig& cfg) {
  Rng rng = check_rng(cfg, 9);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    std::vector<Channel> chans{random_channel(2, 2, rng), random_channel(2, 2, rng)};
    const ChannelEnsemble ens(random_priors(2, rng), std::move(chans));
    const DensityMatrix eta = random_density(2, 2, rng);
    const double helstrom = optimal_measurement(ens, eta).value;
    const double brute = brute_force_binary(weighted_output(ens, 0, eta),
                                            weighted_output(ens, 1, eta));
    worst = std::max(worst, std::abs(helstrom - brute));
  }

  // Closed forms of the constructed tasks.
  double task_err = 0.0;
  for (int d : {2, 3}) {
    for (int i = 0; i < 5; ++i) {
      const DensityMatrix rho = random_density(d, d, rng);
      std::uniform_real_distribution<double> us(0.2, 3.0);
      const WitnessFamily base = build_witness_family(rho, us(rng));
      std::map<int, double> deltas;
      for (int m = 2; m <= d; ++m) deltas[m] = 0.05 + 0.1 * us(rng);
      const ShiftedWitnessFamily fam = shift_family(base, deltas, us(rng));
      for (int m = 2; m <= d; ++m) {
        const ChannelEnsemble task = task_from_witness(fam, m);
        const HermitianMatrix a = witness_task_effect(fam, m);
        for (int k = 0; k < 10; ++k) {
          const DensityMatrix eta = random_density(d, d, rng);
          const DensityMatrix in(tensor_power(eta.hermitian(), m));
          const double v = optimal_measurement(task, in).value;
          task_err = std::max(task_err, std::abs(v - 0.5 * (1.0 + a.inner(in.hermitian()))));
        }
      }
    }
  }
  double ens_err = 0.0;
  for (int n : {2, 10, 1000}) {
    for (int i = 0; i < 5; ++i) {
      const int d = 2 + i % 3;
      const HermitianMatrix x = random_density(d, 1 + i % d, rng).hermitian() * 3.0;
      const ChannelEnsemble ens = achieving_ensemble(x, n);
      const HermitianMatrix a = x * (1.0 / x.operator_norm());
      for (int k = 0; k < 10; ++k) {
        const DensityMatrix eta = random_density(d, d, rng);
        const double expect = (1.0 - 1.0 / n) * a.inner(eta.hermitian()) + 1.0 / n;
        const auto opt = optimal_measurement(ens, eta);
        const double ident = success_probability(ens, FlagDecision::identity(n), eta);
        ens_err = std::max({ens_err, std::abs(opt.value - expect), std::abs(ident - expect)});
      }
    }
  }
  const double ctol = tolerance(cfg, 1e-9);
  return {bounded(8, "helstrom_vs_brute_force", worst, tolerance(cfg, 1e-6),
                  "50 random qubit binary ensembles"),
          bounded(8, "witness_task_closed_form", task_err, ctol,
                  "optimal success vs (1 + tr[A eta^m]) / 2, d in {2, 3}"),
          bounded(8, "achieving_ensemble_closed_form", ens_err, ctol,
                  "optimal and identity-decision success vs (1 - 1/N) tr[A eta] + 1/N")};
}

Checks check_nesting(const SuiteConfig& cfg) {
  Rng rng = check_rng(cfg, 10);
  const FreeSet fz = incoherent_z();
  int violations = 0, detected = 0, policy_violations = 0, samples = 0;
  for (int i = 0; i < 5; ++i) {
    const DensityMatrix rho = random_density(2, 2, rng);
    const double r = robustness_union(rho, fz).value;
    const WitnessFamily lo = build_witness_family(rho, 0.5 * r);
    const WitnessFamily hi = build_witness_family(rho, 0.9 * r);
    const DeltaEstimate dhi = compute_deltas(hi, fz, 1000, cfg.seed + 17);
    const DeltaEstimate dlo = compute_deltas(lo, fz, 1000, cfg.seed + 17);
    // One shift valid at both parameters (delta decreases with s).
    const ShiftedWitnessFamily f_lo = shift_family(lo, dhi.deltas, 1.0);
    const ShiftedWitnessFamily f_hi = shift_family(hi, dhi.deltas, 1.0);
    // Per-parameter default shifts, reported as a diagnostic.
    const ShiftedWitnessFamily g_lo = shift_family(lo, dlo.deltas, 1.0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 100; ++k) {
      // Half Hilbert-Schmidt states, half pulled toward rho so that the
      // detection regions are actually populated.
      DensityMatrix eta = random_density(2, 2, rng);
      if (k % 2 == 1) {
        const double t = u(rng);
        eta = DensityMatrix(rho.hermitian() * (1.0 - t) + eta.hermitian() * t);
      }
      ++samples;
      const bool a = detect(f_lo, eta);
      const bool b = detect(f_hi, eta);
      detected += a ? 1 : 0;
      if (a && !b) ++violations;
      if (detect(g_lo, eta) && !b) ++policy_violations;
    }
  }
  return {counted(9, "detection_nesting", violations,
                  std::to_string(samples) + " samples, s' = 0.5 R, s = 0.9 R, shared shift; " +
                      std::to_string(detected) + " detected at s'; per-parameter shift policy: " +
                      std::to_string(policy_violations) + " inclusion failures")};
}

struct Entry {
  const char* suite;
  std::function<Checks(const SuiteConfig&)> run;
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> r{
      {"byrd", check_byrd},           {"witness", check_multicopy},
      {"witness", check_closed_form}, {"theorems", check_boundary},
      {"duality", check_cross_validation},
      {"theorems", check_qualitative}, {"theorems", check_quantitative},
      {"witness", check_swap},        {"theorems", check_helstrom},
      {"witness", check_nesting},
  };
  return r;
}

}  // namespace

bool eigen_is_state(const HermitianMatrix& a, double tol) {
  return a.min_eigenvalue() >= -tol;
}

HermitianMatrix multicopy_by_permutations(const DensityMatrix& rho, double s, int m) {
  const int d = rho.dim();
  require(s > 0.0, ErrorKind::kInvalidArgument, "s must be positive");
  require(m >= 1 && m <= d, ErrorKind::kInvalidArgument, "copy count out of range");
  std::size_t n = 1;
  for (int k = 0; k < m; ++k) n *= static_cast<std::size_t>(d);
  const auto ni = static_cast<Eigen::Index>(n);

  // Antisymmetrizer (1/m!) sum_pi sign(pi) P_pi.
  CMatrix x = CMatrix::Zero(ni, ni);
  std::vector<int> perm(static_cast<std::size_t>(m));
  std::iota(perm.begin(), perm.end(), 0);
  double count = 0.0;
  do {
    int inversions = 0;
    for (int a = 0; a < m; ++a)
      for (int b = a + 1; b < m; ++b)
        if (perm[static_cast<std::size_t>(a)] > perm[static_cast<std::size_t>(b)]) ++inversions;
    const double sign = inversions % 2 == 0 ? 1.0 : -1.0;
    for (std::size_t i = 0; i < n; ++i)
      x(static_cast<Eigen::Index>(permute_index(i, perm, d)), static_cast<Eigen::Index>(i)) +=
          sign;
    count += 1.0;
  } while (std::next_permutation(perm.begin(), perm.end()));
  x /= count;

  // Apply L^dagger(Y) = ((1+s) Y - tr[rho Y] I) / s on each factor in turn.
  const double alpha = (1.0 + s) / s;
  const double beta = 1.0 / s;
  std::vector<std::size_t> stride(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) {
    std::size_t st = 1;
    for (int j = k + 1; j < m; ++j) st *= static_cast<std::size_t>(d);
    stride[static_cast<std::size_t>(k)] = st;
  }
  for (int k = 0; k < m; ++k) {
    const std::size_t st = stride[static_cast<std::size_t>(k)];
    const auto digit = [&](std::size_t idx) { return static_cast<int>((idx / st) % d); };
    // z(rest_r, rest_c) = sum_{a,b} rho(b, a) x(r with a, c with b), stored at
    // the positions whose k-th digits are zero.
    CMatrix z = CMatrix::Zero(ni, ni);
    for (std::size_t r = 0; r < n; ++r) {
      if (digit(r) != 0) continue;
      for (std::size_t c = 0; c < n; ++c) {
        if (digit(c) != 0) continue;
        Complex acc(0.0, 0.0);
        for (int a = 0; a < d; ++a)
          for (int b = 0; b < d; ++b)
            acc += rho.matrix()(b, a) *
                   x(static_cast<Eigen::Index>(r + a * st), static_cast<Eigen::Index>(c + b * st));
        z(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = acc;
      }
    }
    CMatrix next = alpha * x;
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        if (digit(r) != digit(c)) continue;
        const std::size_t r0 = r - static_cast<std::size_t>(digit(r)) * st;
        const std::size_t c0 = c - static_cast<std::size_t>(digit(c)) * st;
        next(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) -=
            beta * z(static_cast<Eigen::Index>(r0), static_cast<Eigen::Index>(c0));
      }
    }
    x = std::move(next);
  }
  return HermitianMatrix(CMatrix(0.5 * (x + x.adjoint())));
}

double brute_force_binary(const CMatrix& q1, const CMatrix& q2) {
  require(q1.rows() == 2 && q2.rows() == 2, ErrorKind::kInvalidDimension,
          "brute-force search is for qubit outputs");
  const CMatrix diff = q1 - q2;
  const double base = q2.trace().real();
  const GellMannBasis paulis = gell_mann_basis(2);
  // M = (t0 I + r n.sigma) / 2 with 0 <= r <= 1 and r <= t0 <= 2 - r.
  const auto value = [&](double a, double r, double theta, double phi) {
    r = std::clamp(r, 0.0, 1.0);
    a = std::clamp(a, 0.0, 1.0);
    const double t0 = r + a * (2.0 - 2.0 * r);
    const double n[3] = {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                         std::cos(theta)};
    CMatrix m = t0 * CMatrix::Identity(2, 2);
    for (int j = 0; j < 3; ++j)
      m += (r * n[j]) * paulis.elements[static_cast<std::size_t>(j)].matrix();
    return base + 0.5 * (m * diff).trace().real();
  };

  struct Start {
    double v;
    RVector p;
  };
  std::vector<Start> grid;
  constexpr int kDirections = 400;
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < kDirections; ++i) {
    const double z = 1.0 - 2.0 * (i + 0.5) / kDirections;
    const double theta = std::acos(z);
    const double phi = golden * i;
    for (int ri = 0; ri <= 10; ++ri) {
      for (int ai = 0; ai <= 10; ++ai) {
        RVector p(4);
        p << ai / 10.0, ri / 10.0, theta, phi;
        grid.push_back(Start{value(p(0), p(1), p(2), p(3)), p});
      }
    }
  }
  std::partial_sort(grid.begin(), grid.begin() + 5, grid.end(),
                    [](const Start& x, const Start& y) { return x.v > y.v; });
  double best = grid.front().v;
  for (int i = 0; i < 5; ++i) {
    const auto neg = [&](const RVector& p) { return -value(p(0), p(1), p(2), p(3)); };
    const auto res = detail::nelder_mead(neg, grid[static_cast<std::size_t>(i)].p, 0.05,
                                         1e-15, 4000);
    best = std::max(best, -res.value);
  }
  return best;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"all", "byrd", "witness", "duality",
                                              "theorems"};
  return names;
}

bool is_suite(const std::string& name) {
  const auto& n = suite_names();
  return std::find(n.begin(), n.end(), name) != n.end();
}

std::vector<CheckResult> run_suite(const std::string& suite, const SuiteConfig& cfg) {
  require(is_suite(suite), ErrorKind::kInvalidArgument, "unknown suite: " + suite);
  std::vector<CheckResult> out;
  for (const auto& e : registry()) {
    if (suite != "all" && suite != e.suite) continue;
    auto part = e.run(cfg);
    out.insert(out.end(), part.begin(), part.end());
  }
  std::stable_sort(out.begin(), out.end(), [](const CheckResult& a, const CheckResult& b) {
    return a.criterion < b.criterion;
  });
  return out;
}

}  // namespace robkit::oracle
