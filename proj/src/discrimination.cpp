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

#include "robkit/discrimination.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "linalg_detail.hpp"
#include "robkit/error.hpp"

namespace robkit {
namespace {

constexpr double kEffectPsdTol = 1e-10;
constexpr double kCompletenessTol = 1e-9;
constexpr double kCommuteTol = 1e-10;

void check_complete(const std::vector<HermitianMatrix>& ops, const char* what) {
  require(!ops.empty(), ErrorKind::kInvalidArgument,
          std::string(what) + " needs at least one element");
  const int d = ops.front().dim();
  CMatrix sum = CMatrix::Zero(d, d);
  for (const auto& op : ops) {
    require(op.dim() == d, ErrorKind::kDimensionMismatch,
            std::string(what) + " elements differ in dimension");
    require(op.is_psd(kEffectPsdTol), ErrorKind::kInvalidArgument,
            std::string(what) + " element is not positive semidefinite");
    sum += op.matrix();
  }
  const double err = (sum - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
  require(err <= kCompletenessTol, ErrorKind::kInvalidArgument,
          std::string(what) + " elements do not sum to the identity");
}

bool is_flag(const OutputState& o) { return std::holds_alternative<FlagState>(o); }

// tr[M out] for a measurement operator on the output space.
double mass(const HermitianMatrix& m, const OutputState& out) {
  if (const auto* dense = std::get_if<DensityMatrix>(&out))
    return m.inner(dense->hermitian());
  const auto& flags = std::get<FlagState>(out);
  const CMatrix& mm = m.matrix();
  double acc = flags.background() * mm.trace().real();
  for (const auto& [f, v] : flags.entries()) acc += v * mm(f, f).real();
  return acc;
}

CMatrix dense_output(const Channel& ch, const HermitianMatrix& input) {
  const auto w = ch.outcome_weights(input);
  CMatrix out = CMatrix::Zero(ch.out_dim(), ch.out_dim());
  for (std::size_t j = 0; j < w.size(); ++j) {
    const auto& o = ch.outputs()[j];
    if (const auto* dense = std::get_if<DensityMatrix>(&o)) {
      out += w[j] * dense->matrix();
    } else {
      out += w[j] * std::get<FlagState>(o).dense().matrix();
    }
  }
  return out;
}

HermitianMatrix projector_from(const EigenDecomposition& eig,
                               const std::vector<Eigen::Index>& cols) {
  const auto d = eig.vectors.rows();
  CMatrix p = CMatrix::Zero(d, d);
  for (Eigen::Index c : cols) p += eig.vectors.col(c) * eig.vectors.col(c).adjoint();
  return HermitianMatrix(CMatrix(0.5 * (p + p.adjoint())));
}

OptimalMeasurement optimal_flags(const ChannelEnsemble& ens,
                                 const HermitianMatrix& input) {
  const int nflags = ens.out_dim();
  const std::size_t n = ens.size();
  // Q_i(f) = background_i + sparse part, already weighted by the prior.
  std::vector<double> background(n, 0.0);
  std::vector<std::vector<std::pair<std::size_t, double>>> touched(
      static_cast<std::size_t>(nflags));
  for (std::size_t i = 0; i < n; ++i) {
    const Channel& ch = ens.channels()[i];
    const auto w = ch.outcome_weights(input);
    std::map<int, double> sparse;
    for (std::size_t j = 0; j < w.size(); ++j) {
      const auto& fs = std::get<FlagState>(ch.outputs()[j]);
      background[i] += ens.priors()[i] * w[j] * fs.background();
      for (const auto& [f, v] : fs.entries()) sparse[f] += ens.priors()[i] * w[j] * v;
    }
    for (const auto& [f, v] : sparse) touched[static_cast<std::size_t>(f)].emplace_back(i, v);
  }
  std::size_t bg_best = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (background[i] > background[bg_best]) bg_best = i;

  FlagDecision dec{nflags, std::vector<int>(static_cast<std::size_t>(nflags))};
  double value = 0.0;
  for (int f = 0; f < nflags; ++f) {
    std::size_t arg = bg_best;
    double best = background[bg_best];
    for (const auto& [i, v] : touched[static_cast<std::size_t>(f)]) {
      const double q = background[i] + v;
      if (q > best || (q == best && i < arg)) {
        best = q;
        arg = i;
      }
    }
    dec.guess[static_cast<std::size_t>(f)] = static_cast<int>(arg);
    value += best;
  }
  return OptimalMeasurement{std::move(dec), value, true};
}

bool all_commute(const std::vector<CMatrix>& qs) {
  for (std::size_t a = 0; a < qs.size(); ++a)
    for (std::size_t b = a + 1; b < qs.size(); ++b) {
      const double scale = std::max({1.0, qs[a].norm(), qs[b].norm()});
      if ((qs[a] * qs[b] - qs[b] * qs[a]).norm() > kCommuteTol * scale * scale)
        return false;
    }
  return true;
}

OptimalMeasurement optimal_dense(const ChannelEnsemble& ens,
                                 const HermitianMatrix& input) {
  const std::size_t n = ens.size();
  const int d = ens.out_dim();
  std::vector<CMatrix> qs;
  qs.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    qs.push_back(ens.priors()[i] * dense_output(ens.channels()[i], input));

  const auto value_of = [&](const std::vector<HermitianMatrix>& povm) {
    double v = 0.0;
    for (std::size_t i = 0; i < n; ++i) v += povm[i].inner(qs[i]);
    return v;
  };

  if (n == 1) {
    std::vector<HermitianMatrix> el{HermitianMatrix::identity(d)};
    const double v = value_of(el);
    return OptimalMeasurement{POVM(std::move(el)), v, true};
  }
  if (n == 2) {
    const CMatrix diff = qs[0] - qs[1];
    const auto eig = eig_hermitian(HermitianMatrix(CMatrix(0.5 * (diff + diff.adjoint()))));
    std::vector<Eigen::Index> pos, rest;
    for (Eigen::Index k = 0; k < eig.values.size(); ++k)
      (eig.values(k) > 0.0 ? pos : rest).push_back(k);
    std::vector<HermitianMatrix> el{projector_from(eig, pos), projector_from(eig, rest)};
    const double v = value_of(el);
    return OptimalMeasurement{POVM(std::move(el)), v, true};
  }
  if (all_commute(qs)) {
    // Generic real combination shares the common eigenbasis.
    CMatrix mix = CMatrix::Zero(d, d);
    for (std::size_t i = 0; i < n; ++i)
      mix += qs[i] * (1.0 / std::sqrt(2.0 + static_cast<double>(i) * 1.6180339887));
    const auto eig = eig_hermitian(HermitianMatrix(CMatrix(0.5 * (mix + mix.adjoint()))));
    std::vector<std::vector<Eigen::Index>> cols(n);
    for (Eigen::Index k = 0; k < d; ++k) {
      const CVector v = eig.vectors.col(k);
      std::size_t arg = 0;
      double best = -std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < n; ++i) {
        const double q = (v.adjoint() * qs[i] * v)(0, 0).real();
        if (q > best) {
          best = q;
          arg = i;
        }
      }
      cols[arg].push_back(k);
    }
    std::vector<HermitianMatrix> el;
    for (std::size_t i = 0; i < n; ++i) el.push_back(projector_from(eig, cols[i]));
    const double v = value_of(el);
    return OptimalMeasurement{POVM(std::move(el)), v, true};
  }
  // Pretty good measurement on the support of sum_i Q_i; the kernel goes to
  // the first element.
  CMatrix total = CMatrix::Zero(d, d);
  for (const auto& q : qs) total += q;
  const auto eig = eig_hermitian(HermitianMatrix(CMatrix(0.5 * (total + total.adjoint()))));
  const double cut = 1e-12 * std::max(1.0, eig.values.maxCoeff());
  RVector inv_sqrt = RVector::Zero(d);
  std::vector<Eigen::Index> kernel;
  for (Eigen::Index k = 0; k < d; ++k) {
    if (eig.values(k) > cut) {
      inv_sqrt(k) = 1.0 / std::sqrt(eig.values(k));
    } else {
      kernel.push_back(k);
    }
  }
  const CMatrix root =
      eig.vectors * inv_sqrt.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
  std::vector<HermitianMatrix> el;
  for (std::size_t i = 0; i < n; ++i) {
    CMatrix e = root * qs[i] * root;
    if (i == 0) e += projector_from(eig, kernel).matrix();
    el.emplace_back(CMatrix(0.5 * (e + e.adjoint())));
  }
  const double v = value_of(el);
  return OptimalMeasurement{POVM(std::move(el)), v, false};
}

RVector softmax(const RVector& t) {
  RVector w = (t.array() - t.maxCoeff()).exp().matrix();
  return w / w.sum();
}

}  // namespace

FlagState::FlagState(int dim, std::vector<std::pair<int, double>> entries,
                     double background)
    : dim_(dim), entries_(std::move(entries)), background_(background) {
  require(dim >= 1, ErrorKind::kInvalidDimension, "flag space needs a flag");
  require(background >= 0.0, ErrorKind::kInvalidArgument,
          "flag background must be nonnegative");
  std::sort(entries_.begin(), entries_.end());
  double total = background * dim;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& [f, v] = entries_[i];
    require(f >= 0 && f < dim, ErrorKind::kInvalidArgument, "flag index out of range");
    require(i == 0 || entries_[i - 1].first != f, ErrorKind::kInvalidArgument,
            "duplicate flag entry");
    require(v >= 0.0, ErrorKind::kInvalidArgument, "flag weights must be nonnegative");
    total += v;
  }
  require(std::abs(total - 1.0) <= 1e-10, ErrorKind::kInvalidArgument,
          "flag probabilities must sum to one");
}

FlagState FlagState::point(int dim, int flag) { return FlagState(dim, {{flag, 1.0}}, 0.0); }

FlagState FlagState::uniform(int dim) { return FlagState(dim, {}, 1.0 / dim); }

double FlagState::probability(int flag) const {
  require(flag >= 0 && flag < dim_, ErrorKind::kInvalidArgument, "flag index out of range");
  const auto it = std::lower_bound(entries_.begin(), entries_.end(),
                                   std::make_pair(flag, -1.0));
  const double extra = (it != entries_.end() && it->first == flag) ? it->second : 0.0;
  return background_ + extra;
}

DensityMatrix FlagState::dense() const {
  RVector p = RVector::Constant(dim_, background_);
  for (const auto& [f, v] : entries_) p(f) += v;
  return DensityMatrix(HermitianMatrix::diagonal(p));
}

int output_dim(const OutputState& out) {
  return std::visit([](const auto& o) { return o.dim(); }, out);
}

Channel Channel::measure_prepare(std::vector<HermitianMatrix> effects,
                                 std::vector<OutputState> outputs) {
  check_complete(effects, "channel effect set");
  require(effects.size() == outputs.size(), ErrorKind::kInvalidArgument,
          "each effect needs one output state");
  const int out_dim = output_dim(outputs.front());
  const bool flags = is_flag(outputs.front());
  for (const auto& o : outputs) {
    require(output_dim(o) == out_dim, ErrorKind::kDimensionMismatch,
            "channel outputs differ in dimension");
    require(is_flag(o) == flags, ErrorKind::kInvalidArgument,
            "channel mixes flag and dense outputs");
  }
  Channel ch;
  ch.kind_ = Kind::kMeasurePrepare;
  ch.in_dim_ = effects.front().dim();
  ch.out_dim_ = out_dim;
  ch.effects_ = std::move(effects);
  ch.outputs_ = std::move(outputs);
  return ch;
}

Channel Channel::constant(int in_dim, OutputState output) {
  require(in_dim >= 1, ErrorKind::kInvalidDimension, "input dimension must be positive");
  Channel ch;
  ch.kind_ = Kind::kConstant;
  ch.in_dim_ = in_dim;
  ch.out_dim_ = output_dim(output);
  ch.outputs_.push_back(std::move(output));
  return ch;
}

bool Channel::flag_outputs() const noexcept { return is_flag(outputs_.front()); }

std::vector<double> Channel::outcome_weights(const HermitianMatrix& input) const {
  require(input.dim() == in_dim_, ErrorKind::kDimensionMismatch,
          "channel input dimension mismatch");
  if (kind_ == Kind::kConstant) return {input.trace()};
  std::vector<double> w;
  w.reserve(effects_.size());
  for (const auto& e : effects_) w.push_back(e.inner(input));
  return w;
}

ChannelEnsemble::ChannelEnsemble(std::vector<double> priors,
                                 std::vector<Channel> channels)
    : priors_(std::move(priors)), channels_(std::move(channels)) {
  require(!channels_.empty(), ErrorKind::kInvalidArgument, "ensemble needs a channel");
  require(priors_.size() == channels_.size(), ErrorKind::kInvalidArgument,
          "one prior per channel required");
  double total = 0.0;
  for (double p : priors_) {
    require(p >= 0.0, ErrorKind::kInvalidArgument, "priors must be nonnegative");
    total += p;
  }
  require(std::abs(total - 1.0) <= 1e-12, ErrorKind::kInvalidArgument,
          "priors must sum to one");
  for (const auto& ch : channels_) {
    require(ch.in_dim() == in_dim() && ch.out_dim() == out_dim(),
            ErrorKind::kDimensionMismatch, "channels differ in dimensions");
    require(ch.flag_outputs() == flag_outputs(), ErrorKind::kInvalidArgument,
            "ensemble mixes flag and dense outputs");
  }
}

POVM::POVM(std::vector<HermitianMatrix> elements) : elements_(std::move(elements)) {
  check_complete(elements_, "POVM");
}

FlagDecision FlagDecision::identity(int n) {
  FlagDecision d{n, std::vector<int>(static_cast<std::size_t>(n))};
  std::iota(d.guess.begin(), d.guess.end(), 0);
  return d;
}

POVM random_povm(int dim, int n, Rng& rng) {
  require(dim >= 1 && n >= 1, ErrorKind::kInvalidArgument,
          "POVM needs positive dimension and size");
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<CMatrix> raw;
  CMatrix total = CMatrix::Zero(dim, dim);
  for (int i = 0; i < n; ++i) {
    CMatrix a(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r)
      for (Eigen::Index c = 0; c < dim; ++c) a(r, c) = Complex(g(rng), g(rng));
    raw.push_back(a * a.adjoint());
    total += raw.back();
  }
  const auto eig = eig_hermitian(HermitianMatrix(CMatrix(0.5 * (total + total.adjoint()))));
  const CMatrix root = eig.vectors *
                       eig.values.cwiseSqrt().cwiseInverse().cast<Complex>().asDiagonal() *
                       eig.vectors.adjoint();
  std::vector<HermitianMatrix> el;
  for (const auto& r : raw) {
    const CMatrix e = root * r * root;
    el.emplace_back(CMatrix(0.5 * (e + e.adjoint())));
  }
  return POVM(std::move(el));
}

HermitianMatrix induced_effect(const ChannelEnsemble& ens, const Measurement& m) {
  const int din = ens.in_dim();
  const std::size_t n = ens.size();
  // weight[i][j]: probability that outcome j of channel i is guessed as i.
  std::vector<std::vector<double>> weight(n);
  if (const auto* dec = std::get_if<FlagDecision>(&m)) {
    require(ens.flag_outputs(), ErrorKind::kInvalidArgument,
            "flag decisions need flag outputs");
    require(dec->flag_dim == ens.out_dim() &&
                dec->guess.size() == static_cast<std::size_t>(dec->flag_dim),
            ErrorKind::kDimensionMismatch, "flag decision size mismatch");
    std::vector<double> count(n, 0.0);
    for (int g : dec->guess) {
      require(g >= 0 && static_cast<std::size_t>(g) < n, ErrorKind::kInvalidArgument,
              "flag decision guesses an unknown channel");
      count[static_cast<std::size_t>(g)] += 1.0;
    }
    for (std::size_t i = 0; i < n; ++i)
      for (const auto& o : ens.channels()[i].outputs()) {
        const auto& fs = std::get<FlagState>(o);
        double w = fs.background() * count[i];
        for (const auto& [f, v] : fs.entries())
          if (dec->guess[static_cast<std::size_t>(f)] == static_cast<int>(i)) w += v;
        weight[i].push_back(w);
      }
  } else {
    const auto& povm = std::get<POVM>(m);
    require(povm.size() == n, ErrorKind::kInvalidArgument,
            "POVM size must equal the channel count");
    require(povm.dim() == ens.out_dim(), ErrorKind::kDimensionMismatch,
            "POVM acts on the wrong space");
    for (std::size_t i = 0; i < n; ++i)
      for (const auto& o : ens.channels()[i].outputs())
        weight[i].push_back(mass(povm.elements()[i], o));
  }

  CMatrix g = CMatrix::Zero(din, din);
  for (std::size_t i = 0; i < n; ++i) {
    const Channel& ch = ens.channels()[i];
    const double p = ens.priors()[i];
    if (ch.kind() == Channel::Kind::kConstant) {
      g.diagonal().array() += p * weight[i][0];
    } else {
      for (std::size_t j = 0; j < ch.effects().size(); ++j)
        g += (p * weight[i][j]) * ch.effects()[j].matrix();
    }
  }
  return HermitianMatrix(CMatrix(0.5 * (g + g.adjoint())));
}

double success_probability(const ChannelEnsemble& ens, const Measurement& m,
                           const DensityMatrix& input) {
  require(input.dim() == ens.in_dim(), ErrorKind::kDimensionMismatch,
          "input dimension does not match the ensemble");
  return induced_effect(ens, m).inner(input.hermitian());
}

OptimalMeasurement optimal_measurement(const ChannelEnsemble& ens,
                                       const DensityMatrix& input) {
  require(input.dim() == ens.in_dim(), ErrorKind::kDimensionMismatch,
          "input dimension does not match the ensemble");
  return ens.flag_outputs() ? optimal_flags(ens, input.hermitian())
                            : optimal_dense(ens, input.hermitian());
}

HermitianMatrix witness_task_effect(const ShiftedWitnessFamily& family, int m) {
  const auto it = family.members.find(m);
  require(it != family.members.end(), ErrorKind::kInvalidArgument,
          "family has no member for this copy count");
  const HermitianMatrix& w = it->second;
  const double c = 1.0 / (2.0 * w.operator_norm());
  return HermitianMatrix::identity(w.dim()) * 0.5 - w * c;
}

ChannelEnsemble task_from_witness(const ShiftedWitnessFamily& family, int m) {
  const HermitianMatrix a = witness_task_effect(family, m);
  const int din = a.dim();
  const auto zero = DensityMatrix::basis_state(2, 0);
  const auto one = DensityMatrix::basis_state(2, 1);
  std::vector<Channel> chans;
  chans.push_back(Channel::measure_prepare(
      {a, HermitianMatrix::identity(din) - a}, {OutputState(zero), OutputState(one)}));
  chans.push_back(Channel::constant(din, OutputState(one)));
  return ChannelEnsemble({0.5, 0.5}, std::move(chans));
}

double multi_input_advantage(const DensityMatrix& rho, const DensityMatrix& sigma,
                             const std::map<int, ChannelEnsemble>& tasks,
                             std::size_t cap) {
  require(!tasks.empty(), ErrorKind::kInvalidArgument, "no tasks given");
  require(rho.dim() == sigma.dim(), ErrorKind::kDimensionMismatch,
          "state dimensions differ");
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& [m, task] : tasks) {
    const DensityMatrix r(tensor_power(rho.hermitian(), m, cap));
    const DensityMatrix s(tensor_power(sigma.hermitian(), m, cap));
    best = std::max(best, optimal_measurement(task, r).value /
                              optimal_measurement(task, s).value);
  }
  return best;
}

QualitativeReport verify_qualitative_advantage(const DensityMatrix& rho,
                                               const FreeSet& set, int n_samples,
                                               std::uint64_t seed,
                                               double s_fraction,
                                               const Limits& limits) {
  require(s_fraction > 0.0 && s_fraction < 1.0, ErrorKind::kInvalidArgument,
          "s fraction must lie in (0, 1)");
  const double r = robustness_union(rho, set).value;
  if (!(r > 0.0) || !std::isfinite(r))
    fail(ErrorKind::kNotApplicable,
         "qualitative advantage needs a resource state with finite robustness");

  QualitativeReport rep;
  rep.robustness = r;
  rep.s = s_fraction * r;
  rep.seed = seed;
  const WitnessFamily base = build_witness_family(rho, rep.s, limits);
  const DeltaEstimate est = compute_deltas(base, set, n_samples, seed);
  rep.heuristic = !est.exact;
  const ShiftedWitnessFamily fam = shift_family(base, est.deltas, 1.0);
  std::map<int, ChannelEnsemble> tasks;
  for (const auto& [m, w] : fam.members) tasks.emplace(m, task_from_witness(fam, m));

  double best = std::numeric_limits<double>::infinity();
  const auto consider = [&](const DensityMatrix& sigma) {
    const double v = multi_input_advantage(rho, sigma, tasks, limits.operator_cap);
    if (v < best) {
      best = v;
      rep.worst_sigma = sigma;
    }
    return v;
  };

  std::vector<std::vector<std::pair<double, RVector>>> starts(set.subsets().size());
  std::vector<double> ratios;
  // Minimum over candidates that are not part of the random sample.
  double fixed_min = std::numeric_limits<double>::infinity();
  for (const auto& sample : sample_free(set, n_samples, seed + 1)) {
    const double v = consider(sample.state);
    ratios.push_back(v);
    starts[sample.subset].emplace_back(v, sample.weights);
  }
  for (std::size_t k = 0; k < set.subsets().size(); ++k) {
    const auto& verts = set.subsets()[k].extreme_points();
    for (std::size_t i = 0; i < verts.size(); ++i) {
      RVector w = RVector::Zero(static_cast<Eigen::Index>(verts.size()));
      w(static_cast<Eigen::Index>(i)) = 1.0;
      const double v = consider(verts[i]);
      fixed_min = std::min(fixed_min, v);
      starts[k].emplace_back(v, w);
    }
  }
  if (est.maximizer) fixed_min = std::min(fixed_min, consider(*est.maximizer));

  constexpr std::size_t kStarts = 3;
  for (std::size_t k = 0; k < set.subsets().size(); ++k) {
    const ConvexFreeSet& subset = set.subsets()[k];
    auto& cand = starts[k];
    std::sort(cand.begin(), cand.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 0; i < std::min(kStarts, cand.size()); ++i) {
      const RVector theta = cand[i].second.array().max(1e-12).log().matrix();
      const auto f = [&](const RVector& t) {
        return multi_input_advantage(rho, subset.mixture(softmax(t)), tasks,
                                     limits.operator_cap);
      };
      const auto res = detail::nelder_mead(f, theta, 1.0, 1e-13, 1000);
      fixed_min = std::min(fixed_min, consider(subset.mixture(softmax(res.x))));
    }
  }

  const double n = static_cast<double>(ratios.size());
  const double mean = std::accumulate(ratios.begin(), ratios.end(), 0.0) / n;
  double var = 0.0;
  for (double v : ratios) var += (v - mean) * (v - mean);
  var /= std::max(1.0, n - 1.0);

  // Resample the random part; deterministic candidates stay in every replicate.
  constexpr int kBootstrap = 200;
  Rng boot(seed ^ 0xb5ad4eceda1ce2a9ULL);
  std::uniform_int_distribution<std::size_t> pick(0, ratios.size() - 1);
  std::vector<double> mins;
  mins.reserve(kBootstrap);
  for (int b = 0; b < kBootstrap; ++b) {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < ratios.size(); ++i) m = std::min(m, ratios[pick(boot)]);
    // Refined and structural candidates do not depend on the resample.
    mins.push_back(std::min(m, fixed_min));
  }
  const double bmean = std::accumulate(mins.begin(), mins.end(), 0.0) / kBootstrap;
  double bvar = 0.0;
  for (double v : mins) bvar += (v - bmean) * (v - bmean);
  bvar /= kBootstrap - 1;

  rep.samples = static_cast<int>(ratios.size());
  rep.min_ratio = best;
  rep.margin = best - 1.0;
  rep.std_error = std::sqrt(bvar);
  rep.spread_error = std::sqrt(var / n);
  return rep;
}

ChannelEnsemble achieving_ensemble(const HermitianMatrix& x, int n) {
  require(n >= 2, ErrorKind::kInvalidArgument, "ensemble needs at least two flags");
  require(x.is_psd(1e-10), ErrorKind::kInvalidArgument,
          "achieving operator must be positive semidefinite");
  const double norm = x.operator_norm();
  require(norm > 0.0, ErrorKind::kInvalidArgument, "achieving operator is zero");
  const HermitianMatrix a = x * (1.0 / norm);
  const HermitianMatrix rest = HermitianMatrix::identity(x.dim()) - a;
  const FlagState uniform = FlagState::uniform(n);
  std::vector<Channel> chans;
  chans.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    chans.push_back(Channel::measure_prepare(
        {a, rest}, {OutputState(FlagState::point(n, i)), OutputState(uniform)}));
  return ChannelEnsemble(std::vector<double>(static_cast<std::size_t>(n), 1.0 / n),
                         std::move(chans));
}

double fixed_task_advantage(const DensityMatrix& rho, const ConvexFreeSet& set,
                            const ChannelEnsemble& ens, const Measurement& m) {
  require(rho.dim() == set.dim() && rho.dim() == ens.in_dim(),
          ErrorKind::kDimensionMismatch, "task, state and free set dimensions differ");
  const HermitianMatrix g = induced_effect(ens, m);
  const double den = max_linear(g, set).value;
  require(den > 0.0, ErrorKind::kNumeric, "free success probability vanished");
  return g.inner(rho.hermitian()) / den;
}

WorstCaseAdvantage worst_case_advantage(const DensityMatrix& rho,
                                        const FreeSet& set, int n,
                                        const RobustnessOptions& opts) {
  require(n >= 2, ErrorKind::kInvalidArgument, "ensemble needs at least two flags");
  const UnionRobustness rob = robustness_union(rho, set, opts);
  if (!std::isfinite(rob.value))
    fail(ErrorKind::kNotApplicable, "worst-case advantage needs finite robustness");

  WorstCaseAdvantage out{std::numeric_limits<double>::infinity(), 1.0 + rob.value,
                         (1.0 + rob.value) * (2.0 / n + 1e-6), n, {}};
  const FlagDecision decision = FlagDecision::identity(n);
  for (std::size_t k = 0; k < set.subsets().size(); ++k) {
    const auto& cert = rob.per_subset[k];
    HermitianMatrix x = cert.dual_x;
    if (!(x.operator_norm() > 1e-12)) x = HermitianMatrix::identity(rho.dim());
    const ChannelEnsemble ens = achieving_ensemble(x, n);
    const double achieved = fixed_task_advantage(rho, set.subsets()[k], ens, decision);
    out.per_subset.push_back(
        SubsetAdvantage{cert.subset_label, cert.value, 1.0 + cert.value, achieved});
    out.value = std::min(out.value, achieved);
  }
  return out;
}

}  // namespace robkit
