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
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "robkit/freesets.hpp"
#include "robkit/qcore.hpp"
#include "robkit/robustness.hpp"
#include "robkit/witness.hpp"

namespace robkit {

/// State diagonal in a flag basis of `dim` outcomes: probability of flag f is
/// background + (entry for f, if any). Keeps N-flag ensembles linear in N.
class FlagState {
 public:
  FlagState(int dim, std::vector<std::pair<int, double>> entries,
            double background);
  static FlagState point(int dim, int flag);
  static FlagState uniform(int dim);

  int dim() const noexcept { return dim_; }
  double background() const noexcept { return background_; }
  /// Sorted by flag, unique.
  const std::vector<std::pair<int, double>>& entries() const noexcept {
    return entries_;
  }
  double probability(int flag) const;
  DensityMatrix dense() const;

 private:
  int dim_;
  std::vector<std::pair<int, double>> entries_;
  double background_;
};

using OutputState = std::variant<DensityMatrix, FlagState>;

int output_dim(const OutputState& out);

class Channel {
 public:
  enum class Kind { kMeasurePrepare, kConstant };

  /// Measures with `effects` (PSD, summing to I) and prepares outputs[j] on
  /// outcome j.
  static Channel measure_prepare(std::vector<HermitianMatrix> effects,
                                 std::vector<OutputState> outputs);
  static Channel constant(int in_dim, OutputState output);

  Kind kind() const noexcept { return kind_; }
  int in_dim() const noexcept { return in_dim_; }
  int out_dim() const noexcept { return out_dim_; }
  bool flag_outputs() const noexcept;
  const std::vector<HermitianMatrix>& effects() const noexcept { return effects_; }
  /// For constant channels, a single output.
  const std::vector<OutputState>& outputs() const noexcept { return outputs_; }

  /// Outcome weights tr[A_j input] (a single 1 for constant channels).
  std::vector<double> outcome_weights(const HermitianMatrix& input) const;

 private:
  Channel() = default;
  Kind kind_ = Kind::kConstant;
  int in_dim_ = 0;
  int out_dim_ = 0;
  std::vector<HermitianMatrix> effects_;
  std::vector<OutputState> outputs_;
};

class ChannelEnsemble {
 public:
  ChannelEnsemble(std::vector<double> priors, std::vector<Channel> channels);

  const std::vector<double>& priors() const noexcept { return priors_; }
  const std::vector<Channel>& channels() const noexcept { return channels_; }
  std::size_t size() const noexcept { return channels_.size(); }
  int in_dim() const noexcept { return channels_.front().in_dim(); }
  int out_dim() const noexcept { return channels_.front().out_dim(); }
  bool flag_outputs() const noexcept { return channels_.front().flag_outputs(); }

 private:
  std::vector<double> priors_;
  std::vector<Channel> channels_;
};

class POVM {
 public:
  explicit POVM(std::vector<HermitianMatrix> elements);
  const std::vector<HermitianMatrix>& elements() const noexcept { return elements_; }
  int dim() const noexcept { return elements_.front().dim(); }
  std::size_t size() const noexcept { return elements_.size(); }

 private:
  std::vector<HermitianMatrix> elements_;
};

/// Projective measurement in the flag basis followed by a guess per flag.
struct FlagDecision {
  int flag_dim = 0;
  std::vector<int> guess;  // guess[f] = channel index

  /// guess[f] = f for every flag.
  static FlagDecision identity(int n);
};

using Measurement = std::variant<POVM, FlagDecision>;

/// POVM with n random elements built from Ginibre positives normalized to
/// sum to the identity.
POVM random_povm(int dim, int n, Rng& rng);

/// Effect G = sum_i p_i Lambda_i^dagger(M_i) on the input space; the success
/// probability on any input is tr[G input].
HermitianMatrix induced_effect(const ChannelEnsemble& ens, const Measurement& m);

double success_probability(const ChannelEnsemble& ens, const Measurement& m,
                           const DensityMatrix& input);

struct OptimalMeasurement {
  Measurement measurement;
  double value;
  bool exact;  // false only for the pretty-good-measurement fallback
};

/// Flag outputs: per-flag argmax (exact). Two dense outputs: Helstrom.
/// More dense outputs: common-eigenbasis argmax when they commute, else the
/// pretty good measurement as a lower bound.
OptimalMeasurement optimal_measurement(const ChannelEnsemble& ens,
                                       const DensityMatrix& input);

/// Binary task with uniform priors whose optimal success on eta^{(x)m} is
/// (1 + tr[A eta^{(x)m}]) / 2 with A = I/2 - W~_m / (2 ||W~_m||).
ChannelEnsemble task_from_witness(const ShiftedWitnessFamily& family, int m);
HermitianMatrix witness_task_effect(const ShiftedWitnessFamily& family, int m);

/// max_m optimal(rho^{(x)m}) / optimal(sigma^{(x)m}).
double multi_input_advantage(const DensityMatrix& rho, const DensityMatrix& sigma,
                             const std::map<int, ChannelEnsemble>& tasks,
                             std::size_t cap = Limits{}.operator_cap);

struct QualitativeReport {
  double robustness = 0.0;
  double s = 0.0;
  double target = 1.0;
  double min_ratio = 0.0;
  double margin = 0.0;      // min_ratio - 1
  double std_error = 0.0;   // bootstrap standard error of min_ratio
  double spread_error = 0.0;  // standard deviation of sampled ratios / sqrt(n)
  int samples = 0;
  std::uint64_t seed = 0;
  bool heuristic = false;
  std::optional<DensityMatrix> worst_sigma;

  bool passed() const { return margin > 3.0 * std_error && margin > 0.0; }
};

/// Builds the witness family at s = s_fraction * R, turns each member into a
/// task and minimizes the multi-input advantage over sampled free states
/// (samples, extreme points, the delta maximizer, then local refinement).
QualitativeReport verify_qualitative_advantage(const DensityMatrix& rho,
                                               const FreeSet& set, int n_samples,
                                               std::uint64_t seed,
                                               double s_fraction = 0.9,
                                               const Limits& limits = {});

/// N flags, uniform priors; channel i measures {A, I - A} with A = X/||X||
/// and prepares flag i or the uniform flag mixture. Optimal success on eta is
/// (1 - 1/N) tr[A eta] + 1/N.
ChannelEnsemble achieving_ensemble(const HermitianMatrix& x, int n);

/// success(rho) / max_{sigma in K} success(sigma).
double fixed_task_advantage(const DensityMatrix& rho, const ConvexFreeSet& set,
                            const ChannelEnsemble& ens, const Measurement& m);

struct SubsetAdvantage {
  std::string label;
  double robustness;
  double target;    // 1 + R_k
  double achieved;
};

struct WorstCaseAdvantage {
  double value;     // min_k achieved
  double target;    // 1 + R_F
  double tolerance; // (1 + R_F)(2/N + 1e-6)
  int n;
  std::vector<SubsetAdvantage> per_subset;

  bool passed() const { return std::abs(value - target) <= tolerance; }
};

WorstCaseAdvantage worst_case_advantage(const DensityMatrix& rho,
                                        const FreeSet& set, int n,
                                        const RobustnessOptions& opts = {});

}  // namespace robkit
