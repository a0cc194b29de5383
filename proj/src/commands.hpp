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
#include <optional>
#include <string>
#include <vector>

#include "io.hpp"
#include "robkit/error.hpp"
#include "robkit/freesets.hpp"
#include "robkit/qcore.hpp"

namespace robkit::cmd {

/// Mirrors the status codes of the C interface.
enum Status : int {
  kOk = 0,
  kInputError = 1,
  kNotApplicable = 2,
  kInvalidRegime = 3,
  kVerifyFailed = 4,
  kNumericError = 5,
  kInternalError = 6,
};

struct Config {
  std::uint64_t seed = 1;
  std::optional<double> tol;
  int cap_dim = 4;
  int n_flags = 10000;
  std::optional<double> s;
  int n_samples = 1000;
};

struct Artifact {
  std::string name;
  std::string data;
};

struct Output {
  Status status = kOk;
  double value = 0.0;
  io::Json report;
  std::vector<Artifact> artifacts;
};

/// Maps a library error onto a status.
Status status_for(const Error& e);

Output robustness(const DensityMatrix& rho, const FreeSet& set, const Config& cfg);
Output witness(const DensityMatrix& rho, const FreeSet& set, const Config& cfg);
Output discriminate(const DensityMatrix& rho, const FreeSet& set,
                    const std::string& mode, const Config& cfg);
Output verify(const std::string& suite, const Config& cfg);

/// N values of the advantage sweep: 10, 100, 1000 and n (deduplicated, sorted).
std::vector<int> sweep_points(int n);

/// Static line chart of achieved / target against log10 N, one line per row
/// label in the sweep CSV.
std::string sweep_svg(const std::vector<std::string>& labels,
                      const std::vector<int>& ns,
                      const std::vector<std::vector<double>>& ratios);

}  // namespace robkit::cmd
