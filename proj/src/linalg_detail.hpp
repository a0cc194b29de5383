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

#include <functional>
#include <optional>

#include "robkit/qcore.hpp"

namespace robkit::detail {

struct PhaseOneResult {
  RVector x;          // nonnegative point minimizing the artificial mass
  double infeasibility;  // optimal sum of artificial variables
};

/// Phase-one simplex for {x >= 0 : A x = b} using Bland's rule on a dense
/// tableau. Always returns the point found; callers decide feasibility from
/// the residual.
PhaseOneResult phase_one_simplex(const RMatrix& a, const RVector& b);

/// Euclidean projection of `v` onto the probability simplex.
RVector project_to_simplex(const RVector& v);

/// Real coordinates of a Hermitian matrix: diagonal, then Re and Im of the
/// strict upper triangle (row-major). Length d^2.
RVector hermitian_coords(const CMatrix& m);

struct NelderMeadResult {
  RVector x;
  double value;
  int iterations;
};

/// Downhill simplex minimization from `x0` with an initial axis-aligned
/// simplex of edge `step`. Stops when the spread of simplex values falls
/// below `ftol` or after `max_iter` iterations.
NelderMeadResult nelder_mead(const std::function<double(const RVector&)>& f,
                             const RVector& x0, double step, double ftol,
                             int max_iter);

}  // namespace robkit::detail
