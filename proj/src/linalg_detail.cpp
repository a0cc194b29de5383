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

#include "linalg_detail.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace robkit::detail {

PhaseOneResult phase_one_simplex(const RMatrix& a, const RVector& b) {
  const Eigen::Index rows = a.rows();
  const Eigen::Index n = a.cols();
  const Eigen::Index cols = n + rows;
  constexpr double kPivotTol = 1e-12;

  // Tableau [A | I | b] with rows sign-flipped so b >= 0; last row is the
  // reduced cost of the artificial objective.
  RMatrix t = RMatrix::Zero(rows + 1, cols + 1);
  std::vector<Eigen::Index> basis(static_cast<std::size_t>(rows));
  for (Eigen::Index i = 0; i < rows; ++i) {
    const double sign = b(i) < 0.0 ? -1.0 : 1.0;
    t.row(i).head(n) = sign * a.row(i);
    t(i, n + i) = 1.0;
    t(i, cols) = sign * b(i);
    basis[static_cast<std::size_t>(i)] = n + i;
  }
  for (Eigen::Index i = 0; i < rows; ++i) t.row(rows) -= t.row(i);
  for (Eigen::Index i = 0; i < rows; ++i) t(rows, n + i) = 0.0;

  const int max_iter = 50 * static_cast<int>(cols + rows);
  for (int iter = 0; iter < max_iter; ++iter) {
    Eigen::Index enter = -1;
    for (Eigen::Index j = 0; j < cols; ++j) {
      if (t(rows, j) < -kPivotTol) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;
    Eigen::Index leave = -1;
    double best = 0.0;
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (t(i, enter) > kPivotTol) {
        const double ratio = t(i, cols) / t(i, enter);
        if (leave < 0 || ratio < best - 1e-15 ||
            (std::abs(ratio - best) <= 1e-15 &&
             basis[static_cast<std::size_t>(i)] <
                 basis[static_cast<std::size_t>(leave)])) {
          leave = i;
          best = ratio;
        }
      }
    }
    if (leave < 0) break;  // unbounded direction cannot occur in phase one
    t.row(leave) /= t(leave, enter);
    for (Eigen::Index i = 0; i <= rows; ++i) {
      if (i != leave && t(i, enter) != 0.0) t.row(i) -= t(i, enter) * t.row(leave);
    }
    basis[static_cast<std::size_t>(leave)] = enter;
  }

  PhaseOneResult out{RVector::Zero(n), 0.0};
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Eigen::Index v = basis[static_cast<std::size_t>(i)];
    const double val = std::max(0.0, t(i, cols));
    if (v < n)
      out.x(v) = val;
    else
      out.infeasibility += val;
  }
  return out;
}

RVector project_to_simplex(const RVector& v) {
  std::vector<double> u(v.data(), v.data() + v.size());
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumsum = 0.0;
  double theta = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    cumsum += u[k];
    const double candidate = (cumsum - 1.0) / static_cast<double>(k + 1);
    if (u[k] - candidate > 0.0) theta = candidate;
  }
  return (v.array() - theta).cwiseMax(0.0);
}

RVector hermitian_coords(const CMatrix& m) {
  const Eigen::Index d = m.rows();
  RVector out(d * d);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < d; ++i) out(k++) = m(i, i).real();
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = i + 1; j < d; ++j) {
      out(k++) = m(i, j).real();
      out(k++) = m(i, j).imag();
    }
  return out;
}

NelderMeadResult nelder_mead(const std::function<double(const RVector&)>& f,
                             const RVector& x0, double step, double ftol,
                             int max_iter) {
  const Eigen::Index n = x0.size();
  std::vector<RVector> pts(static_cast<std::size_t>(n + 1), x0);
  std::vector<double> vals(static_cast<std::size_t>(n + 1));
  for (Eigen::Index i = 0; i < n; ++i) pts[static_cast<std::size_t>(i + 1)](i) += step;
  for (std::size_t i = 0; i < pts.size(); ++i) vals[i] = f(pts[i]);

  std::vector<std::size_t> order(pts.size());
  int iter = 0;
  for (; iter < max_iter; ++iter) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[order.size() - 2];
    if (std::abs(vals[worst] - vals[best]) <= ftol) break;

    RVector centroid = RVector::Zero(n);
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (i != worst) centroid += pts[i];
    centroid /= static_cast<double>(n);

    const RVector reflected = centroid + (centroid - pts[worst]);
    const double fr = f(reflected);
    if (fr < vals[best]) {
      const RVector expanded = centroid + 2.0 * (centroid - pts[worst]);
      const double fe = f(expanded);
      if (fe < fr) {
        pts[worst] = expanded;
        vals[worst] = fe;
      } else {
        pts[worst] = reflected;
        vals[worst] = fr;
      }
      continue;
    }
    if (fr < vals[second]) {
      pts[worst] = reflected;
      vals[worst] = fr;
      continue;
    }
    const bool outside = fr < vals[worst];
    const RVector contracted =
        outside ? RVector(centroid + 0.5 * (reflected - centroid))
                : RVector(centroid + 0.5 * (pts[worst] - centroid));
    const double fc = f(contracted);
    if (fc < std::min(fr, vals[worst])) {
      pts[worst] = contracted;
      vals[worst] = fc;
      continue;
    }
    // Shrink toward the best vertex.
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i == best) continue;
      pts[i] = pts[best] + 0.5 * (pts[i] - pts[best]);
      vals[i] = f(pts[i]);
    }
  }
  const auto it = std::min_element(vals.begin(), vals.end());
  const auto k = static_cast<std::size_t>(it - vals.begin());
  return NelderMeadResult{pts[k], vals[k], iter};
}

}  // namespace robkit::detail
