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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace robkit {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;
using Rng = std::mt19937_64;

/// Size limits for a run. Operators on m copies of a d-level system have
/// dimension d^m; `operator_cap` bounds that.
struct Limits {
  int max_dim = 4;
  std::size_t operator_cap = 256;
};

/// Dense complex matrix equal to its conjugate transpose. The stored matrix is
/// always exactly Hermitian: the constructor checks the input against a
/// 1e-12 entrywise tolerance (relative to the largest entry when that exceeds
/// one) and then averages it with its adjoint.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(const CMatrix& m);

  static HermitianMatrix identity(int d);
  static HermitianMatrix zero(int d);
  static HermitianMatrix diagonal(const RVector& diag);
  /// Projector onto a (not necessarily normalized) vector.
  static HermitianMatrix projector(const CVector& v);

  int dim() const noexcept { return static_cast<int>(m_.rows()); }
  const CMatrix& matrix() const noexcept { return m_; }
  double trace() const noexcept { return m_.trace().real(); }
  /// Re tr[this * other].
  double inner(const HermitianMatrix& other) const;
  /// Re tr[this * other] for a raw matrix of matching size.
  double inner(const CMatrix& other) const;
  double min_eigenvalue() const;
  double max_eigenvalue() const;
  /// Largest absolute eigenvalue.
  double operator_norm() const;
  /// Sum of absolute eigenvalues.
  double trace_norm() const;
  bool is_psd(double tol) const { return min_eigenvalue() >= -tol; }

  HermitianMatrix operator+(const HermitianMatrix& o) const;
  HermitianMatrix operator-(const HermitianMatrix& o) const;
  HermitianMatrix operator*(double a) const;
  friend HermitianMatrix operator*(double a, const HermitianMatrix& h) { return h * a; }
  /// U * this * U^dagger.
  HermitianMatrix conjugated_by(const CMatrix& u) const;

 private:
  struct Trusted {};
  HermitianMatrix(CMatrix m, Trusted) : m_(std::move(m)) {}
  CMatrix m_;
};

/// Unit-trace positive semidefinite Hermitian matrix (trace within 1e-10,
/// smallest eigenvalue at least -1e-10).
class DensityMatrix {
 public:
  explicit DensityMatrix(HermitianMatrix h);
  explicit DensityMatrix(const CMatrix& m) : DensityMatrix(HermitianMatrix(m)) {}

  static DensityMatrix maximally_mixed(int d);
  static DensityMatrix pure(const CVector& psi);
  static DensityMatrix basis_state(int d, int k);
  /// Clips negative eigenvalues of `h` and renormalizes the trace. Fails when
  /// nothing positive remains.
  static DensityMatrix nearest_from(const HermitianMatrix& h);

  int dim() const noexcept { return h_.dim(); }
  const HermitianMatrix& hermitian() const noexcept { return h_; }
  const CMatrix& matrix() const noexcept { return h_.matrix(); }
  double purity() const { return h_.inner(h_); }

 private:
  HermitianMatrix h_;
};

/// Generalized Gell-Mann matrices, ordered: symmetric off-diagonal pairs
/// (row-major over j < k), antisymmetric pairs (same order), then the d - 1
/// diagonal elements. Normalized so tr[l_i l_j] = 2 delta_ij.
struct GellMannBasis {
  int dim = 0;
  std::vector<HermitianMatrix> elements;
};

/// Generalized Bloch coordinates, length d^2 - 1, with respect to the
/// expansion eta = (1/d) (I + sqrt(d(d-1)/2) sum_j x_j l_j).
struct BlochVector {
  int dim = 0;
  RVector coords;
};

GellMannBasis gell_mann_basis(int d);

/// Factor sqrt(d / (2(d - 1))) with x_j = tr[eta l_j] * factor.
double bloch_scale(int d);

BlochVector bloch_from_state(const DensityMatrix& rho);
/// Same expansion for any Hermitian operator (coordinates of its traceless
/// part; the trace is not represented).
BlochVector bloch_from_operator(const HermitianMatrix& a);
/// Unit-trace Hermitian matrix for arbitrary coordinates. Not necessarily PSD.
HermitianMatrix state_from_bloch(const BlochVector& x);

CMatrix kron(const CMatrix& a, const CMatrix& b);
/// m-fold Kronecker power. Throws kSizeCap when d^m exceeds `cap`.
HermitianMatrix tensor_power(const HermitianMatrix& a, int m,
                             std::size_t cap = Limits{}.operator_cap);
/// Exchange operator V |i>|j> = |j>|i> on two d-level systems.
HermitianMatrix swap_operator(int d);

/// Applies a permutation of tensor factors to a computational basis index of
/// m d-level systems: factor k of the result is factor perm[k] of the input.
std::size_t permute_index(std::size_t index, const std::vector<int>& perm,
                          int d);
/// Average of P A P^dagger over all permutations P of the m tensor factors.
CMatrix symmetrize_copies(const CMatrix& a, int d, int m);

struct EigenDecomposition {
  RVector values;   // ascending
  CMatrix vectors;  // columns
};

/// Hermitian eigensolver; values ascending. Throws kNumeric with the
/// reconstruction residual when the solver does not converge.
EigenDecomposition eig_hermitian(const HermitianMatrix& a);

/// Hilbert-Schmidt random state: G G^dagger / tr with G a d x rank complex
/// Gaussian matrix.
DensityMatrix random_density(int d, int rank, std::uint64_t seed);
DensityMatrix random_density(int d, int rank, Rng& rng);
/// Haar-random unitary (QR of a Ginibre matrix with phase fix).
CMatrix random_unitary(int d, Rng& rng);
/// GUE-like random Hermitian matrix with unit-variance entries.
HermitianMatrix random_hermitian(int d, Rng& rng);

/// tr[(a - b)^2].
double hs_distance_sq(const HermitianMatrix& a, const HermitianMatrix& b);

}  // namespace robkit
