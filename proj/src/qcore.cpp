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

#include "robkit/qcore.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>

#include "robkit/error.hpp"

namespace robkit {

namespace {

constexpr double kHermitianTol = 1e-12;
constexpr double kTraceTol = 1e-10;
constexpr double kPsdTol = 1e-10;

RVector eigenvalues_only(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw NumericError(ErrorKind::kNumeric, "eigenvalue solver did not converge",
                       std::numeric_limits<double>::quiet_NaN());
  return es.eigenvalues();
}

}  // namespace

HermitianMatrix::HermitianMatrix(const CMatrix& m) {
  require(m.rows() == m.cols(), ErrorKind::kInvalidDimension,
          "Hermitian matrix must be square");
  require(m.rows() >= 2, ErrorKind::kInvalidDimension,
          "Hermitian matrix dimension must be at least 2");
  require(m.allFinite(), ErrorKind::kInvalidArgument,
          "Hermitian matrix has non-finite entries");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
  require(asym <= kHermitianTol * scale, ErrorKind::kInvalidArgument,
          "matrix is not Hermitian (asymmetry " + std::to_string(asym) + ")");
  m_ = (m + m.adjoint()) * 0.5;
}

HermitianMatrix HermitianMatrix::identity(int d) {
  require(d >= 2, ErrorKind::kInvalidDimension, "dimension must be at least 2");
  return HermitianMatrix(CMatrix::Identity(d, d), Trusted{});
}

HermitianMatrix HermitianMatrix::zero(int d) {
  require(d >= 2, ErrorKind::kInvalidDimension, "dimension must be at least 2");
  return HermitianMatrix(CMatrix::Zero(d, d), Trusted{});
}

HermitianMatrix HermitianMatrix::diagonal(const RVector& diag) {
  require(diag.size() >= 2, ErrorKind::kInvalidDimension,
          "dimension must be at least 2");
  return HermitianMatrix(diag.cast<Complex>().asDiagonal().toDenseMatrix(),
                         Trusted{});
}

HermitianMatrix HermitianMatrix::projector(const CVector& v) {
  require(v.size() >= 2, ErrorKind::kInvalidDimension,
          "dimension must be at least 2");
  const CMatrix p = v * v.adjoint();
  return HermitianMatrix(CMatrix((p + p.adjoint()) * 0.5), Trusted{});
}

double HermitianMatrix::inner(const HermitianMatrix& other) const {
  return inner(other.m_);
}

double HermitianMatrix::inner(const CMatrix& other) const {
  require(other.rows() == m_.rows() && other.cols() == m_.cols(),
          ErrorKind::kDimensionMismatch, "operator dimensions differ");
  // tr[A B] = sum_ij A_ij B_ji
  return (m_.array() * other.transpose().array()).sum().real();
}

double HermitianMatrix::min_eigenvalue() const {
  return eigenvalues_only(m_)(0);
}

double HermitianMatrix::max_eigenvalue() const {
  const RVector ev = eigenvalues_only(m_);
  return ev(ev.size() - 1);
}

double HermitianMatrix::operator_norm() const {
  return eigenvalues_only(m_).cwiseAbs().maxCoeff();
}

double HermitianMatrix::trace_norm() const {
  return eigenvalues_only(m_).cwiseAbs().sum();
}

HermitianMatrix HermitianMatrix::operator+(const HermitianMatrix& o) const {
  require(o.dim() == dim(), ErrorKind::kDimensionMismatch,
          "operator dimensions differ");
  return HermitianMatrix(CMatrix(m_ + o.m_), Trusted{});
}

HermitianMatrix HermitianMatrix::operator-(const HermitianMatrix& o) const {
  require(o.dim() == dim(), ErrorKind::kDimensionMismatch,
          "operator dimensions differ");
  return HermitianMatrix(CMatrix(m_ - o.m_), Trusted{});
}

HermitianMatrix HermitianMatrix::operator*(double a) const {
  return HermitianMatrix(CMatrix(m_ * a), Trusted{});
}

HermitianMatrix HermitianMatrix::conjugated_by(const CMatrix& u) const {
  require(u.rows() == m_.rows() && u.cols() == m_.cols(),
          ErrorKind::kDimensionMismatch, "unitary dimension differs");
  const CMatrix r = u * m_ * u.adjoint();
  return HermitianMatrix(CMatrix((r + r.adjoint()) * 0.5), Trusted{});
}

DensityMatrix::DensityMatrix(HermitianMatrix h) : h_(std::move(h)) {
  const double tr = h_.trace();
  require(std::abs(tr - 1.0) <= kTraceTol, ErrorKind::kInvalidArgument,
          "density matrix trace is " + std::to_string(tr) + ", expected 1");
  const double lmin = h_.min_eigenvalue();
  require(lmin >= -kPsdTol, ErrorKind::kInvalidArgument,
          "density matrix has negative eigenvalue " + std::to_string(lmin));
}

DensityMatrix DensityMatrix::maximally_mixed(int d) {
  return DensityMatrix(HermitianMatrix::identity(d) * (1.0 / d));
}

DensityMatrix DensityMatrix::pure(const CVector& psi) {
  const double n = psi.norm();
  require(n > 0.0, ErrorKind::kInvalidArgument, "zero state vector");
  return DensityMatrix(HermitianMatrix::projector(psi / n));
}

DensityMatrix DensityMatrix::basis_state(int d, int k) {
  require(k >= 0 && k < d, ErrorKind::kInvalidArgument,
          "basis index out of range");
  CVector v = CVector::Zero(d);
  v(k) = 1.0;
  return pure(v);
}

DensityMatrix DensityMatrix::nearest_from(const HermitianMatrix& h) {
  const EigenDecomposition e = eig_hermitian(h);
  const RVector clipped = e.values.cwiseMax(0.0);
  const double tr = clipped.sum();
  require(tr > 0.0, ErrorKind::kNumeric, "operator has no positive part");
  const CMatrix m =
      e.vectors * (clipped / tr).cast<Complex>().asDiagonal() *
      e.vectors.adjoint();
  return DensityMatrix(HermitianMatrix(CMatrix((m + m.adjoint()) * 0.5)));
}

GellMannBasis gell_mann_basis(int d) {
  require(d >= 2, ErrorKind::kInvalidDimension,
          "Gell-Mann basis needs d >= 2, got " + std::to_string(d));
  GellMannBasis basis;
  basis.dim = d;
  basis.elements.reserve(static_cast<std::size_t>(d * d - 1));
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      CMatrix m = CMatrix::Zero(d, d);
      m(j, k) = 1.0;
      m(k, j) = 1.0;
      basis.elements.emplace_back(m);
    }
  }
  const Complex i(0.0, 1.0);
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      CMatrix m = CMatrix::Zero(d, d);
      m(j, k) = -i;
      m(k, j) = i;
      basis.elements.emplace_back(m);
    }
  }
  for (int l = 1; l < d; ++l) {
    CMatrix m = CMatrix::Zero(d, d);
    const double norm = std::sqrt(2.0 / (l * (l + 1.0)));
    for (int j = 0; j < l; ++j) m(j, j) = norm;
    m(l, l) = -norm * l;
    basis.elements.emplace_back(m);
  }
  return basis;
}

double bloch_scale(int d) { return std::sqrt(d / (2.0 * (d - 1))); }

BlochVector bloch_from_operator(const HermitianMatrix& a) {
  const GellMannBasis basis = gell_mann_basis(a.dim());
  const double scale = bloch_scale(a.dim());
  BlochVector x{a.dim(), RVector(basis.elements.size())};
  for (std::size_t j = 0; j < basis.elements.size(); ++j)
    x.coords(static_cast<Eigen::Index>(j)) = a.inner(basis.elements[j]) * scale;
  return x;
}

BlochVector bloch_from_state(const DensityMatrix& rho) {
  return bloch_from_operator(rho.hermitian());
}

HermitianMatrix state_from_bloch(const BlochVector& x) {
  const int d = x.dim;
  require(d >= 2, ErrorKind::kInvalidDimension, "Bloch vector dimension < 2");
  require(x.coords.size() == d * d - 1, ErrorKind::kDimensionMismatch,
          "Bloch vector length must be d^2 - 1");
  const GellMannBasis basis = gell_mann_basis(d);
  const double c = std::sqrt(d * (d - 1) / 2.0);
  CMatrix m = CMatrix::Identity(d, d);
  for (std::size_t j = 0; j < basis.elements.size(); ++j)
    m += c * x.coords(static_cast<Eigen::Index>(j)) * basis.elements[j].matrix();
  return HermitianMatrix(CMatrix(m / static_cast<double>(d)));
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

HermitianMatrix tensor_power(const HermitianMatrix& a, int m, std::size_t cap) {
  require(m >= 1, ErrorKind::kInvalidArgument, "tensor power needs m >= 1");
  double size = std::pow(static_cast<double>(a.dim()), m);
  require(size <= static_cast<double>(cap), ErrorKind::kSizeCap,
          "tensor power dimension " + std::to_string(static_cast<long long>(size)) +
              " exceeds cap " + std::to_string(cap));
  CMatrix out = a.matrix();
  for (int k = 1; k < m; ++k) out = kron(out, a.matrix());
  return HermitianMatrix(out);
}

HermitianMatrix swap_operator(int d) {
  CMatrix v = CMatrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) v(j * d + i, i * d + j) = 1.0;
  return HermitianMatrix(v);
}

std::size_t permute_index(std::size_t index, const std::vector<int>& perm,
                          int d) {
  const int m = static_cast<int>(perm.size());
  std::vector<std::size_t> digits(static_cast<std::size_t>(m));
  for (int k = m - 1; k >= 0; --k) {
    digits[static_cast<std::size_t>(k)] = index % static_cast<std::size_t>(d);
    index /= static_cast<std::size_t>(d);
  }
  std::size_t out = 0;
  for (int k = 0; k < m; ++k)
    out = out * static_cast<std::size_t>(d) +
          digits[static_cast<std::size_t>(perm[static_cast<std::size_t>(k)])];
  return out;
}

CMatrix symmetrize_copies(const CMatrix& a, int d, int m) {
  const auto n = static_cast<std::size_t>(a.rows());
  std::vector<int> perm(static_cast<std::size_t>(m));
  std::iota(perm.begin(), perm.end(), 0);
  CMatrix out = CMatrix::Zero(a.rows(), a.cols());
  std::vector<std::size_t> map(n);
  int count = 0;
  do {
    for (std::size_t i = 0; i < n; ++i) map[i] = permute_index(i, perm, d);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        out(static_cast<Eigen::Index>(map[i]), static_cast<Eigen::Index>(map[j])) +=
            a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out / static_cast<double>(count);
}

EigenDecomposition eig_hermitian(const HermitianMatrix& a) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(a.matrix());
  const double fro = a.matrix().norm();
  if (es.info() != Eigen::Success) {
    throw NumericError(ErrorKind::kNumeric,
                       "Hermitian eigensolver did not converge",
                       std::numeric_limits<double>::infinity());
  }
  EigenDecomposition out{es.eigenvalues(), es.eigenvectors()};
  const double residual =
      (a.matrix() - out.vectors * out.values.cast<Complex>().asDiagonal() *
                        out.vectors.adjoint())
          .norm();
  if (residual > 1e-10 * std::max(fro, 1e-300) && residual > 1e-14) {
    throw NumericError(ErrorKind::kNumeric,
                       "Hermitian eigensolver residual too large", residual);
  }
  return out;
}

DensityMatrix random_density(int d, int rank, std::uint64_t seed) {
  Rng rng(seed);
  return random_density(d, rank, rng);
}

DensityMatrix random_density(int d, int rank, Rng& rng) {
  require(d >= 2, ErrorKind::kInvalidDimension, "dimension must be at least 2");
  require(rank >= 1 && rank <= d, ErrorKind::kInvalidArgument,
          "rank must satisfy 1 <= rank <= d");
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix g(d, rank);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < rank; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(HermitianMatrix(CMatrix((rho + rho.adjoint()) * 0.5)));
}

CMatrix random_unitary(int d, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(d, d);
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    const Complex diag = r(j, j);
    const double mag = std::abs(diag);
    if (mag > 0.0) q.col(j) *= diag / mag;
  }
  return q;
}

HermitianMatrix random_hermitian(int d, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  return HermitianMatrix(CMatrix((g + g.adjoint()) * 0.5));
}

double hs_distance_sq(const HermitianMatrix& a, const HermitianMatrix& b) {
  return (a.matrix() - b.matrix()).squaredNorm();
}

}  // namespace robkit
