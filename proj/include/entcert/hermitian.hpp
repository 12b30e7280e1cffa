// Copyright 2026 The entcert authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file hermitian.hpp
 * Dense complex Hermitian matrix algebra: operator bases, tensor products,
 * partial trace/transpose over arbitrary tensor factors, and eigenvalue
 * helpers. All types are immutable after construction.
 */

#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace entcert {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline constexpr double kHermitianTol = 1e-12;

/// Dense complex square matrix with Hermiticity enforced at construction.
/// Inputs within `tol` of Hermitian are symmetrized, others are rejected.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;

  static HermitianMatrix from(const CMatrix& m, double tol = kHermitianTol);
  /// Skips the Hermiticity check; caller guarantees m == m.adjoint().
  static HermitianMatrix from_symmetrized(const CMatrix& m);
  static HermitianMatrix identity(int n);
  static HermitianMatrix zero(int n);

  int dim() const { return static_cast<int>(m_.rows()); }
  const CMatrix& raw() const { return m_; }

  double trace() const { return m_.trace().real(); }
  double frobenius_norm() const { return m_.norm(); }
  double max_abs() const { return m_.cwiseAbs().maxCoeff(); }

  HermitianMatrix scaled(double s) const { return from_symmetrized(s * m_); }
  HermitianMatrix plus(const HermitianMatrix& o) const;
  HermitianMatrix minus(const HermitianMatrix& o) const;

 private:
  explicit HermitianMatrix(CMatrix m) : m_(std::move(m)) {}
  CMatrix m_;
};

/// Real trace inner product Tr[X Y] of two Hermitian matrices.
double trace_inner(const HermitianMatrix& x, const HermitianMatrix& y);
double trace_inner(const CMatrix& x, const CMatrix& y);

/// Ordered basis of the real vector space of d x d Hermitian matrices with
/// Tr[s_i s_j] = alpha * delta_ij and Tr[s_i] = delta_i1.
struct OperatorBasis {
  int d = 0;
  double alpha = 0.0;
  std::vector<HermitianMatrix> elements;
};

/// Identity/d followed by generalized Gell-Mann generators scaled so that
/// Tr[s^2] = 1/d; alpha = 1/d uniformly.
OperatorBasis hermitian_basis(int d);

/// Subsystem dimensions and labels for a tensor-factor decomposition.
struct TensorLayout {
  std::vector<int> factor_dims;
  std::vector<std::string> factor_labels;

  int total_dim() const;
  /// Throws if labels are not unique or dims are not positive.
  void validate() const;
  std::vector<int> indices_of(const std::vector<std::string>& labels) const;
};

HermitianMatrix tensor_product(const HermitianMatrix& x, const HermitianMatrix& y);
CMatrix kron(const CMatrix& x, const CMatrix& y);

HermitianMatrix partial_trace(const HermitianMatrix& x, const TensorLayout& layout,
                              const std::vector<std::string>& traced);
HermitianMatrix partial_transpose(const HermitianMatrix& x, const TensorLayout& layout,
                                  const std::vector<std::string>& transposed);

/// Index-based versions on raw matrices (used by the assembly paths).
CMatrix partial_trace_factors(const CMatrix& x, const std::vector<int>& dims,
                              const std::vector<bool>& traced);
CMatrix partial_transpose_factors(const CMatrix& x, const std::vector<int>& dims,
                                  const std::vector<bool>& transposed);

/// Real coefficient matrix r_ij with rho = sum_ij r_ij sA_i (x) sB_j,
/// r_ij = Tr[rho sA_i (x) sB_j] / (alpha_A alpha_B).
RMatrix expand_in_basis(const HermitianMatrix& rho, const OperatorBasis& basis_a,
                        const OperatorBasis& basis_b);
HermitianMatrix reconstruct_from_basis(const RMatrix& coeffs, const OperatorBasis& basis_a,
                                       const OperatorBasis& basis_b);

double min_eigenvalue(const HermitianMatrix& x);
double min_eigenvalue(const CMatrix& x);
double max_eigenvalue(const CMatrix& x);
RVector eigenvalues(const HermitianMatrix& x);

/// Multisets of size k over {0..d2-1} crossed with {0..dB2-1}: the coefficient
/// index set of a copy-symmetric extension expansion.
struct SymmetricIndex {
  int d2 = 0;
  int k = 0;
  int dB2 = 0;
  /// Sorted ascending representatives of all size-k multisets over 0..d2-1.
  std::vector<std::vector<int>> multisets;

  long count() const { return static_cast<long>(multisets.size()) * dB2; }
};

SymmetricIndex symmetric_index_map(int d2, int k, int dB2);

/// Distinct arrangements (orderings) of a multiset.
std::vector<std::vector<int>> multiset_arrangements(const std::vector<int>& multiset);

/// Number of size-k multisets over an n-letter alphabet, C(n+k-1, k).
long multiset_count(int n, int k);

}  // namespace entcert
