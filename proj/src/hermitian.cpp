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

#include "entcert/hermitian.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace entcert {

HermitianMatrix HermitianMatrix::from(const CMatrix& m, double tol) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    throw std::invalid_argument("HermitianMatrix: matrix must be square with dim >= 1");
  }
  const double defect = (m - m.adjoint()).cwiseAbs().maxCoeff();
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if (defect > tol * scale) {
    throw std::invalid_argument("HermitianMatrix: input is not Hermitian (defect " +
                                std::to_string(defect) + ")");
  }
  return HermitianMatrix(0.5 * (m + m.adjoint().eval()));
}

HermitianMatrix HermitianMatrix::from_symmetrized(const CMatrix& m) {
  return HermitianMatrix(0.5 * (m + m.adjoint().eval()));
}

HermitianMatrix HermitianMatrix::identity(int n) {
  return HermitianMatrix(CMatrix::Identity(n, n));
}

HermitianMatrix HermitianMatrix::zero(int n) { return HermitianMatrix(CMatrix::Zero(n, n)); }

HermitianMatrix HermitianMatrix::plus(const HermitianMatrix& o) const {
  return HermitianMatrix(m_ + o.m_);
}

HermitianMatrix HermitianMatrix::minus(const HermitianMatrix& o) const {
  return HermitianMatrix(m_ - o.m_);
}

double trace_inner(const CMatrix& x, const CMatrix& y) {
  // Tr[X Y] for Hermitian X, Y equals the real part of the entrywise product.
  return (x.cwiseProduct(y.conjugate())).sum().real();
}

double trace_inner(const HermitianMatrix& x, const HermitianMatrix& y) {
  return trace_inner(x.raw(), y.raw());
}

OperatorBasis hermitian_basis(int d) {
  if (d < 1) throw std::invalid_argument("hermitian_basis: d must be >= 1");
  OperatorBasis basis;
  basis.d = d;
  basis.alpha = 1.0 / d;
  basis.elements.reserve(static_cast<size_t>(d) * d);
  const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(d));

  basis.elements.push_back(HermitianMatrix::from_symmetrized(CMatrix::Identity(d, d) / d));
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      CMatrix sym = CMatrix::Zero(d, d);
      sym(i, j) = sym(j, i) = 1.0 / std::sqrt(2.0);
      basis.elements.push_back(HermitianMatrix::from_symmetrized(inv_sqrt_d * sym));
      CMatrix asym = CMatrix::Zero(d, d);
      asym(i, j) = Complex(0.0, -1.0 / std::sqrt(2.0));
      asym(j, i) = Complex(0.0, 1.0 / std::sqrt(2.0));
      basis.elements.push_back(HermitianMatrix::from_symmetrized(inv_sqrt_d * asym));
    }
  }
  for (int l = 1; l < d; ++l) {
    CMatrix diag = CMatrix::Zero(d, d);
    const double norm = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
    for (int m = 0; m < l; ++m) diag(m, m) = norm;
    diag(l, l) = -static_cast<double>(l) * norm;
    basis.elements.push_back(HermitianMatrix::from_symmetrized(inv_sqrt_d * diag));
  }

  // d = 2 ordering comes out as {I/2, X/2, Y/2, Z/2}.
  return basis;
}

int TensorLayout::total_dim() const {
  int n = 1;
  for (int d : factor_dims) n *= d;
  return n;
}

void TensorLayout::validate() const {
  if (factor_dims.empty() || factor_dims.size() != factor_labels.size()) {
    throw std::invalid_argument("TensorLayout: dims/labels size mismatch");
  }
  for (int d : factor_dims) {
    if (d < 1) throw std::invalid_argument("TensorLayout: factor dims must be positive");
  }
  for (size_t i = 0; i < factor_labels.size(); ++i) {
    for (size_t j = i + 1; j < factor_labels.size(); ++j) {
      if (factor_labels[i] == factor_labels[j]) {
        throw std::invalid_argument("TensorLayout: duplicate label " + factor_labels[i]);
      }
    }
  }
}

std::vector<int> TensorLayout::indices_of(const std::vector<std::string>& labels) const {
  std::vector<int> out;
  for (const auto& l : labels) {
    auto it = std::find(factor_labels.begin(), factor_labels.end(), l);
    if (it == factor_labels.end()) {
      throw std::invalid_argument("TensorLayout: unknown label " + l);
    }
    out.push_back(static_cast<int>(it - factor_labels.begin()));
  }
  return out;
}

CMatrix kron(const CMatrix& x, const CMatrix& y) {
  CMatrix out(x.rows() * y.rows(), x.cols() * y.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
    }
  }
  return out;
}

HermitianMatrix tensor_product(const HermitianMatrix& x, const HermitianMatrix& y) {
  return HermitianMatrix::from_symmetrized(kron(x.raw(), y.raw()));
}

namespace {

struct FactorIndexer {
  std::vector<int> dims;
  std::vector<long> strides;  // row-major over factors

  explicit FactorIndexer(const std::vector<int>& d) : dims(d) {
    strides.assign(d.size(), 1);
    for (int i = static_cast<int>(d.size()) - 2; i >= 0; --i) {
      strides[i] = strides[i + 1] * d[i + 1];
    }
  }
  long encode(const std::vector<int>& digits) const {
    long idx = 0;
    for (size_t f = 0; f < dims.size(); ++f) idx += digits[f] * strides[f];
    return idx;
  }
  bool next(std::vector<int>& digits) const {
    for (int f = static_cast<int>(dims.size()) - 1; f >= 0; --f) {
      if (++digits[f] < dims[f]) return true;
      digits[f] = 0;
    }
    return false;
  }
};

void check_layout(const CMatrix& x, const std::vector<int>& dims) {
  long total = 1;
  for (int d : dims) total *= d;
  if (total != x.rows() || x.rows() != x.cols()) {
    throw std::invalid_argument("tensor layout inconsistent with matrix dimension");
  }
}

}  // namespace

CMatrix partial_trace_factors(const CMatrix& x, const std::vector<int>& dims,
                              const std::vector<bool>& traced) {
  check_layout(x, dims);
  if (traced.size() != dims.size()) throw std::invalid_argument("partial_trace: mask size");
  std::vector<int> kept_dims, traced_dims;
  std::vector<size_t> kept_pos, traced_pos;
  for (size_t f = 0; f < dims.size(); ++f) {
    if (traced[f]) {
      traced_dims.push_back(dims[f]);
      traced_pos.push_back(f);
    } else {
      kept_dims.push_back(dims[f]);
      kept_pos.push_back(f);
    }
  }
  if (traced_pos.empty()) throw std::invalid_argument("partial_trace: empty traced set");
  if (kept_pos.empty()) throw std::invalid_argument("partial_trace: must keep a factor");

  FactorIndexer full(dims), kept(kept_dims), tr(traced_dims);
  long kd = 1;
  for (int d : kept_dims) kd *= d;
  CMatrix out = CMatrix::Zero(kd, kd);

  std::vector<int> ri(kept_dims.size(), 0);
  std::vector<int> full_row(dims.size(), 0), full_col(dims.size(), 0);
  do {
    std::vector<int> ci(kept_dims.size(), 0);
    do {
      Complex acc = 0.0;
      std::vector<int> ti(traced_dims.size(), 0);
      do {
        for (size_t f = 0; f < kept_pos.size(); ++f) {
          full_row[kept_pos[f]] = ri[f];
          full_col[kept_pos[f]] = ci[f];
        }
        for (size_t f = 0; f < traced_pos.size(); ++f) {
          full_row[traced_pos[f]] = ti[f];
          full_col[traced_pos[f]] = ti[f];
        }
        acc += x(full.encode(full_row), full.encode(full_col));
      } while (tr.next(ti));
      out(kept.encode(ri), kept.encode(ci)) = acc;
    } while (kept.next(ci));
  } while (kept.next(ri));
  return out;
}

CMatrix partial_transpose_factors(const CMatrix& x, const std::vector<int>& dims,
                                  const std::vector<bool>& transposed) {
  check_layout(x, dims);
  if (transposed.size() != dims.size()) {
    throw std::invalid_argument("partial_transpose: mask size");
  }
  FactorIndexer full(dims);
  CMatrix out(x.rows(), x.cols());
  std::vector<int> row(dims.size(), 0);
  std::vector<int> srow(dims.size(), 0), scol(dims.size(), 0);
  do {
    std::vector<int> col(dims.size(), 0);
    do {
      for (size_t f = 0; f < dims.size(); ++f) {
        if (transposed[f]) {
          srow[f] = col[f];
          scol[f] = row[f];
        } else {
          srow[f] = row[f];
          scol[f] = col[f];
        }
      }
      out(full.encode(row), full.encode(col)) = x(full.encode(srow), full.encode(scol));
    } while (full.next(col));
  } while (full.next(row));
  return out;
}

namespace {
std::vector<bool> label_mask(const TensorLayout& layout, const std::vector<std::string>& labels) {
  layout.validate();
  std::vector<bool> mask(layout.factor_dims.size(), false);
  for (int idx : layout.indices_of(labels)) mask[idx] = true;
  return mask;
}
}  // namespace

HermitianMatrix partial_trace(const HermitianMatrix& x, const TensorLayout& layout,
                              const std::vector<std::string>& traced) {
  if (layout.total_dim() != x.dim()) {
    throw std::invalid_argument("partial_trace: layout inconsistent with matrix");
  }
  return HermitianMatrix::from_symmetrized(
      partial_trace_factors(x.raw(), layout.factor_dims, label_mask(layout, traced)));
}

HermitianMatrix partial_transpose(const HermitianMatrix& x, const TensorLayout& layout,
                                  const std::vector<std::string>& transposed) {
  if (layout.total_dim() != x.dim()) {
    throw std::invalid_argument("partial_transpose: layout inconsistent with matrix");
  }
  return HermitianMatrix::from_symmetrized(
      partial_transpose_factors(x.raw(), layout.factor_dims, label_mask(layout, transposed)));
}

RMatrix expand_in_basis(const HermitianMatrix& rho, const OperatorBasis& basis_a,
                        const OperatorBasis& basis_b) {
  const int da2 = basis_a.d * basis_a.d;
  const int db2 = basis_b.d * basis_b.d;
  if (rho.dim() != basis_a.d * basis_b.d) {
    throw std::invalid_argument("expand_in_basis: dimension mismatch");
  }
  const double scale = 1.0 / (basis_a.alpha * basis_b.alpha);
  RMatrix coeffs(da2, db2);
  for (int i = 0; i < da2; ++i) {
    for (int j = 0; j < db2; ++j) {
      const CMatrix e = kron(basis_a.elements[i].raw(), basis_b.elements[j].raw());
      coeffs(i, j) = scale * trace_inner(rho.raw(), e);
    }
  }
  return coeffs;
}

HermitianMatrix reconstruct_from_basis(const RMatrix& coeffs, const OperatorBasis& basis_a,
                                       const OperatorBasis& basis_b) {
  const int n = basis_a.d * basis_b.d;
  CMatrix out = CMatrix::Zero(n, n);
  for (int i = 0; i < coeffs.rows(); ++i) {
    for (int j = 0; j < coeffs.cols(); ++j) {
      if (coeffs(i, j) == 0.0) continue;
      out += coeffs(i, j) * kron(basis_a.elements[i].raw(), basis_b.elements[j].raw());
    }
  }
  return HermitianMatrix::from_symmetrized(out);
}

double min_eigenvalue(const CMatrix& x) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(x, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

double max_eigenvalue(const CMatrix& x) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(x, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(x.rows() - 1);
}

double min_eigenvalue(const HermitianMatrix& x) { return min_eigenvalue(x.raw()); }

RVector eigenvalues(const HermitianMatrix& x) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(x.raw(), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

SymmetricIndex symmetric_index_map(int d2, int k, int dB2) {
  if (d2 < 1 || k < 1 || dB2 < 1) {
    throw std::invalid_argument("symmetric_index_map: d2, k, dB2 must be >= 1");
  }
  SymmetricIndex idx;
  idx.d2 = d2;
  idx.k = k;
  idx.dB2 = dB2;
  std::vector<int> cur(k, 0);
  while (true) {
    idx.multisets.push_back(cur);
    int pos = k - 1;
    while (pos >= 0 && cur[pos] == d2 - 1) --pos;
    if (pos < 0) break;
    const int v = cur[pos] + 1;
    for (int p = pos; p < k; ++p) cur[p] = v;
  }
  return idx;
}

std::vector<std::vector<int>> multiset_arrangements(const std::vector<int>& multiset) {
  std::vector<int> sorted = multiset;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::vector<int>> out;
  do {
    out.push_back(sorted);
  } while (std::next_permutation(sorted.begin(), sorted.end()));
  return out;
}

long multiset_count(int n, int k) {
  long num = 1;
  for (int i = 1; i <= k; ++i) {
    num = num * (n + k - i) / i;  // exact: C(n+k-1, k) built incrementally
  }
  return num;
}

}  // namespace entcert
