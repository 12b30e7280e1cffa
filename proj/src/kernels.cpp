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

#include "entcert/kernels.hpp"

#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace entcert::kernels {

long vectorized_length(const std::vector<int>& dims) {
  long len = 0;
  for (int d : dims) len += 2L * d * d;
  return len;
}

void vectorize_blocks_into(const std::vector<CMatrix>& blocks, double* out, long len) {
  long off = 0;
  for (const auto& b : blocks) {
    const long n2 = b.size();
    const Complex* data = b.data();
    for (long i = 0; i < n2; ++i) out[off + i] = data[i].real();
    off += n2;
    for (long i = 0; i < n2; ++i) out[off + i] = data[i].imag();
    off += n2;
  }
  if (off != len) throw std::logic_error("vectorize_blocks_into: length mismatch");
}

RowMajorMatrix vectorize_block_rows(const std::vector<std::vector<CMatrix>>& rows) {
  if (rows.empty()) return RowMajorMatrix();
  std::vector<int> dims;
  for (const auto& b : rows[0]) dims.push_back(static_cast<int>(b.rows()));
  const long len = vectorized_length(dims);
  RowMajorMatrix out(static_cast<long>(rows.size()), len);
  for (size_t i = 0; i < rows.size(); ++i) {
    vectorize_blocks_into(rows[i], out.row(static_cast<long>(i)).data(), len);
  }
  return out;
}

namespace {
inline void congruence_one(const std::vector<CMatrix>& G, const std::vector<CMatrix>& Fi,
                           std::vector<CMatrix>& Hi) {
  Hi.resize(G.size());
  for (size_t b = 0; b < G.size(); ++b) {
    Hi[b].noalias() = G[b] * Fi[b] * G[b];
  }
}
}  // namespace

void congruence_batch_serial(const std::vector<CMatrix>& G,
                             const std::vector<std::vector<CMatrix>>& F,
                             std::vector<std::vector<CMatrix>>& H) {
  H.resize(F.size());
  for (size_t i = 0; i < F.size(); ++i) congruence_one(G, F[i], H[i]);
}

void congruence_batch_parallel(const std::vector<CMatrix>& G,
                               const std::vector<std::vector<CMatrix>>& F,
                               std::vector<std::vector<CMatrix>>& H) {
  H.resize(F.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < static_cast<long>(F.size()); ++i) {
    congruence_one(G, F[i], H[i]);
  }
}

void schur_product_serial(const RowMajorMatrix& h_vec, const RowMajorMatrix& f_vec, RMatrix& m_out) {
  const long m = h_vec.rows();
  m_out.resize(m, m);
  for (long i = 0; i < m; ++i) {
    m_out.row(i).noalias() = h_vec.row(i) * f_vec.transpose();
  }
}

void schur_product_parallel(const RowMajorMatrix& h_vec, const RowMajorMatrix& f_vec, RMatrix& m_out) {
  const long m = h_vec.rows();
  m_out.resize(m, m);
#pragma omp parallel for schedule(dynamic, 8)
  for (long i = 0; i < m; ++i) {
    m_out.row(i).noalias() = h_vec.row(i) * f_vec.transpose();
  }
}

Eigen::VectorXcd haar_state(int d, std::uint64_t seed, std::uint64_t index) {
  // splitmix-style seed spread keeps sample i independent of thread order
  std::uint64_t s = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  s ^= s >> 30;
  s *= 0xbf58476d1ce4e5b9ULL;
  s ^= s >> 27;
  std::mt19937_64 rng(s);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXcd v(d);
  for (int i = 0; i < d; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = Complex(re, im);
  }
  v /= v.norm();
  return v;
}

namespace {
inline double product_expectation(const CMatrix& w, int dim_a, int dim_b, std::uint64_t seed,
                                  std::uint64_t index) {
  const Eigen::VectorXcd a = haar_state(dim_a, seed, 2 * index);
  const Eigen::VectorXcd b = haar_state(dim_b, seed, 2 * index + 1);
  Eigen::VectorXcd ab(dim_a * dim_b);
  for (int i = 0; i < dim_a; ++i) {
    ab.segment(i * dim_b, dim_b) = a(i) * b;
  }
  return (ab.adjoint() * w * ab)(0, 0).real();
}
}  // namespace

double product_state_min_serial(const CMatrix& w, int dim_a, int dim_b, int count,
                                std::uint64_t seed) {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < count; ++i) {
    best = std::min(best, product_expectation(w, dim_a, dim_b, seed, i));
  }
  return best;
}

double product_state_min_parallel(const CMatrix& w, int dim_a, int dim_b, int count,
                                  std::uint64_t seed) {
  double best = std::numeric_limits<double>::infinity();
#pragma omp parallel for reduction(min : best) schedule(static)
  for (int i = 0; i < count; ++i) {
    best = std::min(best, product_expectation(w, dim_a, dim_b, seed, i));
  }
  return best;
}

}  // namespace entcert::kernels
