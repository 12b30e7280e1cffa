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
 * @file kernels.hpp
 * Data-parallel inner loops of the solver, each in an OpenMP variant and a
 * serial reference kept for testing. Results are bitwise identical between
 * the two: parallel loops assign disjoint outputs with a fixed per-entry
 * evaluation order.
 */

#pragma once

#include <cstdint>
#include <vector>

#include "entcert/hermitian.hpp"

namespace entcert::kernels {

using RowMajorMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Real vectorization of a list of block matrices: row i holds
/// [Re vec(blocks), Im vec(blocks)] so that row_i . row_j = Tr[M_i M_j]
/// for Hermitian inputs.
RowMajorMatrix vectorize_block_rows(const std::vector<std::vector<CMatrix>>& rows);
void vectorize_blocks_into(const std::vector<CMatrix>& blocks, double* out, long len);
long vectorized_length(const std::vector<int>& dims);

/// Congruence batch H_i = G * F_i * G per block (G Hermitian, shared).
void congruence_batch_serial(const std::vector<CMatrix>& G,
                             const std::vector<std::vector<CMatrix>>& F,
                             std::vector<std::vector<CMatrix>>& H);
void congruence_batch_parallel(const std::vector<CMatrix>& G,
                               const std::vector<std::vector<CMatrix>>& F,
                               std::vector<std::vector<CMatrix>>& H);

/// Schur complement product M = H_vec * F_vec^T (m x m, symmetric in exact
/// arithmetic; computed row-wise).
void schur_product_serial(const RowMajorMatrix& h_vec, const RowMajorMatrix& f_vec, RMatrix& m_out);
void schur_product_parallel(const RowMajorMatrix& h_vec, const RowMajorMatrix& f_vec, RMatrix& m_out);

/// Minimum of <a b| W |a b> over `count` Haar-random pure product states.
/// Deterministic: sample i is generated from seed ^ i regardless of the
/// thread schedule.
double product_state_min_serial(const CMatrix& w, int dim_a, int dim_b, int count,
                                std::uint64_t seed);
double product_state_min_parallel(const CMatrix& w, int dim_a, int dim_b, int count,
                                  std::uint64_t seed);

/// Haar-random pure state of dimension d for sample index `i`.
Eigen::VectorXcd haar_state(int d, std::uint64_t seed, std::uint64_t index);

}  // namespace entcert::kernels
