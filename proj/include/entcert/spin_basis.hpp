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
 * @file spin_basis.hpp
 * Exact spin-sector compression of the level-k extension LMIs for dA = 2.
 *
 * Every matrix in the assembled LMI is invariant under permutations of the
 * transposed copy group and of the untransposed group separately, so it
 * block-diagonalizes over total-spin sectors (j1, j2) with one multiplicity
 * copy per sector carrying all the spectral information. The compressed
 * problem has the same variables and the same feasible set as the full
 * assembly; block dimensions drop from 2^k d_B to (2j1+1)(2j2+1) d_B.
 */

#pragma once

#include "entcert/constraints.hpp"
#include "entcert/sdp.hpp"

namespace entcert {
struct TransposeCut;
}

namespace entcert::spin {

/// Coupled-basis isometries for g qubits: one multiplicity copy of every
/// total-spin sector. isometry[s] has orthonormal columns |j, m> for
/// m = -j..j, with twoJ[s] = 2j.
struct SectorBasis {
  int g = 0;
  std::vector<int> twoJ;
  std::vector<RMatrix> isometry;  // 2^g x (twoJ + 1)
};

SectorBasis build_sector_basis(int g);

/// Per-group compression tables: for every size-g multiset over the four
/// single-qubit basis letters, the sector blocks of the symmetrized product
/// S(m), plus the sign S(m)^T = tsign(m) S(m).
struct GroupTables {
  int g = 0;
  SectorBasis sectors;
  std::vector<std::vector<int>> multisets;          // sorted ascending
  std::vector<std::vector<CMatrix>> A;              // A[sector][multiset]
  std::vector<double> tsign;                        // per multiset
  int multiset_index(const std::vector<int>& m) const;
};

/// Cached per group size; thread-safe.
const GroupTables& group_tables(int g);

struct CompressedBlockInfo {
  int cut_a_copies = 0;  // transposed copy count (0 for the untransposed block)
  bool cut_b = false;
  int sector1 = -1;      // index into group_tables(cut_a_copies).sectors
  int sector2 = -1;      // index into group_tables(k - cut_a_copies).sectors
};

struct CompressedProblem {
  BlockSdpProblem problem;
  std::vector<CompressedBlockInfo> info;  // per big block (interval excluded)
  int k = 0;
  int dB = 0;
  int n_y = 0;
  int n_z = 0;
  int n_free = 0;
  bool has_interval_block = false;
};

/// Sector-compressed equivalent of the full-space level-k assembly
/// (variables ordered y, z, free; dA must be 2).
CompressedProblem build_compressed_problem(const AffineStateFamily& fam, int k,
                                           bool t_on_interval_block);

/// Embeds a compressed dual certificate back into the full-space block
/// layout (untransposed + cuts, then interval block): one multiplicity copy
/// per sector, preserving PSD, traces, and all pairings with invariant
/// matrices.
BlockMatrix reconstruct_full_dual(const CompressedProblem& cp, const BlockMatrix& z);

}  // namespace entcert::spin
