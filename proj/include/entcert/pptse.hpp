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
 * @file pptse.hpp
 * Level-k PPT-symmetric-extension test over an affine state family.
 *
 * The extension lives on H_A^(x k) (x) H_B, is invariant under permutations
 * of the A copies, and reduces to the family member after tracing k-1
 * copies. Its free coefficients, together with the family parameters (y, z),
 * enter a block LMI: one block per independent partial-transpose cut plus
 * the untransposed block, and a diagonal block for the z intervals. The
 * feasibility question goes to the SDP engine through the min-t form.
 */

#pragma once

#include <optional>

#include "entcert/constraints.hpp"
#include "entcert/sdp.hpp"

namespace entcert {

/// A partial-transpose cut: transpose the first `a_copies` copies of A and,
/// when `b` is set, subsystem B.
struct TransposeCut {
  int a_copies = 0;
  bool b = false;
};

/// Independent cuts for k copies, modulo global transposition and copy
/// permutations; excludes the identity class. k = 1 gives {T_B}, k = 2
/// gives {T_B, T_A}.
std::vector<TransposeCut> independent_transpose_cuts(int k);

struct ExtensionModel {
  int k = 0;
  int dA = 0;
  int dB = 0;
  AffineStateFamily family;
  SymmetricIndex sym;                         // all size-k multisets x B index
  std::vector<std::vector<int>> free_multisets;

  // Matrices on H_A^(x k) (x) H_B (untransposed representatives).
  CMatrix G0;
  std::vector<CMatrix> G_y;
  std::vector<CMatrix> G_z;
  std::vector<CMatrix> G_free;   // one per (free multiset, B index), B fastest

  int extension_dim() const;
  int variable_count() const {
    return static_cast<int>(G_y.size() + G_z.size() + G_free.size());
  }
};

/// Symmetrized product basis element: sum over the distinct arrangements of
/// `multiset` of s_{a_1} (x) ... (x) s_{a_k} (x) s_j^B.
CMatrix symmetrized_basis_element(const std::vector<int>& multiset, int j_b,
                                  const OperatorBasis& basis_a, const OperatorBasis& basis_b,
                                  int k);

/// Embeds a state-space matrix X as the fixed part of a level-k extension:
/// sum_ij X_ij S({1^(k-1), i}) (x) s_j^B. For k = 1 this is the identity map.
CMatrix extension_fixed_embed(const HermitianMatrix& x, int k, const OperatorBasis& basis_a,
                              const OperatorBasis& basis_b);

/// Applies a transpose cut to a matrix on H_A^(x k) (x) H_B.
CMatrix apply_cut(const CMatrix& m, const TransposeCut& cut, int d_a, int d_b, int k);

/// A multiset is fixed by the reduction condition exactly when it has the
/// form {1^(k-1), i}; everything else is a free coefficient.
bool multiset_is_fixed(const std::vector<int>& multiset);

ExtensionModel build_extension_model(const AffineStateFamily& fam, int k);

struct PptseOptions {
  SdpOptions sdp;
  /// Include the interval diagonal block in the min-t augmentation.
  bool t_on_interval_block = false;
  /// Use the spin-sector compressed assembly when dA == 2.
  bool compress = true;
  /// Materialize the extension matrix when its dimension is at most this.
  int materialize_dim = 128;
};

/// Assembles the full-space block LMI (variables ordered y, z, free).
BlockSdpProblem assemble_lmi(const ExtensionModel& model,
                             bool t_on_interval_block = false);

enum class PptseVerdict { ExtensionFound, NoExtension, BoundaryUndecidable, NumericalFailure };

struct PptseOutcome {
  PptseVerdict verdict = PptseVerdict::NumericalFailure;
  int level = 0;
  double t_opt = 0.0;
  RVector y;
  RVector z;
  std::optional<HermitianMatrix> extension;  // when small enough to build
  /// Dual certificate blocks matching the *full-space* LMI layout
  /// (untransposed + cuts, then the interval block), present on NoExtension
  /// when the extension dimension permits reconstruction.
  std::optional<BlockMatrix> dual;
  bool compressed = false;
  SdpSolution stats;
};

PptseOutcome pptse_test(const AffineStateFamily& fam, int k, const PptseOptions& opts = {});

/// The state the solver found: family_member(y, z), verified PSD (min
/// eigenvalue >= -1e-8), unit trace, and inside the declared intervals.
HermitianMatrix candidate_state(const AffineStateFamily& fam, const PptseOutcome& outcome);

/// Permutation operator on H_A^(x k) (x) H_B permuting the A copies.
CMatrix copy_permutation_operator(const std::vector<int>& perm, int d_a, int d_b);

}  // namespace entcert
