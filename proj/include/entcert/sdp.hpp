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
 * @file sdp.hpp
 * Block-diagonal semidefinite programming:
 *
 *   minimize    c^T x
 *   subject to  F0 + sum_i x_i F_i >= 0   (per Hermitian block)
 *
 * solved by a primal-dual path-following method (Nesterov-Todd scaling,
 * Mehrotra predictor-corrector, infeasible start). The dual reads
 * maximize -Tr[F0 Z] s.t. Z >= 0, Tr[F_i Z] = c_i. Feasibility questions go
 * through the min-t augmentation: minimize t s.t. F0 + sum x_i F_i + t 1 >= 0.
 */

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "entcert/hermitian.hpp"
#include "entcert/json_io.hpp"

namespace entcert {

/// One Hermitian matrix per block, matching a shared block structure.
struct BlockMatrix {
  std::vector<CMatrix> blocks;

  static BlockMatrix zero(const std::vector<int>& dims);
  static BlockMatrix identity(const std::vector<int>& dims,
                              const std::vector<bool>* mask = nullptr);

  int block_count() const { return static_cast<int>(blocks.size()); }
  int total_dim() const;
  double max_abs() const;
  double frobenius_norm() const;
  void hermitize();

  BlockMatrix& add_scaled(const BlockMatrix& o, double s);
};

double block_inner(const BlockMatrix& a, const BlockMatrix& b);

struct BlockSdpProblem {
  std::vector<int> block_dims;
  BlockMatrix F0;
  std::vector<BlockMatrix> F;
  RVector c;
  /// Blocks receiving the +t*I term in the min-t augmentation (default all).
  std::vector<bool> identity_mask;

  int num_vars() const { return static_cast<int>(F.size()); }
  void validate(double tol = kHermitianTol) const;
};

enum class SdpStatus { Optimal, PrimalInfeasible, NumericalFailure };

struct SdpOptions {
  double feas_tol = 1e-8;      // primal/dual residual tolerance (relative)
  double gap_tol = 1e-7;       // absolute |primal - dual| objective gap
  double feas_margin = 1e-7;   // undecidable band around t_opt = 0
  int max_iterations = 200;
  double step_fraction = 0.98; // fraction-to-boundary
  bool parallel = true;        // OpenMP kernels for the Schur complement
  double objective_floor = -1e10;  // divergence guard (unbounded problems)
  int verbosity = 0;
};

struct SdpSolution {
  SdpStatus status = SdpStatus::NumericalFailure;
  RVector x;
  BlockMatrix Z;
  double primal_obj = 0.0;
  double dual_obj = 0.0;
  double gap = 0.0;
  int iterations = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  /// min over iterates of (primal_obj - dual_obj); weak duality when >= -1e-9.
  double weak_duality_margin = 0.0;
  std::string message;
};

SdpSolution solve(const BlockSdpProblem& p, const SdpOptions& opts = {});

enum class FeasibilityStatus { Feasible, Infeasible, BoundaryUndecidable, NumericalFailure };

struct FeasibilityResult {
  FeasibilityStatus status = FeasibilityStatus::NumericalFailure;
  RVector x;          // Feasible: point with F0 + sum x F strictly PSD
  double t_opt = 0.0;
  BlockMatrix Z;      // Infeasible: dual certificate (Tr Z = 1 on masked blocks)
  SdpSolution raw;    // underlying min-t solve, for stats/verification
};

/// Runs the min-t augmentation on a feasibility problem (c is ignored).
/// Verdicts: t_opt <= -feas_margin Feasible; t_opt > +feas_margin Infeasible;
/// otherwise BoundaryUndecidable.
FeasibilityResult check_feasibility(const BlockSdpProblem& p, const SdpOptions& opts = {});

struct ResidualEntry {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct ResidualReport {
  std::vector<ResidualEntry> entries;
  bool all_pass() const;
};

/// Recomputes every solution invariant from scratch (eigenvalues and traces
/// only, no solver internals).
ResidualReport verify_solution(const BlockSdpProblem& p, const SdpSolution& s,
                               const SdpOptions& opts = {});
ResidualReport verify_infeasibility(const BlockSdpProblem& p, const FeasibilityResult& r,
                                    const SdpOptions& opts = {});

Json problem_to_json(const BlockSdpProblem& p);
BlockSdpProblem problem_from_json(const Json& j);

}  // namespace entcert
