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
 * @file constraints.hpp
 * Linear expectation-value constraints Tr[rho M_l] in [lo_l, hi_l] on a
 * bipartite density matrix, and the affine family of all Hermitian matrices
 * compatible with them: fixed part, dual tau basis for interval variables,
 * and an orthonormal nullspace basis.
 */

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "entcert/hermitian.hpp"
#include "entcert/json_io.hpp"

namespace entcert {

struct Constraint {
  HermitianMatrix observable;
  double lo = 0.0;
  double hi = 0.0;
  bool exact() const { return lo == hi; }
};

struct ConstraintSet {
  int dA = 0;
  int dB = 0;
  std::vector<Constraint> constraints;
  bool normalization_injected = false;

  int dim() const { return dA * dB; }
  void validate() const;
};

/// Parses the constraint-file schema:
/// {"dA": int, "dB": int, "assume_normalized": bool (default true),
///  "constraints": [{"observable": <matrix|{"builtin": "muXY"}>,
///                   "value": v | "min": lo, "max": hi}, ...]}
/// A normalization constraint Tr[rho] = 1 is appended when no
/// identity-proportional observable is present and assume_normalized is true.
ConstraintSet parse_constraints(const Json& document);

/// All compatible Hermitian matrices: rho(y, z) = rho_part + sum_l z_l tau_l
/// + sum_a y_a mu_basis_a, with z_l ranging over the declared intervals.
/// Exact constraints are folded into rho_part.
struct AffineStateFamily {
  int dA = 0;
  int dB = 0;
  HermitianMatrix rho_part;
  std::vector<HermitianMatrix> tau;                 // one per interval variable
  std::vector<std::pair<double, double>> intervals; // matching tau
  std::vector<HermitianMatrix> mu_basis;            // orthonormal nullspace basis

  int dim() const { return dA * dB; }
  int nullspace_dim() const { return static_cast<int>(mu_basis.size()); }
  int interval_count() const { return static_cast<int>(tau.size()); }
};

enum class FamilyStatus { Family, FullyDetermined, Incompatible };

struct FamilyResult {
  FamilyStatus status = FamilyStatus::Incompatible;
  AffineStateFamily family;       // valid when status != Incompatible
  std::string message;            // diagnostic for Incompatible

  const HermitianMatrix& determined() const { return family.rho_part; }
};

/// Builds the affine family for any mix of exact and interval constraints.
/// FullyDetermined when the nullspace is empty and no interval variables
/// remain; Incompatible when merged duplicate constraints contradict.
FamilyResult build_affine_family(const ConstraintSet& cs);

/// Spec-facing alias for exact-constraint sets.
FamilyResult affine_solution_space(const ConstraintSet& cs);

/// Minimum-norm dual basis: Tr[tau_p M_l] = delta_pl for every constraint
/// (after duplicate merging the observables must be linearly independent;
/// otherwise throws std::runtime_error).
std::vector<HermitianMatrix> dual_basis_tau(const ConstraintSet& cs);

/// rho_part + sum z_l tau_l + sum y_a mu_a. Throws if y has the wrong length
/// or any z_l lies outside its declared interval (slack 1e-9).
HermitianMatrix family_member(const AffineStateFamily& fam, const RVector& y, const RVector& z);

/// Real vectorization of Hermitian matrices in the hermitian-core basis
/// (orthonormal under the trace inner product).
RVector vectorize_hermitian(const HermitianMatrix& m, const OperatorBasis& basis);
HermitianMatrix unvectorize_hermitian(const RVector& v, const OperatorBasis& basis);

}  // namespace entcert
