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
 * @file inner.hpp
 * The separability-certifying inner approximation: a state is certified
 * separable at level N when some omega with a level-N PPT symmetric
 * extension satisfies (1 - eps_N) omega + eps_N omega_A (x) 1_B / d_B =
 * target, with eps_N computed from the largest Jacobi polynomial root.
 *
 * The perturbation map is invertible for eps < 1, so membership of a target
 * (or of a whole affine family) reduces to a level-N extension search over
 * the inverse-mapped family, reusing the extension machinery.
 */

#pragma once

#include "entcert/constraints.hpp"
#include "entcert/pptse.hpp"

namespace entcert {

/// 1 - x_max over the roots of the Jacobi polynomial P_n^(alpha, beta),
/// via the eigenvalues of the symmetric tridiagonal recurrence matrix.
double jacobi_min_root_gap(int n, double alpha, double beta);

/// eps_N = d_B / (2 (d_B - 1)) * min{1 - x : P_{floor(N/2)+1}^{(d_B-2, N mod 2)}(x) = 0}.
/// Requires d_B >= 2.
double epsilon_n(int n_level, int d_b);

/// T_eps(X) = (1 - eps) X + eps Tr_B[X] (x) 1_B / d_B, and its inverse.
HermitianMatrix perturbation_map(const HermitianMatrix& x, double eps, int d_a, int d_b);
HermitianMatrix perturbation_map_inverse(const HermitianMatrix& x, double eps, int d_a,
                                         int d_b);

/// Applies the inverse map to every component of the family, giving the
/// affine family of all omega with T_eps(omega) compatible.
AffineStateFamily transform_family(const AffineStateFamily& fam, double eps);

struct InnerCertificate {
  int level = 0;
  double epsilon = 0.0;
  HermitianMatrix omega;     // the level-N extendible state
  double residual = 0.0;     // || T_eps(omega) - target ||_F
};

enum class InnerVerdict { Member, NotMember, BoundaryUndecidable, NumericalFailure };

struct InnerOutcome {
  InnerVerdict verdict = InnerVerdict::NumericalFailure;
  int level = 0;
  InnerCertificate certificate;  // valid when verdict == Member
  HermitianMatrix target;        // the certified separable compatible state
  RVector y;                     // family parameters of the target
  RVector z;
  bool precheck_only = false;    // NotMember decided by the PPT precheck
  SdpSolution stats;
};

/// Membership of a single PSD, unit-trace target in the level-N inner set.
InnerOutcome inner_membership_test(const HermitianMatrix& target, int d_a, int d_b,
                                   int n_level, const PptseOptions& opts = {});

/// Joint search over the family and omega: Member proves a separable state
/// compatible with the constraints exists; NotMember at one level is
/// inconclusive on its own.
InnerOutcome family_inner_test(const AffineStateFamily& fam, int n_level,
                               const PptseOptions& opts = {});

/// Re-verifies a certificate from its parts alone: residual against the
/// target, PSD and unit trace of omega, and a fresh level-N extension test
/// on omega as a fully determined state.
bool verify_inner_certificate(const InnerCertificate& cert, const HermitianMatrix& target,
                              int d_a, int d_b, const PptseOptions& opts = {},
                              std::string* why = nullptr);

Json inner_certificate_to_json(const InnerCertificate& c);
InnerCertificate inner_certificate_from_json(const Json& j);

}  // namespace entcert
