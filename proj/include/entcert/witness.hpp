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
 * @file witness.hpp
 * Entanglement witnesses from infeasibility duals, and lower bounds on
 * random robustness, witnessed entanglement E_{n,m}, and the best separable
 * approximation.
 *
 * The level-k LMI's fixed part is Lambda(rho_fixed) for a linear map Lambda;
 * a dual certificate Z maps back through the adjoint to W = Lambda*(Z),
 * which is nonnegative on every pure product state and strictly negative on
 * every state compatible with the constraints.
 */

#pragma once

#include "entcert/constraints.hpp"
#include "entcert/pptse.hpp"

namespace entcert {

/// Lambda(X): the block matrix [Ext(X), cut_1(Ext(X)), ...] matching the
/// big blocks of the level-k LMI (the interval block is not part of the map).
BlockMatrix lambda_map(const HermitianMatrix& x, int k, int d_a, int d_b);

/// Adjoint: W = Lambda*(Z) with Tr[Lambda(X) Z] = Tr[X W] for all X. The
/// input carries one block per big LMI block; a trailing interval block, if
/// present, is ignored.
HermitianMatrix lambda_adjoint(const BlockMatrix& z, int k, int d_a, int d_b);

struct Witness {
  HermitianMatrix w;
  double margin = 0.0;    // max of Tr[W rho] over the compatible family
  double eig_min = 0.0;
  double eig_max = 0.0;
  int source_level = 0;
  double product_sample_min = 0.0;  // min <ab|W|ab> over the sampled product states
};

struct WitnessOptions {
  SdpOptions sdp;
  int sample_count = 10000;
  std::uint64_t seed = 12345;
  bool parallel = true;
};

struct MarginResult {
  bool family_empty = false;  // no PSD member: constraints are unphysical
  double margin = 0.0;
};

/// Solves max Tr[W rho] over the PSD members of the family (z within its
/// intervals). family_empty is reported when no PSD member exists.
MarginResult witness_margin(const HermitianMatrix& w, const AffineStateFamily& fam,
                            const SdpOptions& opts = {});

/// Builds the witness from a NoExtension outcome: W = Lambda*(Z), margin by
/// SDP, product-state positivity spot-checked by sampling. Throws
/// std::runtime_error if the sampling check fails (certificate inconsistency)
/// or the outcome carries no dual.
Witness build_witness(const PptseOutcome& outcome, const AffineStateFamily& fam,
                      const WitnessOptions& opts = {});

/// max(0, dA^2 dB t_opt): the white-noise admixture certified by the min-t
/// value of the extension test.
double random_robustness_bound(double t_opt, int d_a, int d_b);

/// Lower bound on the best separable approximation: the witness is rescaled
/// so its most negative eigenvalue is -1, then the bound is the rescaled
/// margin magnitude. Invariant under positive rescaling of W.
double bsa_bound(const Witness& w);

/// E_{n,m} lower bound: rescales W into {-n 1 <= W <= m 1} by the largest
/// admissible factor.
double witnessed_entanglement_bound(const Witness& w, double n, double m);

struct BoundsReport {
  double t_opt = 0.0;
  double random_robustness_lb = 0.0;
  double bsa_lb = 0.0;
  std::vector<std::tuple<double, double, double>> e_nm_entries;  // (n, m, bound)
};

BoundsReport bounds_report(const Witness& w, double t_opt, int d_a, int d_b);

Json witness_to_json(const Witness& w);
Witness witness_from_json(const Json& j);

}  // namespace entcert
