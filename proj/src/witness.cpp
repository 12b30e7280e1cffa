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

#include "entcert/witness.hpp"

#include <cmath>

#include "entcert/kernels.hpp"

namespace entcert {

BlockMatrix lambda_map(const HermitianMatrix& x, int k, int d_a, int d_b) {
  const OperatorBasis basis_a = hermitian_basis(d_a);
  const OperatorBasis basis_b = hermitian_basis(d_b);
  const CMatrix g = extension_fixed_embed(x, k, basis_a, basis_b);
  BlockMatrix out;
  out.blocks.push_back(g);
  for (const auto& cut : independent_transpose_cuts(k)) {
    out.blocks.push_back(apply_cut(g, cut, d_a, d_b, k));
  }
  return out;
}

HermitianMatrix lambda_adjoint(const BlockMatrix& z, int k, int d_a, int d_b) {
  const OperatorBasis basis_a = hermitian_basis(d_a);
  const OperatorBasis basis_b = hermitian_basis(d_b);
  const auto cuts = independent_transpose_cuts(k);
  if (z.blocks.size() != cuts.size() + 1 && z.blocks.size() != cuts.size() + 2) {
    throw std::invalid_argument("lambda_adjoint: block count does not match level");
  }
  long big = d_b;
  for (int i = 0; i < k; ++i) big *= d_a;
  for (size_t c = 0; c < cuts.size() + 1; ++c) {
    if (z.blocks[c].rows() != big) {
      throw std::invalid_argument("lambda_adjoint: block dimension mismatch");
    }
  }

  // Un-transpose each block (partial transposes are trace self-adjoint) and
  // take the adjoint of the fixed-part embedding.
  CMatrix y = z.blocks[0];
  for (size_t c = 0; c < cuts.size(); ++c) {
    y += apply_cut(z.blocks[1 + c], cuts[c], d_a, d_b, k);
  }

  const int da2 = d_a * d_a;
  const int db2 = d_b * d_b;
  const double scale = 1.0 / (basis_a.alpha * basis_b.alpha);
  CMatrix w = CMatrix::Zero(d_a * d_b, d_a * d_b);
  for (int i = 0; i < da2; ++i) {
    std::vector<int> multiset(k, 0);
    multiset[k - 1] = i;
    for (int j = 0; j < db2; ++j) {
      const CMatrix e = symmetrized_basis_element(multiset, j, basis_a, basis_b, k);
      const double coeff = scale * trace_inner(y, e);
      if (coeff == 0.0) continue;
      w += coeff * kron(basis_a.elements[i].raw(), basis_b.elements[j].raw());
    }
  }
  return HermitianMatrix::from_symmetrized(w);
}

namespace {

// State-level LMI of the family: [rho(y,z) block, interval diagonal block].
BlockSdpProblem family_state_problem(const AffineStateFamily& fam) {
  const int n_z = fam.interval_count();
  BlockSdpProblem p;
  p.block_dims = {fam.dim()};
  if (n_z > 0) p.block_dims.push_back(2 * n_z);
  p.identity_mask.assign(p.block_dims.size(), true);
  if (n_z > 0) p.identity_mask.back() = false;

  auto blocks_of = [&](const HermitianMatrix& h, int z_index) {
    BlockMatrix bm;
    bm.blocks.push_back(h.raw());
    if (n_z > 0) {
      CMatrix diag = CMatrix::Zero(2 * n_z, 2 * n_z);
      if (z_index >= 0) {
        diag(2 * z_index, 2 * z_index) = 1.0;
        diag(2 * z_index + 1, 2 * z_index + 1) = -1.0;
      }
      bm.blocks.push_back(std::move(diag));
    }
    return bm;
  };

  p.F0 = blocks_of(fam.rho_part, -1);
  if (n_z > 0) {
    CMatrix& diag = p.F0.blocks.back();
    for (int l = 0; l < n_z; ++l) {
      diag(2 * l, 2 * l) = -fam.intervals[l].first;
      diag(2 * l + 1, 2 * l + 1) = fam.intervals[l].second;
    }
  }
  for (int a = 0; a < fam.nullspace_dim(); ++a) p.F.push_back(blocks_of(fam.mu_basis[a], -1));
  for (int l = 0; l < n_z; ++l) p.F.push_back(blocks_of(fam.tau[l], l));
  p.c = RVector::Zero(fam.nullspace_dim() + n_z);
  return p;
}

}  // namespace

MarginResult witness_margin(const HermitianMatrix& w, const AffineStateFamily& fam,
                            const SdpOptions& opts) {
  MarginResult res;
  BlockSdpProblem p = family_state_problem(fam);

  // Family emptiness first: is there any PSD member at all?
  const FeasibilityResult feas = check_feasibility(p, opts);
  if (feas.status == FeasibilityStatus::Infeasible ||
      feas.status == FeasibilityStatus::BoundaryUndecidable) {
    res.family_empty = true;
    return res;
  }
  if (feas.status == FeasibilityStatus::NumericalFailure) {
    throw std::runtime_error("witness_margin: feasibility probe failed numerically");
  }

  if (p.num_vars() == 0) {
    // Fully determined state: the margin is just the expectation value.
    res.margin = trace_inner(w, fam.rho_part);
    return res;
  }

  // maximize Tr[W rho(y,z)] == Tr[W rho_part] - min(-(coefficient form))
  for (int a = 0; a < fam.nullspace_dim(); ++a) p.c(a) = -trace_inner(w, fam.mu_basis[a]);
  for (int l = 0; l < fam.interval_count(); ++l) {
    p.c(fam.nullspace_dim() + l) = -trace_inner(w, fam.tau[l]);
  }
  const SdpSolution s = solve(p, opts);
  if (s.status != SdpStatus::Optimal) {
    throw std::runtime_error("witness_margin: margin SDP failed: " + s.message);
  }
  res.margin = trace_inner(w, fam.rho_part) + (-s.primal_obj);
  return res;
}

Witness build_witness(const PptseOutcome& outcome, const AffineStateFamily& fam,
                      const WitnessOptions& opts) {
  if (outcome.verdict != PptseVerdict::NoExtension || !outcome.dual.has_value()) {
    throw std::invalid_argument("build_witness: outcome carries no infeasibility dual");
  }
  Witness w;
  w.source_level = outcome.level;
  w.w = lambda_adjoint(*outcome.dual, outcome.level, fam.dA, fam.dB);

  const RVector eig = eigenvalues(w.w);
  w.eig_min = eig(0);
  w.eig_max = eig(eig.size() - 1);

  const MarginResult mr = witness_margin(w.w, fam, opts.sdp);
  if (mr.family_empty) {
    throw std::runtime_error("build_witness: constraints admit no physical state");
  }
  w.margin = mr.margin;

  w.product_sample_min =
      opts.parallel
          ? kernels::product_state_min_parallel(w.w.raw(), fam.dA, fam.dB, opts.sample_count,
                                                opts.seed)
          : kernels::product_state_min_serial(w.w.raw(), fam.dA, fam.dB, opts.sample_count,
                                              opts.seed);
  if (w.product_sample_min < -1e-8) {
    throw std::runtime_error(
        "build_witness: sampled product state with negative expectation; "
        "dual certificate is inconsistent");
  }
  return w;
}

double random_robustness_bound(double t_opt, int d_a, int d_b) {
  return std::max(0.0, static_cast<double>(d_a) * d_a * d_b * t_opt);
}

double bsa_bound(const Witness& w) {
  if (w.margin >= 0.0) return 0.0;
  if (w.eig_min >= -1e-15) return 0.0;  // a PSD witness cannot have negative margin
  const double s = 1.0 / (-w.eig_min);
  return -s * w.margin;
}

double witnessed_entanglement_bound(const Witness& w, double n, double m) {
  if (n <= 0.0 || m <= 0.0) {
    throw std::invalid_argument("witnessed_entanglement_bound: n, m > 0");
  }
  if (w.eig_min >= -n - 1e-10 && w.eig_max <= m + 1e-10) {
    return std::max(0.0, -w.margin);
  }
  double s = std::numeric_limits<double>::infinity();
  if (w.eig_min < 0.0) s = std::min(s, n / (-w.eig_min));
  if (w.eig_max > 0.0) s = std::min(s, m / w.eig_max);
  if (!std::isfinite(s)) return 0.0;
  return std::max(0.0, -s * w.margin);
}

BoundsReport bounds_report(const Witness& w, double t_opt, int d_a, int d_b) {
  BoundsReport r;
  r.t_opt = t_opt;
  r.random_robustness_lb = random_robustness_bound(t_opt, d_a, d_b);
  r.bsa_lb = bsa_bound(w);
  r.e_nm_entries.emplace_back(1.0, 1.0, witnessed_entanglement_bound(w, 1.0, 1.0));
  return r;
}

Json witness_to_json(const Witness& w) {
  Json j;
  j["matrix"] = matrix_to_json(w.w);
  j["margin"] = w.margin;
  j["eig_min"] = w.eig_min;
  j["eig_max"] = w.eig_max;
  j["source_level"] = w.source_level;
  j["product_sample_min"] = w.product_sample_min;
  return j;
}

Witness witness_from_json(const Json& j) {
  Witness w;
  w.w = matrix_from_json(j.at("matrix"));
  w.margin = j.at("margin").get<double>();
  w.eig_min = j.at("eig_min").get<double>();
  w.eig_max = j.at("eig_max").get<double>();
  w.source_level = j.at("source_level").get<int>();
  w.product_sample_min = j.value("product_sample_min", 0.0);
  return w;
}

}  // namespace entcert
