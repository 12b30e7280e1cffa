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

#include "entcert/pptse.hpp"

#include <algorithm>
#include <cmath>

#include "entcert/spin_basis.hpp"

namespace entcert {

std::vector<TransposeCut> independent_transpose_cuts(int k) {
  if (k < 1) throw std::invalid_argument("independent_transpose_cuts: k >= 1");
  std::vector<TransposeCut> cuts;
  auto seen = [&](int j, bool b) {
    for (const auto& c : cuts) {
      if ((c.a_copies == j && c.b == b) || (c.a_copies == k - j && c.b == !b)) return true;
    }
    return false;
  };
  for (int j = 0; j <= k; ++j) {
    for (int bi = 0; bi <= 1; ++bi) {
      const bool b = bi == 1;
      // Identity class: nothing transposed, or everything transposed.
      if ((j == 0 && !b) || (j == k && b)) continue;
      if (!seen(j, b)) cuts.push_back({j, b});
    }
  }
  return cuts;
}

int ExtensionModel::extension_dim() const {
  int d = dB;
  for (int i = 0; i < k; ++i) d *= dA;
  return d;
}

CMatrix symmetrized_basis_element(const std::vector<int>& multiset, int j_b,
                                  const OperatorBasis& basis_a, const OperatorBasis& basis_b,
                                  int k) {
  const int dim_a_k = static_cast<int>(std::lround(std::pow(basis_a.d, k)));
  const int dim = dim_a_k * basis_b.d;
  CMatrix out = CMatrix::Zero(dim, dim);
  for (const auto& arrangement : multiset_arrangements(multiset)) {
    CMatrix acc = basis_a.elements[arrangement[0]].raw();
    for (int c = 1; c < k; ++c) acc = kron(acc, basis_a.elements[arrangement[c]].raw());
    out += kron(acc, basis_b.elements[j_b].raw());
  }
  return out;
}

bool multiset_is_fixed(const std::vector<int>& multiset) {
  const int k = static_cast<int>(multiset.size());
  int ones = 0;
  for (int v : multiset) {
    if (v == 0) ++ones;
  }
  return ones >= k - 1;
}

CMatrix extension_fixed_embed(const HermitianMatrix& x, int k, const OperatorBasis& basis_a,
                              const OperatorBasis& basis_b) {
  const RMatrix coeffs = expand_in_basis(x, basis_a, basis_b);
  const int da2 = basis_a.d * basis_a.d;
  const int db2 = basis_b.d * basis_b.d;
  const int dim_a_k = static_cast<int>(std::lround(std::pow(basis_a.d, k)));
  CMatrix out = CMatrix::Zero(dim_a_k * basis_b.d, dim_a_k * basis_b.d);
  for (int i = 0; i < da2; ++i) {
    std::vector<int> multiset(k, 0);
    multiset[k - 1] = i;  // {1^(k-1), i}, ascending with basis element 1 as 0
    for (int j = 0; j < db2; ++j) {
      if (coeffs(i, j) == 0.0) continue;
      out += coeffs(i, j) * symmetrized_basis_element(multiset, j, basis_a, basis_b, k);
    }
  }
  return out;
}

CMatrix apply_cut(const CMatrix& m, const TransposeCut& cut, int d_a, int d_b, int k) {
  if (cut.a_copies == 0 && !cut.b) return m;
  std::vector<int> dims(k, d_a);
  dims.push_back(d_b);
  std::vector<bool> mask(k + 1, false);
  for (int i = 0; i < cut.a_copies; ++i) mask[i] = true;
  mask[k] = cut.b;
  return partial_transpose_factors(m, dims, mask);
}

ExtensionModel build_extension_model(const AffineStateFamily& fam, int k) {
  if (k < 1) throw std::invalid_argument("build_extension_model: k >= 1");
  ExtensionModel model;
  model.k = k;
  model.dA = fam.dA;
  model.dB = fam.dB;
  model.family = fam;
  const OperatorBasis basis_a = hermitian_basis(fam.dA);
  const OperatorBasis basis_b = hermitian_basis(fam.dB);
  model.sym = symmetric_index_map(fam.dA * fam.dA, k, fam.dB * fam.dB);

  model.G0 = extension_fixed_embed(fam.rho_part, k, basis_a, basis_b);
  for (const auto& mu : fam.mu_basis) {
    model.G_y.push_back(extension_fixed_embed(mu, k, basis_a, basis_b));
  }
  for (const auto& tau : fam.tau) {
    model.G_z.push_back(extension_fixed_embed(tau, k, basis_a, basis_b));
  }
  for (const auto& multiset : model.sym.multisets) {
    if (multiset_is_fixed(multiset)) continue;
    model.free_multisets.push_back(multiset);
    for (int j = 0; j < model.sym.dB2; ++j) {
      model.G_free.push_back(symmetrized_basis_element(multiset, j, basis_a, basis_b, k));
    }
  }
  return model;
}

BlockSdpProblem assemble_lmi(const ExtensionModel& model, bool t_on_interval_block) {
  const auto cuts = independent_transpose_cuts(model.k);
  const int big = model.extension_dim();
  const int n_intervals = model.family.interval_count();
  const int n_y = static_cast<int>(model.G_y.size());
  const int n_z = static_cast<int>(model.G_z.size());
  const int n_free = static_cast<int>(model.G_free.size());

  BlockSdpProblem p;
  p.block_dims.assign(1 + cuts.size(), big);
  if (n_intervals > 0) p.block_dims.push_back(2 * n_intervals);
  p.identity_mask.assign(p.block_dims.size(), true);
  if (n_intervals > 0 && !t_on_interval_block) p.identity_mask.back() = false;

  auto make_blocks = [&](const CMatrix& g, int z_index) {
    BlockMatrix bm;
    bm.blocks.push_back(g);
    for (const auto& cut : cuts) {
      bm.blocks.push_back(apply_cut(g, cut, model.dA, model.dB, model.k));
    }
    if (n_intervals > 0) {
      CMatrix diag = CMatrix::Zero(2 * n_intervals, 2 * n_intervals);
      if (z_index >= 0) {
        diag(2 * z_index, 2 * z_index) = 1.0;           // z - lo >= 0
        diag(2 * z_index + 1, 2 * z_index + 1) = -1.0;  // hi - z >= 0
      }
      bm.blocks.push_back(std::move(diag));
    }
    return bm;
  };

  p.F0 = make_blocks(model.G0, -1);
  if (n_intervals > 0) {
    CMatrix& diag = p.F0.blocks.back();
    for (int l = 0; l < n_intervals; ++l) {
      diag(2 * l, 2 * l) = -model.family.intervals[l].first;
      diag(2 * l + 1, 2 * l + 1) = model.family.intervals[l].second;
    }
  }
  for (int a = 0; a < n_y; ++a) p.F.push_back(make_blocks(model.G_y[a], -1));
  for (int l = 0; l < n_z; ++l) p.F.push_back(make_blocks(model.G_z[l], l));
  for (int f = 0; f < n_free; ++f) p.F.push_back(make_blocks(model.G_free[f], -1));
  p.c = RVector::Zero(n_y + n_z + n_free);
  p.validate();
  return p;
}

namespace {

PptseVerdict map_status(FeasibilityStatus s) {
  switch (s) {
    case FeasibilityStatus::Feasible:
      return PptseVerdict::ExtensionFound;
    case FeasibilityStatus::Infeasible:
      return PptseVerdict::NoExtension;
    case FeasibilityStatus::BoundaryUndecidable:
      return PptseVerdict::BoundaryUndecidable;
    default:
      return PptseVerdict::NumericalFailure;
  }
}

}  // namespace

PptseOutcome pptse_test(const AffineStateFamily& fam, int k, const PptseOptions& opts) {
  PptseOutcome out;
  out.level = k;

  const int n_y = fam.nullspace_dim();
  const int n_z = fam.interval_count();
  long big = fam.dB;
  for (int i = 0; i < k; ++i) big *= fam.dA;

  if (opts.compress && fam.dA == 2) {
    out.compressed = true;
    const spin::CompressedProblem cp =
        spin::build_compressed_problem(fam, k, opts.t_on_interval_block);
    const FeasibilityResult fr = check_feasibility(cp.problem, opts.sdp);
    out.verdict = map_status(fr.status);
    out.t_opt = fr.t_opt;
    out.stats = fr.raw;
    if (out.verdict == PptseVerdict::ExtensionFound) {
      out.y = fr.x.head(n_y);
      out.z = fr.x.segment(n_y, n_z);
      if (big <= opts.materialize_dim) {
        const ExtensionModel model = build_extension_model(fam, k);
        CMatrix ext = model.G0;
        int v = 0;
        for (int a = 0; a < n_y; ++a) ext += fr.x(v + a) * model.G_y[a];
        v += n_y;
        for (int l = 0; l < n_z; ++l) ext += fr.x(v + l) * model.G_z[l];
        v += n_z;
        for (size_t f = 0; f < model.G_free.size(); ++f) {
          ext += fr.x(v + static_cast<long>(f)) * model.G_free[f];
        }
        out.extension = HermitianMatrix::from_symmetrized(ext);
      }
    } else if (out.verdict == PptseVerdict::NoExtension && big <= 4 * opts.materialize_dim) {
      out.dual = spin::reconstruct_full_dual(cp, fr.Z);
    }
    return out;
  }

  const ExtensionModel model = build_extension_model(fam, k);
  const BlockSdpProblem p = assemble_lmi(model, opts.t_on_interval_block);
  const FeasibilityResult fr = check_feasibility(p, opts.sdp);
  out.verdict = map_status(fr.status);
  out.t_opt = fr.t_opt;
  out.stats = fr.raw;
  if (out.verdict == PptseVerdict::ExtensionFound) {
    out.y = fr.x.head(n_y);
    out.z = fr.x.segment(n_y, n_z);
    if (big <= opts.materialize_dim) {
      BlockMatrix s = p.F0;
      for (long i = 0; i < p.num_vars(); ++i) s.add_scaled(p.F[i], fr.x(i));
      out.extension = HermitianMatrix::from_symmetrized(s.blocks[0]);
    }
  } else if (out.verdict == PptseVerdict::NoExtension) {
    out.dual = fr.Z;
  }
  return out;
}

HermitianMatrix candidate_state(const AffineStateFamily& fam, const PptseOutcome& outcome) {
  if (outcome.verdict != PptseVerdict::ExtensionFound) {
    throw std::logic_error("candidate_state: outcome does not carry an extension");
  }
  const HermitianMatrix rho = family_member(fam, outcome.y, outcome.z);
  if (min_eigenvalue(rho) < -1e-8) {
    throw std::runtime_error("candidate_state: solver returned a non-PSD family member");
  }
  if (std::abs(rho.trace() - 1.0) > 1e-8) {
    throw std::runtime_error("candidate_state: solver returned a non-normalized member");
  }
  return rho;
}

CMatrix copy_permutation_operator(const std::vector<int>& perm, int d_a, int d_b) {
  const int k = static_cast<int>(perm.size());
  long dim = d_b;
  for (int i = 0; i < k; ++i) dim *= d_a;
  CMatrix p = CMatrix::Zero(dim, dim);
  std::vector<int> digits(k, 0);
  const long a_dim = dim / d_b;
  for (long idx = 0; idx < a_dim; ++idx) {
    long rest = idx;
    for (int c = k - 1; c >= 0; --c) {
      digits[c] = static_cast<int>(rest % d_a);
      rest /= d_a;
    }
    long target = 0;
    for (int c = 0; c < k; ++c) {
      target = target * d_a + digits[perm[c]];
    }
    for (int b = 0; b < d_b; ++b) {
      p(target * d_b + b, idx * d_b + b) = 1.0;
    }
  }
  return p;
}

}  // namespace entcert
