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

#include "entcert/spin_basis.hpp"

#include <map>
#include <mutex>

#include "entcert/pptse.hpp"

namespace entcert::spin {

namespace {

// Couple one more qubit (appended as the least significant factor) onto
// states |j, m>, m = -j..j, producing |j', m'> with j' = j +- 1/2.
// Standard Clebsch-Gordan coefficients; the overall sign is irrelevant here.
std::vector<Eigen::VectorXd> couple_qubit(const std::vector<Eigen::VectorXd>& states, int twoJ,
                                          bool up) {
  const int twoJp = up ? twoJ + 1 : twoJ - 1;
  const long dim = states.empty() ? 1 : states[0].size();
  std::vector<Eigen::VectorXd> out(twoJp + 1, Eigen::VectorXd::Zero(dim * 2));
  for (int idx = 0; idx <= twoJp; ++idx) {
    const int twoM = -twoJp + 2 * idx;  // new magnetic number (doubled)
    // components |j, (twoM-1)/2> |up>  and |j, (twoM+1)/2> |down>
    const double cu = (twoJ + twoM + 1) / (2.0 * (twoJ + 1));
    const double cd = (twoJ - twoM + 1) / (2.0 * (twoJ + 1));
    const double coeff_up = up ? std::sqrt(cu) : -std::sqrt(cd);
    const double coeff_dn = up ? std::sqrt(cd) : std::sqrt(cu);
    const int lo = (twoM - 1 + twoJ) / 2;  // index of m - 1/2 in the old list
    const int hi = (twoM + 1 + twoJ) / 2;
    Eigen::VectorXd& v = out[idx];
    if (lo >= 0 && lo <= twoJ) {
      for (long i = 0; i < dim; ++i) v(2 * i) += coeff_up * states[lo](i);
    }
    if (hi >= 0 && hi <= twoJ) {
      for (long i = 0; i < dim; ++i) v(2 * i + 1) += coeff_dn * states[hi](i);
    }
  }
  return out;
}

}  // namespace

SectorBasis build_sector_basis(int g) {
  SectorBasis basis;
  basis.g = g;
  if (g == 0) {
    basis.twoJ = {0};
    basis.isometry = {RMatrix::Ones(1, 1)};
    return basis;
  }
  for (int twoJ = g % 2; twoJ <= g; twoJ += 2) {
    // Path: rise to the needed height, then descend. Any single path gives
    // one multiplicity copy, which is all the compression needs.
    const int ups = (g + twoJ) / 2 - 1;
    std::vector<Eigen::VectorXd> states = {Eigen::VectorXd::Zero(2),
                                           Eigen::VectorXd::Zero(2)};
    states[0](1) = 1.0;  // m = -1/2 is |1>
    states[1](0) = 1.0;  // m = +1/2 is |0>
    int cur = 1;         // twoJ so far
    for (int step = 0; step < g - 1; ++step) {
      const bool up = step < ups;
      states = couple_qubit(states, cur, up);
      cur += up ? 1 : -1;
    }
    if (cur != twoJ) throw std::logic_error("build_sector_basis: path bookkeeping");
    RMatrix v(1L << g, twoJ + 1);
    for (int c = 0; c <= twoJ; ++c) v.col(c) = states[c];
    basis.twoJ.push_back(twoJ);
    basis.isometry.push_back(std::move(v));
  }
  return basis;
}

namespace {

void apply_single_qubit(Eigen::VectorXcd& v, const Eigen::Matrix2cd& u, int q, int g) {
  const long stride = 1L << (g - 1 - q);
  const long n = v.size();
  for (long base = 0; base < n; base += 2 * stride) {
    for (long off = 0; off < stride; ++off) {
      const long i0 = base + off;
      const long i1 = i0 + stride;
      const Complex a = v(i0), b = v(i1);
      v(i0) = u(0, 0) * a + u(0, 1) * b;
      v(i1) = u(1, 0) * a + u(1, 1) * b;
    }
  }
}

GroupTables build_group_tables(int g) {
  GroupTables t;
  t.g = g;
  t.sectors = build_sector_basis(g);
  const OperatorBasis basis_a = hermitian_basis(2);

  std::vector<Eigen::Matrix2cd> letters(4);
  std::vector<double> letter_sign(4);
  for (int a = 0; a < 4; ++a) {
    letters[a] = basis_a.elements[a].raw();
    const double sym = (letters[a] - letters[a].transpose()).norm();
    const double asym = (letters[a] + letters[a].transpose()).norm();
    if (sym < 1e-12) {
      letter_sign[a] = 1.0;
    } else if (asym < 1e-12) {
      letter_sign[a] = -1.0;
    } else {
      throw std::logic_error("qubit basis letter is neither symmetric nor antisymmetric");
    }
  }

  if (g == 0) {
    t.multisets = {{}};
    t.tsign = {1.0};
    t.A = {{CMatrix::Ones(1, 1)}};
    return t;
  }

  const SymmetricIndex idx = symmetric_index_map(4, g, 1);
  t.multisets = idx.multisets;
  const size_t n_sec = t.sectors.twoJ.size();
  t.A.assign(n_sec, std::vector<CMatrix>(t.multisets.size()));
  t.tsign.assign(t.multisets.size(), 1.0);

  const long dim = 1L << g;
  for (size_t mi = 0; mi < t.multisets.size(); ++mi) {
    const auto& m = t.multisets[mi];
    double sign = 1.0;
    for (int a : m) sign *= letter_sign[a];
    t.tsign[mi] = sign;

    for (size_t s = 0; s < n_sec; ++s) {
      const RMatrix& v = t.sectors.isometry[s];
      const int cols = static_cast<int>(v.cols());
      Eigen::MatrixXcd applied = Eigen::MatrixXcd::Zero(dim, cols);
      for (const auto& arrangement : multiset_arrangements(m)) {
        for (int c = 0; c < cols; ++c) {
          Eigen::VectorXcd w = v.col(c).cast<Complex>();
          for (int q = 0; q < g; ++q) {
            apply_single_qubit(w, letters[arrangement[q]], q, g);
          }
          applied.col(c) += w;
        }
      }
      t.A[s][mi] = v.transpose().cast<Complex>() * applied;
    }
  }
  return t;
}

}  // namespace

int GroupTables::multiset_index(const std::vector<int>& m) const {
  // Multisets are enumerated in lexicographic order of their sorted form.
  const auto it = std::lower_bound(multisets.begin(), multisets.end(), m);
  if (it == multisets.end() || *it != m) {
    throw std::logic_error("GroupTables: unknown multiset");
  }
  return static_cast<int>(it - multisets.begin());
}

const GroupTables& group_tables(int g) {
  static std::map<int, GroupTables> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(g);
  if (it == cache.end()) {
    it = cache.emplace(g, build_group_tables(g)).first;
  }
  return it->second;
}

namespace {

// One expansion coefficient of an operator on the extension space:
// weight * S(multiset) (x) sigma^B_{jb}.
struct Term {
  const std::vector<int>* multiset;
  int jb;
  double weight;
};

// Enumerates the distinct splits of `m` into a sub-multiset of size t and
// its complement.
void enumerate_splits(const std::vector<int>& m, int t,
                      std::vector<std::pair<std::vector<int>, std::vector<int>>>& out) {
  out.clear();
  int counts[4] = {0, 0, 0, 0};
  for (int a : m) ++counts[a];
  std::vector<int> pick(4, 0);
  // Nested loops over per-letter picks (four letters for a qubit basis).
  for (pick[0] = 0; pick[0] <= counts[0]; ++pick[0]) {
    for (pick[1] = 0; pick[1] <= counts[1]; ++pick[1]) {
      for (pick[2] = 0; pick[2] <= counts[2]; ++pick[2]) {
        for (pick[3] = 0; pick[3] <= counts[3]; ++pick[3]) {
          if (pick[0] + pick[1] + pick[2] + pick[3] != t) continue;
          std::vector<int> m1, m2;
          for (int a = 0; a < 4; ++a) {
            m1.insert(m1.end(), pick[a], a);
            m2.insert(m2.end(), counts[a] - pick[a], a);
          }
          out.emplace_back(std::move(m1), std::move(m2));
        }
      }
    }
  }
}

std::vector<Term> expansion_terms(const HermitianMatrix& x,
                                  const std::vector<std::vector<int>>& fixed_multisets,
                                  const OperatorBasis& basis_a, const OperatorBasis& basis_b) {
  const RMatrix coeffs = expand_in_basis(x, basis_a, basis_b);
  std::vector<Term> terms;
  for (int i = 0; i < coeffs.rows(); ++i) {
    for (int j = 0; j < coeffs.cols(); ++j) {
      if (coeffs(i, j) == 0.0) continue;
      terms.push_back({&fixed_multisets[i], j, coeffs(i, j)});
    }
  }
  return terms;
}

}  // namespace

CompressedProblem build_compressed_problem(const AffineStateFamily& fam, int k,
                                           bool t_on_interval_block) {
  if (fam.dA != 2) throw std::invalid_argument("spin compression requires dA == 2");
  if (k < 1) throw std::invalid_argument("build_compressed_problem: k >= 1");

  CompressedProblem cp;
  cp.k = k;
  cp.dB = fam.dB;
  cp.n_y = fam.nullspace_dim();
  cp.n_z = fam.interval_count();

  const OperatorBasis basis_a = hermitian_basis(2);
  const OperatorBasis basis_b = hermitian_basis(fam.dB);
  const int db2 = fam.dB * fam.dB;

  // Transpose signs of the B basis elements.
  std::vector<double> eta(db2);
  for (int j = 0; j < db2; ++j) {
    const CMatrix& s = basis_b.elements[j].raw();
    if ((s - s.transpose()).norm() < 1e-12) {
      eta[j] = 1.0;
    } else if ((s + s.transpose()).norm() < 1e-12) {
      eta[j] = -1.0;
    } else {
      throw std::logic_error("B basis element is neither symmetric nor antisymmetric");
    }
  }

  const SymmetricIndex sym = symmetric_index_map(4, k, db2);
  std::vector<std::vector<int>> fixed_multisets(4);
  for (int i = 0; i < 4; ++i) {
    std::vector<int> m(k, 0);
    m[k - 1] = i;
    fixed_multisets[i] = m;
  }
  std::vector<const std::vector<int>*> free_multisets;
  for (const auto& m : sym.multisets) {
    if (!multiset_is_fixed(m)) free_multisets.push_back(&m);
  }
  cp.n_free = static_cast<int>(free_multisets.size()) * db2;

  // Block layout: untransposed + each cut, each split into sector pairs.
  std::vector<TransposeCut> cut_list;
  cut_list.push_back({0, false});
  for (const auto& c : independent_transpose_cuts(k)) cut_list.push_back(c);

  for (const auto& cut : cut_list) {
    const GroupTables& g1 = group_tables(cut.a_copies);
    const GroupTables& g2 = group_tables(k - cut.a_copies);
    for (size_t s1 = 0; s1 < g1.sectors.twoJ.size(); ++s1) {
      for (size_t s2 = 0; s2 < g2.sectors.twoJ.size(); ++s2) {
        CompressedBlockInfo info;
        info.cut_a_copies = cut.a_copies;
        info.cut_b = cut.b;
        info.sector1 = static_cast<int>(s1);
        info.sector2 = static_cast<int>(s2);
        cp.info.push_back(info);
        cp.problem.block_dims.push_back((g1.sectors.twoJ[s1] + 1) *
                                        (g2.sectors.twoJ[s2] + 1) * fam.dB);
      }
    }
  }
  const int n_big_blocks = static_cast<int>(cp.problem.block_dims.size());
  cp.has_interval_block = cp.n_z > 0;
  if (cp.has_interval_block) cp.problem.block_dims.push_back(2 * cp.n_z);
  cp.problem.identity_mask.assign(cp.problem.block_dims.size(), true);
  if (cp.has_interval_block && !t_on_interval_block) cp.problem.identity_mask.back() = false;

  std::vector<std::pair<std::vector<int>, std::vector<int>>> splits;

  // Compressed blocks of sum_terms weight * S(m) (x) sigma_jb under a cut.
  auto make_blocks = [&](const std::vector<Term>& terms, int z_index) {
    BlockMatrix bm;
    bm.blocks.reserve(cp.problem.block_dims.size());
    for (int blk = 0; blk < n_big_blocks; ++blk) {
      const auto& info = cp.info[blk];
      const int t = info.cut_a_copies;
      const GroupTables& g1 = group_tables(t);
      const GroupTables& g2 = group_tables(k - t);
      const int d1 = g1.sectors.twoJ[info.sector1] + 1;
      const int d2 = g2.sectors.twoJ[info.sector2] + 1;
      CMatrix acc = CMatrix::Zero(d1 * d2 * fam.dB, d1 * d2 * fam.dB);
      for (const auto& term : terms) {
        enumerate_splits(*term.multiset, t, splits);
        const CMatrix& sb = basis_b.elements[term.jb].raw();
        const double bsign = info.cut_b ? eta[term.jb] : 1.0;
        CMatrix a_part = CMatrix::Zero(d1 * d2, d1 * d2);
        for (const auto& [m1, m2] : splits) {
          const CMatrix& a1 = g1.A[info.sector1][g1.multiset_index(m1)];
          const CMatrix& a2 = g2.A[info.sector2][g2.multiset_index(m2)];
          const double sign = g1.tsign[g1.multiset_index(m1)];
          a_part += (term.weight * sign * bsign) * kron(a1, a2);
        }
        acc += kron(a_part, sb);
      }
      bm.blocks.push_back(std::move(acc));
    }
    if (cp.has_interval_block) {
      CMatrix diag = CMatrix::Zero(2 * cp.n_z, 2 * cp.n_z);
      if (z_index >= 0) {
        diag(2 * z_index, 2 * z_index) = 1.0;
        diag(2 * z_index + 1, 2 * z_index + 1) = -1.0;
      }
      bm.blocks.push_back(std::move(diag));
    }
    return bm;
  };

  cp.problem.F0 = make_blocks(expansion_terms(fam.rho_part, fixed_multisets, basis_a, basis_b),
                              -1);
  if (cp.has_interval_block) {
    CMatrix& diag = cp.problem.F0.blocks.back();
    for (int l = 0; l < cp.n_z; ++l) {
      diag(2 * l, 2 * l) = -fam.intervals[l].first;
      diag(2 * l + 1, 2 * l + 1) = fam.intervals[l].second;
    }
  }
  for (int a = 0; a < cp.n_y; ++a) {
    cp.problem.F.push_back(
        make_blocks(expansion_terms(fam.mu_basis[a], fixed_multisets, basis_a, basis_b), -1));
  }
  for (int l = 0; l < cp.n_z; ++l) {
    cp.problem.F.push_back(
        make_blocks(expansion_terms(fam.tau[l], fixed_multisets, basis_a, basis_b), l));
  }
  for (const auto* m : free_multisets) {
    for (int j = 0; j < db2; ++j) {
      cp.problem.F.push_back(make_blocks({{m, j, 1.0}}, -1));
    }
  }
  cp.problem.c = RVector::Zero(cp.n_y + cp.n_z + cp.n_free);
  cp.problem.validate();
  return cp;
}

BlockMatrix reconstruct_full_dual(const CompressedProblem& cp, const BlockMatrix& z) {
  const int k = cp.k;
  const long big = (1L << k) * cp.dB;
  std::vector<TransposeCut> cut_list;
  cut_list.push_back({0, false});
  for (const auto& c : independent_transpose_cuts(k)) cut_list.push_back(c);

  BlockMatrix full;
  for (size_t c = 0; c < cut_list.size(); ++c) {
    full.blocks.push_back(CMatrix::Zero(big, big));
  }
  for (size_t blk = 0; blk < cp.info.size(); ++blk) {
    const auto& info = cp.info[blk];
    size_t cut_index = cut_list.size();
    for (size_t c = 0; c < cut_list.size(); ++c) {
      if (cut_list[c].a_copies == info.cut_a_copies && cut_list[c].b == info.cut_b) {
        cut_index = c;
        break;
      }
    }
    if (cut_index == cut_list.size()) {
      throw std::logic_error("reconstruct_full_dual: block cut not in layout");
    }
    const GroupTables& g1 = group_tables(info.cut_a_copies);
    const GroupTables& g2 = group_tables(k - info.cut_a_copies);
    const CMatrix v1 = g1.sectors.isometry[info.sector1].cast<Complex>();
    const CMatrix v2 = g2.sectors.isometry[info.sector2].cast<Complex>();
    const CMatrix w = kron(kron(v1, v2), CMatrix::Identity(cp.dB, cp.dB));
    full.blocks[cut_index] += w * z.blocks[blk] * w.adjoint();
  }
  if (cp.has_interval_block) {
    full.blocks.push_back(z.blocks.back());
  }
  for (auto& b : full.blocks) b = 0.5 * (b + b.adjoint().eval());
  return full;
}

}  // namespace entcert::spin
