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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "entcert/pptse.hpp"
#include "entcert/spin_basis.hpp"
#include "test_support.hpp"

using namespace entcert;

namespace {

AffineStateFamily determined_family(const HermitianMatrix& rho) {
  const FamilyResult r = build_affine_family(test::tomography_constraints(rho));
  REQUIRE(r.status == FamilyStatus::FullyDetermined);
  return r.family;
}

}  // namespace

TEST_CASE("sector isometries are orthonormal and dimensions add up") {
  for (int g = 1; g <= 6; ++g) {
    const spin::SectorBasis basis = spin::build_sector_basis(g);
    long total = 0;
    for (size_t s = 0; s < basis.twoJ.size(); ++s) {
      const RMatrix& v = basis.isometry[s];
      CHECK((v.transpose() * v - RMatrix::Identity(v.cols(), v.cols()))
                .cwiseAbs()
                .maxCoeff() < 1e-12);
      // One multiplicity copy per sector: total over all copies must be 2^g.
      const int twoJ = basis.twoJ[s];
      // Catalan-style multiplicity of spin j in g qubits.
      auto binom = [](int n, int r) {
        if (r < 0 || r > n) return 0.0;
        double v = 1.0;
        for (int i = 1; i <= r; ++i) v = v * (n - r + i) / i;
        return v;
      };
      const double mult = binom(g, (g - twoJ) / 2) - binom(g, (g - twoJ) / 2 - 1);
      total += static_cast<long>(mult + 0.5) * (twoJ + 1);
    }
    CHECK(total == (1L << g));
  }
}

TEST_CASE("sector blocks reproduce symmetrized operators exactly") {
  // For an invariant operator, sum over sectors of V (V^T S V) V^T, expanded
  // with multiplicities, must reproduce all eigenvalues. We check the
  // stronger statement we rely on: V^T S(m) V computed from the tables
  // matches a direct dense construction.
  const OperatorBasis basis_a = hermitian_basis(2);
  const OperatorBasis basis_b = hermitian_basis(1);
  for (int g = 1; g <= 4; ++g) {
    const spin::GroupTables& t = spin::group_tables(g);
    for (size_t mi = 0; mi < t.multisets.size(); ++mi) {
      const CMatrix dense =
          symmetrized_basis_element(t.multisets[mi], 0, basis_a, basis_b, g);
      for (size_t s = 0; s < t.sectors.twoJ.size(); ++s) {
        const CMatrix v = t.sectors.isometry[s].cast<Complex>();
        const CMatrix expected = v.adjoint() * dense * v;
        CHECK((t.A[s][mi] - expected).cwiseAbs().maxCoeff() < 1e-12);
      }
      // Transpose sign: S(m)^T = tsign(m) S(m).
      CHECK((dense.transpose() - t.tsign[mi] * dense).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("compressed and full assemblies have identical minimum eigenvalues") {
  std::mt19937_64 rng(31);
  const AffineStateFamily fam = [&] {
    const FamilyResult r = build_affine_family(test::example_constraints());
    REQUIRE(r.status == FamilyStatus::Family);
    return r.family;
  }();

  for (int k : {1, 2, 3}) {
    const ExtensionModel model = build_extension_model(fam, k);
    const BlockSdpProblem full = assemble_lmi(model, false);
    const spin::CompressedProblem cp = spin::build_compressed_problem(fam, k, false);
    REQUIRE(full.num_vars() == cp.problem.num_vars());

    std::normal_distribution<double> normal(0.0, 1.0);
    for (int rep = 0; rep < 3; ++rep) {
      RVector x(full.num_vars());
      for (long i = 0; i < x.size(); ++i) x(i) = 0.3 * normal(rng);

      BlockMatrix sf = full.F0;
      BlockMatrix sc = cp.problem.F0;
      for (long i = 0; i < x.size(); ++i) {
        sf.add_scaled(full.F[i], x(i));
        sc.add_scaled(cp.problem.F[i], x(i));
      }
      // Group compressed sector blocks by their cut and compare the minimum
      // eigenvalue with the corresponding full block.
      const auto cuts = independent_transpose_cuts(k);
      std::vector<TransposeCut> layout = {{0, false}};
      layout.insert(layout.end(), cuts.begin(), cuts.end());
      for (size_t c = 0; c < layout.size(); ++c) {
        double compressed_min = std::numeric_limits<double>::infinity();
        for (size_t blk = 0; blk < cp.info.size(); ++blk) {
          if (cp.info[blk].cut_a_copies == layout[c].a_copies &&
              cp.info[blk].cut_b == layout[c].b) {
            compressed_min = std::min(compressed_min, min_eigenvalue(sc.blocks[blk]));
          }
        }
        CHECK(min_eigenvalue(sf.blocks[c]) ==
              doctest::Approx(compressed_min).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("compressed and full t_opt agree on entangled and separable cases") {
  std::mt19937_64 rng(37);
  for (const auto& rho :
       {test::werner(0.9), test::werner(0.2), test::random_density(4, rng)}) {
    const AffineStateFamily fam = determined_family(rho);
    for (int k : {1, 2}) {
      PptseOptions full;
      full.compress = false;
      PptseOptions comp;
      comp.compress = true;
      const PptseOutcome a = pptse_test(fam, k, full);
      const PptseOutcome b = pptse_test(fam, k, comp);
      REQUIRE(a.verdict == b.verdict);
      if (a.verdict != PptseVerdict::ExtensionFound) {
        CHECK(a.t_opt == doctest::Approx(b.t_opt).epsilon(1e-4));
      }
    }
  }
}

TEST_CASE("reconstructed duals certify the full-space problem") {
  const AffineStateFamily fam = determined_family(test::werner(0.8));
  PptseOptions comp;
  comp.compress = true;
  const PptseOutcome out = pptse_test(fam, 2, comp);
  REQUIRE(out.verdict == PptseVerdict::NoExtension);
  REQUIRE(out.dual.has_value());

  const BlockSdpProblem full = assemble_lmi(build_extension_model(fam, 2), false);
  FeasibilityResult fr;
  fr.status = FeasibilityStatus::Infeasible;
  fr.t_opt = out.t_opt;
  fr.Z = *out.dual;
  CHECK(verify_infeasibility(full, fr).all_pass());
}

TEST_CASE("compressed level-3 solve stays consistent with the hierarchy") {
  const AffineStateFamily fam = determined_family(test::werner(0.6));
  PptseOptions comp;
  comp.compress = true;
  const PptseOutcome k2 = pptse_test(fam, 2, comp);
  const PptseOutcome k3 = pptse_test(fam, 3, comp);
  REQUIRE(k2.verdict == PptseVerdict::NoExtension);
  REQUIRE(k3.verdict == PptseVerdict::NoExtension);
  CHECK(8.0 * k2.t_opt <= 16.0 * k3.t_opt + 1e-6);
}
