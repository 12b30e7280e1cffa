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

#include "entcert/witness.hpp"
#include "test_support.hpp"

using namespace entcert;

namespace {

AffineStateFamily example_family(bool fifth = false) {
  const FamilyResult r = build_affine_family(test::example_constraints(fifth));
  REQUIRE(r.status == FamilyStatus::Family);
  return r.family;
}

AffineStateFamily determined_family(const HermitianMatrix& rho) {
  const FamilyResult r = build_affine_family(test::tomography_constraints(rho));
  REQUIRE(r.status == FamilyStatus::FullyDetermined);
  return r.family;
}

BlockMatrix random_dual_blocks(int k, std::mt19937_64& rng) {
  BlockMatrix z;
  const int big = (1 << k) * 2;
  for (size_t c = 0; c < independent_transpose_cuts(k).size() + 1; ++c) {
    z.blocks.push_back(test::random_hermitian(big, rng).raw());
  }
  return z;
}

}  // namespace

TEST_CASE("lambda map: zero, linearity, and consistency with the assembly") {
  std::mt19937_64 rng(3);
  const BlockMatrix z0 = lambda_map(HermitianMatrix::zero(4), 2, 2, 2);
  for (const auto& b : z0.blocks) CHECK(b.cwiseAbs().maxCoeff() == 0.0);

  for (int rep = 0; rep < 10; ++rep) {
    const HermitianMatrix x = test::random_hermitian(4, rng);
    const HermitianMatrix y = test::random_hermitian(4, rng);
    const double a = 0.7, b = -1.3;
    const BlockMatrix lhs =
        lambda_map(HermitianMatrix::from_symmetrized(a * x.raw() + b * y.raw()), 2, 2, 2);
    const BlockMatrix lx = lambda_map(x, 2, 2, 2);
    const BlockMatrix ly = lambda_map(y, 2, 2, 2);
    for (size_t c = 0; c < lhs.blocks.size(); ++c) {
      CHECK((lhs.blocks[c] - a * lx.blocks[c] - b * ly.blocks[c]).cwiseAbs().maxCoeff() <
            1e-12);
    }
  }

  // Lambda(rho_part) equals the F0 big blocks of the exact-family assembly.
  const AffineStateFamily fam = determined_family(test::random_density(4, rng));
  const ExtensionModel model = build_extension_model(fam, 2);
  const BlockSdpProblem p = assemble_lmi(model, false);
  const BlockMatrix lam = lambda_map(fam.rho_part, 2, 2, 2);
  for (size_t c = 0; c < lam.blocks.size(); ++c) {
    CHECK((lam.blocks[c] - p.F0.blocks[c]).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("adjoint identity holds to 1e-10 on random pairs at k = 1 and 2") {
  std::mt19937_64 rng(7);
  for (int k : {1, 2}) {
    for (int rep = 0; rep < 50; ++rep) {
      const HermitianMatrix x = test::random_hermitian(4, rng);
      const BlockMatrix z = random_dual_blocks(k, rng);
      const HermitianMatrix w = lambda_adjoint(z, k, 2, 2);
      const double lhs = block_inner(lambda_map(x, k, 2, 2), z);
      const double rhs = trace_inner(x, w);
      CHECK(std::abs(lhs - rhs) < 1e-10);
    }
  }
  std::mt19937_64 rng2(11);
  const BlockMatrix z = random_dual_blocks(1, rng2);
  BlockMatrix zeroed = z;
  for (auto& b : zeroed.blocks) b.setZero();
  CHECK(lambda_adjoint(zeroed, 1, 2, 2).frobenius_norm() == 0.0);
}

TEST_CASE("example constraints yield a detecting witness") {
  const AffineStateFamily fam = example_family();
  const PptseOutcome out = pptse_test(fam, 1);
  REQUIRE(out.verdict == PptseVerdict::NoExtension);
  WitnessOptions wopts;
  const Witness w = build_witness(out, fam, wopts);
  CHECK(w.margin <= -0.0168 + 1e-3);
  CHECK(w.product_sample_min >= -1e-8);
  CHECK(w.margin == doctest::Approx(-out.t_opt).epsilon(1e-3));
}

TEST_CASE("fifth constraint improves the witness margin") {
  const AffineStateFamily fam = example_family(true);
  const PptseOutcome out = pptse_test(fam, 1);
  REQUIRE(out.verdict == PptseVerdict::NoExtension);
  const Witness w = build_witness(out, fam, {});
  CHECK(w.margin <= -0.021 + 1e-3);
}

TEST_CASE("Bell witness from the level-1 dual detects the Bell state") {
  const HermitianMatrix bell = test::bell_phi_plus();
  const AffineStateFamily fam = determined_family(bell);
  const PptseOutcome out = pptse_test(fam, 1);
  REQUIRE(out.verdict == PptseVerdict::NoExtension);
  const Witness w = build_witness(out, fam, {});
  CHECK(trace_inner(w.w, bell) < 0.0);
  CHECK(w.product_sample_min >= -1e-8);
  CHECK(w.margin == doctest::Approx(trace_inner(w.w, bell)).epsilon(1e-6));
}

TEST_CASE("witness margins of the identity witnesses") {
  const AffineStateFamily fam = example_family();
  const MarginResult plus = witness_margin(HermitianMatrix::identity(4), fam);
  const MarginResult minus =
      witness_margin(HermitianMatrix::identity(4).scaled(-1.0), fam);
  REQUIRE_FALSE(plus.family_empty);
  CHECK(plus.margin == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(minus.margin == doctest::Approx(-1.0).epsilon(1e-6));
}

TEST_CASE("published witness audit: margin and M_{1,1} membership") {
  const HermitianMatrix z = test::paper_witness();
  const AffineStateFamily fam = example_family();
  const MarginResult mr = witness_margin(z, fam);
  REQUIRE_FALSE(mr.family_empty);
  CHECK(mr.margin <= -0.014);
  const RVector eig = eigenvalues(z);
  CHECK(eig(0) >= -1.01);
  CHECK(eig(3) <= 1.01);
}

TEST_CASE("family emptiness is reported, not mistaken for entanglement") {
  // Normalization plus two projector expectations that cannot both be large.
  ConstraintSet cs;
  cs.dA = cs.dB = 2;
  CMatrix p0 = CMatrix::Zero(4, 4);
  p0(0, 0) = 1.0;
  CMatrix p1 = CMatrix::Zero(4, 4);
  p1(1, 1) = 1.0;
  CMatrix p2 = CMatrix::Zero(4, 4);
  p2(2, 2) = 1.0;
  cs.constraints.push_back({HermitianMatrix::from(p0), 0.7, 0.7});
  cs.constraints.push_back({HermitianMatrix::from(p1), 0.7, 0.7});
  cs.constraints.push_back({HermitianMatrix::from(p2), 0.7, 0.7});
  cs.constraints.push_back({HermitianMatrix::identity(4), 1.0, 1.0});
  const FamilyResult r = build_affine_family(cs);
  REQUIRE(r.status == FamilyStatus::Family);  // Hermitian solutions exist
  const MarginResult mr = witness_margin(HermitianMatrix::identity(4), r.family);
  CHECK(mr.family_empty);
}

TEST_CASE("random robustness bound formula") {
  CHECK(random_robustness_bound(0.0168, 2, 2) == doctest::Approx(0.1344));
  CHECK(random_robustness_bound(0.021, 2, 2) == doctest::Approx(0.168));
  CHECK(random_robustness_bound(0.0, 2, 2) == 0.0);
  CHECK(random_robustness_bound(-0.3, 2, 2) == 0.0);
  CHECK(random_robustness_bound(0.01, 3, 2) == doctest::Approx(0.18));
}

TEST_CASE("BSA bound: scale invariance and M_{1,1} normalization") {
  Witness w;
  w.margin = -0.0168;
  w.eig_min = -1.0;
  w.eig_max = 0.9;
  CHECK(bsa_bound(w) == doctest::Approx(0.0168));

  for (double c : {0.5, 2.0, 10.0}) {
    Witness scaled = w;
    scaled.margin *= c;
    scaled.eig_min *= c;
    scaled.eig_max *= c;
    CHECK(bsa_bound(scaled) == doctest::Approx(bsa_bound(w)).epsilon(1e-12));
    CHECK(witnessed_entanglement_bound(scaled, 1, 1) ==
          doctest::Approx(witnessed_entanglement_bound(w, 1, 1)).epsilon(1e-12));
  }

  Witness positive = w;
  positive.margin = 0.05;
  CHECK(bsa_bound(positive) == 0.0);
}

TEST_CASE("witnessed entanglement bounds across M sets") {
  Witness w;
  w.margin = -0.0168;
  w.eig_min = -1.0;
  w.eig_max = 1.0;
  CHECK(witnessed_entanglement_bound(w, 1, 1) == doctest::Approx(0.0168));
  // Larger boxes only help.
  CHECK(witnessed_entanglement_bound(w, 1, 10) >=
        witnessed_entanglement_bound(w, 1, 1) - 1e-12);
  Witness positive = w;
  positive.margin = 0.3;
  CHECK(witnessed_entanglement_bound(positive, 1, 1) == 0.0);
  // Out-of-box witnesses get rescaled by the largest admissible factor.
  Witness wide = w;
  wide.eig_min = -2.0;
  CHECK(witnessed_entanglement_bound(wide, 1, 1) == doctest::Approx(0.0084));
  CHECK_THROWS(witnessed_entanglement_bound(w, 0.0, 1.0));
}

TEST_CASE("every NoExtension outcome yields a strictly negative margin") {
  std::mt19937_64 rng(13);
  const TensorLayout qq{{2, 2}, {"A", "B"}};
  int tested = 0;
  while (tested < 8) {
    const HermitianMatrix rho = test::random_density(4, rng);
    if (min_eigenvalue(partial_transpose(rho, qq, {"B"})) > -1e-3) continue;
    ++tested;
    const AffineStateFamily fam = determined_family(rho);
    const PptseOutcome out = pptse_test(fam, 1);
    REQUIRE(out.verdict == PptseVerdict::NoExtension);
    const Witness w = build_witness(out, fam, {});
    CHECK(w.margin < -1e-8);
  }
}

TEST_CASE("witness serialization round trip") {
  const AffineStateFamily fam = example_family();
  const PptseOutcome out = pptse_test(fam, 1);
  const Witness w = build_witness(out, fam, {});
  const Witness back = witness_from_json(witness_to_json(w));
  CHECK((back.w.raw() - w.w.raw()).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(back.margin == w.margin);
  CHECK(back.source_level == w.source_level);
}
