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

#include "entcert/driver.hpp"
#include "test_support.hpp"

using namespace entcert;

namespace {
Json strip_timings(Json j) {
  j.erase("timings");
  return j;
}
}  // namespace

TEST_CASE("example constraints: entangled with paper-level bounds") {
  const ConstraintSet cs = test::example_constraints();
  RunConfig cfg;
  cfg.max_outer_level = 2;
  const Verdict v = run_detection(cs, cfg);
  REQUIRE(v.kind == VerdictKind::Entangled);
  CHECK(v.witness.margin <= -0.0168 + 1e-3);
  CHECK(v.bounds.random_robustness_lb >= 0.13);
  CHECK(v.bounds.bsa_lb >= 0.014);

  const Json report = emit_report(v, cs, cfg);
  CHECK(report.at("verdict") == "entangled");
  CHECK(report.at("entangled").contains("witness"));
  CHECK(report.at("entangled").contains("bounds"));
  const AuditResult audit = verify_report(report, cs, cfg);
  CHECK(audit.pass);
}

TEST_CASE("fully determined maximally mixed state: separable at N = 1") {
  const HermitianMatrix mixed =
      HermitianMatrix::from_symmetrized(0.25 * CMatrix::Identity(4, 4));
  const ConstraintSet cs = test::tomography_constraints(mixed);
  RunConfig cfg;
  const Verdict v = run_detection(cs, cfg);
  REQUIRE(v.kind == VerdictKind::SeparableCompatible);
  CHECK(v.level_n == 1);
  const Json report = emit_report(v, cs, cfg);
  CHECK(report.at("verdict") == "separable_compatible");
  CHECK(report.at("separable_compatible").contains("inner_certificate"));
  CHECK(verify_report(report, cs, cfg).pass);
}

TEST_CASE("fully determined Bell state: entangled at k = 1") {
  const ConstraintSet cs = test::tomography_constraints(test::bell_phi_plus());
  RunConfig cfg;
  const Verdict v = run_detection(cs, cfg);
  REQUIRE(v.kind == VerdictKind::Entangled);
  CHECK(v.level_k == 1);
  CHECK(v.bounds.t_opt == doctest::Approx(0.5).epsilon(1e-4));
}

TEST_CASE("no contradictory verdicts on random fully determined states") {
  std::mt19937_64 rng(20260809);
  const TensorLayout qq{{2, 2}, {"A", "B"}};
  RunConfig cfg;
  cfg.max_inner_level = 8;
  int checked = 0;
  for (int rep = 0; rep < 200 && checked < 50; ++rep) {
    const HermitianMatrix rho = test::random_density(4, rng);
    const double oracle = min_eigenvalue(partial_transpose(rho, qq, {"B"}));
    if (std::abs(oracle) < 1e-6) continue;
    ++checked;
    const Verdict v = run_detection(test::tomography_constraints(rho), cfg);
    if (oracle >= 1e-6) {
      CHECK(v.kind != VerdictKind::Entangled);
    } else {
      CHECK(v.kind != VerdictKind::SeparableCompatible);
    }
  }
  CHECK(checked == 50);
}

TEST_CASE("reports are deterministic modulo timings") {
  const ConstraintSet cs = test::example_constraints();
  RunConfig cfg;
  cfg.max_outer_level = 1;
  const Json a = strip_timings(emit_report(run_detection(cs, cfg), cs, cfg));
  const Json b = strip_timings(emit_report(run_detection(cs, cfg), cs, cfg));
  CHECK(a == b);
}

TEST_CASE("tampered witnesses fail the audit") {
  const ConstraintSet cs = test::example_constraints();
  RunConfig cfg;
  cfg.max_outer_level = 1;
  const Verdict v = run_detection(cs, cfg);
  Json report = emit_report(v, cs, cfg);

  // Flip the sign of one matrix entry: the recomputed margin goes positive.
  Json& re = report["entangled"]["witness"]["matrix"]["re"];
  re[1][1] = -re[1][1].get<double>();
  report["entangled"]["witness"]["matrix"]["im"][0][0] = 0.0;  // keep Hermitian
  const AuditResult audit = verify_report(report, cs, cfg);
  CHECK_FALSE(audit.pass);
}

TEST_CASE("truncated witnesses may still pass with a degraded margin") {
  const ConstraintSet cs = test::example_constraints();
  RunConfig cfg;
  cfg.max_outer_level = 1;
  const Verdict v = run_detection(cs, cfg);
  Json report = emit_report(v, cs, cfg);
  Json& m = report["entangled"]["witness"]["matrix"];
  for (auto* part : {&m["re"], &m["im"]}) {
    for (auto& row : *part) {
      for (auto& x : row) x = std::round(x.get<double>() * 100.0) / 100.0;
    }
  }
  // Stored eigenvalue fields no longer match: recompute and restore them so
  // the audit exercises the margin recomputation in isolation.
  const HermitianMatrix trunc = matrix_from_json(m);
  const RVector eig = eigenvalues(trunc);
  report["entangled"]["witness"]["eig_min"] = eig(0);
  report["entangled"]["witness"]["eig_max"] = eig(3);
  const AuditResult audit = verify_report(report, cs, cfg);
  CHECK(audit.pass);  // margin degrades but stays negative at 2 decimals
}

TEST_CASE("unphysical constraints are rejected with a dedicated error") {
  ConstraintSet cs;
  cs.dA = cs.dB = 2;
  CMatrix p0 = CMatrix::Zero(4, 4);
  p0(0, 0) = 1.0;
  CMatrix p1 = CMatrix::Zero(4, 4);
  p1(1, 1) = 1.0;
  cs.constraints.push_back({HermitianMatrix::from(p0), 0.8, 0.8});
  cs.constraints.push_back({HermitianMatrix::from(p1), 0.8, 0.8});
  cs.constraints.push_back({HermitianMatrix::identity(4), 1.0, 1.0});
  RunConfig cfg;
  CHECK_THROWS_AS(run_detection(cs, cfg), UnphysicalConstraints);
}

TEST_CASE("config validation") {
  RunConfig cfg;
  cfg.max_outer_level = 0;
  CHECK_THROWS(cfg.validate());
  cfg.max_outer_level = 1;
  cfg.gap_tol = 0.0;
  CHECK_THROWS(cfg.validate());
}
