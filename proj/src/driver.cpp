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

#include "entcert/driver.hpp"

#include <chrono>

#include "entcert/kernels.hpp"

namespace entcert {

namespace {
constexpr const char* kToolName = "entcert";
constexpr const char* kToolVersion = "0.1.0";

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string verdict_name(PptseVerdict v) {
  switch (v) {
    case PptseVerdict::ExtensionFound:
      return "extension_found";
    case PptseVerdict::NoExtension:
      return "no_extension";
    case PptseVerdict::BoundaryUndecidable:
      return "boundary_undecidable";
    default:
      return "numerical_failure";
  }
}

std::string verdict_name(InnerVerdict v) {
  switch (v) {
    case InnerVerdict::Member:
      return "member";
    case InnerVerdict::NotMember:
      return "not_member";
    case InnerVerdict::BoundaryUndecidable:
      return "boundary_undecidable";
    default:
      return "numerical_failure";
  }
}

}  // namespace

void RunConfig::validate() const {
  if (max_outer_level < 1 || max_inner_level < 1) {
    throw std::invalid_argument("RunConfig: levels must be >= 1");
  }
  if (feas_margin <= 0 || gap_tol <= 0 || feas_tol <= 0) {
    throw std::invalid_argument("RunConfig: tolerances must be positive");
  }
  if (sample_count < 1) throw std::invalid_argument("RunConfig: sample_count >= 1");
}

PptseOptions RunConfig::pptse_options() const {
  PptseOptions o;
  o.sdp.feas_tol = feas_tol;
  o.sdp.gap_tol = gap_tol;
  o.sdp.feas_margin = feas_margin;
  o.sdp.parallel = parallel;
  o.compress = compress;
  o.t_on_interval_block = t_on_interval_block;
  return o;
}

WitnessOptions RunConfig::witness_options() const {
  WitnessOptions o;
  o.sdp = pptse_options().sdp;
  o.sample_count = sample_count;
  o.seed = seed;
  o.parallel = parallel;
  return o;
}

Verdict run_detection(const ConstraintSet& cs, const RunConfig& cfg) {
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();

  const FamilyResult fr = build_affine_family(cs);
  if (fr.status == FamilyStatus::Incompatible) {
    throw UnphysicalConstraints("constraints are incompatible: " + fr.message);
  }
  const AffineStateFamily& fam = fr.family;
  const PptseOptions popts = cfg.pptse_options();

  Verdict v;
  for (int k = 1; k <= cfg.max_outer_level; ++k) {
    const auto tk = std::chrono::steady_clock::now();
    const PptseOutcome outer = pptse_test(fam, k, popts);
    v.stats.push_back({"outer_k" + std::to_string(k), verdict_name(outer.verdict),
                       outer.stats.iterations, outer.stats.gap, outer.t_opt,
                       seconds_since(tk)});

    if (outer.verdict == PptseVerdict::NoExtension) {
      Witness w;
      try {
        w = build_witness(outer, fam, cfg.witness_options());
      } catch (const std::runtime_error& e) {
        // No PSD member: the constraints admit no physical state at all.
        if (std::string(e.what()).find("no physical state") != std::string::npos) {
          throw UnphysicalConstraints(e.what());
        }
        throw;
      }
      if (w.margin >= 0.0) {
        throw std::runtime_error(
            "run_detection: infeasibility dual produced a non-detecting witness");
      }
      v.kind = VerdictKind::Entangled;
      v.level_k = k;
      v.witness = w;
      v.bounds = bounds_report(w, outer.t_opt, fam.dA, fam.dB);
      v.total_seconds = seconds_since(t0);
      return v;
    }

    if (outer.verdict == PptseVerdict::BoundaryUndecidable) {
      v.boundary_flags.push_back("outer_k" + std::to_string(k));
    }
    if (outer.verdict == PptseVerdict::NumericalFailure) {
      throw std::runtime_error("run_detection: extension test failed numerically at k=" +
                               std::to_string(k));
    }

    for (int n = 1; n <= cfg.max_inner_level; ++n) {
      const auto tn = std::chrono::steady_clock::now();
      const InnerOutcome inner = family_inner_test(fam, n, popts);
      v.stats.push_back({"inner_k" + std::to_string(k) + "_n" + std::to_string(n),
                         verdict_name(inner.verdict) + (inner.precheck_only ? "/precheck" : ""),
                         inner.stats.iterations, inner.stats.gap, 0.0, seconds_since(tn)});
      if (inner.verdict == InnerVerdict::Member) {
        std::string why;
        if (!verify_inner_certificate(inner.certificate, inner.target, fam.dA, fam.dB, popts,
                                      &why)) {
          v.boundary_flags.push_back("inner_n" + std::to_string(n) + "_reverify:" + why);
          continue;
        }
        v.kind = VerdictKind::SeparableCompatible;
        v.level_n = n;
        v.certificate = inner.certificate;
        v.separable_state = inner.target;
        v.total_seconds = seconds_since(t0);
        return v;
      }
      if (inner.verdict == InnerVerdict::BoundaryUndecidable) {
        v.boundary_flags.push_back("inner_k" + std::to_string(k) + "_n" + std::to_string(n));
      }
    }
  }

  v.kind = VerdictKind::Undecided;
  v.exhausted_outer = cfg.max_outer_level;
  v.exhausted_inner = cfg.max_inner_level;
  v.total_seconds = seconds_since(t0);
  return v;
}

Json emit_report(const Verdict& v, const ConstraintSet& cs, const RunConfig& cfg) {
  Json j;
  j["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  j["config"] = {{"max_outer", cfg.max_outer_level},
                 {"max_inner", cfg.max_inner_level},
                 {"feas_margin", cfg.feas_margin},
                 {"tol_gap", cfg.gap_tol},
                 {"tol_feas", cfg.feas_tol},
                 {"sample_count", cfg.sample_count},
                 {"seed", cfg.seed},
                 {"compress", cfg.compress},
                 {"t_on_interval_block", cfg.t_on_interval_block}};
  j["problem"] = {{"dA", cs.dA},
                  {"dB", cs.dB},
                  {"num_constraints", cs.constraints.size()},
                  {"normalization_injected", cs.normalization_injected}};

  switch (v.kind) {
    case VerdictKind::Entangled: {
      j["verdict"] = "entangled";
      j["entangled"]["level"] = v.level_k;
      j["entangled"]["witness"] = witness_to_json(v.witness);
      Json bounds;
      bounds["t_opt"] = v.bounds.t_opt;
      bounds["random_robustness"] = v.bounds.random_robustness_lb;
      bounds["bsa"] = v.bounds.bsa_lb;
      Json enm = Json::array();
      for (const auto& [n, m, val] : v.bounds.e_nm_entries) {
        enm.push_back({{"n", n}, {"m", m}, {"bound", val}});
      }
      bounds["witnessed_entanglement"] = std::move(enm);
      j["entangled"]["bounds"] = std::move(bounds);
      break;
    }
    case VerdictKind::SeparableCompatible: {
      j["verdict"] = "separable_compatible";
      j["separable_compatible"]["level"] = v.level_n;
      j["separable_compatible"]["inner_certificate"] =
          inner_certificate_to_json(v.certificate);
      j["separable_compatible"]["state"] = matrix_to_json(v.separable_state);
      break;
    }
    case VerdictKind::Undecided: {
      j["verdict"] = "undecided";
      j["undecided"]["max_outer"] = v.exhausted_outer;
      j["undecided"]["max_inner"] = v.exhausted_inner;
      j["undecided"]["boundary_flags"] = v.boundary_flags;
      break;
    }
  }

  Json stats = Json::array();
  for (const auto& s : v.stats) {
    stats.push_back({{"stage", s.stage},
                     {"status", s.status},
                     {"iterations", s.iterations},
                     {"gap", s.gap},
                     {"t_opt", s.t_opt}});
  }
  j["solver_stats"] = std::move(stats);

  Json timings;
  timings["total_seconds"] = v.total_seconds;
  for (const auto& s : v.stats) timings[s.stage] = s.seconds;
  j["timings"] = std::move(timings);
  return j;
}

AuditResult verify_report(const Json& report, const ConstraintSet& cs, const RunConfig& cfg) {
  AuditResult audit;
  audit.pass = true;
  auto check = [&](const std::string& name, double value, double tol, bool ok) {
    audit.lines.push_back(name + " = " + std::to_string(value) +
                          (ok ? "  [pass" : "  [FAIL") + ", tol " + std::to_string(tol) + "]");
    audit.pass = audit.pass && ok;
  };

  const FamilyResult fr = build_affine_family(cs);
  if (fr.status == FamilyStatus::Incompatible) {
    audit.pass = false;
    audit.lines.push_back("constraints incompatible: " + fr.message);
    return audit;
  }
  const std::string kind = report.at("verdict").get<std::string>();

  if (kind == "entangled") {
    const Witness stored = witness_from_json(report.at("entangled").at("witness"));
    // Recompute the margin and eigenvalue range from the matrix alone.
    const MarginResult mr = witness_margin(stored.w, fr.family, cfg.pptse_options().sdp);
    if (mr.family_empty) {
      audit.pass = false;
      audit.lines.push_back("family has no PSD member");
      return audit;
    }
    check("recomputed_margin", mr.margin, 0.0, mr.margin < 0.0);
    const RVector eig = eigenvalues(stored.w);
    check("eig_min_consistency", std::abs(eig(0) - stored.eig_min), 1e-8,
          std::abs(eig(0) - stored.eig_min) < 1e-8);
    check("eig_max_consistency", std::abs(eig(eig.size() - 1) - stored.eig_max), 1e-8,
          std::abs(eig(eig.size() - 1) - stored.eig_max) < 1e-8);
    const double sample_min = kernels::product_state_min_parallel(
        stored.w.raw(), cs.dA, cs.dB, cfg.sample_count, cfg.seed);
    check("product_state_sample_min", sample_min, -1e-8, sample_min >= -1e-8);
    if (mr.margin < 0.0 && mr.margin > stored.margin + 1e-6) {
      audit.lines.push_back("note: recomputed margin is weaker than stored (" +
                            std::to_string(mr.margin) + " vs " +
                            std::to_string(stored.margin) + ")");
    }
    return audit;
  }

  if (kind == "separable_compatible") {
    const auto& sc = report.at("separable_compatible");
    const InnerCertificate cert = inner_certificate_from_json(sc.at("inner_certificate"));
    const HermitianMatrix target = matrix_from_json(sc.at("state"));
    // The target must satisfy the constraints.
    double worst = 0.0;
    for (const auto& c : cs.constraints) {
      const double val = trace_inner(target, c.observable);
      worst = std::max(worst, std::max(c.lo - val, val - c.hi));
    }
    check("target_constraint_residual", worst, 1e-7, worst < 1e-7);
    std::string why;
    const bool ok =
        verify_inner_certificate(cert, target, cs.dA, cs.dB, cfg.pptse_options(), &why);
    check("inner_certificate", ok ? 0.0 : 1.0, 0.5, ok);
    if (!ok) audit.lines.push_back("inner certificate: " + why);
    check("stored_residual", cert.residual, 1e-8, cert.residual < 1e-8);
    return audit;
  }

  if (kind == "undecided") {
    audit.lines.push_back("undecided report: nothing to verify");
    return audit;
  }

  audit.pass = false;
  audit.lines.push_back("unknown verdict kind: " + kind);
  return audit;
}

}  // namespace entcert
