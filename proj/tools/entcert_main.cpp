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

#include <cstdio>

#include <CLI11.hpp>

#include "entcert/driver.hpp"

namespace {

using namespace entcert;

// Exit codes of `check`: 0 entangled, 1 separable-compatible, 2 undecided,
// 3 usage/parse error, 4 unphysical constraints, 5 numerical failure.
constexpr int kExitEntangled = 0;
constexpr int kExitSeparable = 1;
constexpr int kExitUndecided = 2;
constexpr int kExitUsage = 3;
constexpr int kExitUnphysical = 4;
constexpr int kExitNumerical = 5;

int cmd_check(const std::string& input, RunConfig cfg) {
  const ConstraintSet cs = parse_constraints(read_json_file(input));
  const Verdict v = run_detection(cs, cfg);
  const Json report = emit_report(v, cs, cfg);
  if (!cfg.report_path.empty()) {
    write_json_file(cfg.report_path, report);
  }

  switch (v.kind) {
    case VerdictKind::Entangled:
      std::printf("verdict: ENTANGLED (level k=%d)\n", v.level_k);
      std::printf("  t_opt                 %.6f\n", v.bounds.t_opt);
      std::printf("  witness margin        %.6f\n", v.witness.margin);
      std::printf("  witness eigenvalues   [%.4f, %.4f]\n", v.witness.eig_min,
                  v.witness.eig_max);
      std::printf("  random robustness  >= %.6f\n", v.bounds.random_robustness_lb);
      std::printf("  BSA                >= %.6f\n", v.bounds.bsa_lb);
      for (const auto& [n, m, val] : v.bounds.e_nm_entries) {
        std::printf("  E_{%g,%g}            >= %.6f\n", n, m, val);
      }
      return kExitEntangled;
    case VerdictKind::SeparableCompatible:
      std::printf("verdict: SEPARABLE-COMPATIBLE (level N=%d, eps=%.6f)\n", v.level_n,
                  v.certificate.epsilon);
      std::printf("  certificate residual  %.2e\n", v.certificate.residual);
      return kExitSeparable;
    case VerdictKind::Undecided:
      std::printf("verdict: UNDECIDED (outer <= %d, inner <= %d exhausted)\n",
                  v.exhausted_outer, v.exhausted_inner);
      for (const auto& f : v.boundary_flags) std::printf("  boundary: %s\n", f.c_str());
      return kExitUndecided;
  }
  return kExitNumerical;
}

int cmd_verify(const std::string& report_path, const std::string& input,
               const RunConfig& cfg) {
  const Json report = read_json_file(report_path);
  const ConstraintSet cs = parse_constraints(read_json_file(input));
  const AuditResult audit = verify_report(report, cs, cfg);
  for (const auto& line : audit.lines) std::printf("%s\n", line.c_str());
  std::printf("audit: %s\n", audit.pass ? "PASS" : "FAIL");
  return audit.pass ? 0 : 1;
}

int cmd_epsilon(int max_n, int d_b) {
  std::printf("# eps_N for d_B = %d\n", d_b);
  for (int n = 1; n <= max_n; ++n) {
    std::printf("N=%2d  eps=%.12f\n", n, epsilon_n(n, d_b));
  }
  return 0;
}

int cmd_solve(const std::string& problem_path, bool feasibility, bool verify) {
  const BlockSdpProblem p = problem_from_json(read_json_file(problem_path));
  SdpOptions opts;
  if (feasibility) {
    const FeasibilityResult fr = check_feasibility(p, opts);
    const char* names[] = {"FEASIBLE", "INFEASIBLE", "BOUNDARY-UNDECIDABLE", "FAILURE"};
    std::printf("status: %s  t_opt = %.9g  iterations = %d\n",
                names[static_cast<int>(fr.status)], fr.t_opt, fr.raw.iterations);
    if (verify && fr.status == FeasibilityStatus::Infeasible) {
      const ResidualReport rep = verify_infeasibility(p, fr, opts);
      for (const auto& e : rep.entries) {
        std::printf("  %-28s %.3e  [%s]\n", e.name.c_str(), e.value,
                    e.pass ? "pass" : "FAIL");
      }
      return rep.all_pass() ? 0 : 1;
    }
    return fr.status == FeasibilityStatus::NumericalFailure ? kExitNumerical : 0;
  }
  const SdpSolution s = solve(p, opts);
  std::printf("status: %d  primal %.9g  dual %.9g  gap %.3e  iterations %d\n",
              static_cast<int>(s.status), s.primal_obj, s.dual_obj, s.gap, s.iterations);
  if (verify) {
    const ResidualReport rep = verify_solution(p, s, opts);
    for (const auto& e : rep.entries) {
      std::printf("  %-28s %.3e  [%s]\n", e.name.c_str(), e.value, e.pass ? "pass" : "FAIL");
    }
    return rep.all_pass() ? 0 : 1;
  }
  return s.status == SdpStatus::Optimal ? 0 : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "entcert: decides whether linear expectation-value constraints force a "
      "bipartite state to be entangled, or admit a separable state"};
  app.require_subcommand(1);

  entcert::RunConfig cfg;
  std::string input, report_path, problem_path;

  auto* check = app.add_subcommand("check", "run the detection pipeline on a constraint file");
  check->add_option("--input", input, "constraint file (JSON)")->required();
  check->add_option("--report", cfg.report_path, "write the verdict report here");
  check->add_option("--max-outer", cfg.max_outer_level, "max extension level k");
  check->add_option("--max-inner", cfg.max_inner_level, "max inner level N");
  check->add_option("--tol-feas", cfg.feas_tol, "solver feasibility tolerance");
  check->add_option("--tol-gap", cfg.gap_tol, "solver objective-gap tolerance");
  check->add_option("--feas-margin", cfg.feas_margin, "undecidable band around t = 0");
  check->add_option("--seed", cfg.seed, "seed for the witness sampling check");
  check->add_option("--samples", cfg.sample_count, "product-state sample count");
  bool no_compress = false, serial = false;
  check->add_flag("--no-compress", no_compress, "disable the spin-sector compressed assembly");
  check->add_flag("--serial", serial, "disable OpenMP kernels");

  auto* verify = app.add_subcommand("verify", "re-verify an emitted report");
  verify->add_option("--report", report_path, "report file to audit")->required();
  verify->add_option("--input", input, "constraint file the report refers to")->required();
  verify->add_option("--seed", cfg.seed, "seed for the sampling re-check");

  int eps_max_n = 12, eps_db = 2;
  auto* epsilon = app.add_subcommand("epsilon", "print the inner perturbation weights");
  epsilon->add_option("--max-n", eps_max_n, "largest level N");
  epsilon->add_option("--dB", eps_db, "dimension of subsystem B");

  bool solve_feas = false, solve_verify = false;
  auto* solve_cmd = app.add_subcommand("solve", "run the SDP engine on a problem dump");
  solve_cmd->add_option("--problem", problem_path, "problem dump (JSON)")->required();
  solve_cmd->add_flag("--feasibility", solve_feas, "run the min-t feasibility form");
  solve_cmd->add_flag("--verify", solve_verify, "recheck the returned certificate");

  CLI11_PARSE(app, argc, argv);
  cfg.compress = !no_compress;
  cfg.parallel = !serial;

  try {
    if (check->parsed()) return cmd_check(input, cfg);
    if (verify->parsed()) return cmd_verify(report_path, input, cfg);
    if (epsilon->parsed()) return cmd_epsilon(eps_max_n, eps_db);
    if (solve_cmd->parsed()) return cmd_solve(problem_path, solve_feas, solve_verify);
  } catch (const entcert::UnphysicalConstraints& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUnphysical;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNumerical;
  }
  return kExitUsage;
}
