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
 * @file driver.hpp
 * Detection pipeline: interleaves the entanglement-proving extension tests
 * (levels k) with the separability-proving inner tests (levels N), verifies
 * every certificate before emission, and serializes machine-readable
 * reports.
 */

#pragma once

#include "entcert/inner.hpp"
#include "entcert/witness.hpp"

namespace entcert {

struct RunConfig {
  int max_outer_level = 3;
  int max_inner_level = 8;
  double feas_margin = 1e-7;
  double gap_tol = 1e-7;
  double feas_tol = 1e-8;
  int sample_count = 10000;
  std::uint64_t seed = 12345;
  std::string report_path;
  bool compress = true;
  bool t_on_interval_block = false;
  bool parallel = true;

  void validate() const;
  PptseOptions pptse_options() const;
  WitnessOptions witness_options() const;
};

enum class VerdictKind { Entangled, SeparableCompatible, Undecided };

struct StageStat {
  std::string stage;
  std::string status;
  int iterations = 0;
  double gap = 0.0;
  double t_opt = 0.0;
  double seconds = 0.0;
};

struct Verdict {
  VerdictKind kind = VerdictKind::Undecided;

  // Entangled
  int level_k = 0;
  Witness witness;
  BoundsReport bounds;

  // SeparableCompatible
  int level_n = 0;
  InnerCertificate certificate;
  HermitianMatrix separable_state;

  // Undecided
  int exhausted_outer = 0;
  int exhausted_inner = 0;
  std::vector<std::string> boundary_flags;

  std::vector<StageStat> stats;
  double total_seconds = 0.0;
};

/// Thrown when the constraints admit no physical state (or are internally
/// inconsistent); the CLI maps it to an error exit code.
struct UnphysicalConstraints : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Verdict run_detection(const ConstraintSet& cs, const RunConfig& cfg);

Json emit_report(const Verdict& v, const ConstraintSet& cs, const RunConfig& cfg);

struct AuditResult {
  bool pass = false;
  std::vector<std::string> lines;  // one residual per line, human readable
};

/// Re-verifies a report's certificate from the serialized artifacts alone:
/// witness margin and eigenvalue range for Entangled, reconstruction
/// residual and a fresh level-N extension test for SeparableCompatible.
AuditResult verify_report(const Json& report, const ConstraintSet& cs, const RunConfig& cfg);

}  // namespace entcert
