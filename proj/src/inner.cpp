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

#include "entcert/inner.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace entcert {

double jacobi_min_root_gap(int n, double alpha, double beta) {
  if (n < 1) throw std::invalid_argument("jacobi_min_root_gap: n >= 1");
  if (alpha <= -1.0 || beta <= -1.0) {
    throw std::invalid_argument("jacobi_min_root_gap: alpha, beta > -1");
  }
  RMatrix t = RMatrix::Zero(n, n);
  t(0, 0) = (beta - alpha) / (alpha + beta + 2.0);
  for (int k = 1; k < n; ++k) {
    const double s = 2.0 * k + alpha + beta;
    t(k, k) = (beta * beta - alpha * alpha) / (s * (s + 2.0));
    double b2;
    if (k == 1) {
      // k = 1 with the (1 + alpha + beta) factor cancelled, safe at
      // alpha + beta = -1.
      b2 = 4.0 * (1.0 + alpha) * (1.0 + beta) /
           ((2.0 + alpha + beta) * (2.0 + alpha + beta) * (3.0 + alpha + beta));
    } else {
      b2 = 4.0 * k * (k + alpha) * (k + beta) * (k + alpha + beta) / (s * s * (s * s - 1.0));
    }
    const double b = std::sqrt(b2);
    t(k, k - 1) = t(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<RMatrix> es(t, Eigen::EigenvaluesOnly);
  return 1.0 - es.eigenvalues()(n - 1);
}

double epsilon_n(int n_level, int d_b) {
  if (n_level < 1) throw std::invalid_argument("epsilon_n: N >= 1");
  if (d_b < 2) throw std::invalid_argument("epsilon_n: d_B >= 2 (undefined for d_B = 1)");
  const int degree = n_level / 2 + 1;
  const double alpha = d_b - 2;
  const double beta = n_level % 2;
  const double gap = jacobi_min_root_gap(degree, alpha, beta);
  return d_b / (2.0 * (d_b - 1.0)) * gap;
}

HermitianMatrix perturbation_map(const HermitianMatrix& x, double eps, int d_a, int d_b) {
  const std::vector<int> dims = {d_a, d_b};
  const CMatrix xa = partial_trace_factors(x.raw(), dims, {false, true});
  const CMatrix noise = kron(xa, CMatrix::Identity(d_b, d_b) / d_b);
  return HermitianMatrix::from_symmetrized((1.0 - eps) * x.raw() + eps * noise);
}

HermitianMatrix perturbation_map_inverse(const HermitianMatrix& x, double eps, int d_a,
                                         int d_b) {
  if (eps >= 1.0) throw std::invalid_argument("perturbation map not invertible for eps >= 1");
  const std::vector<int> dims = {d_a, d_b};
  const CMatrix xa = partial_trace_factors(x.raw(), dims, {false, true});
  const CMatrix noise = kron(xa, CMatrix::Identity(d_b, d_b) / d_b);
  return HermitianMatrix::from_symmetrized((x.raw() - eps * noise) / (1.0 - eps));
}

AffineStateFamily transform_family(const AffineStateFamily& fam, double eps) {
  AffineStateFamily out = fam;
  out.rho_part = perturbation_map_inverse(fam.rho_part, eps, fam.dA, fam.dB);
  for (auto& t : out.tau) t = perturbation_map_inverse(t, eps, fam.dA, fam.dB);
  for (auto& m : out.mu_basis) m = perturbation_map_inverse(m, eps, fam.dA, fam.dB);
  return out;
}

namespace {

AffineStateFamily determined_family_of(const HermitianMatrix& rho, int d_a, int d_b) {
  AffineStateFamily fam;
  fam.dA = d_a;
  fam.dB = d_b;
  fam.rho_part = rho;
  return fam;
}

InnerOutcome run_inner(const AffineStateFamily& fam, int n_level, const PptseOptions& opts) {
  InnerOutcome out;
  out.level = n_level;
  const double eps = epsilon_n(n_level, fam.dB);
  const AffineStateFamily omega_family = transform_family(fam, eps);

  // Membership at level N requires a PPT omega: a failed level-1 probe on
  // the transformed family rules out every level cheaply and rigorously.
  if (n_level > 1) {
    const PptseOutcome pre = pptse_test(omega_family, 1, opts);
    if (pre.verdict == PptseVerdict::NoExtension) {
      out.verdict = InnerVerdict::NotMember;
      out.precheck_only = true;
      out.stats = pre.stats;
      return out;
    }
  }

  const PptseOutcome full = pptse_test(omega_family, n_level, opts);
  out.stats = full.stats;
  switch (full.verdict) {
    case PptseVerdict::NoExtension:
      out.verdict = InnerVerdict::NotMember;
      return out;
    case PptseVerdict::BoundaryUndecidable:
      out.verdict = InnerVerdict::BoundaryUndecidable;
      return out;
    case PptseVerdict::NumericalFailure:
      out.verdict = InnerVerdict::NumericalFailure;
      return out;
    case PptseVerdict::ExtensionFound:
      break;
  }

  out.y = full.y;
  out.z = full.z;
  const HermitianMatrix omega = candidate_state(omega_family, full);
  out.target = family_member(fam, full.y, full.z);
  out.certificate.level = n_level;
  out.certificate.epsilon = eps;
  out.certificate.omega = omega;
  out.certificate.residual =
      perturbation_map(omega, eps, fam.dA, fam.dB).minus(out.target).frobenius_norm();
  if (out.certificate.residual > 1e-8) {
    out.verdict = InnerVerdict::NumericalFailure;
    return out;
  }
  out.verdict = InnerVerdict::Member;
  return out;
}

}  // namespace

InnerOutcome inner_membership_test(const HermitianMatrix& target, int d_a, int d_b,
                                   int n_level, const PptseOptions& opts) {
  if (target.dim() != d_a * d_b) {
    throw std::invalid_argument("inner_membership_test: dimension mismatch");
  }
  if (min_eigenvalue(target) < -1e-9 || std::abs(target.trace() - 1.0) > 1e-9) {
    throw std::invalid_argument("inner_membership_test: target must be a state");
  }
  return run_inner(determined_family_of(target, d_a, d_b), n_level, opts);
}

InnerOutcome family_inner_test(const AffineStateFamily& fam, int n_level,
                               const PptseOptions& opts) {
  return run_inner(fam, n_level, opts);
}

bool verify_inner_certificate(const InnerCertificate& cert, const HermitianMatrix& target,
                              int d_a, int d_b, const PptseOptions& opts, std::string* why) {
  auto fail = [&](const std::string& reason) {
    if (why != nullptr) *why = reason;
    return false;
  };
  if (min_eigenvalue(cert.omega) < -1e-8) return fail("omega not PSD");
  if (std::abs(cert.omega.trace() - 1.0) > 1e-8) return fail("omega trace != 1");
  const double eps = epsilon_n(cert.level, d_b);
  if (std::abs(eps - cert.epsilon) > 1e-10) return fail("epsilon mismatch");
  const double residual =
      perturbation_map(cert.omega, eps, d_a, d_b).minus(target).frobenius_norm();
  if (residual > 1e-8) return fail("reconstruction residual " + std::to_string(residual));
  const PptseOutcome check =
      pptse_test(determined_family_of(cert.omega, d_a, d_b), cert.level, opts);
  if (check.verdict != PptseVerdict::ExtensionFound) {
    return fail("omega failed the level-" + std::to_string(cert.level) + " extension test");
  }
  return true;
}

Json inner_certificate_to_json(const InnerCertificate& c) {
  Json j;
  j["level"] = c.level;
  j["epsilon"] = c.epsilon;
  j["omega"] = matrix_to_json(c.omega);
  j["residual"] = c.residual;
  return j;
}

InnerCertificate inner_certificate_from_json(const Json& j) {
  InnerCertificate c;
  c.level = j.at("level").get<int>();
  c.epsilon = j.at("epsilon").get<double>();
  c.omega = matrix_from_json(j.at("omega"));
  c.residual = j.at("residual").get<double>();
  return c;
}

}  // namespace entcert
