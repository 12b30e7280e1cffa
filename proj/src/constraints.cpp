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

#include "entcert/constraints.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

#include "entcert/observables.hpp"

namespace entcert {

namespace {
constexpr double kRankTol = 1e-9;       // relative singular-value cutoff
constexpr double kValueTol = 1e-9;      // merged duplicate value agreement
constexpr double kIntervalSlack = 1e-9; // family_member interval check
}  // namespace

void ConstraintSet::validate() const {
  if (dA < 1 || dB < 1) throw std::invalid_argument("ConstraintSet: dA, dB must be >= 1");
  if (constraints.empty()) throw std::invalid_argument("ConstraintSet: no constraints");
  for (const auto& c : constraints) {
    if (c.observable.dim() != dim()) {
      throw std::invalid_argument("ConstraintSet: observable dimension mismatch");
    }
    if (!(c.lo <= c.hi)) {
      throw std::invalid_argument("ConstraintSet: interval with lo > hi");
    }
  }
}

namespace {

bool proportional_to_identity(const HermitianMatrix& m, double* factor) {
  const int n = m.dim();
  const double c = m.trace() / n;
  const double defect = (m.raw() - c * CMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
  if (defect <= 1e-12 * std::max(1.0, m.max_abs()) && std::abs(c) > 1e-12) {
    *factor = c;
    return true;
  }
  return false;
}

}  // namespace

ConstraintSet parse_constraints(const Json& document) {
  if (!document.is_object()) throw std::invalid_argument("constraint file: not a JSON object");
  ConstraintSet cs;
  cs.dA = document.at("dA").get<int>();
  cs.dB = document.at("dB").get<int>();
  if (cs.dA < 1 || cs.dB < 1) throw std::invalid_argument("constraint file: bad dimensions");
  const bool assume_normalized = document.value("assume_normalized", true);

  if (!document.contains("constraints") || !document.at("constraints").is_array()) {
    throw std::invalid_argument("constraint file: missing \"constraints\" array");
  }
  for (const auto& jc : document.at("constraints")) {
    Constraint c;
    const auto& obs = jc.at("observable");
    if (obs.is_object() && obs.contains("builtin")) {
      c.observable = builtin_observables(obs.at("builtin").get<std::string>());
    } else {
      c.observable = matrix_from_json(obs);
    }
    if (c.observable.dim() != cs.dim()) {
      throw std::invalid_argument("constraint file: observable dim != dA*dB");
    }
    if (jc.contains("value")) {
      c.lo = c.hi = jc.at("value").get<double>();
    } else if (jc.contains("min") && jc.contains("max")) {
      c.lo = jc.at("min").get<double>();
      c.hi = jc.at("max").get<double>();
    } else {
      throw std::invalid_argument("constraint file: need \"value\" or \"min\"/\"max\"");
    }
    if (c.lo > c.hi) throw std::invalid_argument("constraint file: interval with min > max");
    cs.constraints.push_back(std::move(c));
  }

  bool has_identity = false;
  for (const auto& c : cs.constraints) {
    double factor;
    if (proportional_to_identity(c.observable, &factor)) has_identity = true;
  }
  if (assume_normalized && !has_identity) {
    cs.constraints.push_back({HermitianMatrix::identity(cs.dim()), 1.0, 1.0});
    cs.normalization_injected = true;
  }
  cs.validate();
  return cs;
}

RVector vectorize_hermitian(const HermitianMatrix& m, const OperatorBasis& basis) {
  const int n2 = basis.d * basis.d;
  const double scale = std::sqrt(static_cast<double>(basis.d));  // orthonormalize
  RVector v(n2);
  for (int i = 0; i < n2; ++i) {
    v(i) = scale * trace_inner(m, basis.elements[i]);
  }
  return v;
}

HermitianMatrix unvectorize_hermitian(const RVector& v, const OperatorBasis& basis) {
  const double scale = std::sqrt(static_cast<double>(basis.d));
  CMatrix out = CMatrix::Zero(basis.d, basis.d);
  for (int i = 0; i < v.size(); ++i) {
    out += v(i) * scale * basis.elements[i].raw();
  }
  return HermitianMatrix::from_symmetrized(out);
}

namespace {

struct MergedSystem {
  std::vector<RVector> rows;                        // vectorized observables
  std::vector<HermitianMatrix> observables;
  std::vector<std::pair<double, double>> bounds;
  std::string error;                                // nonempty => incompatible
  bool degenerate = false;                          // dependence beyond duplicates
};

// Merges pairwise-proportional observables (intervals intersected after
// rescaling); flags contradictions. Dependencies that are not simple
// proportionality are reported as degenerate.
MergedSystem merge_constraints(const ConstraintSet& cs, const OperatorBasis& basis) {
  MergedSystem out;
  for (const auto& c : cs.constraints) {
    RVector row = vectorize_hermitian(c.observable, basis);
    if (row.norm() < 1e-14) {
      // Zero observable: constraint is 0 in [lo, hi]; either trivial or absurd.
      if (c.lo > 1e-12 || c.hi < -1e-12) {
        out.error = "zero observable with nonzero required value";
        return out;
      }
      continue;
    }
    bool merged = false;
    for (size_t p = 0; p < out.rows.size(); ++p) {
      const double denom = out.rows[p].squaredNorm();
      const double coef = row.dot(out.rows[p]) / denom;
      if ((row - coef * out.rows[p]).norm() <= 1e-10 * row.norm()) {
        // row == coef * rows[p]: rescale [lo, hi] onto constraint p.
        double lo = c.lo / coef, hi = c.hi / coef;
        if (coef < 0) std::swap(lo, hi);
        auto& b = out.bounds[p];
        b.first = std::max(b.first, lo);
        b.second = std::min(b.second, hi);
        if (b.first > b.second + kValueTol * std::max(1.0, std::abs(b.first))) {
          out.error = "contradictory values for linearly dependent observables";
          return out;
        }
        b.first = std::min(b.first, b.second);  // collapse numerical sliver
        merged = true;
        break;
      }
    }
    if (!merged) {
      out.rows.push_back(std::move(row));
      out.observables.push_back(c.observable);
      out.bounds.emplace_back(c.lo, c.hi);
    }
  }
  return out;
}

}  // namespace

FamilyResult build_affine_family(const ConstraintSet& cs) {
  cs.validate();
  const int n = cs.dim();
  const OperatorBasis basis = hermitian_basis(n);
  const int n2 = n * n;

  FamilyResult result;
  MergedSystem sys = merge_constraints(cs, basis);
  if (!sys.error.empty()) {
    result.status = FamilyStatus::Incompatible;
    result.message = sys.error;
    return result;
  }
  const int L = static_cast<int>(sys.rows.size());
  if (L == 0) {
    result.status = FamilyStatus::Incompatible;
    result.message = "no effective constraints";
    return result;
  }

  RMatrix A(L, n2);
  for (int l = 0; l < L; ++l) A.row(l) = sys.rows[l].transpose();

  Eigen::JacobiSVD<RMatrix> svd(A, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cutoff = kRankTol * sv(0);
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) > cutoff) ++rank;
  }
  if (rank < L) {
    // Dependence that survived proportional merging: τ basis is ill-defined.
    throw std::runtime_error(
        "constraints are linearly dependent beyond duplicates; reduce the set");
  }

  // Minimum-norm dual basis: vec(tau_p) = A^+ e_p = V S^-1 U^T e_p.
  RMatrix pinv = svd.matrixV().leftCols(rank) *
                 sv.head(rank).cwiseInverse().asDiagonal() *
                 svd.matrixU().leftCols(rank).transpose();

  AffineStateFamily fam;
  fam.dA = cs.dA;
  fam.dB = cs.dB;
  RVector part = RVector::Zero(n2);
  for (int l = 0; l < L; ++l) {
    const RVector tau_vec = pinv.col(l);
    const auto& b = sys.bounds[l];
    if (b.first == b.second) {
      part += b.first * tau_vec;
    } else {
      fam.tau.push_back(unvectorize_hermitian(tau_vec, basis));
      fam.intervals.push_back(b);
    }
  }
  fam.rho_part = unvectorize_hermitian(part, basis);
  for (int a = rank; a < n2; ++a) {
    fam.mu_basis.push_back(unvectorize_hermitian(svd.matrixV().col(a), basis));
  }

  result.family = std::move(fam);
  result.status = (result.family.nullspace_dim() == 0 && result.family.interval_count() == 0)
                      ? FamilyStatus::FullyDetermined
                      : FamilyStatus::Family;
  return result;
}

FamilyResult affine_solution_space(const ConstraintSet& cs) { return build_affine_family(cs); }

std::vector<HermitianMatrix> dual_basis_tau(const ConstraintSet& cs) {
  cs.validate();
  const int n = cs.dim();
  const OperatorBasis basis = hermitian_basis(n);
  const int L = static_cast<int>(cs.constraints.size());
  RMatrix A(L, n * n);
  for (int l = 0; l < L; ++l) {
    A.row(l) = vectorize_hermitian(cs.constraints[l].observable, basis).transpose();
  }
  Eigen::JacobiSVD<RMatrix> svd(A, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) > kRankTol * sv(0)) ++rank;
  }
  if (rank < L) {
    throw std::runtime_error("dual_basis_tau: observables are linearly dependent");
  }
  RMatrix pinv = svd.matrixV().leftCols(rank) *
                 sv.head(rank).cwiseInverse().asDiagonal() *
                 svd.matrixU().leftCols(rank).transpose();
  std::vector<HermitianMatrix> tau;
  tau.reserve(L);
  for (int l = 0; l < L; ++l) {
    tau.push_back(unvectorize_hermitian(pinv.col(l), basis));
  }
  return tau;
}

HermitianMatrix family_member(const AffineStateFamily& fam, const RVector& y, const RVector& z) {
  if (y.size() != fam.nullspace_dim()) {
    throw std::invalid_argument("family_member: y length != nullspace dimension");
  }
  if (z.size() != fam.interval_count()) {
    throw std::invalid_argument("family_member: z length != interval count");
  }
  CMatrix out = fam.rho_part.raw();
  for (int l = 0; l < z.size(); ++l) {
    const auto& [lo, hi] = fam.intervals[l];
    if (z(l) < lo - kIntervalSlack || z(l) > hi + kIntervalSlack) {
      throw std::invalid_argument("family_member: z outside declared interval");
    }
    out += z(l) * fam.tau[l].raw();
  }
  for (int a = 0; a < y.size(); ++a) {
    out += y(a) * fam.mu_basis[a].raw();
  }
  return HermitianMatrix::from_symmetrized(out);
}

}  // namespace entcert
