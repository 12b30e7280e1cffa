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

#pragma once

#include <random>

#include "entcert/constraints.hpp"
#include "entcert/hermitian.hpp"
#include "entcert/observables.hpp"

namespace entcert::test {

inline CMatrix random_complex(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = Complex(normal(rng), normal(rng));
  }
  return m;
}

inline HermitianMatrix random_hermitian(int n, std::mt19937_64& rng) {
  const CMatrix g = random_complex(n, rng);
  return HermitianMatrix::from_symmetrized(0.5 * (g + g.adjoint().eval()));
}

/// Random full-rank density matrix G G^H / Tr.
inline HermitianMatrix random_density(int n, std::mt19937_64& rng) {
  const CMatrix g = random_complex(n, rng);
  CMatrix w = g * g.adjoint();
  w /= w.trace().real();
  return HermitianMatrix::from_symmetrized(w);
}

inline Eigen::VectorXcd random_pure(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXcd v(n);
  for (int i = 0; i < n; ++i) v(i) = Complex(normal(rng), normal(rng));
  v /= v.norm();
  return v;
}

/// |Phi+><Phi+| with |Phi+> = (|00> + |11>)/
/// sqrt(2); partial transpose has minimum eigenvalue -1/2.
inline HermitianMatrix bell_phi_plus() {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return HermitianMatrix::from_symmetrized(v * v.adjoint());
}

/// |psi-><psi-| with |psi-> = (|01> - |10>)/sqrt(2).
inline HermitianMatrix bell_psi_minus() {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
  v(1) = 1.0 / std::sqrt(2.0);
  v(2) = -1.0 / std::sqrt(2.0);
  return HermitianMatrix::from_symmetrized(v * v.adjoint());
}

/// p |psi-><psi-| + (1-p) I/4; entangled iff p > 1/3.
inline HermitianMatrix werner(double p) {
  return HermitianMatrix::from_symmetrized(p * bell_psi_minus().raw() +
                                           (1.0 - p) * 0.25 * CMatrix::Identity(4, 4));
}

/// Convex mixture of `terms` Haar-random product states on dA x dB.
inline HermitianMatrix random_separable(int d_a, int d_b, int terms, std::mt19937_64& rng) {
  CMatrix acc = CMatrix::Zero(d_a * d_b, d_a * d_b);
  std::uniform_real_distribution<double> unif(0.2, 1.0);
  double total = 0.0;
  for (int t = 0; t < terms; ++t) {
    const Eigen::VectorXcd a = random_pure(d_a, rng);
    const Eigen::VectorXcd b = random_pure(d_b, rng);
    Eigen::VectorXcd ab(d_a * d_b);
    for (int i = 0; i < d_a; ++i) ab.segment(i * d_b, d_b) = a(i) * b;
    const double w = unif(rng);
    acc += w * (ab * ab.adjoint());
    total += w;
  }
  return HermitianMatrix::from_symmetrized(acc / total);
}

/// Exact tomographic constraint set (16 mu_i x mu_j observables) pinning rho.
inline ConstraintSet tomography_constraints(const HermitianMatrix& rho) {
  ConstraintSet cs;
  cs.dA = 2;
  cs.dB = 2;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const HermitianMatrix m = tensor_product(mu_observable(i), mu_observable(j));
      const double v = trace_inner(m, rho);
      cs.constraints.push_back({m, v, v});
    }
  }
  return cs;
}

/// The published witness matrix for the two-photon example, entered to four
/// decimals in the {HH, HV, VH, VV} basis.
inline HermitianMatrix paper_witness() {
  CMatrix w = CMatrix::Zero(4, 4);
  w(0, 0) = 0.1343;
  w(1, 1) = 0.3977;
  w(2, 2) = 0.234;
  w(3, 3) = 0.234;
  const Complex c(0.0658, 0.1583);
  w(0, 2) = c;  // |HH><VH|
  w(1, 3) = c;  // |HV><VV|
  w(2, 3) = c;  // |VH><VV|
  w(0, 3) = -0.2242;
  w(1, 2) = 0.0925;
  w(2, 0) = std::conj(w(0, 2));
  w(3, 1) = std::conj(w(1, 3));
  w(3, 2) = std::conj(w(2, 3));
  w(3, 0) = std::conj(w(0, 3));
  w(2, 1) = std::conj(w(1, 2));
  return HermitianMatrix::from(w);
}

/// The four interval constraints of the two-photon polarization example,
/// plus normalization.
inline ConstraintSet example_constraints(bool with_fifth = false) {
  ConstraintSet cs;
  cs.dA = 2;
  cs.dB = 2;
  auto obs = [](int i, int j) { return tensor_product(mu_observable(i), mu_observable(j)); };
  cs.constraints.push_back({obs(1, 1), 0.48, 0.50});
  cs.constraints.push_back({obs(1, 2), 0.24, 0.25});
  cs.constraints.push_back({obs(2, 2), 0.48, 0.50});
  cs.constraints.push_back({obs(3, 3), 0.00, 0.02});
  if (with_fifth) cs.constraints.push_back({obs(1, 3), 0.24, 0.25});
  cs.constraints.push_back({HermitianMatrix::identity(4), 1.0, 1.0});
  cs.normalization_injected = true;
  return cs;
}

}  // namespace entcert::test
