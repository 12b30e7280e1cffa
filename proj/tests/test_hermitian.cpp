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

#include "entcert/hermitian.hpp"
#include "entcert/json_io.hpp"
#include "test_support.hpp"

using namespace entcert;

TEST_CASE("construction symmetrizes near-Hermitian input and rejects the rest") {
  CMatrix m(2, 2);
  m << Complex(1.0, 0.0), Complex(0.5, 1e-13), Complex(0.5, 0.0), Complex(2.0, 0.0);
  const HermitianMatrix h = HermitianMatrix::from(m);
  CHECK((h.raw() - h.raw().adjoint()).norm() == 0.0);

  m(0, 1) = Complex(0.5, 0.1);
  CHECK_THROWS_AS(HermitianMatrix::from(m), std::invalid_argument);
}

TEST_CASE("hermitian_basis d=2 is {I,X,Y,Z}/2") {
  const OperatorBasis b = hermitian_basis(2);
  REQUIRE(b.elements.size() == 4);
  CHECK(b.alpha == doctest::Approx(0.5));
  CMatrix x(2, 2), y(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  y << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  z << 1, 0, 0, -1;
  CHECK((b.elements[0].raw() - 0.5 * CMatrix::Identity(2, 2)).norm() < 1e-15);
  CHECK((b.elements[1].raw() - 0.5 * x).norm() < 1e-15);
  CHECK((b.elements[2].raw() - 0.5 * y).norm() < 1e-15);
  CHECK((b.elements[3].raw() - 0.5 * z).norm() < 1e-15);

  CHECK(b.elements[0].trace() == doctest::Approx(1.0).epsilon(1e-12));
  for (int i = 1; i < 4; ++i) CHECK(std::abs(b.elements[i].trace()) < 1e-12);
}

TEST_CASE("basis Gram matrix is alpha * identity and trace vector is e1") {
  for (int d : {2, 3, 4}) {
    const OperatorBasis b = hermitian_basis(d);
    const int n2 = d * d;
    REQUIRE(static_cast<int>(b.elements.size()) == n2);
    for (int i = 0; i < n2; ++i) {
      CHECK(std::abs(b.elements[i].trace() - (i == 0 ? 1.0 : 0.0)) < 1e-12);
      for (int j = 0; j < n2; ++j) {
        const double expected = (i == j) ? 1.0 / d : 0.0;
        CHECK(std::abs(trace_inner(b.elements[i], b.elements[j]) - expected) < 1e-12);
      }
    }
  }
}

TEST_CASE("tensor product: identity, trace multiplicativity, mixed product") {
  std::mt19937_64 rng(7);
  const HermitianMatrix i2 = HermitianMatrix::identity(2);
  CHECK((tensor_product(i2, i2).raw() - CMatrix::Identity(4, 4)).norm() == 0.0);

  for (int rep = 0; rep < 10; ++rep) {
    const HermitianMatrix x = test::random_hermitian(2, rng);
    const HermitianMatrix y = test::random_hermitian(3, rng);
    CHECK(tensor_product(x, y).trace() ==
          doctest::Approx(x.trace() * y.trace()).epsilon(1e-12));

    // (X (x) Y)(X' (x) Y') = XX' (x) YY', checked with dense multiplication.
    const HermitianMatrix xp = test::random_hermitian(2, rng);
    const HermitianMatrix yp = test::random_hermitian(3, rng);
    const CMatrix lhs = tensor_product(x, y).raw() * tensor_product(xp, yp).raw();
    const CMatrix rhs = kron(x.raw() * xp.raw(), y.raw() * yp.raw());
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("partial trace: product states, Bell marginal, trace preservation") {
  std::mt19937_64 rng(11);
  const TensorLayout ab{{2, 3}, {"A", "B"}};

  const HermitianMatrix ra = test::random_hermitian(2, rng);
  const HermitianMatrix rb = test::random_hermitian(3, rng);
  const HermitianMatrix prod = tensor_product(ra, rb);
  const HermitianMatrix red = partial_trace(prod, ab, {"B"});
  CHECK((red.raw() - rb.trace() * ra.raw()).cwiseAbs().maxCoeff() < 1e-12);

  // Bell marginal via an independent index-sum oracle.
  const HermitianMatrix bell = test::bell_phi_plus();
  const TensorLayout qq{{2, 2}, {"A", "B"}};
  const HermitianMatrix m = partial_trace(bell, qq, {"B"});
  CMatrix oracle = CMatrix::Zero(2, 2);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (int t = 0; t < 2; ++t) oracle(i, j) += bell.raw()(2 * i + t, 2 * j + t);
    }
  }
  CHECK((m.raw() - oracle).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((m.raw() - 0.5 * CMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);

  const TensorLayout three{{2, 2, 2}, {"A1", "A2", "B"}};
  const HermitianMatrix mixed =
      HermitianMatrix::from_symmetrized(CMatrix::Identity(8, 8) / 8.0);
  const HermitianMatrix last = partial_trace(mixed, three, {"A1", "A2"});
  CHECK((last.raw() - 0.5 * CMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);

  for (int rep = 0; rep < 5; ++rep) {
    const HermitianMatrix x = test::random_hermitian(6, rng);
    CHECK(partial_trace(x, ab, {"A"}).trace() == doctest::Approx(x.trace()).epsilon(1e-12));
  }

  CHECK_THROWS(partial_trace(test::random_hermitian(5, rng), ab, {"B"}));
}

TEST_CASE("partial transpose: involution, Bell spectrum, PSD products") {
  std::mt19937_64 rng(13);
  const TensorLayout qq{{2, 2}, {"A", "B"}};

  for (int rep = 0; rep < 20; ++rep) {
    const HermitianMatrix x = test::random_hermitian(4, rng);
    const HermitianMatrix twice =
        partial_transpose(partial_transpose(x, qq, {"A"}), qq, {"A"});
    CHECK((twice.raw() - x.raw()).cwiseAbs().maxCoeff() == 0.0);
  }

  const HermitianMatrix bell_tb = partial_transpose(test::bell_phi_plus(), qq, {"B"});
  CHECK(min_eigenvalue(bell_tb) == doctest::Approx(-0.5).epsilon(1e-10));

  const HermitianMatrix pa = test::random_density(2, rng);
  const HermitianMatrix pb = test::random_density(2, rng);
  CHECK(min_eigenvalue(partial_transpose(tensor_product(pa, pb), qq, {"B"})) > -1e-12);
}

TEST_CASE("partial transpose commutes with partial trace on disjoint factors") {
  std::mt19937_64 rng(17);
  const TensorLayout three{{2, 3, 2}, {"P", "Q", "R"}};
  const TensorLayout pr{{2, 2}, {"P", "R"}};
  for (int rep = 0; rep < 10; ++rep) {
    const HermitianMatrix x = test::random_hermitian(12, rng);
    const HermitianMatrix a =
        partial_trace(partial_transpose(x, three, {"P"}), three, {"Q"});
    const HermitianMatrix b =
        partial_transpose(partial_trace(x, three, {"Q"}), pr, {"P"});
    CHECK((a.raw() - b.raw()).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("expand/reconstruct round-trip and basis coefficients") {
  std::mt19937_64 rng(19);
  const OperatorBasis ba = hermitian_basis(2);
  const OperatorBasis bb = hermitian_basis(2);

  const HermitianMatrix id4 =
      HermitianMatrix::from_symmetrized(0.25 * CMatrix::Identity(4, 4));
  RMatrix c = expand_in_basis(id4, ba, bb);
  CHECK(c(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(c.cwiseAbs().sum() == doctest::Approx(1.0).epsilon(1e-10));

  const HermitianMatrix s22 = tensor_product(ba.elements[1], bb.elements[1]);
  c = expand_in_basis(s22, ba, bb);
  CHECK(c(1, 1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(c.cwiseAbs().sum() == doctest::Approx(1.0).epsilon(1e-10));

  for (int rep = 0; rep < 100; ++rep) {
    const HermitianMatrix x = test::random_hermitian(4, rng);
    const HermitianMatrix back = reconstruct_from_basis(expand_in_basis(x, ba, bb), ba, bb);
    CHECK((back.raw() - x.raw()).cwiseAbs().maxCoeff() < 1e-10);
  }

  const OperatorBasis b3 = hermitian_basis(3);
  for (int rep = 0; rep < 20; ++rep) {
    const HermitianMatrix x = test::random_hermitian(6, rng);
    const HermitianMatrix back =
        reconstruct_from_basis(expand_in_basis(x, ba, b3), ba, b3);
    CHECK((back.raw() - x.raw()).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("min_eigenvalue basics") {
  CHECK(min_eigenvalue(HermitianMatrix::identity(5)) == doctest::Approx(1.0));
  CMatrix d(2, 2);
  d << 3, 0, 0, -7;
  CHECK(min_eigenvalue(HermitianMatrix::from(d)) == doctest::Approx(-7.0));
}

TEST_CASE("symmetric index map counts match multiset enumeration") {
  CHECK(symmetric_index_map(4, 1, 4).count() == 16);
  CHECK(symmetric_index_map(4, 2, 4).count() == 40);
  CHECK(symmetric_index_map(1, 3, 5).count() == 5);

  // Brute-force oracle: count sorted tuples directly.
  for (int d2 = 1; d2 <= 9; ++d2) {
    for (int k = 1; k <= 4; ++k) {
      long brute = 0;
      std::vector<int> tuple(k, 0);
      while (true) {
        bool sorted = true;
        for (int i = 1; i < k; ++i) sorted = sorted && tuple[i - 1] <= tuple[i];
        if (sorted) ++brute;
        int pos = k - 1;
        while (pos >= 0 && tuple[pos] == d2 - 1) tuple[pos--] = 0;
        if (pos < 0) break;
        ++tuple[pos];
      }
      const SymmetricIndex idx = symmetric_index_map(d2, k, 3);
      CHECK(static_cast<long>(idx.multisets.size()) == brute);
      CHECK(idx.count() == brute * 3);
      CHECK(multiset_count(d2, k) == brute);
    }
  }
}

TEST_CASE("multiset arrangements are distinct and complete") {
  const auto arr = multiset_arrangements({0, 0, 2});
  CHECK(arr.size() == 3);
  const auto arr2 = multiset_arrangements({1, 2, 3});
  CHECK(arr2.size() == 6);
}

TEST_CASE("matrix JSON round trip, default imaginary part, validation") {
  std::mt19937_64 rng(23);
  const HermitianMatrix x = test::random_hermitian(3, rng);
  const HermitianMatrix back = matrix_from_json(matrix_to_json(x));
  CHECK((back.raw() - x.raw()).cwiseAbs().maxCoeff() < 1e-15);

  Json j = Json::parse(R"({"dim":2,"re":[[1.0,0.25],[0.25,2.0]]})");
  const HermitianMatrix real_only = matrix_from_json(j);
  CHECK(real_only.raw()(0, 1) == Complex(0.25, 0.0));

  Json bad = Json::parse(R"({"dim":2,"re":[[1.0,0.5],[0.2,2.0]]})");
  CHECK_THROWS(matrix_from_json(bad));
}
