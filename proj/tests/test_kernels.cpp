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

#include "entcert/kernels.hpp"
#include "test_support.hpp"

using namespace entcert;

namespace {
std::vector<std::vector<CMatrix>> random_block_list(int m, const std::vector<int>& dims,
                                                    std::mt19937_64& rng) {
  std::vector<std::vector<CMatrix>> out(m);
  for (int i = 0; i < m; ++i) {
    for (int d : dims) out[i].push_back(test::random_hermitian(d, rng).raw());
  }
  return out;
}
}  // namespace

TEST_CASE("congruence batch: parallel matches serial exactly") {
  std::mt19937_64 rng(42);
  const std::vector<int> dims = {6, 4, 3};
  std::vector<CMatrix> g;
  for (int d : dims) {
    const CMatrix x = test::random_complex(d, rng);
    g.push_back(CMatrix(x * x.adjoint() + CMatrix::Identity(d, d)));
  }
  const auto f = random_block_list(24, dims, rng);
  std::vector<std::vector<CMatrix>> hs, hp;
  kernels::congruence_batch_serial(g, f, hs);
  kernels::congruence_batch_parallel(g, f, hp);
  REQUIRE(hs.size() == hp.size());
  for (size_t i = 0; i < hs.size(); ++i) {
    for (size_t b = 0; b < dims.size(); ++b) {
      CHECK((hs[i][b] - hp[i][b]).cwiseAbs().maxCoeff() == 0.0);
    }
  }
}

TEST_CASE("vectorized rows reproduce trace inner products") {
  std::mt19937_64 rng(43);
  const std::vector<int> dims = {5, 3};
  const auto f = random_block_list(10, dims, rng);
  const RMatrix fv = kernels::vectorize_block_rows(f);
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 10; ++j) {
      double expected = 0.0;
      for (size_t b = 0; b < dims.size(); ++b) expected += trace_inner(f[i][b], f[j][b]);
      CHECK(fv.row(i).dot(fv.row(j)) == doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("schur product: parallel matches serial exactly") {
  std::mt19937_64 rng(44);
  const std::vector<int> dims = {6, 5};
  const auto f = random_block_list(40, dims, rng);
  const RMatrix fv = kernels::vectorize_block_rows(f);
  RMatrix ms, mp;
  kernels::schur_product_serial(fv, fv, ms);
  kernels::schur_product_parallel(fv, fv, mp);
  CHECK((ms - mp).cwiseAbs().maxCoeff() == 0.0);
  CHECK((ms - ms.transpose()).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("product state sampling: deterministic and schedule independent") {
  std::mt19937_64 rng(45);
  const CMatrix w = test::random_hermitian(6, rng).raw();
  const double a = kernels::product_state_min_serial(w, 2, 3, 2000, 7);
  const double b = kernels::product_state_min_parallel(w, 2, 3, 2000, 7);
  const double c = kernels::product_state_min_parallel(w, 2, 3, 2000, 7);
  CHECK(a == b);
  CHECK(b == c);

  // Identity has expectation exactly 1 on every product state.
  const double one =
      kernels::product_state_min_serial(CMatrix::Identity(4, 4), 2, 2, 100, 3);
  CHECK(one == doctest::Approx(1.0).epsilon(1e-12));

  // Haar states are normalized.
  const Eigen::VectorXcd v = kernels::haar_state(5, 11, 0);
  CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-12));
}
