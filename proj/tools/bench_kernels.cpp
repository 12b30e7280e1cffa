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

// Benchmark of the data-parallel kernels against their serial references:
// Schur complement assembly (congruence batch + Gram product) and the
// product-state sampling sweep.

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "entcert/kernels.hpp"

using namespace entcert;

namespace {

double now_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

CMatrix random_hermitian(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = Complex(normal(rng), normal(rng));
  }
  return 0.5 * (m + m.adjoint().eval());
}

template <typename F>
double time_best_of(int reps, F&& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const double t0 = now_seconds();
    fn();
    best = std::min(best, now_seconds() - t0);
  }
  return best;
}

void bench_schur(int m, const std::vector<int>& dims) {
  std::mt19937_64 rng(1);
  std::vector<CMatrix> g;
  for (int d : dims) {
    const CMatrix h = random_hermitian(d, rng);
    g.push_back(CMatrix(h * h.adjoint() + CMatrix::Identity(d, d)));
  }
  std::vector<std::vector<CMatrix>> f(m);
  for (int i = 0; i < m; ++i) {
    for (int d : dims) f[i].push_back(random_hermitian(d, rng));
  }

  std::vector<std::vector<CMatrix>> h_serial, h_parallel;
  const double tc_s = time_best_of(3, [&] { kernels::congruence_batch_serial(g, f, h_serial); });
  const double tc_p =
      time_best_of(3, [&] { kernels::congruence_batch_parallel(g, f, h_parallel); });

  const kernels::RowMajorMatrix fv = kernels::vectorize_block_rows(f);
  const kernels::RowMajorMatrix hv = kernels::vectorize_block_rows(h_serial);
  RMatrix ms, mp;
  const double tg_s = time_best_of(3, [&] { kernels::schur_product_serial(hv, fv, ms); });
  const double tg_p = time_best_of(3, [&] { kernels::schur_product_parallel(hv, fv, mp); });

  double max_diff = (ms - mp).cwiseAbs().maxCoeff();
  for (int i = 0; i < m; ++i) {
    for (size_t b = 0; b < dims.size(); ++b) {
      max_diff = std::max(max_diff, (h_serial[i][b] - h_parallel[i][b]).cwiseAbs().maxCoeff());
    }
  }

  std::printf("schur m=%-4d blocks=[", m);
  for (size_t b = 0; b < dims.size(); ++b) std::printf("%s%d", b ? "," : "", dims[b]);
  std::printf("]\n");
  std::printf("  congruence   serial %8.2f ms   parallel %8.2f ms   speedup %5.2fx\n",
              1e3 * tc_s, 1e3 * tc_p, tc_s / tc_p);
  std::printf("  gram product serial %8.2f ms   parallel %8.2f ms   speedup %5.2fx\n",
              1e3 * tg_s, 1e3 * tg_p, tg_s / tg_p);
  std::printf("  max |serial - parallel| = %.2e\n", max_diff);
}

void bench_sampling(int dim_a, int dim_b, int count) {
  std::mt19937_64 rng(2);
  const CMatrix w = random_hermitian(dim_a * dim_b, rng);
  double rs = 0, rp = 0;
  const double ts =
      time_best_of(3, [&] { rs = kernels::product_state_min_serial(w, dim_a, dim_b, count, 9); });
  const double tp = time_best_of(
      3, [&] { rp = kernels::product_state_min_parallel(w, dim_a, dim_b, count, 9); });
  std::printf("sampling %dx%d count=%d\n", dim_a, dim_b, count);
  std::printf("  serial %8.2f ms   parallel %8.2f ms   speedup %5.2fx   diff %.1e\n",
              1e3 * ts, 1e3 * tp, ts / tp, std::abs(rs - rp));
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP threads: %d\n\n", omp_get_max_threads());
#else
  std::printf("OpenMP not enabled; both variants run serially\n\n");
#endif
  // Sizes matching a level-8 compressed inner test and a mid-size dense case.
  bench_schur(256, {18, 32, 32, 42, 50});
  bench_schur(660, {2, 6, 10, 14, 18, 8, 16, 24, 32, 30, 42, 50});
  bench_sampling(2, 2, 100000);
  bench_sampling(3, 3, 50000);
  return 0;
}
