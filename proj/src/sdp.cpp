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

#include "entcert/sdp.hpp"

#include <cassert>
#include <cmath>
#include <cstdio>
#include <limits>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "entcert/kernels.hpp"

namespace entcert {

BlockMatrix BlockMatrix::zero(const std::vector<int>& dims) {
  BlockMatrix out;
  out.blocks.reserve(dims.size());
  for (int d : dims) out.blocks.push_back(CMatrix::Zero(d, d));
  return out;
}

BlockMatrix BlockMatrix::identity(const std::vector<int>& dims, const std::vector<bool>* mask) {
  BlockMatrix out;
  out.blocks.reserve(dims.size());
  for (size_t b = 0; b < dims.size(); ++b) {
    const bool on = mask == nullptr || (*mask)[b];
    out.blocks.push_back(on ? CMatrix(CMatrix::Identity(dims[b], dims[b]))
                            : CMatrix(CMatrix::Zero(dims[b], dims[b])));
  }
  return out;
}

int BlockMatrix::total_dim() const {
  int n = 0;
  for (const auto& b : blocks) n += static_cast<int>(b.rows());
  return n;
}

double BlockMatrix::max_abs() const {
  double v = 0.0;
  for (const auto& b : blocks) v = std::max(v, b.cwiseAbs().maxCoeff());
  return v;
}

double BlockMatrix::frobenius_norm() const {
  double v = 0.0;
  for (const auto& b : blocks) v += b.squaredNorm();
  return std::sqrt(v);
}

void BlockMatrix::hermitize() {
  for (auto& b : blocks) b = 0.5 * (b + b.adjoint().eval());
}

BlockMatrix& BlockMatrix::add_scaled(const BlockMatrix& o, double s) {
  for (size_t b = 0; b < blocks.size(); ++b) blocks[b] += s * o.blocks[b];
  return *this;
}

double block_inner(const BlockMatrix& a, const BlockMatrix& b) {
  double v = 0.0;
  for (size_t i = 0; i < a.blocks.size(); ++i) v += trace_inner(a.blocks[i], b.blocks[i]);
  return v;
}

void BlockSdpProblem::validate(double tol) const {
  if (block_dims.empty()) throw std::invalid_argument("BlockSdpProblem: no blocks");
  if (c.size() != static_cast<long>(F.size())) {
    throw std::invalid_argument("BlockSdpProblem: c length != number of F matrices");
  }
  if (!identity_mask.empty() && identity_mask.size() != block_dims.size()) {
    throw std::invalid_argument("BlockSdpProblem: identity_mask size mismatch");
  }
  auto check = [&](const BlockMatrix& bm, const char* what) {
    if (bm.blocks.size() != block_dims.size()) {
      throw std::invalid_argument(std::string("BlockSdpProblem: ") + what +
                                  " block count mismatch");
    }
    for (size_t b = 0; b < block_dims.size(); ++b) {
      const auto& m = bm.blocks[b];
      if (m.rows() != block_dims[b] || m.cols() != block_dims[b]) {
        throw std::invalid_argument(std::string("BlockSdpProblem: ") + what +
                                    " block dimension mismatch");
      }
      const double defect = (m - m.adjoint()).cwiseAbs().maxCoeff();
      if (defect > tol * std::max(1.0, m.cwiseAbs().maxCoeff())) {
        throw std::invalid_argument(std::string("BlockSdpProblem: ") + what +
                                    " block is not Hermitian");
      }
    }
  };
  check(F0, "F0");
  for (const auto& fi : F) check(fi, "F_i");
}

namespace {

struct BlockFactors {
  CMatrix L;      // X = L L^H
  CMatrix Linv;
  CMatrix Lz;     // Z = Lz Lz^H
  CMatrix Lzinv;
  CMatrix G;      // NT scaling, G = W^-1
  CMatrix D;      // W^(1/2)
  CMatrix Dinv;
  CMatrix Qv;     // V = D Z D = Qv diag(lv) Qv^H
  RVector lv;
};

bool factor_block(const CMatrix& X, const CMatrix& Z, BlockFactors& f) {
  Eigen::LLT<CMatrix> lltX(X);
  Eigen::LLT<CMatrix> lltZ(Z);
  if (lltX.info() != Eigen::Success || lltZ.info() != Eigen::Success) return false;
  const long n = X.rows();
  f.L = lltX.matrixL();
  f.Lz = lltZ.matrixL();
  f.Linv = f.L.triangularView<Eigen::Lower>().solve(CMatrix::Identity(n, n));
  f.Lzinv = f.Lz.triangularView<Eigen::Lower>().solve(CMatrix::Identity(n, n));

  CMatrix Mp = f.L.adjoint() * Z * f.L;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (Mp + Mp.adjoint().eval()));
  if (es.info() != Eigen::Success || es.eigenvalues()(0) <= 0.0) return false;
  const RVector lam_half = es.eigenvalues().cwiseSqrt();
  const CMatrix m_half = es.eigenvectors() * lam_half.asDiagonal() * es.eigenvectors().adjoint();
  const CMatrix m_neg_half =
      es.eigenvectors() * lam_half.cwiseInverse().asDiagonal() * es.eigenvectors().adjoint();

  CMatrix W = f.L * m_neg_half * f.L.adjoint();
  f.G = f.Linv.adjoint() * m_half * f.Linv;
  W = 0.5 * (W + W.adjoint().eval());
  f.G = 0.5 * (f.G + f.G.adjoint().eval());

  Eigen::SelfAdjointEigenSolver<CMatrix> esW(W);
  if (esW.info() != Eigen::Success || esW.eigenvalues()(0) <= 0.0) return false;
  const RVector w_half = esW.eigenvalues().cwiseSqrt();
  f.D = esW.eigenvectors() * w_half.asDiagonal() * esW.eigenvectors().adjoint();
  f.Dinv = esW.eigenvectors() * w_half.cwiseInverse().asDiagonal() * esW.eigenvectors().adjoint();

  CMatrix V = f.D * Z * f.D;
  Eigen::SelfAdjointEigenSolver<CMatrix> esV(0.5 * (V + V.adjoint().eval()));
  if (esV.info() != Eigen::Success || esV.eigenvalues()(0) <= 0.0) return false;
  f.Qv = esV.eigenvectors();
  f.lv = esV.eigenvalues();
  return true;
}

// Largest alpha with M + alpha * dM psd, via lambda_min(Linv dM Linv^H).
double max_step(const CMatrix& Linv, const CMatrix& dM) {
  CMatrix A = Linv * dM * Linv.adjoint();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (A + A.adjoint().eval()),
                                            Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues()(0);
  if (lmin >= -1e-14) return std::numeric_limits<double>::infinity();
  return -1.0 / lmin;
}

std::vector<CMatrix> devectorize(const RVector& v, const std::vector<int>& dims) {
  std::vector<CMatrix> out;
  out.reserve(dims.size());
  long off = 0;
  for (int d : dims) {
    CMatrix m(d, d);
    const long n2 = static_cast<long>(d) * d;
    for (long i = 0; i < n2; ++i) {
      m.data()[i] = Complex(v(off + i), v(off + n2 + i));
    }
    off += 2 * n2;
    out.push_back(std::move(m));
  }
  return out;
}

struct Workspace {
  std::vector<int> dims;
  long m = 0;
  long len = 0;
  kernels::RowMajorMatrix Fvec;   // m x len
  RVector f0vec;  // len

  explicit Workspace(const BlockSdpProblem& p) {
    dims = p.block_dims;
    m = p.num_vars();
    len = kernels::vectorized_length(dims);
    Fvec.resize(m, len);
    for (long i = 0; i < m; ++i) {
      kernels::vectorize_blocks_into(p.F[i].blocks, Fvec.row(i).data(), len);
    }
    f0vec.resize(len);
    kernels::vectorize_blocks_into(p.F0.blocks, f0vec.data(), len);
  }

  RVector vec_of(const BlockMatrix& bm) const {
    RVector v(len);
    kernels::vectorize_blocks_into(bm.blocks, v.data(), len);
    return v;
  }

  BlockMatrix unvec(const RVector& v) const {
    BlockMatrix out;
    out.blocks = devectorize(v, dims);
    out.hermitize();
    return out;
  }
};

// Schur complement M_ij = sum_b Tr[G F_i G F_j], assembled in row tiles so
// the congruence buffer stays bounded.
void assemble_schur(const Workspace& ws, const BlockSdpProblem& p,
                    const std::vector<BlockFactors>& factors, bool parallel, RMatrix& M) {
  const long m = ws.m;
  std::vector<CMatrix> G(factors.size());
  for (size_t b = 0; b < factors.size(); ++b) G[b] = factors[b].G;

  long tile = m;
  const long budget = 40L * 1000 * 1000;  // ~320 MB of tile entries max
  if (m * ws.len > budget) tile = std::max<long>(32, budget / ws.len);

  M.resize(m, m);
  std::vector<std::vector<CMatrix>> Htile;
  kernels::RowMajorMatrix Hvec;
  for (long start = 0; start < m; start += tile) {
    const long count = std::min(tile, m - start);
    std::vector<std::vector<CMatrix>> Fblocks(count);
    for (long i = 0; i < count; ++i) Fblocks[i] = p.F[start + i].blocks;
    if (parallel) {
      kernels::congruence_batch_parallel(G, Fblocks, Htile);
    } else {
      kernels::congruence_batch_serial(G, Fblocks, Htile);
    }
    Hvec.resize(count, ws.len);
    for (long i = 0; i < count; ++i) {
      for (auto& h : Htile[i]) h = 0.5 * (h + h.adjoint().eval());
      kernels::vectorize_blocks_into(Htile[i], Hvec.row(i).data(), ws.len);
    }
    RMatrix Mtile;
    if (parallel) {
      kernels::schur_product_parallel(Hvec, ws.Fvec, Mtile);
    } else {
      kernels::schur_product_serial(Hvec, ws.Fvec, Mtile);
    }
    M.middleRows(start, count) = Mtile;
  }
  M = 0.5 * (M + M.transpose().eval());
}

}  // namespace

SdpSolution solve(const BlockSdpProblem& p, const SdpOptions& opts) {
  p.validate();
  if (p.F.empty()) throw std::invalid_argument("solve: need n >= 1 variables");
  const long m = p.num_vars();
  const std::vector<int>& dims = p.block_dims;
  const int n_tot = [&] {
    int n = 0;
    for (int d : dims) n += d;
    return n;
  }();

  Workspace ws(p);
  SdpSolution sol;
  sol.weak_duality_margin = std::numeric_limits<double>::infinity();

  const double tau = 1.0 + p.F0.max_abs();
  RVector x = RVector::Zero(m);
  BlockMatrix X = BlockMatrix::identity(dims);
  BlockMatrix Z = BlockMatrix::identity(dims);
  for (auto& b : X.blocks) b *= tau;
  for (auto& b : Z.blocks) b *= tau;

  const double f0_norm = 1.0 + p.F0.frobenius_norm();
  const double c_norm = 1.0 + p.c.norm();

  // Gram matrix of the F_i, used to project Z back onto the dual equality
  // manifold; its conditioning depends on the data only, not on mu.
  RMatrix gram;
  if (opts.parallel) {
    kernels::schur_product_parallel(ws.Fvec, ws.Fvec, gram);
  } else {
    kernels::schur_product_serial(ws.Fvec, ws.Fvec, gram);
  }
  Eigen::LDLT<RMatrix> gram_ldlt(0.5 * (gram + gram.transpose().eval()));
  const bool gram_ok = gram_ldlt.info() == Eigen::Success;

  // Projects Z onto the dual equality manifold; returns true when the
  // projected matrix stays positive definite and strictly improves rd.
  auto project_dual = [&](BlockMatrix& Zc) {
    if (!gram_ok) return false;
    const RVector r = p.c - ws.Fvec * ws.vec_of(Zc);
    if (r.norm() > 1e-4 * c_norm || r.norm() == 0.0) return false;
    RVector lam = gram_ldlt.solve(r);
    lam += gram_ldlt.solve(r - gram * lam);
    BlockMatrix shifted = Zc;
    shifted.add_scaled(ws.unvec(ws.Fvec.transpose() * lam), 1.0);
    for (const auto& b : shifted.blocks) {
      if (b.rows() > 0 && min_eigenvalue(b) <= 0.0) return false;
    }
    const RVector r2 = p.c - ws.Fvec * ws.vec_of(shifted);
    if (r2.norm() >= r.norm()) return false;
    Zc = shifted;
    return true;
  };

  RMatrix M;
  int stall = 0;

  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    sol.iterations = iter;

    const RVector svec = ws.f0vec + ws.Fvec.transpose() * x;
    BlockMatrix S = ws.unvec(svec);
    BlockMatrix Rp = S;
    Rp.add_scaled(X, -1.0);  // Rp = F0 + sum x F - X
    const RVector zvec = ws.vec_of(Z);
    const RVector rd = p.c - ws.Fvec * zvec;

    const double pobj = p.c.dot(x);
    const double dobj = -ws.f0vec.dot(zvec);
    const double gap = std::abs(pobj - dobj);
    const double rel_rp = Rp.frobenius_norm() / f0_norm;
    const double rel_rd = rd.norm() / c_norm;
    const double mu = block_inner(X, Z) / n_tot;

    sol.weak_duality_margin = std::min(sol.weak_duality_margin, pobj - dobj);
#ifndef NDEBUG
    assert(pobj - dobj >= -1e-9 && "weak duality violated at an iterate");
#endif
    if (opts.verbosity > 0) {
      std::fprintf(stderr,
                   "iter %3d  pobj % .9e  dobj % .9e  rp %.2e  rd %.2e  mu %.2e  wd % .2e\n",
                   iter, pobj, dobj, rel_rp, rel_rd, mu, pobj - dobj);
    }

    sol.x = x;
    sol.Z = Z;
    sol.primal_obj = pobj;
    sol.dual_obj = dobj;
    sol.gap = gap;
    sol.primal_residual = rel_rp;
    sol.dual_residual = rel_rd;

    if (rel_rp < opts.feas_tol && gap < opts.gap_tol && pobj - dobj >= -1e-9) {
      if (rel_rd < opts.feas_tol) {
        sol.status = SdpStatus::Optimal;
        return sol;
      }
      // Dual equalities lag: polish Z by projection and re-evaluate.
      BlockMatrix Zp = Z;
      if (project_dual(Zp)) {
        const RVector zp = ws.vec_of(Zp);
        const double rd_p = (p.c - ws.Fvec * zp).norm() / c_norm;
        const double dobj_p = -ws.f0vec.dot(zp);
        const double gap_p = std::abs(pobj - dobj_p);
        if (rd_p < opts.feas_tol && gap_p < opts.gap_tol && pobj - dobj_p >= -1e-9) {
          sol.Z = Zp;
          sol.dual_obj = dobj_p;
          sol.gap = gap_p;
          sol.dual_residual = rd_p;
          sol.status = SdpStatus::Optimal;
          return sol;
        }
      }
    }
    if (pobj < opts.objective_floor) {
      sol.status = SdpStatus::NumericalFailure;
      sol.message = "objective diverged below floor (problem likely unbounded)";
      return sol;
    }
    if (dobj > -opts.objective_floor && rel_rd < 1e-6) {
      sol.status = SdpStatus::PrimalInfeasible;
      sol.message = "dual objective diverged: primal infeasible";
      return sol;
    }

    std::vector<BlockFactors> factors(dims.size());
    bool ok = true;
    for (size_t b = 0; b < dims.size(); ++b) {
      ok = ok && factor_block(X.blocks[b], Z.blocks[b], factors[b]);
    }
    if (!ok) {
      sol.status = SdpStatus::NumericalFailure;
      sol.message = "loss of positive definiteness in the Newton system";
      return sol;
    }

    assemble_schur(ws, p, factors, opts.parallel, M);
    Eigen::LDLT<RMatrix> ldlt;
    double jitter = 0.0;
    const double diag_scale = M.diagonal().cwiseAbs().maxCoeff();
    for (int attempt = 0; attempt < 4; ++attempt) {
      RMatrix Mj = M;
      if (jitter > 0.0) Mj.diagonal().array() += jitter;
      ldlt.compute(Mj);
      if (ldlt.info() == Eigen::Success && ldlt.isPositive()) break;
      jitter = (jitter == 0.0) ? 1e-14 * std::max(1.0, diag_scale) : jitter * 100.0;
      if (attempt == 3) {
        sol.status = SdpStatus::NumericalFailure;
        sol.message = "Schur complement not positive definite";
        return sol;
      }
    }

    auto solve_direction = [&](const BlockMatrix& Rc, RVector& dx, BlockMatrix& dX,
                               BlockMatrix& dZ) {
      BlockMatrix T = Rc;
      T.add_scaled(Rp, -1.0);
      BlockMatrix K = T;
      for (size_t b = 0; b < dims.size(); ++b) {
        K.blocks[b] = factors[b].G * T.blocks[b] * factors[b].G;
      }
      K.hermitize();
      const RVector q = ws.Fvec * ws.vec_of(K) - rd;
      dx = ldlt.solve(q);
      dx += ldlt.solve(q - M * dx);  // iterative refinement
      dx += ldlt.solve(q - M * dx);

      // dZ = G (Rc - Rp - sum dx_i F_i) G
      BlockMatrix T2 = ws.unvec(ws.Fvec.transpose() * dx);
      BlockMatrix inner = T;
      inner.add_scaled(T2, -1.0);
      dZ = inner;
      for (size_t b = 0; b < dims.size(); ++b) {
        dZ.blocks[b] = factors[b].G * inner.blocks[b] * factors[b].G;
      }
      dZ.hermitize();
      dX = T2;
      dX.add_scaled(Rp, 1.0);
      dX.hermitize();
    };

    auto step_lengths = [&](const BlockMatrix& dX, const BlockMatrix& dZ, double frac,
                            double& ap, double& ad) {
      ap = ad = std::numeric_limits<double>::infinity();
      for (size_t b = 0; b < dims.size(); ++b) {
        ap = std::min(ap, max_step(factors[b].Linv, dX.blocks[b]));
        ad = std::min(ad, max_step(factors[b].Lzinv, dZ.blocks[b]));
      }
      ap = std::min(1.0, frac * ap);
      ad = std::min(1.0, frac * ad);
    };

    // Predictor: affine direction (target mu = 0).
    BlockMatrix Rc = X;
    for (auto& b : Rc.blocks) b = -b;
    RVector dx_aff;
    BlockMatrix dX_aff, dZ_aff;
    solve_direction(Rc, dx_aff, dX_aff, dZ_aff);

    double ap_aff, ad_aff;
    step_lengths(dX_aff, dZ_aff, 1.0, ap_aff, ad_aff);
    BlockMatrix Xa = X, Za = Z;
    Xa.add_scaled(dX_aff, ap_aff);
    Za.add_scaled(dZ_aff, ad_aff);
    const double mu_aff = std::max(0.0, block_inner(Xa, Za) / n_tot);
    const double sigma = std::min(1.0, std::max(1e-10, std::pow(mu_aff / mu, 3)));

    // Keep complementarity from outrunning infeasibility: otherwise the
    // Newton system degenerates while residuals are still large.
    // Aiming far below the gap tolerance only degrades the Newton system's
    // conditioning; the stopping rule cannot profit from mu < gap_tol / n.
    const double mu_floor = 0.1 * opts.gap_tol / n_tot;
    const double mu_target = std::min(mu, std::max(sigma * mu, mu_floor));

    // Corrector with the second-order term in the NT-scaled space:
    // Rc = D Lyap_V^-1(sigma mu I - V^2 - H(dXhat dZhat)) D.
    for (size_t b = 0; b < dims.size(); ++b) {
      const auto& f = factors[b];
      const CMatrix dxh = f.Dinv * dX_aff.blocks[b] * f.Dinv;
      const CMatrix dzh = f.D * dZ_aff.blocks[b] * f.D;
      const CMatrix prod = dxh * dzh;
      const CMatrix corr = 0.5 * (prod + prod.adjoint().eval());

      // Work in V's eigenbasis: V^2 is diagonal there.
      CMatrix R = -f.Qv.adjoint() * corr * f.Qv;
      for (long i = 0; i < R.rows(); ++i) {
        R(i, i) += Complex(mu_target - f.lv(i) * f.lv(i), 0.0);
      }
      for (long i = 0; i < R.rows(); ++i) {
        for (long j = 0; j < R.cols(); ++j) {
          R(i, j) *= 2.0 / (f.lv(i) + f.lv(j));
        }
      }
      const CMatrix Y = f.Qv * R * f.Qv.adjoint();
      Rc.blocks[b] = f.D * Y * f.D;
    }
    Rc.hermitize();

    RVector dx;
    BlockMatrix dX, dZ;
    solve_direction(Rc, dx, dX, dZ);

    double ap, ad;
    step_lengths(dX, dZ, opts.step_fraction, ap, ad);
    // While noticeably infeasible, move both sides in lock step so that
    // complementarity cannot outrun the residuals.
    if (rel_rp > 100 * opts.feas_tol || rel_rd > 100 * opts.feas_tol) {
      ap = ad = std::min(ap, ad);
    }
    if (ap < 1e-10 && ad < 1e-10) {
      if (++stall >= 3) {
        sol.status = SdpStatus::NumericalFailure;
        sol.message = "step length collapsed";
        return sol;
      }
    } else {
      stall = 0;
    }

    x += ap * dx;
    X.add_scaled(dX, ap);
    Z.add_scaled(dZ, ad);
    X.hermitize();
    Z.hermitize();
  }

  sol.status = SdpStatus::NumericalFailure;
  sol.message = "maximum iterations reached";
  return sol;
}

namespace {

BlockSdpProblem augment_min_t(const BlockSdpProblem& p) {
  BlockSdpProblem aug = p;
  const std::vector<bool>* mask = p.identity_mask.empty() ? nullptr : &p.identity_mask;
  aug.F.push_back(BlockMatrix::identity(p.block_dims, mask));
  aug.c = RVector::Zero(p.num_vars() + 1);
  aug.c(p.num_vars()) = 1.0;
  return aug;
}

// Eigenvalue check of F0 + sum x F at a candidate x: strict feasibility on
// masked blocks, plain feasibility elsewhere.
bool eigen_certifies_feasible(const BlockSdpProblem& p, const RVector& x_base, double margin,
                              double* t_eff) {
  BlockMatrix S = p.F0;
  for (long i = 0; i < p.num_vars(); ++i) S.add_scaled(p.F[i], x_base(i));
  double masked_min = std::numeric_limits<double>::infinity();
  double unmasked_min = std::numeric_limits<double>::infinity();
  for (size_t b = 0; b < p.block_dims.size(); ++b) {
    const bool on = p.identity_mask.empty() || p.identity_mask[b];
    const double l = min_eigenvalue(S.blocks[b]);
    (on ? masked_min : unmasked_min) = std::min(on ? masked_min : unmasked_min, l);
  }
  *t_eff = -masked_min;
  return masked_min >= margin && unmasked_min >= -1e-10;
}

}  // namespace

FeasibilityResult check_feasibility(const BlockSdpProblem& p, const SdpOptions& opts) {
  BlockSdpProblem aug = augment_min_t(p);
  SdpOptions aug_opts = opts;
  aug_opts.objective_floor = -1e4 * (1.0 + p.F0.max_abs());

  FeasibilityResult res;
  res.raw = solve(aug, aug_opts);
  const long m = p.num_vars();

  if (res.raw.status == SdpStatus::Optimal) {
    const double t_opt = res.raw.x(m);
    res.t_opt = t_opt;
    if (t_opt <= -opts.feas_margin) {
      res.status = FeasibilityStatus::Feasible;
      res.x = res.raw.x.head(m);
    } else if (t_opt > opts.feas_margin) {
      res.status = FeasibilityStatus::Infeasible;
      res.Z = res.raw.Z;
    } else {
      res.status = FeasibilityStatus::BoundaryUndecidable;
    }
    return res;
  }

  // The min-t problem is unbounded below exactly when the original LMI has
  // abundantly feasible directions; rescue with an eigenvalue certificate.
  if (res.raw.x.size() == m + 1) {
    const RVector x_base = res.raw.x.head(m);
    double t_eff = 0.0;
    if (eigen_certifies_feasible(p, x_base, opts.feas_margin, &t_eff)) {
      res.status = FeasibilityStatus::Feasible;
      res.x = x_base;
      res.t_opt = t_eff;
      return res;
    }
  }
  res.status = FeasibilityStatus::NumericalFailure;
  return res;
}

bool ResidualReport::all_pass() const {
  for (const auto& e : entries) {
    if (!e.pass) return false;
  }
  return true;
}

namespace {
void push_residual(ResidualReport& r, const std::string& name, double value, double tol,
                   bool larger_is_worse = true) {
  ResidualEntry e;
  e.name = name;
  e.value = value;
  e.tolerance = tol;
  e.pass = larger_is_worse ? (value < tol) : (value > tol);
  r.entries.push_back(e);
}
}  // namespace

ResidualReport verify_solution(const BlockSdpProblem& p, const SdpSolution& s,
                               const SdpOptions& opts) {
  ResidualReport rep;
  BlockMatrix S = p.F0;
  for (long i = 0; i < p.num_vars(); ++i) S.add_scaled(p.F[i], s.x(i));
  double lmin = std::numeric_limits<double>::infinity();
  for (const auto& b : S.blocks) lmin = std::min(lmin, min_eigenvalue(b));
  push_residual(rep, "lmi_min_eigenvalue", -lmin, opts.feas_tol);

  double zmin = std::numeric_limits<double>::infinity();
  for (const auto& b : s.Z.blocks) zmin = std::min(zmin, min_eigenvalue(b));
  push_residual(rep, "dual_min_eigenvalue", -zmin, opts.feas_tol);

  double dual_eq = 0.0;
  for (long i = 0; i < p.num_vars(); ++i) {
    dual_eq = std::max(dual_eq, std::abs(block_inner(p.F[i], s.Z) - p.c(i)));
  }
  push_residual(rep, "dual_equality", dual_eq, 10 * opts.feas_tol);

  const double pobj = p.c.dot(s.x);
  const double dobj = -block_inner(p.F0, s.Z);
  push_residual(rep, "objective_gap", std::abs(pobj - dobj), 10 * opts.gap_tol);
  push_residual(rep, "weak_duality_margin", -(pobj - dobj), 1e-9);
  return rep;
}

ResidualReport verify_infeasibility(const BlockSdpProblem& p, const FeasibilityResult& r,
                                    const SdpOptions& opts) {
  ResidualReport rep;
  double zmin = std::numeric_limits<double>::infinity();
  for (const auto& b : r.Z.blocks) zmin = std::min(zmin, min_eigenvalue(b));
  push_residual(rep, "dual_min_eigenvalue", -zmin, opts.feas_margin);

  double tr = 0.0;
  for (size_t b = 0; b < p.block_dims.size(); ++b) {
    const bool on = p.identity_mask.empty() || p.identity_mask[b];
    if (on) tr += r.Z.blocks[b].trace().real();
  }
  push_residual(rep, "dual_trace_normalization", std::abs(tr - 1.0), opts.feas_margin);

  double ortho = 0.0;
  for (long i = 0; i < p.num_vars(); ++i) {
    ortho = std::max(ortho, std::abs(block_inner(p.F[i], r.Z)));
  }
  push_residual(rep, "dual_orthogonality", ortho, opts.feas_margin);

  const double obj = -block_inner(p.F0, r.Z);
  push_residual(rep, "dual_objective_vs_t", r.t_opt - obj, opts.feas_margin);
  return rep;
}

Json problem_to_json(const BlockSdpProblem& p) {
  Json j;
  j["blocks"] = p.block_dims;
  j["c"] = std::vector<double>(p.c.data(), p.c.data() + p.c.size());
  if (!p.identity_mask.empty()) {
    j["identity_mask"] = p.identity_mask;
  }
  auto block_list = [](const BlockMatrix& bm) {
    Json arr = Json::array();
    for (const auto& b : bm.blocks) {
      arr.push_back(matrix_to_json(HermitianMatrix::from_symmetrized(b)));
    }
    return arr;
  };
  j["F0"] = block_list(p.F0);
  Json fs = Json::array();
  for (const auto& fi : p.F) fs.push_back(block_list(fi));
  j["F"] = std::move(fs);
  return j;
}

BlockSdpProblem problem_from_json(const Json& j) {
  BlockSdpProblem p;
  p.block_dims = j.at("blocks").get<std::vector<int>>();
  const auto cs = j.at("c").get<std::vector<double>>();
  p.c = Eigen::Map<const RVector>(cs.data(), static_cast<long>(cs.size()));
  if (j.contains("identity_mask")) {
    p.identity_mask = j.at("identity_mask").get<std::vector<bool>>();
  }
  auto parse_blocks = [](const Json& arr) {
    BlockMatrix bm;
    for (const auto& b : arr) bm.blocks.push_back(matrix_from_json(b).raw());
    return bm;
  };
  p.F0 = parse_blocks(j.at("F0"));
  for (const auto& fi : j.at("F")) p.F.push_back(parse_blocks(fi));
  p.validate();
  return p;
}

}  // namespace entcert
