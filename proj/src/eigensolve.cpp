#include "qchain/eigensolve.hpp"
#include <cstdio>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace qchain {

using EMat = Eigen::MatrixXcd;

LinearOperator LinearOperator::from_chain(const ChainOperator& H, bool parallel) {
  LinearOperator op;
  op.dim = H.dim();
  op.norm_scale = H.operator_norm_bound();
  op.apply_fn = [&H, parallel](const CxVec& x, CxVec& y) { H.apply(x, y, parallel); };
  return op;
}

LinearOperator LinearOperator::from_dense(const CxVec& dense, std::int64_t n) {
  double frob = 0.0;
  for (const Cx& v : dense) frob += std::norm(v);
  LinearOperator op;
  op.dim = n;
  op.norm_scale = std::sqrt(frob);
  op.apply_fn = [&dense, n](const CxVec& x, CxVec& y) {
    y.assign(n, Cx{0.0, 0.0});
    for (std::int64_t r = 0; r < n; ++r) {
      KahanSum acc;
      const Cx* row = dense.data() + r * n;
      for (std::int64_t c = 0; c < n; ++c) acc.add(row[c] * x[c]);
      y[r] = acc.sum;
    }
  };
  return op;
}

void dense_eig(const CxVec& dense, std::int64_t n, std::vector<double>& evals,
               std::vector<CxVec>& evecs) {
  EMat A(n, n);
  for (std::int64_t r = 0; r < n; ++r)
    for (std::int64_t c = 0; c < n; ++c) A(r, c) = dense[r * n + c];
  // Symmetrize; callers guarantee Hermiticity to roundoff.
  A = (A + A.adjoint().eval()) * 0.5;
  Eigen::SelfAdjointEigenSolver<EMat> es(A);
  if (es.info() != Eigen::Success) throw std::runtime_error("dense_eig failed");
  evals.assign(es.eigenvalues().data(), es.eigenvalues().data() + n);
  evecs.assign(n, CxVec(n));
  for (std::int64_t c = 0; c < n; ++c)
    for (std::int64_t r = 0; r < n; ++r) evecs[c][r] = es.eigenvectors()(r, c);
}

int orthonormalize(std::vector<CxVec>& cols, double drop_tol) {
  std::vector<CxVec> kept;
  for (CxVec& v : cols) {
    for (int pass = 0; pass < 2; ++pass)
      for (const CxVec& u : kept) {
        Cx c = fast_dot(u, v);
        axpy_sub(v, c, u);
      }
    double n = std::sqrt(fast_dot(v, v).real());
    if (n > drop_tol) {
      for (Cx& x : v) x /= n;
      kept.push_back(std::move(v));
    }
  }
  cols = std::move(kept);
  return static_cast<int>(cols.size());
}

int cluster_size(const std::vector<double>& eigs, int start, double eps_scale) {
  int end = start;
  const int n = static_cast<int>(eigs.size());
  while (end + 1 < n) {
    double step = eigs[end + 1] - eigs[end];
    double span_to_next = eigs[end + 1] - eigs[start];
    if (step > std::max(1e-12 * eps_scale, 1e-3 * span_to_next)) break;
    ++end;
  }
  return end - start + 1;
}

namespace {

void project_out(CxVec& v, const std::vector<CxVec>& basis) {
  for (const CxVec& u : basis) {
    Cx c = fast_dot(u, v);
    axpy_sub(v, c, u);
  }
}

// Two full orthogonalization passes of v against `first` then `second`.
void orth_against(CxVec& v, const std::vector<CxVec>& first,
                  const std::vector<CxVec>& second) {
  for (int pass = 0; pass < 2; ++pass) {
    project_out(v, first);
    project_out(v, second);
  }
}

CxVec random_vector(std::int64_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  CxVec v(n);
  for (auto& x : v) x = Cx{dist(rng), dist(rng)};
  return v;
}

// Rayleigh-Ritz over orthonormal columns with cached A-images. The final
// extraction uses compensated dots so eigenvalues near 1e-11 of the operator
// norm stay meaningful.
void rayleigh_ritz(const std::vector<CxVec>& B, const std::vector<CxVec>& AB,
                   std::vector<double>& theta, EMat& Y, bool compensated) {
  const int m = static_cast<int>(B.size());
  EMat G(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      G(i, j) = compensated ? cdot(B[i], AB[j]) : fast_dot(B[i], AB[j]);
  G = (G + G.adjoint().eval()) * 0.5;
  Eigen::SelfAdjointEigenSolver<EMat> es(G);
  theta.assign(es.eigenvalues().data(), es.eigenvalues().data() + m);
  Y = es.eigenvectors();
}

std::vector<CxVec> combine(const std::vector<CxVec>& B, const EMat& Y, int take) {
  const std::int64_t n = static_cast<std::int64_t>(B.front().size());
  std::vector<CxVec> out(take, CxVec(n, Cx{0.0, 0.0}));
  for (int c = 0; c < take; ++c)
    for (int j = 0; j < static_cast<int>(B.size()); ++j) {
      const Cx w = Y(j, c);
      if (std::abs(w) < 1e-300) continue;
      axpy_sub(out[c], -w, B[j]);
    }
  return out;
}

SpectrumResult solve_dense_path(const LinearOperator& op, const SolveOptions& opt) {
  const std::int64_t n = op.dim;
  CxVec dense(static_cast<std::size_t>(n) * n);
  CxVec e(n), col(n);
  for (std::int64_t c = 0; c < n; ++c) {
    std::fill(e.begin(), e.end(), Cx{0.0, 0.0});
    e[c] = 1.0;
    op.apply(e, col);
    for (std::int64_t r = 0; r < n; ++r) dense[r * n + c] = col[r];
  }

  std::vector<CxVec> forb = opt.forbidden;
  orthonormalize(forb);
  const std::int64_t nc = n - static_cast<std::int64_t>(forb.size());
  if (opt.k > nc) throw std::invalid_argument("lowest_k: k exceeds problem dimension");

  std::vector<double> evals;
  std::vector<CxVec> evecs;
  if (forb.empty()) {
    dense_eig(dense, n, evals, evecs);
  } else {
    // Orthonormal basis of the complement, then solve the restricted matrix.
    EMat C(n, forb.size());
    for (std::size_t j = 0; j < forb.size(); ++j)
      for (std::int64_t i = 0; i < n; ++i) C(i, j) = forb[j][i];
    Eigen::HouseholderQR<EMat> qr(C);
    EMat Q = qr.householderQ() * EMat::Identity(n, n);
    EMat Q2 = Q.rightCols(nc);
    EMat A(n, n);
    for (std::int64_t r = 0; r < n; ++r)
      for (std::int64_t c = 0; c < n; ++c) A(r, c) = dense[r * n + c];
    EMat Ac = Q2.adjoint() * A * Q2;
    Ac = (Ac + Ac.adjoint().eval()) * 0.5;
    Eigen::SelfAdjointEigenSolver<EMat> es(Ac);
    EMat V = Q2 * es.eigenvectors();
    evals.assign(es.eigenvalues().data(), es.eigenvalues().data() + nc);
    evecs.assign(nc, CxVec(n));
    for (std::int64_t c = 0; c < nc; ++c)
      for (std::int64_t r = 0; r < n; ++r) evecs[c][r] = V(r, c);
  }

  // Polish the bottom window with a compensated re-Ritz.
  const int win = static_cast<int>(std::min<std::int64_t>(opt.k + 5, nc));
  std::vector<CxVec> W(evecs.begin(), evecs.begin() + win);
  for (CxVec& w : W) project_out(w, forb);
  orthonormalize(W);
  std::vector<CxVec> AW(W.size());
  for (std::size_t i = 0; i < W.size(); ++i) AW[i] = op.apply(W[i]);
  std::vector<double> theta;
  EMat Y;
  rayleigh_ritz(W, AW, theta, Y, true);

  SpectrumResult res;
  res.applies = n + static_cast<std::int64_t>(W.size());
  const int keep = std::min<int>(opt.k, static_cast<int>(W.size()));
  res.eigenvectors = combine(W, Y, keep);
  std::vector<CxVec> AV = combine(AW, Y, keep);
  for (int i = 0; i < keep; ++i) {
    res.eigenvalues.push_back(theta[i]);
    CxVec r = AV[i];
    for (std::int64_t j = 0; j < n; ++j) r[j] -= theta[i] * res.eigenvectors[i][j];
    project_out(r, forb);
    res.residual_norms.push_back(std::sqrt(norm2(r)));
  }
  res.converged = true;
  for (double rn : res.residual_norms)
    if (!(rn <= std::max(opt.tol, 64.0 * 1e-16 * op.norm_scale))) res.converged = false;
  res.note = "dense";
  return res;
}

} // namespace

namespace {

// Orthogonalize a block of vectors against a basis, basis-major so each
// basis column is read once per pass for the whole block.
void block_orth(std::vector<CxVec>& Z, const std::vector<CxVec>& forb,
                const std::vector<CxVec>& B) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const CxVec& u : forb)
      for (CxVec& z : Z) axpy_sub(z, fast_dot(u, z), u);
    for (const CxVec& u : B)
      for (CxVec& z : Z) axpy_sub(z, fast_dot(u, z), u);
  }
}

} // namespace

SpectrumResult lowest_k(const LinearOperator& op, const SolveOptions& opt) {
  if (opt.k < 1 || opt.k > op.dim) throw std::invalid_argument("lowest_k: bad k");
  if (!(opt.tol > 0.0)) throw std::invalid_argument("lowest_k: tol must be positive");
  if (op.dim <= opt.dense_threshold) return solve_dense_path(op, opt);

  const std::int64_t n = op.dim;
  std::vector<CxVec> forb = opt.forbidden;
  orthonormalize(forb);

  const int p = opt.block > 0 ? opt.block : std::min<int>(opt.k + 3, 12);
  const int m_max = opt.subspace_max > 0 ? opt.subspace_max : std::max(6 * p, 64);
  const int k_strict = opt.k_strict > 0 ? std::min(opt.k_strict, opt.k) : opt.k;

  std::mt19937_64 rng(opt.rng_seed);
  std::vector<CxVec> B;
  for (const CxVec& s : opt.seeds) {
    if (static_cast<std::int64_t>(s.size()) != n)
      throw std::invalid_argument("lowest_k: seed dimension mismatch");
    CxVec v = s;
    project_out(v, forb);
    B.push_back(std::move(v));
  }
  while (static_cast<int>(B.size()) < p) B.push_back(random_vector(n, rng));
  for (CxVec& v : B) project_out(v, forb);
  orthonormalize(B);
  while (static_cast<int>(B.size()) < p) {
    CxVec v = random_vector(n, rng);
    project_out(v, forb);
    B.push_back(std::move(v));
    orthonormalize(B);
  }

  std::vector<CxVec> AB;
  std::int64_t applies = 0;
  for (const CxVec& b : B) {
    AB.push_back(op.apply(b));
    ++applies;
  }

  const double conv_floor = 32.0 * 1e-16 * op.norm_scale;
  const double conv_tol = std::max(opt.tol, conv_floor);
  const double loose_tol = std::max(100.0 * opt.tol, conv_floor);

  // Projected matrix G = B^dag A B, maintained incrementally: restarts rotate
  // it by the kept Ritz coefficients, block appends add a border of dots.
  EMat G(m_max, m_max);
  {
    const int m0 = static_cast<int>(B.size());
    for (int i = 0; i < m0; ++i)
      for (int j = 0; j < m0; ++j) G(i, j) = fast_dot(B[i], AB[j]);
  }

  auto append_block = [&](std::vector<CxVec>&& Z) {
    block_orth(Z, forb, B);
    orthonormalize(Z, 1e-12);
    for (CxVec& z : Z) {
      if (static_cast<int>(B.size()) >= m_max || applies >= opt.max_applies) break;
      B.push_back(std::move(z));
      AB.push_back(op.apply(B.back()));
      ++applies;
      const int mnew = static_cast<int>(B.size()) - 1;
      for (int i = 0; i <= mnew; ++i) {
        G(i, mnew) = fast_dot(B[i], AB[mnew]);
        G(mnew, i) = std::conj(G(i, mnew));
      }
    }
  };

  SpectrumResult res;
  int confirm_sweeps = n > 100000 ? 1 : 2;
  int restarts = 0;
  std::vector<double> theta_prev(opt.k, 1e300);
  std::vector<int> stable_count(opt.k, 0);
  const int nb_chain = opt.expand_block > 0 ? opt.expand_block : std::max(1, p / 4);
  while (true) {
    // Grow the space: narrow block-Lanczos chains of the newest images keep
    // the Krylov polynomial degree per sweep high.
    while (static_cast<int>(B.size()) < m_max && applies < opt.max_applies) {
      const int have = static_cast<int>(B.size());
      const int nb = std::min(nb_chain, m_max - have);
      std::vector<CxVec> Z;
      for (int i = std::max(0, have - nb); i < have; ++i) Z.push_back(AB[i]);
      if (Z.empty()) break;
      const int before = have;
      append_block(std::move(Z));
      if (static_cast<int>(B.size()) == before) {
        // Expansion degenerated; inject a random direction.
        std::vector<CxVec> R1;
        R1.push_back(random_vector(n, rng));
        append_block(std::move(R1));
        if (static_cast<int>(B.size()) == before) break;
      }
    }

    const int m = static_cast<int>(B.size());
    EMat Gm = G.topLeftCorner(m, m);
    Gm = (Gm + Gm.adjoint().eval()) * 0.5;
    Eigen::SelfAdjointEigenSolver<EMat> es(Gm);
    std::vector<double> theta(es.eigenvalues().data(), es.eigenvalues().data() + m);
    const EMat& Y = es.eigenvectors();

    const int keep = std::min(
        m, opt.ritz_keep > 0 ? opt.ritz_keep : std::max(opt.k + 4, p + 2));
    std::vector<CxVec> X = combine(B, Y, keep);
    std::vector<CxVec> AX = combine(AB, Y, keep);

    std::vector<CxVec> R;
    bool all_ok = true;
    std::vector<double> rnorm(opt.k);
    for (int i = 0; i < opt.k; ++i) {
      CxVec r = AX[i];
      for (std::int64_t j = 0; j < n; ++j) r[j] -= theta[i] * X[i][j];
      project_out(r, forb);
      rnorm[i] = std::sqrt(fast_dot(r, r).real());
      if (i < k_strict) {
        if (rnorm[i] > conv_tol) all_ok = false;
      } else {
        // Trailing pairs converge by residual or by settled Ritz value; they
        // are reported with their achieved residuals either way.
        const bool settled =
            std::abs(theta[i] - theta_prev[i]) <
            std::max(1e-3 * std::abs(theta[i]), 10.0 * conv_tol);
        stable_count[i] = settled ? stable_count[i] + 1 : 0;
        if (rnorm[i] > loose_tol && stable_count[i] < 3) all_ok = false;
      }
      R.push_back(std::move(r));
    }
    theta_prev.assign(theta.begin(), theta.begin() + opt.k);

    if (opt.verbose) {
      std::fprintf(stderr, "[lowest_k] applies=%lld theta0=%.3e resid:",
                   static_cast<long long>(applies), theta[0]);
      for (int i = 0; i < opt.k; ++i) std::fprintf(stderr, " %.1e", rnorm[i]);
      std::fprintf(stderr, "\n");
    }

    if (all_ok && confirm_sweeps > 0) {
      // Converged on residuals; spend a few exploration cycles guarding
      // against interior levels the seeded space never touched.
      --confirm_sweeps;
      B.assign(X.begin(), X.end());
      AB.assign(AX.begin(), AX.end());
      G.topLeftCorner(keep, keep) =
          (Y.leftCols(keep).adjoint() * Gm * Y.leftCols(keep)).eval();
      std::vector<CxVec> R3;
      for (int i = 0; i < p; ++i) R3.push_back(random_vector(n, rng));
      append_block(std::move(R3));
      continue;
    }

    if (all_ok || applies >= opt.max_applies) {
      // Final compensated polish on the kept window.
      orthonormalize(X);
      std::vector<CxVec> AXp(X.size());
      for (std::size_t i = 0; i < X.size(); ++i) {
        AXp[i] = op.apply(X[i]);
        ++applies;
      }
      std::vector<double> th2;
      EMat Y2;
      rayleigh_ritz(X, AXp, th2, Y2, true);
      std::vector<CxVec> V = combine(X, Y2, opt.k);
      std::vector<CxVec> AV = combine(AXp, Y2, opt.k);
      res.eigenvalues.assign(th2.begin(), th2.begin() + opt.k);
      res.eigenvectors = V;
      res.residual_norms.assign(opt.k, 0.0);
      bool ok = true;
      for (int i = 0; i < opt.k; ++i) {
        CxVec r = AV[i];
        for (std::int64_t j = 0; j < n; ++j) r[j] -= th2[i] * V[i][j];
        project_out(r, forb);
        res.residual_norms[i] = std::sqrt(norm2(r));
        if (res.residual_norms[i] > (i < k_strict ? conv_tol : loose_tol)) ok = false;
      }
      res.converged = ok;
      res.applies = applies;
      if (!ok) res.note = "iteration budget exhausted";
      return res;
    }

    // Thick restart: keep the Ritz window, rotate G accordingly, then seed
    // the next sweep with the unconverged residual directions plus one
    // random exploration direction.
    B.assign(X.begin(), X.end());
    AB.assign(AX.begin(), AX.end());
    G.topLeftCorner(keep, keep) =
        (Y.leftCols(keep).adjoint() * Gm * Y.leftCols(keep)).eval();

    std::vector<CxVec> R2;
    for (int i = 0; i < opt.k && static_cast<int>(R2.size()) < p - 1; ++i) {
      const double target = (i < k_strict ? conv_tol : loose_tol);
      if (rnorm[i] <= target) continue;
      R2.push_back(std::move(R[i]));
    }
    if (++restarts % 3 == 0) R2.push_back(random_vector(n, rng));
    if (!R2.empty()) append_block(std::move(R2));
  }
}

SpectrumResult lowest_k(const ChainOperator& H, const SolveOptions& opt) {
  return lowest_k(LinearOperator::from_chain(H, opt.parallel), opt);
}

SpectrumResult lowest_k_constrained(const LinearOperator& op, const SolveOptions& opt,
                                    const std::vector<CxVec>& forbidden) {
  SolveOptions o = opt;
  for (const CxVec& f : forbidden) o.forbidden.push_back(f);
  return lowest_k(op, o);
}

} // namespace qchain
