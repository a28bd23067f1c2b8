#include "qchain/excitation.hpp"

#include <cmath>
#include <stdexcept>

#include "qchain/exact_spectra.hpp"
#include "qchain/tensor_ops.hpp"

namespace qchain {

namespace {

// Dense kron of a 3x3, 3x3 and 2x2 factor into an 18x18 block (q1, q2, c).
CxVec kron3(const CxVec& a, const CxVec& b, const CxVec& c) {
  CxVec ab = kron(a, 3, b, 3);
  return kron(ab, 9, c, 2);
}

CxVec e3(int r, int c) {
  CxVec m(9, Cx{0, 0});
  m[r * 3 + c] = 1.0;
  return m;
}
CxVec e2(int r, int c) {
  CxVec m(4, Cx{0, 0});
  m[r * 2 + c] = 1.0;
  return m;
}
CxVec id3() {
  CxVec m(9, Cx{0, 0});
  m[0] = m[4] = m[8] = 1.0;
  return m;
}
CxVec id2() {
  CxVec m(4, Cx{0, 0});
  m[0] = m[3] = 1.0;
  return m;
}

void axpy(CxVec& y, Cx a, const CxVec& x) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

} // namespace

ExcitationProblem make_excitation_problem(int m, double theta) {
  if (m < 1) throw std::invalid_argument("make_excitation_problem: m must be >= 1");
  ExcitationProblem prob;
  prob.m = m;
  prob.theta = theta;
  prob.f = fidelity_single(theta);
  prob.lam = 1.0 - prob.f;
  prob.g0 = g0_isometry(theta, m);
  prob.cell_shape = prob.g0.cell_shape;
  prob.cell_dim = prob.cell_shape.total_dim();

  // Cell-local part: projections on each qutrit pair, pair creation between
  // consecutive pairs, and the channel-contracted boundary pair creation
  // (weight 1 - f) on the last qutrit and the bond.
  prob.inside = ChainOperator{prob.cell_shape};
  for (int k = 0; k < m; ++k) prob.inside.add_term(build_projection(theta, 1.0, 2 * k));
  for (int k = 1; k < m; ++k) prob.inside.add_term(build_create_pair(1.0, 3, 3, 2 * k - 1));
  {
    LocalTerm t = build_create_pair(prob.lam, 3, 2, 2 * m - 1);
    prob.inside.add_term(std::move(t));
  }

  prob.hcp9 = build_create_pair(1.0, 3, 3, 0).block;

  for (int b = 0; b < 2; ++b)
    for (int bp = 0; bp < 2; ++bp) {
      CxVec v(prob.pair_dim(), Cx{0, 0});
      const CxVec& g = prob.g0.col(bp);
      std::copy(g.begin(), g.end(), v.begin() + b * prob.cell_dim);
      prob.constraints.push_back(std::move(v));
    }
  return prob;
}

double constraint_violation(const ExcitationProblem& prob, const CxVec& x) {
  double worst = 0.0;
  for (const CxVec& c : prob.constraints) worst = std::max(worst, std::abs(cdot(c, x)));
  return worst;
}

void project_constraints(const ExcitationProblem& prob, CxVec& x) {
  for (int pass = 0; pass < 2; ++pass)
    for (const CxVec& c : prob.constraints) {
      Cx a = cdot(c, x);
      for (std::size_t i = 0; i < x.size(); ++i) x[i] -= a * c[i];
    }
}

void effective_apply_raw(const ExcitationProblem& prob, const CxVec& x, double phi,
                         CxVec& y) {
  const std::int64_t D = prob.cell_dim;
  if (static_cast<std::int64_t>(x.size()) != 2 * D)
    throw std::invalid_argument("effective_apply_raw: pair dimension mismatch");
  y.assign(2 * D, Cx{0, 0});

  // Position-diagonal cell-local part, block by block.
  {
    CxVec xb(D), yb(D);
    for (int b = 0; b < 2; ++b) {
      std::copy(x.begin() + b * D, x.begin() + (b + 1) * D, xb.begin());
      prob.inside.apply(xb, yb);
      std::copy(yb.begin(), yb.end(), y.begin() + b * D);
    }
  }

  // Left-straddle coupling through the traced previous cell (bond state I/2):
  //   y_b += lam * [ P01(s1) x_b - (1/2) |b><b'|(s1) x_b' ]
  {
    const std::int64_t rest = D / 3; // everything after cell site 0
    const double lam = prob.lam;
    for (int b = 0; b < 2; ++b) {
      const Cx* xb = x.data() + b * D;
      Cx* yb = y.data() + b * D;
      for (std::int64_t r = 0; r < rest; ++r) {
        yb[0 * rest + r] += lam * xb[0 * rest + r];
        yb[1 * rest + r] += lam * xb[1 * rest + r];
      }
      for (int bp = 0; bp < 2; ++bp) {
        const Cx* xbp = x.data() + bp * D;
        for (std::int64_t r = 0; r < rest; ++r)
          yb[b * rest + r] -= 0.5 * lam * xbp[bp * rest + r];
      }
    }
  }

  const double w = 2.0 * std::cos(phi);
  if (w != 0.0) {
    // Hopping through the boundary pair-creation term. Site split on the
    // bra/J side: [rr, s = last qutrit, c], on the ket/J+1 side:
    // [t = first qutrit, r'].
    const std::int64_t rest = D / 3;  // r' range
    const std::int64_t RR = D / 6;    // rr range
    const CxVec& h = prob.hcp9;

    // T x:  RM(b',b)[t',t] = sum_{r'} conj(g_{b'}[t',r']) x_b[t,r']
    Cx RM[2][2][3][3];
    for (int bp = 0; bp < 2; ++bp)
      for (int b = 0; b < 2; ++b) {
        const Cx* g = prob.g0.col(bp).data();
        const Cx* xb = x.data() + b * D;
        for (int tp = 0; tp < 3; ++tp)
          for (int t = 0; t < 3; ++t) {
            Cx acc{0, 0};
            const Cx* grow = g + tp * rest;
            const Cx* xrow = xb + t * rest;
            for (std::int64_t r = 0; r < rest; ++r) acc += std::conj(grow[r]) * xrow[r];
            RM[bp][b][tp][t] = acc;
          }
      }
    for (int b0 = 0; b0 < 2; ++b0) {
      const Cx* g = prob.g0.col(b0).data();
      Cx* yb = y.data() + b0 * D;
      for (int bp = 0; bp < 2; ++bp)
        for (int b = 0; b < 2; ++b) {
          // O[s',s] = sum_{t',t} h[(s',t'),(s,t)] RM(b',b)[t',t]
          Cx O[3][3];
          for (int sp = 0; sp < 3; ++sp)
            for (int s = 0; s < 3; ++s) {
              Cx acc{0, 0};
              for (int tp = 0; tp < 3; ++tp)
                for (int t = 0; t < 3; ++t)
                  acc += h[(sp * 3 + tp) * 9 + (s * 3 + t)] * RM[bp][b][tp][t];
              O[sp][s] = acc;
            }
          for (std::int64_t rr = 0; rr < RR; ++rr)
            for (int s = 0; s < 3; ++s) {
              const Cx gval = g[(rr * 3 + s) * 2 + b];
              if (gval == Cx{0, 0}) continue;
              for (int sp = 0; sp < 3; ++sp) {
                const Cx ov = O[sp][s];
                if (ov == Cx{0, 0}) continue;
                yb[(rr * 3 + sp) * 2 + bp] += (0.5 * w) * ov * gval;
              }
            }
        }
    }

    // T^dag x:  LM^(b0)(b',b)[s',s] = sum_rr conj(x_{b0}[(rr,s'),b']) g_{b0}[(rr,s),b]
    Cx LM[2][2][2][3][3];
    for (int b0 = 0; b0 < 2; ++b0) {
      const Cx* xb = x.data() + b0 * D;
      const Cx* g = prob.g0.col(b0).data();
      for (int bp = 0; bp < 2; ++bp)
        for (int b = 0; b < 2; ++b)
          for (int sp = 0; sp < 3; ++sp)
            for (int s = 0; s < 3; ++s) {
              Cx acc{0, 0};
              for (std::int64_t rr = 0; rr < RR; ++rr)
                acc += std::conj(xb[(rr * 3 + sp) * 2 + bp]) * g[(rr * 3 + s) * 2 + b];
              LM[b0][bp][b][sp][s] = acc;
            }
    }
    for (int b = 0; b < 2; ++b) {
      Cx* yb = y.data() + b * D;
      for (int bp = 0; bp < 2; ++bp) {
        // Q[t,t'] = (1/2) sum_{b0,s,s'} conj(h[(s',t'),(s,t)]) conj(LM^(b0)(b',b)[s',s])
        Cx Q[3][3];
        for (int t = 0; t < 3; ++t)
          for (int tp = 0; tp < 3; ++tp) {
            Cx acc{0, 0};
            for (int b0 = 0; b0 < 2; ++b0)
              for (int s = 0; s < 3; ++s)
                for (int sp = 0; sp < 3; ++sp)
                  acc += std::conj(h[(sp * 3 + tp) * 9 + (s * 3 + t)]) *
                         std::conj(LM[b0][bp][b][sp][s]);
            Q[t][tp] = 0.5 * acc;
          }
        const Cx* g = prob.g0.col(bp).data();
        for (int t = 0; t < 3; ++t)
          for (int tp = 0; tp < 3; ++tp) {
            const Cx q = w * Q[t][tp];
            if (q == Cx{0, 0}) continue;
            const Cx* grow = g + tp * rest;
            Cx* yrow = yb + t * rest;
            for (std::int64_t r = 0; r < rest; ++r) yrow[r] += q * grow[r];
          }
      }
    }
  }
}

CxVec effective_apply(const ExcitationProblem& prob, const CxVec& x, double phi) {
  const double viol = constraint_violation(prob, x);
  if (viol > 1e-10 * std::sqrt(norm2(x)))
    throw std::invalid_argument("effective_apply: input violates the orthogonality constraint");
  CxVec y;
  effective_apply_raw(prob, x, phi, y);
  project_constraints(prob, y);
  return y;
}

CxVec paper_blocks_m1(double theta, double phi, double kappa) {
  const double f = fidelity_single(theta);
  const double lam = 1.0 - f;
  const double cw = std::cos(phi);

  const CxVec I3 = id3(), I2 = id2();
  CxVec PR = build_projection(theta, 1.0).block;      // 9x9 on (q1,q2)
  CxVec CP32 = build_create_pair(1.0, 3, 2).block;    // 6x6 on (q2,c)

  CxVec H00(18 * 18, Cx{0, 0}), H01(18 * 18, Cx{0, 0});

  axpy(H00, 1.0, kron(PR, 9, I2, 2));
  axpy(H00, lam, kron(I3, 3, CP32, 6));
  {
    CxVec K0(9, Cx{0, 0});
    K0[0] = 0.5;
    K0[4] = 1.0; // (|0><0| + 2|1><1|)/2
    axpy(H00, lam, kron3(K0, I3, I2));
  }
  axpy(H00, lam * cw / 2.0, kron3(e3(0, 1), e3(0, 0), e2(1, 0)));
  axpy(H00, lam * cw / 2.0, kron3(e3(0, 1), e3(0, 1), e2(1, 1)));
  axpy(H00, lam * cw / 2.0, kron3(e3(1, 0), e3(0, 0), e2(0, 1)));
  axpy(H00, lam * cw / 2.0, kron3(e3(1, 0), e3(1, 0), e2(1, 1)));
  axpy(H00, lam * cw / 4.0, kron3(e3(0, 0), e3(0, 0), e2(0, 0)));
  axpy(H00, lam * cw / 4.0, kron3(e3(0, 0), e3(0, 1), e2(0, 1)));
  axpy(H00, -lam * cw / 4.0, kron3(e3(0, 0), e3(1, 0), e2(1, 0)));
  axpy(H00, -lam * cw / 4.0, kron3(e3(0, 0), e3(1, 1), e2(1, 1)));
  axpy(H00, lam * cw / 4.0, kron3(e3(0, 0), e3(0, 0), e2(0, 0)));
  axpy(H00, lam * cw / 4.0, kron3(e3(0, 0), e3(1, 0), e2(1, 0)));
  axpy(H00, -lam * cw / 4.0, kron3(e3(0, 0), e3(0, 1), e2(0, 1)));
  axpy(H00, -lam * cw / 4.0, kron3(e3(0, 0), e3(1, 1), e2(1, 1)));

  axpy(H01, -lam / 2.0, kron3(e3(0, 1), I3, I2));
  axpy(H01, lam * cw / 2.0, kron3(e3(0, 0), e3(1, 0), e2(0, 0)));
  axpy(H01, lam * cw / 2.0, kron3(e3(0, 0), e3(1, 1), e2(0, 1)));
  axpy(H01, lam * cw / 2.0, kron3(e3(1, 1), e3(0, 0), e2(0, 1)));
  axpy(H01, lam * cw / 2.0, kron3(e3(1, 1), e3(1, 0), e2(1, 1)));
  // Final two lines; the second enters with its sign flipped so the
  // assembled operator is Hermitian and consistent with the 0 <-> 1
  // relabeling (the two requirements pin the sign uniquely).
  axpy(H01, -lam * cw / 4.0, kron3(e3(0, 1), e3(0, 0), e2(0, 0)));
  axpy(H01, -lam * cw / 4.0, kron3(e3(0, 1), e3(0, 1), e2(0, 1)));
  axpy(H01, lam * cw / 4.0, kron3(e3(0, 1), e3(1, 0), e2(1, 0)));
  axpy(H01, lam * cw / 4.0, kron3(e3(0, 1), e3(1, 1), e2(1, 1)));
  axpy(H01, lam * cw / 4.0, kron3(e3(0, 1), e3(0, 0), e2(0, 0)));
  axpy(H01, lam * cw / 4.0, kron3(e3(0, 1), e3(1, 0), e2(1, 0)));
  axpy(H01, -lam * cw / 4.0, kron3(e3(0, 1), e3(0, 1), e2(0, 1)));
  axpy(H01, -lam * cw / 4.0, kron3(e3(0, 1), e3(1, 1), e2(1, 1)));

  if (kappa != 0.0) {
    for (int b = 0; b < 2; ++b) {
      const CxVec& g = psi0(b, theta).amplitudes;
      for (int r = 0; r < 18; ++r)
        for (int c = 0; c < 18; ++c) H00[r * 18 + c] += kappa * g[r] * std::conj(g[c]);
    }
  }

  // 0 <-> 1 relabeling on all three sites (IDLE fixed).
  auto relabel_index = [](int i) {
    const int c = i % 2, q2 = (i / 2) % 3, q1 = i / 6;
    auto flip3 = [](int q) { return q == 2 ? 2 : 1 - q; };
    return (flip3(q1) * 3 + flip3(q2)) * 2 + (1 - c);
  };
  CxVec H11(18 * 18), H10(18 * 18);
  for (int r = 0; r < 18; ++r)
    for (int c = 0; c < 18; ++c) {
      H11[relabel_index(r) * 18 + relabel_index(c)] = H00[r * 18 + c];
      H10[relabel_index(r) * 18 + relabel_index(c)] = H01[r * 18 + c];
    }

  CxVec M(36 * 36, Cx{0, 0});
  auto put = [&](const CxVec& B, int br, int bc) {
    for (int r = 0; r < 18; ++r)
      for (int c = 0; c < 18; ++c) M[(br * 18 + r) * 36 + (bc * 18 + c)] = B[r * 18 + c];
  };
  put(H00, 0, 0);
  put(H01, 0, 1);
  put(H10, 1, 0);
  put(H11, 1, 1);
  return M;
}

CxVec embed_pair(const ExcitationProblem& small, const CxVec& x_small,
                 const ExcitationProblem& big, int q) {
  if (big.m % small.m != 0) throw std::invalid_argument("embed_pair: small.m must divide big.m");
  const int slots = big.m / small.m;
  if (q < 0 || q >= slots) throw std::invalid_argument("embed_pair: slot out of range");

  const std::int64_t sd = small.cell_dim;
  CxVec out(big.pair_dim(), Cx{0, 0});
  for (int b = 0; b < 2; ++b) {
    StateVector v{ChainShape({2})};
    v.amplitudes[b] = 1.0;
    for (int slot = 0; slot < slots; ++slot) {
      if (slot == q) {
        CxVec c0(x_small.begin(), x_small.begin() + sd);
        CxVec c1(x_small.begin() + sd, x_small.end());
        v = expand_bond(v, c0, c1, small.cell_shape);
      } else {
        v = expand_bond(v, small.g0.col0, small.g0.col1, small.cell_shape);
      }
    }
    std::copy(v.amplitudes.begin(), v.amplitudes.end(), out.begin() + b * big.cell_dim);
  }
  return out;
}

VariationalResult variational_gap(int m, double theta, double phi, double tol,
                                  bool parallel) {
  ExcitationProblem prob = make_excitation_problem(m, theta);

  LinearOperator op;
  op.dim = prob.pair_dim();
  op.norm_scale = prob.inside.operator_norm_bound() + 4.0 * prob.lam + 2.0;
  op.apply_fn = [&prob, phi](const CxVec& x, CxVec& y) {
    effective_apply_raw(prob, x, phi, y);
  };

  SolveOptions opt;
  opt.k = 4;
  opt.tol = tol;
  opt.parallel = parallel;
  opt.max_applies = 60000;
  // Explicit dense blocks cover m <= 2; larger cells go matrix-free.
  opt.dense_threshold = 400;

  if (op.dim > opt.dense_threshold) {
    // Matrix-free path. The triplet Rayleigh quotients are pinned far below
    // the residual scale by the final compensated polish; a 1e-9 residual
    // together with the measured distance to the next level already certifies
    // the eigenvalue to ~1e-13 (Kato-Temple), so the residual target is kept
    // there rather than at the dense-path figure.
    opt.tol = std::max(tol, 1e-9);
    opt.k_strict = 3;
    // Seed with the triplet of the largest dense-solvable divisor cell size,
    // embedded across all slots (the recovery relation direction).
    const int d = (m % 2 == 0) ? 2 : 1;
    VariationalResult small = variational_gap(d, theta, phi, std::max(tol, 1e-14), parallel);
    ExcitationProblem sprob = make_excitation_problem(d, theta);
    for (const CxVec& xs : small.pair_vectors) {
      CxVec seed(prob.pair_dim(), Cx{0, 0});
      for (int q = 0; q < m / d; ++q) {
        CxVec part = embed_pair(sprob, xs, prob, q);
        for (std::size_t i = 0; i < seed.size(); ++i) seed[i] += part[i];
      }
      opt.seeds.push_back(std::move(seed));
    }
  }

  // The raw operator is solved as transcribed; reported energies carry the
  // explicit one-half of the variational equation.
  opt.tol = 2.0 * opt.tol;
  SpectrumResult s = lowest_k_constrained(op, opt, prob.constraints);

  VariationalResult res;
  res.m = m;
  res.theta = theta;
  res.phi = phi;
  for (double ev : s.eigenvalues) res.eigenvalues.push_back(0.5 * ev);
  res.gap = res.eigenvalues[0];
  res.degeneracy = cluster_size(res.eigenvalues, 0, 1.0);
  res.pair_vectors = s.eigenvectors;
  for (double rn : s.residual_norms) res.residuals.push_back(0.5 * rn);
  res.converged = s.converged;
  res.applies = s.applies;
  return res;
}

std::vector<VariationalResult> unit_cell_scan(double theta, const std::vector<int>& ms,
                                              double tol, bool parallel) {
  std::vector<VariationalResult> out;
  for (int m : ms) out.push_back(variational_gap(m, theta, 0.0, tol, parallel));
  return out;
}

std::vector<SweepPoint> theta_sweep(const std::vector<int>& ms,
                                    const std::vector<double>& thetas, double tol,
                                    bool parallel) {
  std::vector<SweepPoint> out;
  for (double th : thetas)
    for (int m : ms) {
      VariationalResult r = variational_gap(m, th, 0.0, tol, parallel);
      SweepPoint pt;
      pt.m = m;
      pt.theta = th;
      pt.phi = 0.0;
      pt.f = fidelity_single(th);
      pt.gap = r.gap;
      pt.degeneracy = r.degeneracy;
      const double law = (1.0 - pt.f) * (1.0 - pt.f) * (1.0 - pt.f) / 8.0;
      pt.fit_ratio = law > 0.0 ? r.gap / law : 0.0;
      out.push_back(pt);
    }
  return out;
}

std::vector<CxVec> appendix_triplet() {
  auto idx = [](int q1, int q2, int c) { return (q1 * 3 + q2) * 2 + c; };
  std::vector<CxVec> out(3, CxVec(36, Cx{0, 0}));
  auto set = [&](int which, int b, int q1, int q2, int c, double v) {
    out[which][b * 18 + idx(q1, q2, c)] = v;
  };
  // Bit flip.
  set(0, 0, 0, 0, 1, 0.5);
  set(0, 0, 0, 1, 0, 0.5);
  set(0, 0, 1, 0, 0, -0.5);
  set(0, 0, 1, 1, 1, -0.5);
  set(0, 1, 1, 0, 1, 0.5);
  set(0, 1, 1, 1, 0, 0.5);
  set(0, 1, 0, 0, 0, -0.5);
  set(0, 1, 0, 1, 1, -0.5);
  // Combined bit-and-phase flip.
  set(1, 0, 0, 0, 1, 0.5);
  set(1, 0, 0, 1, 0, -0.5);
  set(1, 0, 1, 0, 0, -0.5);
  set(1, 0, 1, 1, 1, -0.5);
  set(1, 1, 1, 0, 1, 0.5);
  set(1, 1, 1, 1, 0, -0.5);
  set(1, 1, 0, 0, 0, 0.5);
  set(1, 1, 0, 1, 1, 0.5);
  // Phase flip.
  set(2, 0, 0, 1, 1, -1.0);
  set(2, 1, 1, 0, 0, 1.0);
  return out;
}

std::vector<double> appendix_overlap(double theta) {
  if (!(theta >= 1.5 && theta < M_PI_2))
    throw std::invalid_argument("appendix_overlap: theta must lie in [1.5, pi/2)");
  VariationalResult r = variational_gap(1, theta, 0.0);
  std::vector<CxVec> tri(r.pair_vectors.begin(), r.pair_vectors.begin() + 3);
  return principal_overlaps(std::move(tri), appendix_triplet());
}

} // namespace qchain
