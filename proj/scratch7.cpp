#include <cstdio>
#include "qchain/excitation.hpp"
using namespace qchain;
int main() {
  ExcitationProblem prob = make_excitation_problem(3, 1.56);
  LinearOperator op;
  op.dim = prob.pair_dim();
  op.norm_scale = prob.inside.operator_norm_bound() + 4.0 * prob.lam + 2.0;
  op.apply_fn = [&prob](const CxVec& x, CxVec& y) { effective_apply_raw(prob, x, 0.0, y); };
  SolveOptions opt;
  opt.k = 4; opt.tol = 2e-14; opt.max_applies = 6000; opt.dense_threshold = 400;
  opt.verbose = true;
  ExcitationProblem p1 = make_excitation_problem(1, 1.56);
  VariationalResult small = variational_gap(1, 1.56, 0.0);
  for (const CxVec& xs : small.pair_vectors) {
    CxVec seed(prob.pair_dim(), Cx{0,0});
    for (int q = 0; q < 3; ++q) {
      CxVec part = embed_pair(p1, xs, prob, q);
      for (std::size_t i = 0; i < seed.size(); ++i) seed[i] += part[i];
    }
    opt.seeds.push_back(std::move(seed));
  }
  std::printf("norm_scale=%.3f floor=%.2e\n", op.norm_scale, 32e-16*op.norm_scale);
  SpectrumResult s = lowest_k_constrained(op, opt, prob.constraints);
  for (int i = 0; i < 4; ++i) std::printf("%.6e r=%.2e\n", s.eigenvalues[i], s.residual_norms[i]);
}
