#include <cstdio>
#include <chrono>
#include <cstdlib>
#include "qchain/exact_spectra.hpp"
#include "qchain/ground_state.hpp"
#include "qchain/model.hpp"
using namespace qchain;
int main(int argc, char** argv) {
  int ell = argc > 1 ? std::atoi(argv[1]) : 4;
  int nb = argc > 2 ? std::atoi(argv[2]) : 0;
  int mm = argc > 3 ? std::atoi(argv[3]) : 0;
  ModelParams p{1.56, 1.0, ell};
  ChainOperator H = build_chain(p);
  SolveOptions opt;
  opt.k = 5; opt.k_strict = 4; opt.tol = (ell >= 5 ? 2.5e-8 : 1e-9); opt.dense_threshold = 400;
  opt.max_applies = 60000; opt.expand_block = nb; opt.subspace_max = mm; opt.verbose = true;
  opt.block = 10;
  opt.seeds.push_back(assemble_ground_state(p).amplitudes);
  for (int label = 1; label <= 3; ++label)
    for (int j = 0; j < ell; ++j) {
      Isometry flip = flip_isometry(label, p.theta);
      const StateVector u0 = psi0(0, p.theta), u1 = psi0(1, p.theta);
      StateVector v{ChainShape({2,2})};
      v.amplitudes[0] = 1.0/std::sqrt(2.0); v.amplitudes[3] = 1.0/std::sqrt(2.0);
      for (int cell = 0; cell < ell; ++cell)
        v = (cell==j) ? expand_bond(v, flip.col0, flip.col1, flip.cell_shape)
                      : expand_bond(v, u0.amplitudes, u1.amplitudes, u0.shape);
      opt.seeds.push_back(v.amplitudes);
    }
  auto t0 = std::chrono::steady_clock::now();
  SpectrumResult s = lowest_k(H, opt);
  auto t1 = std::chrono::steady_clock::now();
  std::printf("nb=%d mm=%d: gap=%.6e e4=%.4e applies=%lld conv=%d wall=%.1fs resid1=%.1e\n",
              nb, mm, s.eigenvalues[1]-s.eigenvalues[0], s.eigenvalues[4],
              (long long)s.applies, s.converged?1:0,
              std::chrono::duration<double>(t1-t0).count(), s.residual_norms[1]);
}
