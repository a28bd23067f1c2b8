#include <cstdio>
#include "qchain/model.hpp"
#include "qchain/eigensolve.hpp"
using namespace qchain;
int main() {
  ModelParams p{1.56, 1.0, 3};
  ChainOperator H = build_chain(p);
  SolveOptions opt; opt.k = 14; opt.tol = 1e-10; // dense path at 2916
  SpectrumResult s = lowest_k(H, opt);
  for (int i = 0; i < 14; ++i) std::printf("%2d  %.12e\n", i, s.eigenvalues[i]);
}
