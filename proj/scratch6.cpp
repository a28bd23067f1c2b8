#include <cstdio>
#include <chrono>
#include "qchain/excitation.hpp"
using namespace qchain;
int main(int argc, char** argv) {
  int mmax = argc > 1 ? std::atoi(argv[1]) : 3;
  for (int m = 1; m <= mmax; ++m) {
    auto t0 = std::chrono::steady_clock::now();
    VariationalResult r = variational_gap(m, 1.56, 0.0);
    auto t1 = std::chrono::steady_clock::now();
    std::printf("m=%d gap=%.9e deg=%d conv=%d applies=%lld resid=%.1e wall=%.1fs\n", r.m,
                r.gap, r.degeneracy, r.converged ? 1 : 0, (long long)r.applies,
                r.residuals[0], std::chrono::duration<double>(t1 - t0).count());
    std::fflush(stdout);
  }
}
