#include <chrono>
#include <cstdio>

#include "qchain/exact_spectra.hpp"
#include "qchain/excitation.hpp"
#include "qchain/ground_state.hpp"
#include "qchain/model.hpp"

using namespace qchain;
using clk = std::chrono::steady_clock;

static double secs(clk::time_point a, clk::time_point b) {
  return std::chrono::duration<double>(b - a).count();
}

int main(int argc, char** argv) {
  const int mode = argc > 1 ? std::atoi(argv[1]) : 0;
  const double theta = 1.56;

  if (mode == 0) {
    // ED small lengths.
    for (int ell = 1; ell <= 4; ++ell) {
      auto t0 = clk::now();
      SpectrumResult s = ed_spectrum({theta, 1.0, ell}, 5);
      auto t1 = clk::now();
      std::printf("ell=%d  E0=%.3e  gap=%.9e  deg=%d  resid=%.1e  applies=%lld  %.1fs\n",
                  ell, s.eigenvalues[0], s.eigenvalues[1] - s.eigenvalues[0],
                  cluster_size(s.eigenvalues, 1, 1.0), s.residual_norms[1],
                  static_cast<long long>(s.applies), secs(t0, t1));
      for (int i = 0; i < 5; ++i) std::printf("   %.12e\n", s.eigenvalues[i]);
    }
    // theta = 0 gaps.
    for (int ell = 1; ell <= 3; ++ell) {
      SpectrumResult s = ed_spectrum({0.0, 1.0, ell}, 5);
      std::printf("theta=0 ell=%d E0=%.3e gap-1=%.3e\n", ell, s.eigenvalues[0],
                  s.eigenvalues[1] - s.eigenvalues[0] - 1.0);
    }
  } else if (mode == 5) {
    auto t0 = clk::now();
    SpectrumResult s = ed_spectrum({theta, 1.0, 5}, 5);
    auto t1 = clk::now();
    std::printf("ell=5  E0=%.3e  gap=%.9e  deg=%d  resid=%.1e  applies=%lld  %.1fs\n",
                s.eigenvalues[0], s.eigenvalues[1] - s.eigenvalues[0],
                cluster_size(s.eigenvalues, 1, 1.0), s.residual_norms[1],
                static_cast<long long>(s.applies), secs(t0, t1));
    for (int i = 0; i < 5; ++i) std::printf("   %.12e\n", s.eigenvalues[i]);
  } else if (mode == 3) {
    for (int m : {1, 2, 3}) {
      auto t0 = clk::now();
      VariationalResult r = variational_gap(m, theta, 0.0);
      auto t1 = clk::now();
      std::printf("m=%d gap=%.9e deg=%d conv=%d applies=%lld resid=%.1e %.1fs\n", r.m,
                  r.gap, r.degeneracy, r.converged ? 1 : 0,
                  static_cast<long long>(r.applies), r.residuals[0], secs(t0, t1));
    }
  } else if (mode == 4) {
    auto t0 = clk::now();
    VariationalResult r = variational_gap(4, theta, 0.0);
    auto t1 = clk::now();
    std::printf("m=4 gap=%.9e deg=%d conv=%d applies=%lld resid=%.1e %.1fs\n", r.gap,
                r.degeneracy, r.converged ? 1 : 0, static_cast<long long>(r.applies),
                r.residuals[0], secs(t0, t1));
  } else if (mode == 55) {
    auto t0 = clk::now();
    VariationalResult r = variational_gap(5, theta, 0.0);
    auto t1 = clk::now();
    std::printf("m=5 gap=%.9e deg=%d conv=%d applies=%lld resid=%.1e %.1fs\n", r.gap,
                r.degeneracy, r.converged ? 1 : 0, static_cast<long long>(r.applies),
                r.residuals[0], secs(t0, t1));
  } else if (mode == 7) {
    // Overlap checks.
    ModelParams p{theta, 1.0, 3};
    auto ov = triplet_overlap(p);
    std::printf("triplet overlaps ell=3: %.6f %.6f %.6f\n", ov[0], ov[1], ov[2]);
    auto ao = appendix_overlap(1.5707);
    std::printf("appendix overlaps: %.6f %.6f %.6f\n", ao[0], ao[1], ao[2]);
  }
  return 0;
}
