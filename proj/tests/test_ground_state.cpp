#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qchain/exact_spectra.hpp"
#include "qchain/ground_state.hpp"
#include "qchain/model.hpp"
#include "qchain/tensor_ops.hpp"
#include "test_helpers.hpp"

using namespace qchain;
using namespace qchain::testing;

TEST_CASE("psi0 endpoints: product forms at theta = 0 and pi/2") {
  for (int b = 0; b < 2; ++b) {
    StateVector v0 = psi0(b, 0.0);
    auto idx = [](int q1, int q2, int c) { return (q1 * 3 + q2) * 2 + c; };
    CHECK(std::abs(v0.amplitudes[idx(b, 0, 0)] - Cx{1.0 / std::sqrt(2.0), 0}) < 1e-15);
    CHECK(std::abs(v0.amplitudes[idx(b, 1, 1)] - Cx{1.0 / std::sqrt(2.0), 0}) < 1e-15);

    StateVector v1 = psi0(b, M_PI_2);
    CHECK(std::abs(v1.amplitudes[idx(kIdle, kIdle, b)] - Cx{1, 0}) < 1e-15);
  }
}

TEST_CASE("psi0 columns are orthonormal and annihilated by the unit") {
  for (double theta : {0.0, 0.3, 1.0, 1.56}) {
    StateVector a = psi0(0, theta), b = psi0(1, theta);
    CHECK(std::abs(a.norm() - 1.0) < 1e-14);
    CHECK(std::abs(b.norm() - 1.0) < 1e-14);
    CHECK(std::abs(cdot(a.amplitudes, b.amplitudes)) < 1e-15);
    ChainOperator H = build_unit(theta, 1.0, 2);
    CHECK(std::sqrt(norm2(H.apply(a.amplitudes))) < 1e-13);
    CHECK(std::sqrt(norm2(H.apply(b.amplitudes))) < 1e-13);
  }
}

TEST_CASE("composed bond maps stay isometric for m = 1..5") {
  for (double theta : {0.3, 1.56}) {
    for (int m = 1; m <= 5; ++m) {
      Isometry g = g0_isometry(theta, m);
      CHECK(g.isometry_defect() < 1e-13);
    }
  }
}

TEST_CASE("m=2 columns equal the explicit contraction of two unit cells") {
  const double theta = 0.8;
  Isometry g2 = g0_isometry(theta, 2);
  // Oracle: psi^{(2)}(b)[q1 q2 q3 q4 c] = sum_t psi0(b)[q1 q2 t] psi0(t)[q3 q4 c]
  StateVector p0 = psi0(0, theta), p1 = psi0(1, theta);
  auto idx3 = [](int q1, int q2, int c) { return (q1 * 3 + q2) * 2 + c; };
  for (int b = 0; b < 2; ++b) {
    const CxVec& base = (b == 0 ? p0 : p1).amplitudes;
    CxVec expect(9 * 9 * 2, Cx{0, 0});
    for (int q1 = 0; q1 < 3; ++q1)
      for (int q2 = 0; q2 < 3; ++q2)
        for (int q3 = 0; q3 < 3; ++q3)
          for (int q4 = 0; q4 < 3; ++q4)
            for (int c = 0; c < 2; ++c) {
              Cx acc{0, 0};
              for (int t = 0; t < 2; ++t)
                acc += base[idx3(q1, q2, t)] *
                       (t == 0 ? p0 : p1).amplitudes[idx3(q3, q4, c)];
              expect[(((q1 * 3 + q2) * 3 + q3) * 3 + q4) * 2 + c] = acc;
            }
    CHECK(max_abs_diff(expect, g2.col(b)) < 1e-14);
  }
}

TEST_CASE("assembled ground state has unit norm without renormalization") {
  for (double theta : {0.3, 1.56}) {
    for (int ell : {1, 2, 3, 4}) {
      StateVector gs = assemble_ground_state({theta, 1.0, ell});
      CHECK(std::abs(gs.norm() - 1.0) < 1e-13);
    }
  }
}

TEST_CASE("assembly refuses lengths beyond explicit storage") {
  CHECK_THROWS(assemble_ground_state({1.0, 1.0, 8}));
}

TEST_CASE("depolarizing step endpoints and trace preservation") {
  DensityMatrix rho{ChainShape({2})};
  rho.at(0, 0) = 0.7;
  rho.at(1, 1) = 0.3;
  rho.at(0, 1) = Cx{0.1, 0.05};
  rho.at(1, 0) = Cx{0.1, -0.05};

  DensityMatrix same = depolarize_step(rho, M_PI_2);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) CHECK(std::abs(same.at(r, c) - rho.at(r, c)) < 1e-15);

  DensityMatrix mixed = depolarize_step(rho, 0.0);
  CHECK(std::abs(mixed.at(0, 0) - Cx{0.5, 0}) < 1e-15);
  CHECK(std::abs(mixed.at(0, 1)) < 1e-15);

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    CxVec v = random_cxvec(4, 7000 + seed);
    DensityMatrix r2{ChainShape({2})};
    // Build a random valid density matrix v v^dag / tr.
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        r2.at(a, b) = v[a] * std::conj(v[b]) + v[2 + a] * std::conj(v[2 + b]);
    Cx tr = r2.trace();
    for (auto& x : r2.matrix) x /= tr;
    DensityMatrix out = depolarize_step(r2, 0.9);
    CHECK(std::abs(out.trace() - Cx{1, 0}) < 1e-12);
  }
}

TEST_CASE("fidelity law endpoints and the representative value") {
  CHECK(fidelity_single(0.0) == 0.0);
  CHECK(std::abs(fidelity_single(M_PI_2) - 1.0) < 1e-15);
  // f(1.56) evaluated independently in extended precision.
  CHECK(std::abs(fidelity_single(1.56) - 0.99953393845805524) < 1e-15);
  CHECK(fidelity_single(1.56) > 0.9995);

  FidelityRecord rec = bell_fidelity(1.56, 10);
  CHECK(std::abs(rec.bell_weight - std::pow(rec.f_single, 10)) <
        1e-14 * rec.bell_weight);
  CHECK(std::abs(rec.phi_plus_overlap - (rec.bell_weight + (1 - rec.bell_weight) / 4)) <
        1e-15);
}

TEST_CASE("cap density matrix: exact Bell pair at theta = pi/2") {
  DensityMatrix rho = cap_density_matrix({M_PI_2, 1.0, 6});
  CHECK(std::abs(rho.at(0, 0) - Cx{0.5, 0}) < 1e-14);
  CHECK(std::abs(rho.at(0, 3) - Cx{0.5, 0}) < 1e-14);
  CHECK(std::abs(rho.at(1, 1)) < 1e-14);
}

TEST_CASE("cap density matrix at theta = pi/4, ell = 1: f = 1/5 by substitution") {
  DensityMatrix rho = cap_density_matrix({M_PI_4, 1.0, 1});
  // 0.2 |Phi+><Phi+| + 0.8 I/4
  CHECK(std::abs(rho.at(0, 0) - Cx{0.3, 0}) < 1e-14);
  CHECK(std::abs(rho.at(0, 3) - Cx{0.1, 0}) < 1e-14);
  CHECK(std::abs(rho.at(1, 1) - Cx{0.2, 0}) < 1e-14);
}

TEST_CASE("cap density matrix matches the partial trace of the assembly") {
  for (double theta : {0.3, 1.0, 1.56}) {
    for (int ell : {1, 2}) {
      ModelParams p{theta, 1.0, ell};
      StateVector gs = assemble_ground_state(p);
      DensityMatrix traced = partial_trace(gs, {0, 2 * ell + 1});
      DensityMatrix closed = cap_density_matrix(p);
      CHECK(max_abs_diff(traced.matrix, closed.matrix) < 1e-12);
    }
  }
}

TEST_CASE("swap equivalence: iterated channel reproduces the Bell weight") {
  // One member of |Phi+><Phi+| run through the cell channel ell times carries
  // Bell weight f^ell; iterate the 2-qubit action and read the weight off.
  for (double theta : {0.8, 1.56}) {
    const double f = fidelity_single(theta);
    // rho acts on (left cap (x) transported qubit); start at |Phi+><Phi+|.
    CxVec rho(16, Cx{0, 0});
    auto at = [&rho](int r, int c) -> Cx& { return rho[r * 4 + c]; };
    at(0, 0) = at(0, 3) = at(3, 0) = at(3, 3) = 0.5;
    for (int step = 1; step <= 50; ++step) {
      // Apply the channel to the second qubit: rho' = f rho + (1-f) tr_2(rho) (x) I/2.
      CxVec next(16, Cx{0, 0});
      for (int a = 0; a < 2; ++a)
        for (int ap = 0; ap < 2; ++ap) {
          Cx tr{0, 0};
          for (int b = 0; b < 2; ++b) tr += rho[(a * 2 + b) * 4 + (ap * 2 + b)];
          for (int b = 0; b < 2; ++b)
            for (int bp = 0; bp < 2; ++bp) {
              Cx v = f * rho[(a * 2 + b) * 4 + (ap * 2 + bp)];
              if (b == bp) v += (1.0 - f) * tr * 0.5;
              next[(a * 2 + b) * 4 + (ap * 2 + bp)] = v;
            }
        }
      rho = next;
      // Bell weight: 2 * <Phi+|rho|Phi+> - 1/2 ... solved from w + (1-w)/4.
      Cx overlap{0, 0};
      for (int r : {0, 3})
        for (int c : {0, 3}) overlap += 0.5 * rho[r * 4 + c];
      const double w = (overlap.real() - 0.25) / 0.75;
      const double expect = std::pow(f, step);
      CHECK(std::abs(w - expect) < 1e-14 * std::max(1.0, expect));
    }
  }
}

TEST_CASE("ground-state overlap with the flip states vanishes") {
  // The flip maps are traceless on the bond, so every single-flip assembly is
  // orthogonal to the ground state.
  ModelParams p{1.2, 1.0, 3};
  StateVector gs = assemble_ground_state(p);
  for (int label = 1; label <= 3; ++label) {
    StateVector sw = spin_wave_state(p, flip_isometry(label, p.theta));
    CHECK(std::abs(cdot(gs.amplitudes, sw.amplitudes)) < 1e-12);
  }
}
