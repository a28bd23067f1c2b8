#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "qchain/eigensolve.hpp"
#include "qchain/ground_state.hpp"
#include "qchain/model.hpp"
#include "qchain/tensor_ops.hpp"
#include "test_helpers.hpp"

using namespace qchain;
using namespace qchain::testing;

namespace {

std::vector<double> dense_spectrum(const ChainOperator& H) {
  std::vector<double> evals;
  std::vector<CxVec> evecs;
  dense_eig(H.to_dense(), H.dim(), evals, evecs);
  return evals;
}

} // namespace

TEST_CASE("pair creation on two qubits: spectrum {0, eps x3}, kernel = Bell") {
  ChainOperator H{ChainShape({2, 2})};
  H.add_term(build_create_pair(1.0, 2, 2));
  std::vector<double> ev = dense_spectrum(H);
  CHECK(std::abs(ev[0]) < 1e-14);
  for (int i = 1; i < 4; ++i) CHECK(std::abs(ev[i] - 1.0) < 1e-14);

  StateVector bell{ChainShape({2, 2})};
  bell.amplitudes[0] = bell.amplitudes[3] = 1.0 / std::sqrt(2.0);
  CHECK(embed_apply(build_create_pair(1.0, 2, 2), bell).norm() < 1e-15);
}

TEST_CASE("pair creation on two qutrits has a 6-dim kernel (IDLE sector untouched)") {
  ChainOperator H{ChainShape({3, 3})};
  H.add_term(build_create_pair(1.0, 3, 3));
  std::vector<double> ev = dense_spectrum(H);
  const int zeros = static_cast<int>(std::count_if(
      ev.begin(), ev.end(), [](double v) { return std::abs(v) < 1e-13; }));
  CHECK(zeros == 6); // Bell kernel plus the 5 IDLE-bearing basis states
}

TEST_CASE("pair creation: triplet Bell state is an eps-eigenvector") {
  StateVector psi{ChainShape({2, 2})};
  psi.amplitudes[1] = psi.amplitudes[2] = 1.0 / std::sqrt(2.0); // (|01>+|10>)/sqrt2
  StateVector out = embed_apply(build_create_pair(1.0, 2, 2), psi);
  for (int i = 0; i < 4; ++i)
    CHECK(std::abs(out.amplitudes[i] - psi.amplitudes[i]) < 1e-15);
}

TEST_CASE("projection term spectrum: eigenvalue 0 x4 and eps x5 at any theta") {
  for (double theta : {0.0, 0.3, 1.0, 1.56, M_PI_2}) {
    ChainOperator H{ChainShape({3, 3})};
    H.add_term(build_projection(theta, 1.0));
    std::vector<double> ev = dense_spectrum(H);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(ev[i]) < 1e-13);
    for (int i = 4; i < 9; ++i) CHECK(std::abs(ev[i] - 1.0) < 1e-13);
  }
}

TEST_CASE("projection kernel contains the Bell vector at theta=0 and IDLE pair at pi/2") {
  StateVector bell{ChainShape({3, 3})};
  bell.amplitudes[0 * 3 + 0] = 1.0 / std::sqrt(2.0);
  bell.amplitudes[1 * 3 + 1] = 1.0 / std::sqrt(2.0);
  CHECK(embed_apply(build_projection(0.0, 1.0), bell).norm() < 1e-15);

  StateVector idle{ChainShape({3, 3})};
  idle.amplitudes[kIdle * 3 + kIdle] = 1.0;
  CHECK(embed_apply(build_projection(M_PI_2, 1.0), idle).norm() < 1e-15);
}

TEST_CASE("unit kernel is exactly two-dimensional, spanned by psi0") {
  for (double theta : {0.3, 1.0, 1.56}) {
    ChainOperator H = build_unit(theta, 1.0, 2);
    std::vector<double> ev = dense_spectrum(H);
    CHECK(std::abs(ev[0]) < 1e-14);
    CHECK(std::abs(ev[1]) < 1e-14);
    CHECK(ev[2] > 1e-6);
    for (int b = 0; b < 2; ++b) {
      StateVector v = psi0(b, theta);
      CHECK(H.apply(v.amplitudes, false)[0] == H.apply(v.amplitudes, false)[0]); // finite
      CxVec res = H.apply(v.amplitudes);
      CHECK(std::sqrt(norm2(res)) < 1e-13);
    }
  }
}

TEST_CASE("unit gap above the kernel equals eps at theta=0") {
  ChainOperator H = build_unit(0.0, 1.0, 2);
  std::vector<double> ev = dense_spectrum(H);
  CHECK(std::abs(ev[2] - 1.0) < 1e-13);
}

TEST_CASE("chain term count is 2 ell + 1 and the operator is PSD") {
  for (int ell : {1, 2, 3}) {
    ModelParams p{1.0, 1.0, ell};
    ChainOperator H = build_chain(p);
    CHECK(static_cast<int>(H.terms.size()) == 2 * ell + 1);
    for (const LocalTerm& t : H.terms) CHECK(t.hermiticity_defect() < 1e-14);
  }
  ModelParams p2{1.56, 1.0, 2};
  std::vector<double> ev = dense_spectrum(build_chain(p2));
  CHECK(ev[0] > -1e-12);
}

TEST_CASE("chain at ell=1 has dim 36 and ground energy 0") {
  ModelParams p{0.7, 1.0, 1};
  ChainOperator H = build_chain(p);
  CHECK(H.dim() == 36);
  std::vector<double> ev = dense_spectrum(H);
  CHECK(std::abs(ev[0]) < 1e-13);
}

TEST_CASE("theta=0 gap equals eps for ell <= 2 (dense oracle)") {
  for (int ell : {1, 2}) {
    ModelParams p{0.0, 1.0, ell};
    std::vector<double> ev = dense_spectrum(build_chain(p));
    CHECK(std::abs(ev[0]) < 1e-13);
    CHECK(std::abs(ev[1] - 1.0) < 1e-12);
  }
}

TEST_CASE("chain annihilates the assembled ground state") {
  for (double theta : {0.3, 1.0, 1.56}) {
    for (int ell : {1, 2, 3}) {
      ModelParams p{theta, 1.0, ell};
      ChainOperator H = build_chain(p);
      StateVector gs = assemble_ground_state(p);
      CxVec res = H.apply(gs.amplitudes);
      CHECK(std::sqrt(norm2(res)) < 1e-12);
    }
  }
}

TEST_CASE("theta=0 chain spectrum is the Minkowski sum of decoupled unit spectra") {
  // At theta = 0 the pair-creation terms decouple on disjoint site pairs and
  // the projection terms pin the IDLE sectors; the low spectrum is {0, eps}
  // sums over ell+1 independent Bell units.
  ModelParams p{0.0, 1.0, 2};
  std::vector<double> ev = dense_spectrum(build_chain(p));
  // Lowest levels: 0, then eps with multiplicity 3*(ell+1) = 9.
  CHECK(std::abs(ev[0]) < 1e-13);
  for (int i = 1; i <= 9; ++i) CHECK(std::abs(ev[i] - 1.0) < 1e-12);
  CHECK(ev[10] > 1.5);
}

TEST_CASE("invalid parameters are rejected") {
  CHECK_THROWS(build_create_pair(1.0, 4, 2));
  CHECK_THROWS(build_projection(2.0, 1.0));
  CHECK_THROWS(build_unit(0.5, 1.0, 5));
  CHECK_THROWS(build_chain({-0.1, 1.0, 2}));
  CHECK_THROWS(build_chain({0.5, 0.0, 2}));
  CHECK_THROWS(build_chain({0.5, 1.0, 0}));
}
