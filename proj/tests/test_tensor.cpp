#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qchain/model.hpp"
#include "qchain/tensor_ops.hpp"
#include "test_helpers.hpp"

using namespace qchain;
using namespace qchain::testing;

TEST_CASE("identity block leaves any state unchanged") {
  ChainShape shape({2, 3, 3, 2});
  StateVector s = random_state(shape, 1);
  CxVec eye(81, Cx{0, 0});
  for (int i = 0; i < 9; ++i) eye[i * 9 + i] = 1.0;
  LocalTerm t(1, 2, 9, eye);
  StateVector out = embed_apply(t, s);
  CHECK(max_abs_diff(out.amplitudes, s.amplitudes) < 1e-15);
}

TEST_CASE("bit flip on site 1 of [2,2] maps |00> to |10>") {
  ChainShape shape({2, 2});
  StateVector s{shape};
  s.amplitudes[0] = 1.0; // |00>
  CxVec flip = {0, 1, 1, 0};
  LocalTerm t(0, 0, 2, flip);
  StateVector out = embed_apply(t, s);
  CHECK(std::abs(out.amplitudes[2] - Cx{1, 0}) < 1e-15); // |10>
  CHECK(std::abs(out.amplitudes[0]) < 1e-15);
}

TEST_CASE("pair-creation block annihilates the Bell state") {
  ChainShape shape({2, 2});
  StateVector bell{shape};
  bell.amplitudes[0] = 1.0 / std::sqrt(2.0);
  bell.amplitudes[3] = 1.0 / std::sqrt(2.0);
  StateVector out = embed_apply(build_create_pair(1.0, 2, 2), bell);
  CHECK(out.norm() < 1e-15);
}

TEST_CASE("embed_apply equals the dense Kronecker embedding on small shapes") {
  const std::vector<std::vector<int>> shapes = {
      {2, 3, 3, 2}, {3, 3, 3, 2}, {2, 3, 3, 3, 2}, {4, 5, 7}, {2, 2, 2, 2, 2, 2}};
  int seed = 100;
  for (const auto& dims : shapes) {
    ChainShape shape(dims);
    REQUIRE(shape.total_dim() <= 1000);
    for (int first = 0; first + 1 < shape.num_sites(); ++first) {
      const int last = first + 1;
      const std::int64_t d = shape.span_dim(first, last);
      CxVec block = random_cxvec(d * d, seed);
      // Hermitize
      for (std::int64_t r = 0; r < d; ++r)
        for (std::int64_t c = 0; c <= r; ++c) {
          Cx avg = 0.5 * (block[r * d + c] + std::conj(block[c * d + r]));
          block[r * d + c] = avg;
          block[c * d + r] = std::conj(avg);
        }
      LocalTerm t(first, last, d, block);
      StateVector s = random_state(shape, seed + 7);
      StateVector fast = embed_apply(t, s);
      CxVec dense = dense_embed(shape, t);
      CxVec slow = dense_matvec(dense, s.amplitudes);
      double scale = 0.0;
      for (const Cx& v : slow) scale = std::max(scale, std::abs(v));
      CHECK(max_abs_diff(fast.amplitudes, slow) < 1e-13 * std::max(1.0, scale));
      ++seed;
    }
  }
}

TEST_CASE("partial trace of the Bell state is maximally mixed") {
  ChainShape shape({2, 2});
  StateVector bell{shape};
  bell.amplitudes[0] = 1.0 / std::sqrt(2.0);
  bell.amplitudes[3] = 1.0 / std::sqrt(2.0);
  DensityMatrix rho = partial_trace(bell, {0});
  CHECK(std::abs(rho.at(0, 0) - Cx{0.5, 0}) < 1e-15);
  CHECK(std::abs(rho.at(1, 1) - Cx{0.5, 0}) < 1e-15);
  CHECK(std::abs(rho.at(0, 1)) < 1e-15);
}

TEST_CASE("partial trace of a product state is a projector") {
  ChainShape shape({2, 2});
  StateVector s{shape};
  s.amplitudes[1] = 1.0; // |0> (x) |1>
  DensityMatrix rho = partial_trace(s, {0});
  CHECK(std::abs(rho.at(0, 0) - Cx{1, 0}) < 1e-15);
  CHECK(std::abs(rho.at(1, 1)) < 1e-15);
}

TEST_CASE("partial trace preserves trace and Hermiticity on random states") {
  // Property test over >= 100 random draws across a few shapes.
  int draws = 0;
  for (std::uint64_t seed = 0; seed < 34; ++seed) {
    for (const auto& pick :
         {std::pair<std::vector<int>, std::vector<int>>{{2, 3, 3, 2}, {0, 3}},
          {{3, 3, 3}, {1}},
          {{2, 3, 2, 3}, {1, 2}}}) {
      StateVector s = random_state(ChainShape(pick.first), 555 + seed * 13);
      DensityMatrix rho = partial_trace(s, pick.second);
      CHECK(std::abs(rho.trace() - Cx{1, 0}) < 1e-12);
      double herm = 0.0;
      for (std::int64_t r = 0; r < rho.dim(); ++r)
        for (std::int64_t c = 0; c < rho.dim(); ++c)
          herm = std::max(herm, std::abs(rho.at(r, c) - std::conj(rho.at(c, r))));
      CHECK(herm < 1e-12);
      ++draws;
    }
  }
  CHECK(draws >= 100);
}

TEST_CASE("adjoint consistency <x, A y> = <A x, y> for Hermitian chain operators") {
  ModelParams p{1.0, 1.0, 2};
  ChainOperator H = build_chain(p);
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    CxVec x = random_cxvec(H.dim(), 900 + seed);
    CxVec y = random_cxvec(H.dim(), 950 + seed);
    CxVec Ay = H.apply(y);
    CxVec Ax = H.apply(x);
    const Cx lhs = cdot(x, Ay), rhs = cdot(Ax, y);
    CHECK(std::abs(lhs - rhs) < 1e-12 * std::abs(lhs + Cx{1.0, 0}));
  }
}

TEST_CASE("parallel apply equals the serial reference bit for bit") {
  ModelParams p{1.3, 1.0, 3};
  ChainOperator H = build_chain(p);
  CxVec x = random_cxvec(H.dim(), 31);
  CxVec ys(H.dim()), yp(H.dim());
  H.apply(x, ys, false);
  H.apply(x, yp, true);
  CHECK(max_abs_diff(ys, yp) == 0.0);
}
