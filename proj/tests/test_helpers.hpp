#pragma once

#include <random>

#include "qchain/chain_operator.hpp"
#include "qchain/state_vector.hpp"
#include "qchain/types.hpp"

namespace qchain::testing {

inline CxVec random_cxvec(std::int64_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  CxVec v(n);
  for (auto& x : v) x = Cx{dist(rng), dist(rng)};
  return v;
}

inline StateVector random_state(const ChainShape& shape, std::uint64_t seed) {
  StateVector s{shape, random_cxvec(shape.total_dim(), seed)};
  s.normalize();
  return s;
}

inline CxVec dense_matvec(const CxVec& dense, const CxVec& x) {
  const std::int64_t n = static_cast<std::int64_t>(x.size());
  CxVec y(n, Cx{0, 0});
  for (std::int64_t r = 0; r < n; ++r) {
    KahanSum acc;
    for (std::int64_t c = 0; c < n; ++c) acc.add(dense[r * n + c] * x[c]);
    y[r] = acc.sum;
  }
  return y;
}

inline double max_abs_diff(const CxVec& a, const CxVec& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

} // namespace qchain::testing
