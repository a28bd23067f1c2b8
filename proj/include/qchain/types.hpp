#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace qchain {

using Real = double;
using Cx = std::complex<double>;
using CxVec = std::vector<Cx>;

// Qutrit basis order is fixed as (|0>, |1>, |IDLE>); the two-level subspace
// sits at indices {0,1} so qubit blocks embed into 3-dim sites unchanged.
inline constexpr int kIdle = 2;

// Compensated (Kahan) accumulator; used where eigenvalues near 1e-11 of the
// operator norm must survive the reduction.
struct KahanSum {
  Cx sum{0.0, 0.0};
  Cx carry{0.0, 0.0};
  void add(Cx v) {
    Cx y = v - carry;
    Cx t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

inline Cx cdot(const CxVec& a, const CxVec& b) {
  // <a|b> with conjugation on a; compensated.
  KahanSum acc;
  for (std::size_t i = 0; i < a.size(); ++i) acc.add(std::conj(a[i]) * b[i]);
  return acc.sum;
}

// Plain dot for iteration hot paths; fixed 4096-element chunks summed in
// order, so the value does not depend on vectorization or thread count.
Cx fast_dot(const Cx* a, const Cx* b, std::int64_t n);
inline Cx fast_dot(const CxVec& a, const CxVec& b) {
  return fast_dot(a.data(), b.data(), static_cast<std::int64_t>(a.size()));
}

// y -= c * x over long vectors, threaded.
void axpy_sub(CxVec& y, Cx c, const CxVec& x);

inline double norm2(const CxVec& a) {
  KahanSum acc;
  for (const Cx& v : a) acc.add(Cx{std::norm(v), 0.0});
  return acc.sum.real();
}

} // namespace qchain
