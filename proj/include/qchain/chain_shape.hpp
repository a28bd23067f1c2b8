#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace qchain {

// Ordered list of site dimensions. Amplitude layout is row-major with
// site 0 slowest, so index = ((i0*d1 + i1)*d2 + i2)*...
struct ChainShape {
  std::vector<int> dims;

  ChainShape() = default;
  explicit ChainShape(std::vector<int> d) : dims(std::move(d)) {
    if (dims.empty()) throw std::invalid_argument("ChainShape: empty dims");
    for (int x : dims)
      if (x <= 0) throw std::invalid_argument("ChainShape: nonpositive dim");
  }

  // The paper's chain of length ell: [2] + [3]*(2*ell) + [2].
  static ChainShape chain(int ell) {
    if (ell < 1) throw std::invalid_argument("ChainShape: ell must be >= 1");
    std::vector<int> d(2 * ell + 2, 3);
    d.front() = 2;
    d.back() = 2;
    return ChainShape(std::move(d));
  }

  int num_sites() const { return static_cast<int>(dims.size()); }

  std::int64_t total_dim() const {
    std::int64_t p = 1;
    for (int x : dims) p *= x;
    return p;
  }

  // Product of dims on [first, last] inclusive.
  std::int64_t span_dim(int first, int last) const {
    std::int64_t p = 1;
    for (int s = first; s <= last; ++s) p *= dims[s];
    return p;
  }

  // dim of everything strictly left of site s (slow side).
  std::int64_t outer_dim(int s) const { return span_dim(0, s - 1); }
  // dim of everything strictly right of site s (fast side).
  std::int64_t inner_dim(int s) const { return span_dim(s + 1, num_sites() - 1); }

  bool operator==(const ChainShape& o) const { return dims == o.dims; }
};

} // namespace qchain
