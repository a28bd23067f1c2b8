#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qchain/chain_shape.hpp"
#include "qchain/state_vector.hpp"
#include "qchain/types.hpp"

namespace qchain {

// One Hermitian block acting on a contiguous run of sites.
struct LocalTerm {
  int first_site = 0;
  int last_site = 0;    // inclusive
  std::int64_t block_dim = 0;
  CxVec block;          // row-major block_dim x block_dim, Hermitian

  LocalTerm() = default;
  LocalTerm(int first, int last, std::int64_t d, CxVec b)
      : first_site(first), last_site(last), block_dim(d), block(std::move(b)) {
    if (first > last) throw std::invalid_argument("LocalTerm: bad site range");
    if (static_cast<std::int64_t>(block.size()) != d * d)
      throw std::invalid_argument("LocalTerm: block size mismatch");
  }

  Cx at(std::int64_t r, std::int64_t c) const { return block[r * block_dim + c]; }
  double hermiticity_defect() const;
};

// Sum of local terms over a ChainShape, applied matrix-free.
struct ChainOperator {
  ChainShape shape;
  std::vector<LocalTerm> terms;

  ChainOperator() = default;
  explicit ChainOperator(ChainShape s) : shape(std::move(s)) {}

  void add_term(LocalTerm t);

  std::int64_t dim() const { return shape.total_dim(); }

  // y = H x. The parallel path uses a fixed chunk decomposition reduced in
  // chunk order, so results are identical to the serial reference.
  void apply(const CxVec& x, CxVec& y, bool parallel = true) const;
  CxVec apply(const CxVec& x, bool parallel = true) const {
    CxVec y(x.size());
    apply(x, y, parallel);
    return y;
  }

  // Serial reference: fixed term order, sequential reduction.
  void apply_serial(const CxVec& x, CxVec& y) const { apply(x, y, false); }

  // Explicit dense matrix (row-major dim x dim); small shapes only.
  CxVec to_dense(std::int64_t max_dim = 20000) const;

  double operator_norm_bound() const; // sum of term spectral-norm bounds
};

// y += (I (x) block (x) I) x, block spanning [first,last] of shape.
void embed_apply_add(const ChainShape& shape, const LocalTerm& term, const CxVec& x,
                     CxVec& y, bool parallel);

} // namespace qchain
