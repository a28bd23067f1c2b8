#include "qchain/chain_operator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qchain {

double LocalTerm::hermiticity_defect() const {
  double worst = 0.0;
  for (std::int64_t r = 0; r < block_dim; ++r)
    for (std::int64_t c = r; c < block_dim; ++c)
      worst = std::max(worst, std::abs(at(r, c) - std::conj(at(c, r))));
  return worst;
}

void ChainOperator::add_term(LocalTerm t) {
  if (t.first_site < 0 || t.last_site >= shape.num_sites())
    throw std::invalid_argument("ChainOperator: term outside shape");
  if (t.block_dim != shape.span_dim(t.first_site, t.last_site))
    throw std::invalid_argument("ChainOperator: block dim does not match spanned sites");
  terms.push_back(std::move(t));
}

void embed_apply_add(const ChainShape& shape, const LocalTerm& term, const CxVec& x,
                     CxVec& y, bool parallel) {
  const std::int64_t outer = shape.outer_dim(term.first_site);
  const std::int64_t mid = term.block_dim;
  const std::int64_t inner = shape.inner_dim(term.last_site);
  const Cx* B = term.block.data();
  const Cx* X = x.data();
  Cx* Y = y.data();

  // y[(o, r, i)] += sum_c B[r,c] x[(o, c, i)]; distinct (o, r) pairs write
  // disjoint output rows, so the collapsed loop is race-free.
#ifdef _OPENMP
#pragma omp parallel for collapse(2) schedule(static) if (parallel && outer * mid > 1)
#endif
  for (std::int64_t o = 0; o < outer; ++o) {
    for (std::int64_t r = 0; r < mid; ++r) {
      const std::int64_t base = o * mid * inner;
      const Cx* Brow = B + r * mid;
      Cx* Yro = Y + base + r * inner;
      for (std::int64_t c = 0; c < mid; ++c) {
        const Cx b = Brow[c];
        if (b == Cx{0.0, 0.0}) continue;
        const Cx* Xco = X + base + c * inner;
        for (std::int64_t i = 0; i < inner; ++i) Yro[i] += b * Xco[i];
      }
    }
  }
  (void)parallel;
}

void ChainOperator::apply(const CxVec& x, CxVec& y, bool parallel) const {
  if (static_cast<std::int64_t>(x.size()) != dim())
    throw std::invalid_argument("ChainOperator::apply: dimension mismatch");
  y.assign(x.size(), Cx{0.0, 0.0});
  // Fixed term order keeps the summation deterministic; each embed_apply_add
  // parallelizes internally over the outer index.
  for (const LocalTerm& t : terms) embed_apply_add(shape, t, x, y, parallel);
}

CxVec ChainOperator::to_dense(std::int64_t max_dim) const {
  const std::int64_t n = dim();
  if (n > max_dim) throw std::runtime_error("ChainOperator::to_dense: too large");
  CxVec dense(static_cast<std::size_t>(n) * n, Cx{0.0, 0.0});
  CxVec e(n), col(n);
  for (std::int64_t c = 0; c < n; ++c) {
    std::fill(e.begin(), e.end(), Cx{0.0, 0.0});
    e[c] = Cx{1.0, 0.0};
    apply(e, col, false);
    for (std::int64_t r = 0; r < n; ++r) dense[r * n + c] = col[r];
  }
  return dense;
}

double ChainOperator::operator_norm_bound() const {
  // Frobenius norm of each block bounds its spectral norm.
  double total = 0.0;
  for (const LocalTerm& t : terms) {
    double f = 0.0;
    for (const Cx& v : t.block) f += std::norm(v);
    total += std::sqrt(f);
  }
  return total;
}

} // namespace qchain
