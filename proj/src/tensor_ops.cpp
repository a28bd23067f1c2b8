#include "qchain/tensor_ops.hpp"

#include <algorithm>
#include <stdexcept>

namespace qchain {

Cx fast_dot(const Cx* a, const Cx* b, std::int64_t n) {
  constexpr std::int64_t kChunk = 4096;
  const std::int64_t nchunks = (n + kChunk - 1) / kChunk;
  double re = 0.0, im = 0.0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(+ : re, im) if (nchunks >= 16)
#endif
  for (std::int64_t c = 0; c < nchunks; ++c) {
    const std::int64_t lo = c * kChunk, hi = std::min(n, lo + kChunk);
    double cre = 0.0, cim = 0.0;
    for (std::int64_t i = lo; i < hi; ++i) {
      const double ar = a[i].real(), ai = a[i].imag();
      const double br = b[i].real(), bi = b[i].imag();
      cre += ar * br + ai * bi;
      cim += ar * bi - ai * br;
    }
    re += cre;
    im += cim;
  }
  return Cx{re, im};
}

void axpy_sub(CxVec& y, Cx c, const CxVec& x) {
  const std::int64_t n = static_cast<std::int64_t>(y.size());
  Cx* Y = y.data();
  const Cx* X = x.data();
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (n >= 65536)
#endif
  for (std::int64_t i = 0; i < n; ++i) Y[i] -= c * X[i];
}

StateVector embed_apply(const LocalTerm& term, const StateVector& state, bool parallel) {
  if (term.first_site < 0 || term.last_site >= state.shape.num_sites())
    throw std::invalid_argument("embed_apply: sites outside shape");
  if (term.block_dim != state.shape.span_dim(term.first_site, term.last_site))
    throw std::invalid_argument("embed_apply: block dim mismatch");
  StateVector out(state.shape);
  embed_apply_add(state.shape, term, state.amplitudes, out.amplitudes, parallel);
  return out;
}

DensityMatrix partial_trace(const StateVector& state, const std::vector<int>& keep_sites) {
  const int n = state.shape.num_sites();
  if (keep_sites.empty()) throw std::invalid_argument("partial_trace: empty keep set");
  std::vector<bool> keep(n, false);
  for (int s : keep_sites) {
    if (s < 0 || s >= n) throw std::invalid_argument("partial_trace: site out of range");
    if (keep[s]) throw std::invalid_argument("partial_trace: duplicate site");
    keep[s] = true;
  }

  std::vector<int> kept_dims;
  for (int s = 0; s < n; ++s)
    if (keep[s]) kept_dims.push_back(state.shape.dims[s]);
  DensityMatrix rho{ChainShape(kept_dims)};
  const std::int64_t kd = rho.dim();

  // Strides of each site in the full row-major layout.
  std::vector<std::int64_t> stride(n, 1);
  for (int s = n - 2; s >= 0; --s) stride[s] = stride[s + 1] * state.shape.dims[s + 1];

  std::vector<std::int64_t> keep_stride, keep_dim, tr_stride, tr_dim;
  for (int s = 0; s < n; ++s) {
    if (keep[s]) {
      keep_stride.push_back(stride[s]);
      keep_dim.push_back(state.shape.dims[s]);
    } else {
      tr_stride.push_back(stride[s]);
      tr_dim.push_back(state.shape.dims[s]);
    }
  }

  std::int64_t tr_total = 1;
  for (std::int64_t d : tr_dim) tr_total *= d;

  // Offsets of every kept multi-index in the full layout, row-major over kept sites.
  std::vector<std::int64_t> keep_offsets(kd, 0);
  for (std::int64_t k = 0; k < kd; ++k) {
    std::int64_t rem = k, off = 0;
    for (int i = static_cast<int>(keep_dim.size()) - 1; i >= 0; --i) {
      off += (rem % keep_dim[i]) * keep_stride[i];
      rem /= keep_dim[i];
    }
    keep_offsets[k] = off;
  }

  CxVec sub(kd);
  for (std::int64_t t = 0; t < tr_total; ++t) {
    std::int64_t rem = t, off = 0;
    for (int i = static_cast<int>(tr_dim.size()) - 1; i >= 0; --i) {
      off += (rem % tr_dim[i]) * tr_stride[i];
      rem /= tr_dim[i];
    }
    for (std::int64_t k = 0; k < kd; ++k) sub[k] = state.amplitudes[off + keep_offsets[k]];
    for (std::int64_t r = 0; r < kd; ++r) {
      const Cx vr = sub[r];
      for (std::int64_t c = 0; c < kd; ++c) rho.at(r, c) += vr * std::conj(sub[c]);
    }
  }
  return rho;
}

CxVec kron(const CxVec& a, std::int64_t da, const CxVec& b, std::int64_t db) {
  const std::int64_t d = da * db;
  CxVec out(static_cast<std::size_t>(d) * d, Cx{0.0, 0.0});
  for (std::int64_t ra = 0; ra < da; ++ra)
    for (std::int64_t ca = 0; ca < da; ++ca) {
      const Cx va = a[ra * da + ca];
      if (va == Cx{0.0, 0.0}) continue;
      for (std::int64_t rb = 0; rb < db; ++rb)
        for (std::int64_t cb = 0; cb < db; ++cb)
          out[(ra * db + rb) * d + (ca * db + cb)] = va * b[rb * db + cb];
    }
  return out;
}

CxVec dense_embed(const ChainShape& shape, const LocalTerm& term) {
  const std::int64_t outer = shape.outer_dim(term.first_site);
  const std::int64_t inner = shape.inner_dim(term.last_site);

  CxVec eye_outer(static_cast<std::size_t>(outer) * outer, Cx{0.0, 0.0});
  for (std::int64_t i = 0; i < outer; ++i) eye_outer[i * outer + i] = 1.0;
  CxVec eye_inner(static_cast<std::size_t>(inner) * inner, Cx{0.0, 0.0});
  for (std::int64_t i = 0; i < inner; ++i) eye_inner[i * inner + i] = 1.0;

  CxVec mid = kron(eye_outer, outer, term.block, term.block_dim);
  return kron(mid, outer * term.block_dim, eye_inner, inner);
}

} // namespace qchain
