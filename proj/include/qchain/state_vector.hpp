#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "qchain/chain_shape.hpp"
#include "qchain/types.hpp"

namespace qchain {

struct StateVector {
  ChainShape shape;
  CxVec amplitudes;

  StateVector() = default;
  explicit StateVector(ChainShape s)
      : shape(std::move(s)), amplitudes(shape.total_dim(), Cx{0.0, 0.0}) {}
  StateVector(ChainShape s, CxVec a) : shape(std::move(s)), amplitudes(std::move(a)) {
    if (static_cast<std::int64_t>(amplitudes.size()) != shape.total_dim())
      throw std::invalid_argument("StateVector: amplitude count mismatch");
  }

  double norm() const { return std::sqrt(norm2(amplitudes)); }

  void normalize() {
    double n = norm();
    if (n == 0.0) throw std::runtime_error("StateVector: zero norm");
    for (Cx& v : amplitudes) v /= n;
  }
};

// Reduced state on a site subset; Hermitian, unit trace.
struct DensityMatrix {
  ChainShape shape;      // shape of the kept sites only
  CxVec matrix;          // row-major dim x dim

  DensityMatrix() = default;
  explicit DensityMatrix(ChainShape s)
      : shape(std::move(s)),
        matrix(static_cast<std::size_t>(shape.total_dim()) * shape.total_dim(), Cx{0, 0}) {}

  std::int64_t dim() const { return shape.total_dim(); }
  Cx& at(std::int64_t r, std::int64_t c) { return matrix[r * dim() + c]; }
  const Cx& at(std::int64_t r, std::int64_t c) const { return matrix[r * dim() + c]; }

  Cx trace() const {
    KahanSum s;
    for (std::int64_t i = 0; i < dim(); ++i) s.add(at(i, i));
    return s.sum;
  }
};

} // namespace qchain
