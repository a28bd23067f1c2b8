#pragma once

#include <vector>

#include "qchain/chain_operator.hpp"
#include "qchain/chain_shape.hpp"
#include "qchain/state_vector.hpp"

namespace qchain {

// (I (x) block (x) I) |state>, without materializing the full matrix.
StateVector embed_apply(const LocalTerm& term, const StateVector& state,
                        bool parallel = true);

// Reduced density matrix on keep_sites (any subset, ascending order inside).
DensityMatrix partial_trace(const StateVector& state, const std::vector<int>& keep_sites);

// Dense Kronecker embedding of a local term into the full space (test oracle
// for embed_apply; use only when total_dim is small).
CxVec dense_embed(const ChainShape& shape, const LocalTerm& term);

// Kronecker product of two row-major square matrices.
CxVec kron(const CxVec& a, std::int64_t da, const CxVec& b, std::int64_t db);

} // namespace qchain
