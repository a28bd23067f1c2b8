#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qchain/chain_operator.hpp"
#include "qchain/types.hpp"

namespace qchain {

// Hermitian operator given by its action. norm_scale feeds degeneracy
// thresholds and convergence heuristics; it need not be tight.
struct LinearOperator {
  std::int64_t dim = 0;
  std::function<void(const CxVec&, CxVec&)> apply_fn;
  double norm_scale = 1.0;

  void apply(const CxVec& x, CxVec& y) const { apply_fn(x, y); }
  CxVec apply(const CxVec& x) const {
    CxVec y(dim);
    apply_fn(x, y);
    return y;
  }
  static LinearOperator from_chain(const ChainOperator& H, bool parallel = true);
  static LinearOperator from_dense(const CxVec& dense, std::int64_t n);
};

struct SolveOptions {
  int k = 1;
  double tol = 1e-10;              // absolute residual bound, units of epsilon
  int k_strict = 0;                // pairs held to tol (0 = all k); rest to 100*tol
  std::int64_t max_applies = 200000;
  int block = 0;                   // 0 = auto (k + 3, capped)
  int expand_block = 0;            // Krylov chain width while filling (0 = auto)
  int subspace_max = 0;            // 0 = auto
  int ritz_keep = 0;               // Ritz window kept across restarts (0 = auto)
  std::vector<CxVec> seeds;        // initial subspace hints (need not be orthonormal)
  std::vector<CxVec> forbidden;    // solve in the orthogonal complement of these
  std::int64_t dense_threshold = 3000;
  std::uint64_t rng_seed = 0x5eed5eedULL;
  bool parallel = true;
  bool verbose = false; // progress lines on stderr
};

struct SpectrumResult {
  std::vector<double> eigenvalues;      // ascending
  std::vector<CxVec> eigenvectors;      // orthonormal, matching order
  std::vector<double> residual_norms;
  bool converged = false;
  std::int64_t applies = 0;
  std::string note;
};

SpectrumResult lowest_k(const LinearOperator& op, const SolveOptions& opt);
SpectrumResult lowest_k(const ChainOperator& H, const SolveOptions& opt);

// Eigenpairs restricted to the orthogonal complement of span(forbidden).
SpectrumResult lowest_k_constrained(const LinearOperator& op, const SolveOptions& opt,
                                    const std::vector<CxVec>& forbidden);

// Dense Hermitian eigensolve (row-major n x n), all pairs ascending.
void dense_eig(const CxVec& dense, std::int64_t n, std::vector<double>& evals,
               std::vector<CxVec>& evecs);

// Orthonormalize columns in place (modified Gram-Schmidt, two passes);
// drops columns whose remainder falls below drop_tol. Returns kept count.
int orthonormalize(std::vector<CxVec>& cols, double drop_tol = 1e-12);

// First-excited-level degeneracy under the clustering rule: eigenvalues
// within max(1e-12*eps, 1e-3 * gap-to-next-level) form one cluster.
int cluster_size(const std::vector<double>& eigs, int start, double eps_scale);

} // namespace qchain
