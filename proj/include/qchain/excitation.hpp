#pragma once

#include <vector>

#include "qchain/eigensolve.hpp"
#include "qchain/ground_state.hpp"
#include "qchain/model.hpp"

namespace qchain {

// Variational problem data for one (m, theta). Pair-space vectors are laid
// out [psi_f(0) | psi_f(1)], each half of dimension cell_dim = 2 * 9^m.
// Stored-norm convention: |psi_f(0)|^2 + |psi_f(1)|^2 = 2.
struct ExcitationProblem {
  int m = 1;
  double theta = 0.0;
  double f = 0.0;    // f(theta)
  double lam = 0.0;  // 1 - f
  ChainShape cell_shape;
  std::int64_t cell_dim = 0;
  Isometry g0;                      // m-cell bond-to-cell map
  std::vector<CxVec> constraints;   // 4 orthonormal pair vectors (block b, g_b')
  ChainOperator inside;             // cell-local terms incl. the channel-weighted boundary
  CxVec hcp9;                       // 9x9 pair-creation block (3x3 sites), eps = 1

  std::int64_t pair_dim() const { return 2 * cell_dim; }
};

ExcitationProblem make_excitation_problem(int m, double theta);

// Bulk effective operator, unprojected:
//   y = D x + 2 cos(phi) (T + T^dag) x
// D holds the position-diagonal part (cell-internal terms, channel-contracted
// boundary pair creation with right bond environment I, and the left-straddle
// coupling with bond environment I/2); T is the nearest-neighbor hopping.
void effective_apply_raw(const ExcitationProblem& prob, const CxVec& x, double phi,
                         CxVec& y);

// Spec surface: rejects inputs violating the orthogonality constraint above
// 1e-10, applies the bulk operator, projects back onto the constrained space.
CxVec effective_apply(const ExcitationProblem& prob, const CxVec& x, double phi);

void project_constraints(const ExcitationProblem& prob, CxVec& x);
double constraint_violation(const ExcitationProblem& prob, const CxVec& x);

// Literal transcription of the printed single-cell blocks (eps = 1):
// [[H00, H01], [H10, H11]] with H10 = H01^dag and H11, H10 equal to the
// 0 <-> 1 relabeling of H00, H01. kappa > 0 adds the Lagrange-multiplier
// penalty on the unit-kernel columns to the diagonal blocks. Row-major 36x36.
CxVec paper_blocks_m1(double theta, double phi, double kappa = 0.0);

struct VariationalResult {
  int m = 1;
  double theta = 0.0;
  double phi = 0.0;
  double gap = 0.0;              // lowest constrained eigenvalue, units of eps
  int degeneracy = 0;
  std::vector<double> eigenvalues;
  std::vector<CxVec> pair_vectors;
  std::vector<double> residuals;
  bool converged = false;
  std::int64_t applies = 0;
};

VariationalResult variational_gap(int m, double theta, double phi, double tol = 1e-14,
                                  bool parallel = true);

std::vector<VariationalResult> unit_cell_scan(double theta, const std::vector<int>& ms,
                                              double tol = 1e-14, bool parallel = true);

struct SweepPoint {
  int m = 1;
  double theta = 0.0;
  double phi = 0.0;
  double f = 0.0;
  double gap = 0.0;
  int degeneracy = 0;
  double fit_ratio = 0.0; // gap / [(1/8)(1-f)^3]
};

std::vector<SweepPoint> theta_sweep(const std::vector<int>& ms,
                                    const std::vector<double>& thetas, double tol = 1e-14,
                                    bool parallel = true);

// Embed a small-cell pair vector into the m-cell problem with the excitation
// at slot q (0-based, m % small.m == 0), the remaining slots carrying the
// unit kernel map. Preserves the orthogonality constraints.
CxVec embed_pair(const ExcitationProblem& small, const CxVec& x_small,
                 const ExcitationProblem& big, int q);

// The three bit/phase-flip pair vectors the single-cell triplet approaches
// as theta -> pi/2; each column has unit norm.
std::vector<CxVec> appendix_triplet();

// Principal overlaps between the variational single-cell triplet at theta
// and the appendix triplet.
std::vector<double> appendix_overlap(double theta);

} // namespace qchain
