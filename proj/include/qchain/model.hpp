#pragma once

#include "qchain/chain_operator.hpp"
#include "qchain/types.hpp"

namespace qchain {

struct ModelParams {
  double theta = 0.0;   // radians, [0, pi/2]
  double epsilon = 1.0; // energy scale, > 0
  int ell = 1;          // chain length (number of qutrit pairs), >= 1

  void validate() const;
};

// Pair-creation penalty on two sites of dims in {2,3}: the three Bell
// projectors weighted eps/2; equals eps*(I - |Phi+><Phi+|) on the two-level
// subspace and has no matrix elements on IDLE rows/columns.
LocalTerm build_create_pair(double eps, int d_left, int d_right, int first_site = 0);

// Projection term on a qutrit pair: rank-1 projector onto
// sin(theta)|Phi+> - cos(theta)|IDLE,IDLE> plus the four single-IDLE
// penalties, all weighted eps.
LocalTerm build_projection(double theta, double eps, int first_site = 0);

// Three-site unit: projection on (0,1) plus pair creation on (1,2).
ChainOperator build_unit(double theta, double eps, int d_next);

// Full chain: pair creation on the left cap plus ell repeated units; the
// last unit's trailing site is the right cap qubit.
ChainOperator build_chain(const ModelParams& p);

} // namespace qchain
