#pragma once

#include "qchain/model.hpp"
#include "qchain/state_vector.hpp"
#include "qchain/types.hpp"

namespace qchain {

// Linear map from the 2-dim bond space into an m-cell space (3,3)^m x 2,
// stored as the two column vectors (images of |0> and |1>).
struct Isometry {
  int m = 1;
  ChainShape cell_shape;   // [3,3]*m + [2]
  CxVec col0, col1;

  std::int64_t cell_dim() const { return cell_shape.total_dim(); }
  const CxVec& col(int b) const { return b == 0 ? col0 : col1; }
  // max |g^dag g - I| entry
  double isometry_defect() const;
};

struct FidelityRecord {
  double theta = 0.0;
  int ell = 1;
  double f_single = 0.0;       // f(theta)
  double bell_weight = 0.0;    // f(theta)^ell
  double phi_plus_overlap = 0.0; // f^ell + (1 - f^ell)/4
};

// Unit kernel vector of the three-site block, normalized:
//   [cos(t) |b> (x) |Phi+> + sin(t)/2 |IDLE,IDLE> (x) |b>] / sqrt(cos^2 t + sin^2 t / 4)
StateVector psi0(int b, double theta);

// m-fold composition of the bond-to-cell map; m = 1 gives the single-cell map.
Isometry g0_isometry(double theta, int m);

// Explicit ground state on the full chain; refuses ell > 7.
StateVector assemble_ground_state(const ModelParams& p);

// One cell's action on the bond qubit: rho -> f rho + (1-f) Tr(rho) I/2.
DensityMatrix depolarize_step(const DensityMatrix& rho, double theta);

// Closed form for the two cap qubits: f^ell |Phi+><Phi+| + (1 - f^ell) I/4.
DensityMatrix cap_density_matrix(const ModelParams& p);

double fidelity_single(double theta); // sin^2 / (4 cos^2 + sin^2)
FidelityRecord bell_fidelity(double theta, int ell);

// Bell-seeded assembly helper shared with the excitation machinery: expands
// the trailing bond qubit of `state` through the given column pair.
StateVector expand_bond(const StateVector& state, const CxVec& col0, const CxVec& col1,
                        const ChainShape& cell_shape);

} // namespace qchain
