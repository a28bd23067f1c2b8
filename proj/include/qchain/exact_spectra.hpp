#pragma once

#include <string>
#include <vector>

#include "qchain/eigensolve.hpp"
#include "qchain/ground_state.hpp"
#include "qchain/model.hpp"

namespace qchain {

struct GapRecord {
  int ell = 0;
  double theta = 0.0;
  double ground_energy = 0.0; // units of epsilon
  double gap = 0.0;
  int degeneracy = 0;         // of the first excited level
  double resid_ground = 0.0;
  double resid_excited = 0.0;
};

struct PowerLawFit {
  double c = 0.0;       // gap ~ c / ell^p
  double p = 0.0;
  double rms_log_residual = 0.0;
};

struct GapTable {
  std::vector<GapRecord> records;
  PowerLawFit fit;
};

// Bond-flip maps built from the unit kernel vectors:
//   g1 = |psi0(1)><0| + |psi0(0)><1|
//   g2 = |psi0(1)><0| - |psi0(0)><1|
//   g3 = |psi0(0)><0| - |psi0(1)><1|
Isometry flip_isometry(int label, double theta);

// Lowest-k levels of the full chain. Seeds the Krylov space with the
// analytic ground state and the three spin-wave states.
SpectrumResult ed_spectrum(const ModelParams& p, int k, double tol = 1e-9,
                           bool parallel = true);

// Equal-position sum of single-flip assemblies, normalized.
StateVector spin_wave_state(const ModelParams& p, const Isometry& flip);

// Gap-versus-length table plus the least-squares power-law fit.
GapTable gap_table(double theta, const std::vector<int>& ells, double tol = 1e-9,
                   bool parallel = true);

// Principal overlaps (singular values of the cross-Gram matrix) between the
// ED first-excited triplet and the spin-wave states {Psi_1, Psi_2, Psi_3}.
std::vector<double> triplet_overlap(const ModelParams& p, double tol = 1e-9,
                                    bool parallel = true);

// Principal overlaps between two sets of vectors (each set is orthonormalized
// before the cross-Gram SVD).
std::vector<double> principal_overlaps(std::vector<CxVec> a, std::vector<CxVec> b);

} // namespace qchain
