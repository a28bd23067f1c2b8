#include "qchain/ground_state.hpp"

#include <cmath>
#include <stdexcept>

namespace qchain {

double Isometry::isometry_defect() const {
  const Cx g00 = cdot(col0, col0), g01 = cdot(col0, col1);
  const Cx g10 = cdot(col1, col0), g11 = cdot(col1, col1);
  double worst = 0.0;
  worst = std::max(worst, std::abs(g00 - Cx{1.0, 0.0}));
  worst = std::max(worst, std::abs(g11 - Cx{1.0, 0.0}));
  worst = std::max(worst, std::abs(g01));
  worst = std::max(worst, std::abs(g10));
  return worst;
}

StateVector psi0(int b, double theta) {
  if (b != 0 && b != 1) throw std::invalid_argument("psi0: b must be 0 or 1");
  if (!(theta >= 0.0 && theta <= M_PI_2 + 1e-15))
    throw std::invalid_argument("psi0: theta outside [0, pi/2]");
  const double c = std::cos(theta), s = std::sin(theta);
  const double nrm = std::sqrt(c * c + s * s / 4.0);
  StateVector v{ChainShape({3, 3, 2})};
  auto idx = [](int q1, int q2, int cap) { return (q1 * 3 + q2) * 2 + cap; };
  v.amplitudes[idx(b, 0, 0)] = c / std::sqrt(2.0) / nrm;
  v.amplitudes[idx(b, 1, 1)] = c / std::sqrt(2.0) / nrm;
  v.amplitudes[idx(kIdle, kIdle, b)] = s / 2.0 / nrm;
  return v;
}

StateVector expand_bond(const StateVector& state, const CxVec& col0, const CxVec& col1,
                        const ChainShape& cell_shape) {
  const int n = state.shape.num_sites();
  if (state.shape.dims[n - 1] != 2)
    throw std::invalid_argument("expand_bond: trailing site must be the 2-dim bond");
  const std::int64_t prev = state.shape.total_dim() / 2;
  const std::int64_t cd = cell_shape.total_dim();

  std::vector<int> dims(state.shape.dims.begin(), state.shape.dims.end() - 1);
  dims.insert(dims.end(), cell_shape.dims.begin(), cell_shape.dims.end());
  StateVector out{ChainShape(dims)};

  const Cx* in = state.amplitudes.data();
  Cx* o = out.amplitudes.data();
  for (std::int64_t p = 0; p < prev; ++p) {
    const Cx a0 = in[2 * p], a1 = in[2 * p + 1];
    Cx* dst = o + p * cd;
    if (a0 != Cx{0.0, 0.0})
      for (std::int64_t i = 0; i < cd; ++i) dst[i] += a0 * col0[i];
    if (a1 != Cx{0.0, 0.0})
      for (std::int64_t i = 0; i < cd; ++i) dst[i] += a1 * col1[i];
  }
  return out;
}

Isometry g0_isometry(double theta, int m) {
  if (m < 1) throw std::invalid_argument("g0_isometry: m must be >= 1");
  Isometry g;
  g.m = m;
  std::vector<int> dims(2 * m, 3);
  dims.push_back(2);
  g.cell_shape = ChainShape(dims);

  StateVector c0 = psi0(0, theta), c1 = psi0(1, theta);
  for (int level = 1; level < m; ++level) {
    const StateVector unit0 = psi0(0, theta), unit1 = psi0(1, theta);
    c0 = expand_bond(c0, unit0.amplitudes, unit1.amplitudes, unit0.shape);
    c1 = expand_bond(c1, unit0.amplitudes, unit1.amplitudes, unit1.shape);
  }
  g.col0 = std::move(c0.amplitudes);
  g.col1 = std::move(c1.amplitudes);
  return g;
}

StateVector assemble_ground_state(const ModelParams& p) {
  p.validate();
  if (p.ell > 7)
    throw std::runtime_error(
        "assemble_ground_state: 4*9^ell amplitudes exceed memory for ell > 7; "
        "use the channel-based quantities (cap_density_matrix, bell_fidelity)");
  // Bell seed on (left cap, bond).
  StateVector v{ChainShape({2, 2})};
  v.amplitudes[0] = 1.0 / std::sqrt(2.0);
  v.amplitudes[3] = 1.0 / std::sqrt(2.0);

  const StateVector u0 = psi0(0, p.theta), u1 = psi0(1, p.theta);
  for (int j = 0; j < p.ell; ++j) v = expand_bond(v, u0.amplitudes, u1.amplitudes, u0.shape);
  return v;
}

double fidelity_single(double theta) {
  const double s2 = std::sin(theta) * std::sin(theta);
  const double c2 = std::cos(theta) * std::cos(theta);
  return s2 / (4.0 * c2 + s2);
}

DensityMatrix depolarize_step(const DensityMatrix& rho, double theta) {
  if (rho.dim() != 2) throw std::invalid_argument("depolarize_step: need a 2x2 input");
  const double f = fidelity_single(theta);
  const Cx tr = rho.trace();
  DensityMatrix out{ChainShape({2})};
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      out.at(r, c) = f * rho.at(r, c);
      if (r == c) out.at(r, c) += (1.0 - f) * tr / 2.0;
    }
  return out;
}

DensityMatrix cap_density_matrix(const ModelParams& p) {
  p.validate();
  const double w = std::pow(fidelity_single(p.theta), p.ell);
  DensityMatrix rho{ChainShape({2, 2})};
  for (int i = 0; i < 4; ++i) rho.at(i, i) = (1.0 - w) / 4.0;
  // |Phi+><Phi+| on indices {00, 11} = {0, 3}.
  rho.at(0, 0) += w / 2.0;
  rho.at(0, 3) += w / 2.0;
  rho.at(3, 0) += w / 2.0;
  rho.at(3, 3) += w / 2.0;
  return rho;
}

FidelityRecord bell_fidelity(double theta, int ell) {
  if (!(theta >= 0.0 && theta <= M_PI_2 + 1e-15))
    throw std::invalid_argument("bell_fidelity: theta outside [0, pi/2]");
  if (ell < 1) throw std::invalid_argument("bell_fidelity: ell must be >= 1");
  FidelityRecord rec;
  rec.theta = theta;
  rec.ell = ell;
  rec.f_single = fidelity_single(theta);
  rec.bell_weight = std::pow(rec.f_single, ell);
  rec.phi_plus_overlap = rec.bell_weight + (1.0 - rec.bell_weight) / 4.0;
  return rec;
}

} // namespace qchain
