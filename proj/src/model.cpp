#include "qchain/model.hpp"

#include <cmath>
#include <stdexcept>

namespace qchain {

void ModelParams::validate() const {
  if (!(theta >= 0.0 && theta <= M_PI_2 + 1e-15))
    throw std::invalid_argument("ModelParams: theta outside [0, pi/2]");
  if (!(epsilon > 0.0)) throw std::invalid_argument("ModelParams: epsilon must be > 0");
  if (ell < 1) throw std::invalid_argument("ModelParams: ell must be >= 1");
}

namespace {

// Rank-1 update B += w * |v><v| for a sparse ket given as (index, amplitude).
void add_outer(CxVec& B, std::int64_t d, const std::vector<std::pair<std::int64_t, Cx>>& v,
               double w) {
  for (const auto& [r, ar] : v)
    for (const auto& [c, ac] : v) B[r * d + c] += w * ar * std::conj(ac);
}

} // namespace

LocalTerm build_create_pair(double eps, int d_left, int d_right, int first_site) {
  if ((d_left != 2 && d_left != 3) || (d_right != 2 && d_right != 3))
    throw std::invalid_argument("build_create_pair: dims must be 2 or 3");
  const std::int64_t d = static_cast<std::int64_t>(d_left) * d_right;
  CxVec B(d * d, Cx{0.0, 0.0});
  auto idx = [&](int a, int b) { return static_cast<std::int64_t>(a) * d_right + b; };

  // (|10>-|01>)(<10|-<01|) + (|10>+|01>)(<10|+<01|) + (|00>-|11>)(<00|-<11|), times eps/2.
  add_outer(B, d, {{idx(1, 0), 1.0}, {idx(0, 1), -1.0}}, eps / 2.0);
  add_outer(B, d, {{idx(1, 0), 1.0}, {idx(0, 1), 1.0}}, eps / 2.0);
  add_outer(B, d, {{idx(0, 0), 1.0}, {idx(1, 1), -1.0}}, eps / 2.0);
  return LocalTerm(first_site, first_site + 1, d, std::move(B));
}

LocalTerm build_projection(double theta, double eps, int first_site) {
  if (!(theta >= 0.0 && theta <= M_PI_2 + 1e-15))
    throw std::invalid_argument("build_projection: theta outside [0, pi/2]");
  const std::int64_t d = 9;
  CxVec B(d * d, Cx{0.0, 0.0});
  auto idx = [](int a, int b) { return static_cast<std::int64_t>(a) * 3 + b; };

  const double s = std::sin(theta), c = std::cos(theta);
  add_outer(B, d,
            {{idx(0, 0), s / std::sqrt(2.0)},
             {idx(1, 1), s / std::sqrt(2.0)},
             {idx(kIdle, kIdle), -c}},
            eps);
  for (int b = 0; b < 2; ++b) {
    add_outer(B, d, {{idx(kIdle, b), 1.0}}, eps);
    add_outer(B, d, {{idx(b, kIdle), 1.0}}, eps);
  }
  return LocalTerm(first_site, first_site + 1, d, std::move(B));
}

ChainOperator build_unit(double theta, double eps, int d_next) {
  if (d_next != 2 && d_next != 3)
    throw std::invalid_argument("build_unit: trailing dim must be 2 or 3");
  ChainOperator H{ChainShape({3, 3, d_next})};
  H.add_term(build_projection(theta, eps, 0));
  H.add_term(build_create_pair(eps, 3, d_next, 1));
  return H;
}

ChainOperator build_chain(const ModelParams& p) {
  p.validate();
  ChainOperator H{ChainShape::chain(p.ell)};
  H.add_term(build_create_pair(p.epsilon, 2, 3, 0));
  for (int j = 0; j < p.ell; ++j) {
    H.add_term(build_projection(p.theta, p.epsilon, 2 * j + 1));
    const int d_next = (j == p.ell - 1) ? 2 : 3;
    H.add_term(build_create_pair(p.epsilon, 3, d_next, 2 * j + 2));
  }
  return H;
}

} // namespace qchain
