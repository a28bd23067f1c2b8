#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qchain/eigensolve.hpp"
#include "qchain/excitation.hpp"
#include "qchain/model.hpp"
#include "test_helpers.hpp"

using namespace qchain;
using namespace qchain::testing;

TEST_CASE("diagonal operator: lowest two of diag(0,1,2)") {
  CxVec dense = {0, 0, 0, 0, 1, 0, 0, 0, 2};
  LinearOperator op = LinearOperator::from_dense(dense, 3);
  SolveOptions opt;
  opt.k = 2;
  opt.tol = 1e-12;
  SpectrumResult s = lowest_k(op, opt);
  CHECK(std::abs(s.eigenvalues[0] - 0.0) < 1e-14);
  CHECK(std::abs(s.eigenvalues[1] - 1.0) < 1e-14);
  CHECK_THROWS(([&] {
    SolveOptions bad;
    bad.k = 4;
    lowest_k(op, bad);
  })());
}

TEST_CASE("pair creation on [2,2]: k=4 gives {0, eps, eps, eps}") {
  ChainOperator H{ChainShape({2, 2})};
  H.add_term(build_create_pair(1.0, 2, 2));
  SolveOptions opt;
  opt.k = 4;
  opt.tol = 1e-12;
  SpectrumResult s = lowest_k(H, opt);
  CHECK(std::abs(s.eigenvalues[0]) < 1e-14);
  for (int i = 1; i < 4; ++i) CHECK(std::abs(s.eigenvalues[i] - 1.0) < 1e-13);
  CHECK(cluster_size(s.eigenvalues, 1, 1.0) == 3);
}

TEST_CASE("full chain ell=2 at theta=1.56: E0 = 0 with a threefold first level") {
  ModelParams p{1.56, 1.0, 2};
  ChainOperator H = build_chain(p);
  SolveOptions opt;
  opt.k = 5;
  opt.tol = 1e-11;
  SpectrumResult s = lowest_k(H, opt); // dense path at dim 324
  CHECK(std::abs(s.eigenvalues[0]) < 1e-11);
  CHECK(cluster_size(s.eigenvalues, 1, 1.0) == 3);
  // Orthonormality of the returned pairs.
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      const Cx g = cdot(s.eigenvectors[i], s.eigenvectors[j]);
      CHECK(std::abs(g - (i == j ? Cx{1, 0} : Cx{0, 0})) < 1e-10);
    }
  for (double r : s.residual_norms) CHECK(r <= 1e-11);
}

TEST_CASE("iterative path agrees with the dense solver") {
  // Same operator through both routes; the chain at ell=2 (dim 324) is well
  // inside the dense oracle range.
  ModelParams p{1.3, 1.0, 2};
  ChainOperator H = build_chain(p);

  SolveOptions dense_opt;
  dense_opt.k = 6;
  dense_opt.tol = 1e-11;
  SpectrumResult sd = lowest_k(H, dense_opt);

  SolveOptions iter_opt = dense_opt;
  iter_opt.dense_threshold = 16; // force the Krylov path
  iter_opt.max_applies = 40000;
  SpectrumResult si = lowest_k(H, iter_opt);

  const double scale = H.operator_norm_bound();
  for (int i = 0; i < 6; ++i)
    CHECK(std::abs(sd.eigenvalues[i] - si.eigenvalues[i]) < 1e-12 * scale);
}

TEST_CASE("empty constraint set reproduces the unconstrained solve") {
  ModelParams p{0.9, 1.0, 1};
  ChainOperator H = build_chain(p);
  LinearOperator op = LinearOperator::from_chain(H);
  SolveOptions opt;
  opt.k = 3;
  opt.tol = 1e-12;
  SpectrumResult a = lowest_k(op, opt);
  SpectrumResult b = lowest_k_constrained(op, opt, {});
  for (int i = 0; i < 3; ++i)
    CHECK(std::abs(a.eigenvalues[i] - b.eigenvalues[i]) < 1e-13);
}

TEST_CASE("restriction of the identity: forbidden e0 leaves eigenvalues {1, 1}") {
  CxVec dense(9, Cx{0, 0});
  dense[0] = dense[4] = dense[8] = 1.0;
  LinearOperator op = LinearOperator::from_dense(dense, 3);
  CxVec e0 = {1, 0, 0};
  SolveOptions opt;
  opt.k = 2;
  opt.tol = 1e-12;
  SpectrumResult s = lowest_k_constrained(op, opt, {e0});
  CHECK(std::abs(s.eigenvalues[0] - 1.0) < 1e-14);
  CHECK(std::abs(s.eigenvalues[1] - 1.0) < 1e-14);
  for (const CxVec& v : s.eigenvectors) CHECK(std::abs(v[0]) < 1e-12);
  CHECK_THROWS(([&] {
    SolveOptions bad;
    bad.k = 3;
    lowest_k_constrained(op, bad, {e0});
  })());
}

TEST_CASE("constrained effective problem reproduces the printed variational level") {
  // Lowest constrained level of half the single-cell effective operator.
  ExcitationProblem prob = make_excitation_problem(1, 1.56);
  CxVec M = paper_blocks_m1(1.56, 0.0);
  for (auto& v : M) v *= 0.5;
  LinearOperator op = LinearOperator::from_dense(M, 36);
  SolveOptions opt;
  opt.k = 3;
  opt.tol = 1e-13;
  SpectrumResult s = lowest_k_constrained(op, opt, prob.constraints);
  CHECK(s.eigenvalues[0] == doctest::Approx(1.3e-11).epsilon(0.15));
  CHECK(cluster_size(s.eigenvalues, 0, 1.0) == 3);
  for (const CxVec& v : s.eigenvectors)
    for (const CxVec& c : prob.constraints) CHECK(std::abs(cdot(c, v)) < 1e-12);
}

TEST_CASE("constrained solve equals the penalty formulation at kappa = 1e3") {
  ExcitationProblem prob = make_excitation_problem(1, 1.56);
  CxVec M = paper_blocks_m1(1.56, 0.0);
  LinearOperator op = LinearOperator::from_dense(M, 36);
  SolveOptions opt;
  opt.k = 3;
  opt.tol = 1e-13;
  SpectrumResult proj = lowest_k_constrained(op, opt, prob.constraints);

  CxVec Mp = paper_blocks_m1(1.56, 0.0, 1.0e3);
  LinearOperator opp = LinearOperator::from_dense(Mp, 36);
  SpectrumResult pen = lowest_k(opp, opt);

  for (int i = 0; i < 3; ++i)
    CHECK(std::abs(proj.eigenvalues[i] - pen.eigenvalues[i]) < 1e-12);
}

TEST_CASE("eigenvalues are invariant under parallel versus deterministic modes") {
  ModelParams p{1.56, 1.0, 2};
  ChainOperator H = build_chain(p);
  SolveOptions a;
  a.k = 4;
  a.tol = 1e-11;
  a.parallel = true;
  SolveOptions b = a;
  b.parallel = false;
  SpectrumResult ra = lowest_k(H, a), rb = lowest_k(H, b);
  const double scale = H.operator_norm_bound();
  for (int i = 0; i < 4; ++i)
    CHECK(std::abs(ra.eigenvalues[i] - rb.eigenvalues[i]) <= 1e-13 * scale);
}

TEST_CASE("cluster detection follows the spec rule") {
  std::vector<double> eigs = {0.0, 1e-8, 1.0000000001e-8, 1.002e-8, 4e-8, 1.0};
  CHECK(cluster_size(eigs, 1, 1.0) == 3);
  CHECK(cluster_size(eigs, 4, 1.0) == 1);
  std::vector<double> tight = {5.0e-13, 7.0e-13, 2.0e-1};
  CHECK(cluster_size(tight, 0, 1.0) == 2); // within the 1e-12 eps floor
}
