#include "helpers.hpp"

using namespace vnspec;
using namespace vnspec::test;

namespace {

const ToleranceConfig tol;

WStarSystem weighted_diagonal(double s) {
  const auto alg = generate_algebra({diag({1.0, 0.0})}, 2, tol);
  return WStarSystem{alg, TraceFunctional(diag({s, 1.0 - s}), true), StarAutomorphism::identity(alg)};
}

}  // namespace

TEST(Gns, Scalars) {
  const auto alg = generate_algebra({}, 1, tol);
  const WStarSystem sys{alg, TraceFunctional(CMatrix::Identity(1, 1), true), StarAutomorphism::identity(alg)};
  const auto gns = build_gns(sys, tol);
  EXPECT_EQ(gns.dim(), 1);
  EXPECT_NEAR(std::abs(gns.U()(0, 0) - 1.0), 0.0, 1e-14);
  CVector z(1);
  z(0) = Complex(0.3, -2.0);
  EXPECT_LT(std::abs(gns.J(z)(0) - std::conj(z(0))), 1e-14);
}

TEST(Gns, M2InnerProducts) {
  const auto gns = build_gns(m2_system(), tol);
  EXPECT_EQ(gns.dim(), 4);
  EXPECT_NEAR(gns.vec_of(unit(2, 0, 0)).squaredNorm(), 0.5, 1e-14);
  // <a Omega, b Omega> = tr(a^* b) / 2 for every pair of matrix units
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) {
          const Complex ip = gns.vec_of(unit(2, i, j)).dot(gns.vec_of(unit(2, k, l)));
          const double expected = (i == k && j == l) ? 0.5 : 0.0;
          EXPECT_NEAR(std::abs(ip - expected), 0.0, 1e-14);
        }
}

TEST(Gns, WeightedDiagonalGram) {
  const auto gns = build_gns(weighted_diagonal(1.0 / 3), tol);
  const CVector x = gns.vec_of(unit(2, 0, 0)), y = gns.vec_of(unit(2, 1, 1));
  EXPECT_NEAR(x.squaredNorm(), 1.0 / 3, 1e-14);
  EXPECT_NEAR(y.squaredNorm(), 2.0 / 3, 1e-14);
  EXPECT_NEAR(std::abs(x.dot(y)), 0.0, 1e-14);
}

TEST(Gns, ElementOfInvertsVecOf) {
  const auto sys = matrix_system(diag({1.0, Complex(0, 1), -1.0}));
  const auto gns = build_gns(sys, tol);
  SeededRng rng(5);
  for (int t = 0; t < 5; ++t) {
    const CMatrix a = sys.algebra.random_element(rng);
    EXPECT_LT((gns.element_of(gns.vec_of(a)) - a).norm(), 1e-12);
  }
}

TEST(Gns, LeftRepIsMultiplication) {
  const auto sys = m2_system();
  const auto gns = build_gns(sys, tol);
  SeededRng rng(8);
  const CMatrix a = sys.algebra.random_element(rng), b = sys.algebra.random_element(rng);
  EXPECT_LT((gns.left_rep(a) * gns.vec_of(b) - gns.vec_of(a * b)).norm(), 1e-12);
  EXPECT_LT((gns.left_rep(a).adjoint() - gns.left_rep(a.adjoint())).norm(), 1e-12);
}

TEST(Gns, ModularConjugation) {
  const auto sys = weighted_diagonal(0.2);
  const auto full = matrix_system(CMatrix::Identity(3, 3));
  for (const WStarSystem* s : {&sys, &full}) {
    const auto gns = build_gns(*s, tol);
    SeededRng rng(9);
    const CMatrix a = s->algebra.random_element(rng);
    // J a Omega = a^* Omega
    EXPECT_LT((gns.J(gns.vec_of(a)) - gns.vec_of(a.adjoint())).norm(), 1e-12);
    const CVector x = gns.vec_of(s->algebra.random_element(rng)), y = gns.vec_of(s->algebra.random_element(rng));
    EXPECT_LT((gns.J(gns.J(x)) - x).norm(), 1e-12);
    EXPECT_LT(std::abs(gns.J(x).dot(gns.J(y)) - y.dot(x)), 1e-12);
    EXPECT_LT((gns.J(gns.omega()) - gns.omega()).norm(), 1e-12);
  }
}

TEST(Gns, SmallJCommutesWithLeftAction) {
  const auto sys = matrix_system(CMatrix::Identity(3, 3));
  const auto gns = build_gns(sys, tol);
  SeededRng rng(4);
  for (int t = 0; t < 5; ++t) {
    const CMatrix a = sys.algebra.random_element(rng), b = sys.algebra.random_element(rng);
    const CMatrix ja = gns.j(a), lb = gns.left_rep(b);
    EXPECT_LT((ja * lb - lb * ja).norm(), 1e-12);
  }
}

TEST(Gns, UnitaryImplementsDynamics) {
  const auto sys = m2_system(diag({1.0, Complex(0, 1)}));
  const auto gns = build_gns(sys, tol);
  const CMatrix& u = gns.U();
  EXPECT_LT((u.adjoint() * u - CMatrix::Identity(4, 4)).norm(), 1e-12);
  EXPECT_LT((u * gns.omega() - gns.omega()).norm(), 1e-12);
  SeededRng rng(2);
  const CMatrix a = sys.algebra.random_element(rng);
  EXPECT_LT((u * gns.vec_of(a) - gns.vec_of(sys.alpha(a))).norm(), 1e-12);
}

TEST(Gns, SubspaceHF) {
  const auto sys = m2_system();
  const auto gns = build_gns(sys, tol);
  EXPECT_LT((gns.subspace_HF(full_subsystem(sys), tol) - CMatrix::Identity(4, 4)).norm(), 1e-12);
  const CMatrix e1 = gns.subspace_HF(trivial_subsystem(sys, tol), tol);
  const CVector& om = gns.omega();
  EXPECT_LT((e1 - om * om.adjoint() / om.squaredNorm()).norm(), 1e-12);
  const CMatrix e2 = gns.subspace_HF(make_subsystem(sys, {diag({1.0, -1.0})}, tol), tol);
  EXPECT_NEAR(e2.trace().real(), 2.0, 1e-12);
  EXPECT_LT((e2 * e2 - e2).norm(), 1e-12);
}

TEST(Gns, RightAction) {
  const auto sys = m2_system();
  const auto gns = build_gns(sys, tol);
  SeededRng rng(6);
  const CMatrix a = sys.algebra.random_element(rng), b = sys.algebra.random_element(rng);
  EXPECT_LT((gns.right_action(gns.omega(), a) - gns.vec_of(a)).norm(), 1e-12);
  const CVector x = gns.vec_of(b);
  EXPECT_LT((gns.right_action(x, CMatrix::Identity(2, 2)) - x).norm(), 1e-12);
  // (b Omega) a = (b a) Omega
  EXPECT_LT((gns.right_action(x, a) - gns.vec_of(b * a)).norm(), 1e-12);

  const CVector e12 = gns.vec_of(unit(2, 0, 1));
  EXPECT_LT(gns.right_action(e12, unit(2, 0, 0)).norm(), 1e-12);
  EXPECT_LT((gns.left_rep(unit(2, 0, 0)) * e12 - e12).norm(), 1e-12);
}
