#include "helpers.hpp"

using namespace vnspec;
using namespace vnspec::test;

namespace {

const ToleranceConfig tol;

struct Joined {
  Pipeline p;
  JoiningData jd;

  Joined(const WStarSystem& sys, const Subsystem& sub) : p(sys, sub), jd(relative_joining(p.gns, sub, p.bc, tol)) {
    build_R(jd, p.gns, sub, p.bc, tol, 77);
  }
};

}  // namespace

TEST(Commutant, OfM2InStandardForm) {
  const auto sys = m2_system();
  const auto gns = build_gns(sys, tol);
  const auto cs = build_commutant_system(gns, tol);
  EXPECT_EQ(cs.dim(), 4);
  for (const auto& b : sys.algebra.basis()) {
    EXPECT_LT(cs.algebra.residual(gns.j(b)), 1e-10);
    EXPECT_LT(std::abs(cs.mu(gns.j(b)) - sys.mu(b)), 1e-12);
  }
}

TEST(Commutant, MaximalAbelianIsItsOwnCommutant) {
  const auto sys = build_classical_system({0.5, 0.25, 0.25}, {0, 2, 1}, tol);
  const auto gns = build_gns(sys, tol);
  const auto cs = build_commutant_system(gns, tol);
  ASSERT_EQ(cs.dim(), 3);
  for (const auto& b : sys.algebra.basis()) EXPECT_LT(cs.algebra.residual(gns.left_rep(b)), 1e-10);
}

TEST(Joining, DiagonalJoiningWhenFIsA) {
  const auto sys = m2_system(diag({1.0, -1.0}));
  const Joined j(sys, full_subsystem(sys));
  const auto& a = sys.algebra;
  const auto& ap = j.jd.commutant.algebra;
  const CVector& om = j.p.gns.omega();
  for (Eigen::Index k = 0; k < a.dim(); ++k)
    for (Eigen::Index l = 0; l < ap.dim(); ++l) {
      const Complex expected = om.dot(j.p.gns.left_rep(a.basis(k)) * ap.basis(l) * om);
      EXPECT_LT(std::abs(j.jd.omega_table(k, l) - expected), 1e-12);
    }
}

TEST(Joining, ProductStateOverScalars) {
  const auto sys = m2_system(diag({1.0, Complex(0, 1)}));
  const Joined j(sys, trivial_subsystem(sys, tol));
  const auto& a = sys.algebra;
  const auto& ap = j.jd.commutant.algebra;
  const CVector& om = j.p.gns.omega();
  for (Eigen::Index k = 0; k < a.dim(); ++k)
    for (Eigen::Index l = 0; l < ap.dim(); ++l) {
      const Complex expected = sys.mu(a.basis(k)) * om.dot(ap.basis(l) * om);
      EXPECT_LT(std::abs(j.jd.omega_table(k, l) - expected), 1e-12);
    }
  EXPECT_NEAR(j.jd.omega_vec.squaredNorm(), 1.0, 1e-12);
  EXPECT_LT(j.jd.two_formula_residual, 1e-10);
  EXPECT_LT(j.jd.marginal_residual, 1e-10);
}

TEST(R, MapsUnitToE) {
  const auto sys = m2_system();
  const Joined j(sys, trivial_subsystem(sys, tol));
  EXPECT_LT((j.jd.R * j.jd.omega_vec - j.p.bc.gamma(j.p.bc.e)).norm(), 1e-10);
  EXPECT_EQ(j.jd.dim_H_omega(), 16);
  EXPECT_EQ(j.p.bc.bar_gns.dim(), 16);
}

TEST(R, UnitaryIntertwinerOnSkewProduct) {
  const auto cs = build_skew_product(skew_spec_z4(), tol);
  const Joined j(cs.system, cs.sub);
  EXPECT_LT(j.jd.R_star_R, 1e-8);
  EXPECT_LT(j.jd.R_R_star, 1e-8);
  EXPECT_LT(j.jd.R_intertwine, 1e-8);
  EXPECT_LT(j.jd.H_lambda_residual, 1e-8);
  EXPECT_LT(j.jd.eq_R0, 1e-10);
}

TEST(RelativeErgodicity, FullSubalgebraIsErgodic) {
  const auto sys = m2_system(diag({1.0, Complex(0, 1)}));
  const Pipeline p(sys, full_subsystem(sys));
  EXPECT_TRUE(relative_ergodicity_check(p.gns, full_subsystem(sys), p.bc, tol).ergodic);
}

TEST(RelativeErgodicity, IdentityDynamicsOverScalarsIsNot) {
  const auto sys = m2_system();
  const auto sub = trivial_subsystem(sys, tol);
  const Pipeline p(sys, sub);
  const auto check = relative_ergodicity_check(p.gns, sub, p.bc, tol);
  EXPECT_FALSE(check.ergodic);
  // gamma_bar(P) is fixed and outside H_bar_lambda for a projection P below 1 - e
  const CMatrix q = orthonormal_range(CMatrix::Identity(4, 4) - p.bc.e, tol.eps_rank).leftCols(1);
  const CVector x = p.bc.gamma(q * q.adjoint());
  EXPECT_LT((p.bc.U_bar() * x - x).norm(), 1e-10);
  EXPECT_GT((x - check.H_lambda_basis * (check.H_lambda_basis.adjoint() * x)).norm(), 0.1);
}

TEST(RelativeErgodicity, SkewProductIsNot) {
  const auto cs = build_skew_product(skew_spec_z4(), tol);
  const Pipeline p(cs.system, cs.sub);
  EXPECT_FALSE(relative_ergodicity_check(p.gns, cs.sub, p.bc, tol).ergodic);
}
