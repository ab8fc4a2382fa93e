#include "helpers.hpp"

using namespace vnspec;
using namespace vnspec::test;

namespace {

const ToleranceConfig tol;

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::DecompositionFailed;
}

FiniteExtensionSpec m2_plus_c(double s) {
  FiniteExtensionSpec spec;
  spec.B1 = full_matrices(2);
  spec.nu1 = TraceFunctional(CMatrix::Identity(2, 2) / 2.0, true);
  spec.B2 = generate_algebra({}, 1, tol);
  spec.nu2 = TraceFunctional(CMatrix::Identity(1, 1), true);
  spec.s = s;
  spec.v1 = diag({1.0, -1.0});
  spec.v2 = CMatrix::Identity(1, 1);
  spec.v3 = diag({Complex(0, 1)});
  spec.v4 = diag({Complex(0, 1), Complex(0, -1)});
  return spec;
}

}  // namespace

TEST(GroupVn, Z2TraceAndRegularRep) {
  const auto g = GroupTable::cyclic(2);
  const auto sys = build_group_vn_system(g, {0, 1}, tol);
  EXPECT_EQ(sys.dim(), 2);
  EXPECT_NEAR(std::abs(sys.mu(left_regular(g, 1))), 0.0, 1e-14);
  EXPECT_NEAR(sys.mu(left_regular(g, 0)).real(), 1.0, 1e-14);
}

TEST(GroupVn, InversionOnZ4) {
  const auto g = GroupTable::cyclic(4);
  const auto sys = build_group_vn_system(g, {0, 3, 2, 1}, tol);
  EXPECT_LT((sys.alpha(left_regular(g, 1)) - left_regular(g, 3)).norm(), 1e-12);
  EXPECT_LT((sys.alpha(left_regular(g, 3)) - left_regular(g, 1)).norm(), 1e-12);
  EXPECT_LT((sys.alpha(left_regular(g, 2)) - left_regular(g, 2)).norm(), 1e-12);
}

TEST(GroupVn, IdentityAutomorphism) {
  const auto sys = build_group_vn_system(GroupTable::cyclic(3), {0, 1, 2}, tol);
  EXPECT_LT((sys.dynamics.coordinate_map() - CMatrix::Identity(3, 3)).norm(), 1e-12);
}

TEST(GroupVn, RejectsNonHomomorphism) {
  EXPECT_EQ(code_of([] { build_group_vn_system(GroupTable::cyclic(4), {0, 2, 1, 3}, tol); }),
            ErrorCode::NotAutomorphism);
  GroupTable broken = GroupTable::cyclic(3);
  broken.mult[1][1] = 1;
  EXPECT_EQ(code_of([&] { broken.validate(); }), ErrorCode::SpecInvalid);
}

TEST(Classical, SingleAtom) {
  const auto sys = build_classical_system({1.0}, {0}, tol);
  EXPECT_EQ(sys.dim(), 1);
  EXPECT_NEAR(sys.mu(CMatrix::Identity(1, 1)).real(), 1.0, 1e-14);
}

TEST(Classical, ThreeCycleHasOrderThree) {
  const auto sys = build_classical_system({1.0 / 3, 1.0 / 3, 1.0 / 3}, {1, 2, 0}, tol);
  const auto gns = build_gns(sys, tol);
  const CMatrix& u = gns.U();
  EXPECT_GT((u - CMatrix::Identity(3, 3)).norm(), 0.5);
  EXPECT_LT((u * u * u - CMatrix::Identity(3, 3)).norm(), 1e-12);
  // f o T with T(0) = 1: the indicator of atom 1 pulls back to atom 0
  EXPECT_LT((sys.alpha(unit(3, 1, 1)) - unit(3, 0, 0)).norm(), 1e-12);
}

TEST(Classical, WeightsMustBePreserved) {
  EXPECT_EQ(code_of([] { build_classical_system({0.5, 0.25, 0.25}, {1, 2, 0}, tol); }),
            ErrorCode::WeightsNotPreserved);
  EXPECT_EQ(code_of([] { build_classical_system({0.5, 0.5}, {0, 0}, tol); }), ErrorCode::SpecInvalid);
}

TEST(Tensor, ScalarFirstFactor) {
  const auto b = build_classical_system({1.0}, {0}, tol);
  const auto cs = build_tensor_system(b, m2_system(diag({1.0, -1.0})), tol);
  EXPECT_EQ(cs.system.dim(), 4);
  EXPECT_EQ(cs.sub.algebra.dim(), 1);
  const Pipeline p(cs.system, cs.sub);
  EXPECT_EQ(p.bc.alg_bar.dim(), 16);
}

TEST(Tensor, DiagonalTimesM2) {
  const auto b = build_classical_system({0.5, 0.5}, {1, 0}, tol);
  const auto cs = build_tensor_system(b, m2_system(diag({1.0, Complex(0, 1)})), tol);
  EXPECT_EQ(cs.system.dim(), 8);
  ASSERT_TRUE(cs.tensor.has_value());
  EXPECT_EQ(cs.tensor->fiber_elements.size(), 4u);
  const Pipeline p(cs.system, cs.sub);
  EXPECT_EQ(p.bc.alg_bar.dim(), 32);
  EXPECT_NEAR(p.bc.mu_bar(CMatrix::Identity(8, 8)).real(), 4.0, 1e-10);
  // alpha(b (x) c) = beta(b) (x) gamma(c)
  const CMatrix w = diag({1.0, Complex(0, 1)});
  const CMatrix x = kron(unit(2, 0, 0), unit(2, 0, 1));
  const CMatrix expected = kron(unit(2, 1, 1), w * unit(2, 0, 1) * w.adjoint());
  EXPECT_LT((cs.system.alpha(x) - expected).norm(), 1e-12);
}

TEST(SkewProduct, TrivialCocycleAndIdentityBase) {
  SkewProductSpec spec{{0.5, 0.5}, {0, 1}, GroupTable::cyclic(4), {0, 3, 2, 1}, {0, 0}};
  const auto cs = build_skew_product(spec, tol);
  EXPECT_LT((cs.system.dynamics.coordinate_map() - CMatrix::Identity(8, 8)).norm(), 1e-12);
}

TEST(SkewProduct, StructureOfZ4Example) {
  const auto cs = build_skew_product(skew_spec_z4(), tol);
  EXPECT_EQ(cs.system.dim(), 12);
  EXPECT_EQ(cs.sub.algebra.dim(), 3);
  ASSERT_EQ(cs.candidate_modules.size(), 2u);
  EXPECT_EQ(cs.candidate_modules[0].label, "orbit_1");
  EXPECT_EQ(cs.candidate_modules[1].label, "orbit_2");
}

TEST(SkewProduct, RejectsBadInput) {
  auto spec = skew_spec_z4();
  spec.k = {0, 1};
  EXPECT_EQ(code_of([&] { build_skew_product(spec, tol); }), ErrorCode::SpecInvalid);
  spec = skew_spec_z4();
  spec.T = {0, 2, 1, 3};
  EXPECT_EQ(code_of([&] { build_skew_product(spec, tol); }), ErrorCode::NotAutomorphism);
}

TEST(FiniteExtension, BetaAndBlockPattern) {
  const auto cs = build_finite_extension(m2_plus_c(1.0 / 3), tol);
  ASSERT_TRUE(cs.finite_extension.has_value());
  const auto& d = *cs.finite_extension;
  EXPECT_EQ(d.dim_B1, 4);
  EXPECT_EQ(d.dim_B2, 1);
  EXPECT_LT(d.beta_residual, 1e-10);
  EXPECT_LT(d.offdiagonal_residual, 1e-10);
  EXPECT_GT(d.nonproduct_distance, 1e-3);
  EXPECT_EQ(cs.system.dim(), 4 * 5);
  EXPECT_EQ(cs.sub.algebra.dim(), 5);
}

TEST(FiniteExtension, ProductWhenOneSummandIsZero) {
  FiniteExtensionSpec spec;
  spec.B1 = full_matrices(2);
  spec.nu1 = TraceFunctional(CMatrix::Identity(2, 2) / 2.0, true);
  spec.s = 1.0;
  spec.v1 = diag({1.0, -1.0});
  spec.v4 = diag({Complex(0, 1), Complex(0, -1)});
  const auto cs = build_finite_extension(spec, tol);
  EXPECT_EQ(cs.finite_extension->dim_B2, 0);
  EXPECT_LT(cs.finite_extension->nonproduct_distance, 1e-10);
}

TEST(FiniteExtension, ModulesDecomposeTheComplement) {
  const auto cs = build_finite_extension(m2_plus_c(1.0 / 3), tol);
  const Pipeline p(cs.system, cs.sub);
  const auto blocks = find_minimal_modules(p.gns, cs.sub, p.bc, tol);
  const auto rds = rds_verdict(p.bc, blocks, tol);
  EXPECT_TRUE(rds.verdict);
  EXPECT_LT(rds.completeness_residual, 1e-8);
  EXPECT_LT(rds.additivity_residual, 1e-8);
}

TEST(FiniteExtension, RejectsConstraintViolation) {
  auto spec = m2_plus_c(0.5);
  CMatrix swap(2, 2);
  swap << 0, 1, 1, 0;
  spec.v4 = swap;  // v4^* v1 is not in the commutant of M_2
  EXPECT_EQ(code_of([&] { build_finite_extension(spec, tol); }), ErrorCode::ConstraintViolated);
  spec = m2_plus_c(0.5);
  spec.v1 = 2.0 * spec.v1;
  EXPECT_EQ(code_of([&] { build_finite_extension(spec, tol); }), ErrorCode::NotUnitary);
}
