#include "helpers.hpp"

using namespace vnspec;
using namespace vnspec::test;

namespace {

const ToleranceConfig tol;

bool hermitian_orthonormal(const MatrixStarAlgebra& alg) {
  for (Eigen::Index k = 0; k < alg.dim(); ++k) {
    if ((alg.basis(k) - alg.basis(k).adjoint()).norm() > 1e-12) return false;
    for (Eigen::Index l = 0; l < alg.dim(); ++l) {
      const Complex ip = hs_inner(alg.basis(k), alg.basis(l));
      if (std::abs(ip - Complex(k == l ? 1.0 : 0.0)) > 1e-12) return false;
    }
  }
  return true;
}

}  // namespace

TEST(GenerateAlgebra, EmptyGivesScalars) {
  const auto alg = generate_algebra({}, 2, tol);
  EXPECT_EQ(alg.dim(), 1);
  EXPECT_TRUE(alg.contains(CMatrix::Identity(2, 2), 1e-12));
}

TEST(GenerateAlgebra, E12GivesAllOfM2) {
  const auto alg = generate_algebra({unit(2, 0, 1)}, 2, tol);
  EXPECT_EQ(alg.dim(), 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) EXPECT_LT(alg.residual(unit(2, i, j)), 1e-12);
  EXPECT_TRUE(hermitian_orthonormal(alg));
}

TEST(GenerateAlgebra, DiagonalStaysDiagonal) {
  const auto alg = generate_algebra({diag({1.0, -1.0})}, 2, tol);
  EXPECT_EQ(alg.dim(), 2);
  EXPECT_LT(alg.residual(unit(2, 0, 0)), 1e-12);
  EXPECT_LT(alg.residual(unit(2, 1, 1)), 1e-12);
  EXPECT_NEAR(alg.residual(unit(2, 0, 1)), 1.0, 1e-12);
}

TEST(GenerateAlgebra, ClosedUnderProductsAndAdjoints) {
  SeededRng rng(3);
  CMatrix g = CMatrix::Zero(4, 4);
  g.topLeftCorner(2, 2) << Complex(0.3, 1.0), 2.0, Complex(0, -1), 0.5;
  g(2, 3) = 1.0;
  const auto alg = generate_algebra({g}, 4, tol);
  EXPECT_LT(alg.closure_residual(), 1e-10);
  EXPECT_TRUE(alg.contains_identity());
  // M_2 on the first block and the corner generated by E34 give M_2 + M_2.
  EXPECT_EQ(alg.dim(), 8);
}

TEST(GenerateAlgebra, RejectsBadGenerators) {
  EXPECT_THROW(generate_algebra({CMatrix::Zero(2, 3)}, 2, tol), Error);
  EXPECT_THROW(generate_algebra({CMatrix::Identity(3, 3)}, 2, tol), Error);
  CMatrix nan = CMatrix::Identity(2, 2);
  nan(0, 1) = std::nan("");
  try {
    generate_algebra({nan}, 2, tol);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotFinite);
  }
}

TEST(Commutant, OfScalarsIsM2) {
  EXPECT_EQ(commutant(generate_algebra({}, 2, tol), tol).dim(), 4);
}

TEST(Commutant, OfDiagonalIsDiagonal) {
  const auto d = generate_algebra({diag({1.0, -1.0})}, 2, tol);
  const auto c = commutant(d, tol);
  EXPECT_EQ(c.dim(), 2);
  EXPECT_LT(c.span_distance(d), 1e-12);
}

TEST(Commutant, OfM2IsScalars) {
  const auto c = commutant(full_matrices(2), tol);
  EXPECT_EQ(c.dim(), 1);
  EXPECT_LT(c.residual(CMatrix::Identity(2, 2)), 1e-12);
}

TEST(Commutant, DoubleCommutantReturnsAlgebra) {
  CMatrix g = CMatrix::Zero(3, 3);
  g(0, 1) = 1.0;
  const auto alg = generate_algebra({g}, 3, tol);  // M_2 + C
  const auto cc = commutant(commutant(alg, tol), tol);
  EXPECT_EQ(cc.dim(), alg.dim());
  EXPECT_LT(cc.span_distance(alg), 1e-10);
}

TEST(ConditionalExpectation, FullSubalgebraIsIdentity) {
  const auto sys = m2_system();
  const ConditionalExpectation d(sys, full_subsystem(sys));
  EXPECT_LT((d.coordinate_map() - CMatrix::Identity(4, 4)).norm(), 1e-12);
}

TEST(ConditionalExpectation, OntoDiagonal) {
  const auto sys = m2_system();
  const auto sub = make_subsystem(sys, {diag({1.0, -1.0})}, tol);
  CMatrix a(2, 2);
  a << 1, 2, 3, 4;
  const CMatrix da = ConditionalExpectation(sys, sub).apply(a);
  EXPECT_LT((da - diag({1.0, 4.0})).norm(), 1e-12);
}

TEST(ConditionalExpectation, OntoScalarsIsTheTrace) {
  const CMatrix rho = diag({0.25, 0.75});
  const auto alg = generate_algebra({diag({1.0, 0.0})}, 2, tol);
  const WStarSystem sys{alg, TraceFunctional(rho, true), StarAutomorphism::identity(alg)};
  const auto sub = trivial_subsystem(sys, tol);
  const CMatrix a = diag({Complex(2, 1), -3.0});
  const Complex mu = 0.25 * Complex(2, 1) + 0.75 * -3.0;
  EXPECT_LT((ConditionalExpectation(sys, sub).apply(a) - mu * CMatrix::Identity(2, 2)).norm(), 1e-12);
}

TEST(ConditionalExpectation, IsTracePreservingIdempotentAndBimodular) {
  const auto sys = matrix_system(CMatrix::Identity(4, 4));
  CMatrix f = CMatrix::Zero(4, 4);
  f.topLeftCorner(2, 2) = CMatrix::Identity(2, 2);
  const auto sub = make_subsystem(sys, {f, kron(unit(2, 0, 1), CMatrix::Identity(2, 2))}, tol);
  const ConditionalExpectation d(sys, sub);
  SeededRng rng(11);
  for (int t = 0; t < 10; ++t) {
    const CMatrix a = sys.algebra.random_element(rng);
    const CMatrix x = sub.algebra.random_element(rng);
    const CMatrix da = d.apply(a);
    EXPECT_LT(std::abs(sys.mu(da) - sys.mu(a)), 1e-12);
    EXPECT_LT((d.apply(da) - da).norm(), 1e-12);
    EXPECT_LT((d.apply(x * a) - x * da).norm(), 1e-10);
  }
}

TEST(BlockDecomposition, FactorHasTrivialCenter) {
  const auto blocks = block_decomposition(full_matrices(2), tol);
  ASSERT_EQ(blocks.size(), 1u);
  EXPECT_LT((blocks[0] - CMatrix::Identity(2, 2)).norm(), 1e-12);
}

TEST(BlockDecomposition, DiagonalAtoms) {
  const auto blocks = block_decomposition(generate_algebra({diag({1.0, -1.0})}, 2, tol), tol);
  ASSERT_EQ(blocks.size(), 2u);
  EXPECT_LT((blocks[0] - unit(2, 0, 0)).norm(), 1e-12);
  EXPECT_LT((blocks[1] - unit(2, 1, 1)).norm(), 1e-12);
}

TEST(BlockDecomposition, TwoBlocksOfM2) {
  const auto alg = generate_algebra({direct_sum(unit(2, 0, 1), CMatrix::Zero(2, 2)),
                                     direct_sum(CMatrix::Zero(2, 2), unit(2, 0, 1))},
                                    4, tol);
  EXPECT_EQ(alg.dim(), 8);
  const auto blocks = block_decomposition(alg, tol);
  ASSERT_EQ(blocks.size(), 2u);
  const CMatrix p1 = direct_sum(CMatrix::Identity(2, 2), CMatrix::Zero(2, 2));
  const CMatrix p2 = direct_sum(CMatrix::Zero(2, 2), CMatrix::Identity(2, 2));
  EXPECT_LT((blocks[0] - p1).norm(), 1e-10);
  EXPECT_LT((blocks[1] - p2).norm(), 1e-10);
  EXPECT_EQ(center(alg, tol).dim(), 2);
}

TEST(Trace, RejectsNonTracialDensity) {
  const auto alg = full_matrices(2);
  const TraceFunctional bad(diag({0.25, 0.75}), true);
  try {
    bad.validate_on(alg, tol);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TraceInvalid);
  }
}

TEST(Trace, RejectsUnfaithfulState) {
  const auto alg = generate_algebra({diag({1.0, 0.0})}, 2, tol);
  try {
    TraceFunctional(diag({1.0, 0.0}), true).validate_on(alg, tol);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TraceNotFaithful);
  }
}

TEST(Automorphism, RejectsUnitaryThatLeavesAlgebra) {
  const auto alg = generate_algebra({diag({1.0, -1.0})}, 2, tol);
  CMatrix h(2, 2);
  h << 1, 1, 1, -1;
  h /= std::sqrt(2.0);
  try {
    StarAutomorphism::conjugation(alg, h);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::AutomorphismInvalid);
  }
}

TEST(Subsystem, RejectsNonInvariantSubalgebra) {
  CMatrix swap(2, 2);
  swap << 0, 1, 1, 0;
  const auto sys = m2_system(CMatrix(diag({1.0, Complex(0, 1)})) * swap);
  try {
    make_subsystem(sys, {swap}, tol);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SubsystemInvalid);
  }
}
