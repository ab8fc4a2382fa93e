#include "helpers.hpp"

#include "vnspec/kernels.hpp"

using namespace vnspec;

namespace {

CMatrix random_matrix(SeededRng& rng, Eigen::Index rows, Eigen::Index cols) {
  CMatrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = rng.complex_symmetric();
  return m;
}

std::vector<CMatrix> random_matrices(SeededRng& rng, int count, Eigen::Index n) {
  std::vector<CMatrix> out;
  for (int i = 0; i < count; ++i) out.push_back(random_matrix(rng, n, n));
  return out;
}

bool identical(const CMatrix& a, const CMatrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && (a.array() == b.array()).all();
}

}  // namespace

TEST(Kernels, PairwiseProductsBitwiseEqual) {
  SeededRng rng(31);
  const auto l = random_matrices(rng, 7, 6), r = random_matrices(rng, 5, 6);
  const auto s = kernels::serial::pairwise_products(l, r), p = kernels::parallel::pairwise_products(l, r);
  ASSERT_EQ(s.size(), 35u);
  for (std::size_t i = 0; i < s.size(); ++i) EXPECT_TRUE(identical(s[i], p[i]));
  EXPECT_LT((s[1 * 5 + 2] - l[1] * r[2]).norm(), 1e-12);
}

TEST(Kernels, SandwichProductsBitwiseEqual) {
  SeededRng rng(32);
  const auto l = random_matrices(rng, 4, 5), r = random_matrices(rng, 6, 5);
  const CMatrix m = random_matrix(rng, 5, 5);
  const auto s = kernels::serial::sandwich_products(l, m, r), p = kernels::parallel::sandwich_products(l, m, r);
  ASSERT_EQ(s.size(), 24u);
  for (std::size_t i = 0; i < s.size(); ++i) EXPECT_TRUE(identical(s[i], p[i]));
  EXPECT_LT((s[3 * 6 + 5] - l[3] * m * r[5]).norm(), 1e-12);
}

TEST(Kernels, CommutatorImagesBitwiseEqual) {
  SeededRng rng(33);
  const CMatrix cols = random_matrix(rng, 16, 9), g = random_matrix(rng, 4, 4);
  const CMatrix s = kernels::serial::commutator_images(cols, g);
  EXPECT_TRUE(identical(s, kernels::parallel::commutator_images(cols, g)));
  const CMatrix z = unflatten(cols.col(2), 4);
  EXPECT_LT((s.col(2) - flatten(z * g - g * z)).norm(), 1e-12);
}

TEST(Kernels, CoordinatesBitwiseEqual) {
  SeededRng rng(34);
  const CMatrix basis = random_matrix(rng, 25, 8);
  const auto elems = random_matrices(rng, 11, 5);
  const CMatrix s = kernels::serial::coordinates(basis, elems);
  EXPECT_TRUE(identical(s, kernels::parallel::coordinates(basis, elems)));
  EXPECT_LT((s.col(4) - basis.adjoint() * flatten(elems[4])).norm(), 1e-12);
}

TEST(Kernels, PairGramBitwiseEqual) {
  SeededRng rng(35);
  const CMatrix prod = random_matrix(rng, 9, 16);
  const CMatrix s = kernels::serial::pair_gram(prod, 3, 4);
  EXPECT_TRUE(identical(s, kernels::parallel::pair_gram(prod, 3, 4)));
  EXPECT_EQ(s.rows(), 12);
}
