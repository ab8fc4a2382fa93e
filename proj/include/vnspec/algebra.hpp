#pragma once

#include <vector>

#include "vnspec/linalg.hpp"

namespace vnspec {

/// A unital or non-unital *-subalgebra of M_N stored as a Hermitian,
/// Hilbert–Schmidt-orthonormal basis. Because every basis element is
/// Hermitian, the coordinates of a* are the complex conjugates of those of a.
class MatrixStarAlgebra {
 public:
  MatrixStarAlgebra() = default;

  /// Takes ownership of an already orthonormal Hermitian basis.
  MatrixStarAlgebra(Eigen::Index ambient_dim, std::vector<CMatrix> basis);

  Eigen::Index ambient_dim() const { return ambient_dim_; }
  Eigen::Index dim() const { return static_cast<Eigen::Index>(basis_.size()); }
  const std::vector<CMatrix>& basis() const { return basis_; }
  const CMatrix& basis(Eigen::Index k) const { return basis_[static_cast<std::size_t>(k)]; }
  bool contains_identity() const { return contains_identity_; }

  /// N^2 x dim matrix whose columns are the flattened basis elements.
  const CMatrix& flat_basis() const { return flat_; }

  CVector coords(const CMatrix& x) const;
  CMatrix coords(const std::vector<CMatrix>& xs) const;
  CMatrix element(const Eigen::Ref<const CVector>& coords) const;

  /// Hilbert–Schmidt distance from x to the span.
  double residual(const CMatrix& x) const;
  bool contains(const CMatrix& x, double tol) const { return residual(x) <= tol; }

  /// Largest residual of a product or adjoint of basis elements; < eps_assert
  /// for a genuine *-algebra.
  double closure_residual() const;

  /// Mutual-inclusion residual of the two spans (max of both directions);
  /// infinite when the dimensions or ambient spaces differ.
  double span_distance(const MatrixStarAlgebra& other) const;

  /// Uniformly distributed coefficients in [-1,1] + i[-1,1] over the basis.
  CMatrix random_element(SeededRng& rng) const;

 private:
  Eigen::Index ambient_dim_ = 0;
  std::vector<CMatrix> basis_;
  CMatrix flat_;
  bool contains_identity_ = false;
};

/// Incremental Hermitian orthonormalization (modified Gram–Schmidt with one
/// re-orthogonalization pass and real coefficients). Adding x adds both
/// (x + x*)/2 and (x - x*)/2i, so the span stays *-closed.
class HermitianSpanBuilder {
 public:
  HermitianSpanBuilder(Eigen::Index ambient_dim, double eps_rank);

  /// Returns the number of new basis elements (0, 1 or 2).
  int add(const CMatrix& x);
  /// Batch add; candidates already inside the span are filtered with one GEMM.
  int add_all(const std::vector<CMatrix>& xs);

  Eigen::Index dim() const { return static_cast<Eigen::Index>(basis_.size()); }
  const std::vector<CMatrix>& basis() const { return basis_; }
  MatrixStarAlgebra build() const { return MatrixStarAlgebra(n_, basis_); }

 private:
  bool add_hermitian(CMatrix h, double reference);

  Eigen::Index n_;
  double eps_rank_;
  std::vector<CMatrix> basis_;
  CMatrix flat_;  // n^2 x capacity, first dim() columns valid
};

/// Smallest unital *-subalgebra of M_N containing the generators.
MatrixStarAlgebra generate_algebra(const std::vector<CMatrix>& generators,
                                   Eigen::Index ambient_dim, const ToleranceConfig& tol);

/// {X : X g = g X for all g} for a *-closed generating set. The null space is
/// computed generator by generator on the surviving subspace.
MatrixStarAlgebra commutant_of(const std::vector<CMatrix>& generators, Eigen::Index ambient_dim,
                               const ToleranceConfig& tol);

MatrixStarAlgebra commutant(const MatrixStarAlgebra& alg, const ToleranceConfig& tol);

/// Center of the algebra, as a (commutative) *-subalgebra.
MatrixStarAlgebra center(const MatrixStarAlgebra& alg, const ToleranceConfig& tol);

/// Minimal projections of the center: pairwise orthogonal, summing to 1,
/// ordered by the position of their first nonzero diagonal entry.
std::vector<CMatrix> block_decomposition(const MatrixStarAlgebra& alg, const ToleranceConfig& tol);

/// Minimal projections of a commutative unital *-algebra (its atoms).
std::vector<CMatrix> minimal_projections_commutative(const MatrixStarAlgebra& alg,
                                                     const ToleranceConfig& tol);

bool is_commutative(const MatrixStarAlgebra& alg, double tol);

}  // namespace vnspec
