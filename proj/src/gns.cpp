#include "vnspec/gns.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>

#include "vnspec/kernels.hpp"

namespace vnspec {

GnsSpace GnsSpace::build(const WStarSystem& system, const ToleranceConfig& tol) {
  GnsSpace g;
  g.system_ = system;
  const Eigen::Index d = system.dim();
  const MatrixStarAlgebra& alg = system.algebra;

  g.gram_ = system.trace.gram(alg);
  g.gram_ = 0.5 * (g.gram_ + g.gram_.adjoint()).eval();
  if (d > 0) {
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(g.gram_, Eigen::EigenvaluesOnly);
    const double top = std::max(1.0, eig.eigenvalues()(d - 1));
    if (eig.eigenvalues()(0) <= tol.eps_rank * top)
      throw Error(ErrorCode::TraceNotFaithful, "GNS Gram matrix is singular");
  }
  Eigen::LLT<CMatrix> llt(g.gram_);
  if (llt.info() != Eigen::Success) throw Error(ErrorCode::TraceNotFaithful, "GNS Gram matrix is not positive definite");
  const CMatrix lower = llt.matrixL();
  g.lower_adj_ = lower.adjoint();
  g.lower_adj_inv_ = g.lower_adj_.triangularView<Eigen::Upper>().solve(CMatrix::Identity(d, d));

  const CMatrix id = CMatrix::Identity(alg.ambient_dim(), alg.ambient_dim());
  g.omega_ = g.vec_of(id);

  // h(a^*) = L^* conj(c(a)) for a Hermitian basis.
  g.k_ = g.lower_adj_ * g.lower_adj_inv_.conjugate();
  g.u_ = g.lower_adj_ * system.dynamics.coordinate_map() * g.lower_adj_inv_;
  return g;
}

CVector GnsSpace::vec_of(const CMatrix& a) const { return lower_adj_ * system_.algebra.coords(a); }

CVector GnsSpace::coords_of(const CVector& x) const { return lower_adj_inv_ * x; }

CMatrix GnsSpace::element_of(const CVector& x) const { return system_.algebra.element(coords_of(x)); }

CMatrix GnsSpace::left_rep(const CMatrix& a) const {
  const auto& alg = system_.algebra;
  const auto products = kernels::pairwise_products({a}, alg.basis());
  const CMatrix lm = alg.coords(products);
  return lower_adj_ * lm * lower_adj_inv_;
}

CMatrix GnsSpace::left_rep_coords(const CVector& c) const { return left_rep(system_.algebra.element(c)); }

CMatrix GnsSpace::j(const CMatrix& a) const { return j_operator(left_rep(a)); }

CMatrix GnsSpace::j_operator(const CMatrix& x) const {
  // J x^* J y = K conj(x^* K conj(y)) = K x^T conj(K) y
  return k_ * x.transpose() * k_.conjugate();
}

CMatrix GnsSpace::subspace_HF(const Subsystem& sub, const ToleranceConfig& tol) const {
  CMatrix vecs(dim(), sub.algebra.dim());
  for (Eigen::Index k = 0; k < sub.algebra.dim(); ++k) vecs.col(k) = vec_of(sub.algebra.basis(k));
  const CMatrix q = orthonormal_range(vecs, tol.eps_rank);
  return q * q.adjoint();
}

}  // namespace vnspec
