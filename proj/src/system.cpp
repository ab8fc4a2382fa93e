#include "vnspec/system.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "vnspec/kernels.hpp"

namespace vnspec {

namespace {

std::string fmt_residual(double r) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", r);
  return buf;
}

double min_eigenvalue(const CMatrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(0.5 * (hermitian + hermitian.adjoint()), Eigen::EigenvaluesOnly);
  return eig.eigenvalues()(0);
}

double max_eigenvalue(const CMatrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(0.5 * (hermitian + hermitian.adjoint()), Eigen::EigenvaluesOnly);
  return eig.eigenvalues()(eig.eigenvalues().size() - 1);
}

}  // namespace

CMatrix TraceFunctional::gram(const MatrixStarAlgebra& alg) const {
  // Tr(X Y) = vec(X^T) . vec(Y)
  const Eigen::Index d = alg.dim();
  const Eigen::Index n = alg.ambient_dim();
  CMatrix left(n * n, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    const CMatrix x = (density_ * alg.basis(k).adjoint()).transpose();
    left.col(k) = flatten(x);
  }
  return left.transpose() * alg.flat_basis();
}

void TraceFunctional::validate_on(const MatrixStarAlgebra& alg, const ToleranceConfig& tol) const {
  const Eigen::Index n = alg.ambient_dim();
  if (density_.rows() != n || density_.cols() != n)
    throw Error(ErrorCode::TraceInvalid, "density is not " + std::to_string(n) + "x" + std::to_string(n));
  if (!all_finite(density_)) throw Error(ErrorCode::NotFinite, "trace density has NaN or Inf entries");
  const double asym = (density_ - density_.adjoint()).norm();
  if (asym > tol.eps_assert) throw Error(ErrorCode::TraceInvalid, "density not Hermitian, residual " + fmt_residual(asym));
  const double scale = std::max(1.0, density_.norm());
  if (min_eigenvalue(density_) < -tol.eps_assert * scale)
    throw Error(ErrorCode::TraceInvalid, "density is not positive semidefinite");

  const CMatrix g = gram(alg);
  const double top = std::max(1.0, max_eigenvalue(g));
  if (alg.dim() > 0 && min_eigenvalue(g) <= tol.eps_rank * top)
    throw Error(ErrorCode::TraceNotFaithful, "Gram matrix of the trace is singular on the algebra");

  double worst = 0.0;
  for (Eigen::Index k = 0; k < alg.dim(); ++k)
    for (Eigen::Index l = k + 1; l < alg.dim(); ++l) {
      const CMatrix& a = alg.basis(k);
      const CMatrix& b = alg.basis(l);
      worst = std::max(worst, std::abs(value(a * b) - value(b * a)));
    }
  if (worst > tol.eps_assert) throw Error(ErrorCode::TraceInvalid, "functional is not tracial, residual " + fmt_residual(worst));

  if (normalized_) {
    const double off = std::abs(value(CMatrix::Identity(n, n)) - 1.0);
    if (off > tol.eps_assert) throw Error(ErrorCode::TraceInvalid, "normalized trace has value(1) != 1");
  }
}

// ---------------------------------------------------------------------------

StarAutomorphism StarAutomorphism::conjugation(const MatrixStarAlgebra& alg, const CMatrix& unitary) {
  const Eigen::Index n = alg.ambient_dim();
  if (unitary.rows() != n || unitary.cols() != n)
    throw Error(ErrorCode::DimensionMismatch, "unitary does not match ambient dimension");
  std::vector<CMatrix> images;
  images.reserve(alg.basis().size());
  const CMatrix w_adj = unitary.adjoint();
  for (const auto& b : alg.basis()) images.push_back(unitary * b * w_adj);
  double worst = 0.0;
  for (const auto& x : images) worst = std::max(worst, alg.residual(x));
  if (worst > 1e-8 * std::max(1.0, unitary.norm()))
    throw Error(ErrorCode::AutomorphismInvalid, "conjugation does not preserve the algebra, residual " + fmt_residual(worst));
  return StarAutomorphism(alg.coords(images));
}

StarAutomorphism StarAutomorphism::identity(const MatrixStarAlgebra& alg) {
  return StarAutomorphism(CMatrix::Identity(alg.dim(), alg.dim()));
}

CMatrix StarAutomorphism::apply(const MatrixStarAlgebra& alg, const CMatrix& x) const {
  return alg.element(map_ * alg.coords(x));
}

void StarAutomorphism::validate(const MatrixStarAlgebra& alg, const TraceFunctional& trace,
                                const ToleranceConfig& tol) const {
  const Eigen::Index d = alg.dim();
  if (map_.rows() != d || map_.cols() != d)
    throw Error(ErrorCode::AutomorphismInvalid, "coordinate map is not " + std::to_string(d) + "x" + std::to_string(d));
  if (!all_finite(map_)) throw Error(ErrorCode::NotFinite, "automorphism has NaN or Inf entries");

  std::vector<CMatrix> images(static_cast<std::size_t>(d));
  for (Eigen::Index k = 0; k < d; ++k) images[static_cast<std::size_t>(k)] = alg.element(map_.col(k));

  double star = 0.0, trace_shift = 0.0;
  for (Eigen::Index k = 0; k < d; ++k) {
    const CMatrix& img = images[static_cast<std::size_t>(k)];
    star = std::max(star, (img - img.adjoint()).norm());
    trace_shift = std::max(trace_shift, std::abs(trace.value(img) - trace.value(alg.basis(k))));
  }
  if (star > tol.eps_assert) throw Error(ErrorCode::AutomorphismInvalid, "map is not *-preserving, residual " + fmt_residual(star));
  if (trace_shift > tol.eps_assert)
    throw Error(ErrorCode::AutomorphismInvalid, "map does not preserve the trace, residual " + fmt_residual(trace_shift));

  const auto products = kernels::pairwise_products(alg.basis(), alg.basis());
  const auto image_products = kernels::pairwise_products(images, images);
  const CMatrix product_coords = alg.coords(products);
  double mult = 0.0;
  for (std::size_t p = 0; p < products.size(); ++p) {
    const CMatrix mapped = alg.element(map_ * product_coords.col(static_cast<Eigen::Index>(p)));
    mult = std::max(mult, (mapped - image_products[p]).norm());
  }
  if (mult > tol.eps_assert) throw Error(ErrorCode::AutomorphismInvalid, "map is not multiplicative, residual " + fmt_residual(mult));

  if (d > 0) {
    const RVector sv = svd(map_, false, false).singular_values;
    if (sv(d - 1) <= tol.eps_rank * std::max(1.0, sv(0)))
      throw Error(ErrorCode::AutomorphismInvalid, "map is not invertible");
  }
}

// ---------------------------------------------------------------------------

void WStarSystem::validate(const ToleranceConfig& tol) const {
  if (!algebra.contains_identity()) throw Error(ErrorCode::SpecInvalid, "algebra does not contain the identity");
  const double closure = algebra.closure_residual();
  if (closure > tol.eps_assert) throw Error(ErrorCode::SpecInvalid, "basis does not span a *-algebra, residual " + fmt_residual(closure));
  trace.validate_on(algebra, tol);
  dynamics.validate(algebra, trace, tol);
}

void Subsystem::validate(const WStarSystem& parent, const ToleranceConfig& tol) const {
  if (algebra.ambient_dim() != parent.ambient_dim())
    throw Error(ErrorCode::SubsystemInvalid, "subalgebra lives in a different ambient space");
  if (!algebra.contains_identity()) throw Error(ErrorCode::SubsystemInvalid, "subalgebra does not contain the unit");
  double outside = 0.0, moved = 0.0;
  for (const auto& f : algebra.basis()) {
    outside = std::max(outside, parent.algebra.residual(f));
  }
  if (outside > tol.eps_assert) throw Error(ErrorCode::SubsystemInvalid, "subalgebra is not contained in the algebra, residual " + fmt_residual(outside));
  for (const auto& f : algebra.basis()) moved = std::max(moved, algebra.residual(parent.alpha(f)));
  if (moved > tol.eps_assert) throw Error(ErrorCode::SubsystemInvalid, "alpha(F) is not F, residual " + fmt_residual(moved));
  const CMatrix g = parent.trace.gram(algebra);
  if (algebra.dim() > 0 && min_eigenvalue(g) <= tol.eps_rank * std::max(1.0, max_eigenvalue(g)))
    throw Error(ErrorCode::SubsystemInvalid, "restricted trace is not faithful on F");
}

Subsystem make_subsystem(const WStarSystem& parent, const std::vector<CMatrix>& generators,
                         const ToleranceConfig& tol) {
  Subsystem sub{generate_algebra(generators, parent.ambient_dim(), tol)};
  sub.validate(parent, tol);
  return sub;
}

Subsystem trivial_subsystem(const WStarSystem& parent, const ToleranceConfig& tol) {
  return make_subsystem(parent, {}, tol);
}

Subsystem full_subsystem(const WStarSystem& parent) { return Subsystem{parent.algebra}; }

// ---------------------------------------------------------------------------

ConditionalExpectation::ConditionalExpectation(const WStarSystem& parent, const Subsystem& sub)
    : algebra_(parent.algebra) {
  const CMatrix g_a = parent.trace.gram(parent.algebra);
  const CMatrix f_coords = parent.algebra.coords(sub.algebra.basis());
  const CMatrix g_f = f_coords.adjoint() * g_a * f_coords;
  Eigen::LLT<CMatrix> llt(0.5 * (g_f + g_f.adjoint()));
  if (llt.info() != Eigen::Success)
    throw Error(ErrorCode::SubsystemInvalid, "restricted trace is not faithful on F");
  map_ = f_coords * llt.solve(f_coords.adjoint() * g_a);
}

CMatrix ConditionalExpectation::apply(const CMatrix& a) const {
  return algebra_.element(map_ * algebra_.coords(a));
}

}  // namespace vnspec
