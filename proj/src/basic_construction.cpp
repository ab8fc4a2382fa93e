#include "vnspec/basic_construction.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cstdio>
#include <string>

#include "vnspec/kernels.hpp"

namespace vnspec {

namespace {

std::string sci(double r) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", r);
  return buf;
}

CMatrix density_from_coords(const MatrixStarAlgebra& alg, const RVector& phi) {
  const Eigen::Index n = alg.ambient_dim();
  CMatrix rho = CMatrix::Zero(n, n);
  for (Eigen::Index k = 0; k < alg.dim(); ++k) rho += phi(k) * alg.basis(k);
  return rho;
}

std::vector<CMatrix> left_reps(const GnsSpace& gns) {
  std::vector<CMatrix> out;
  out.reserve(gns.system().algebra.basis().size());
  for (const auto& b : gns.system().algebra.basis()) out.push_back(gns.left_rep(b));
  return out;
}

}  // namespace

Complex BasicConstruction::mu_bar(const CMatrix& x) const {
  return (mu_bar_coords.cast<Complex>().transpose() * alg_bar.coords(x))(0);
}

CMatrix BasicConstruction::mu_bar_density() const { return density_from_coords(alg_bar, mu_bar_coords); }

RVector lifted_trace(const GnsSpace& gns, const CMatrix& e, const MatrixStarAlgebra& alg_bar,
                     const ToleranceConfig& tol, double* residual) {
  const auto& sys = gns.system();
  const auto& basis = sys.algebra.basis();
  const std::vector<CMatrix> lefts = left_reps(gns);

  // Column (i, j) holds the alg_bar coordinates of l(a_i) e l(a_j).
  const CMatrix spanning = alg_bar.coords(kernels::sandwich_products(lefts, e, lefts));
  const Eigen::Index rank = numerical_rank(spanning, tol.eps_rank);
  if (rank != alg_bar.dim())
    throw Error(ErrorCode::ExtensionInconsistent, "span(A e A) has dimension " + std::to_string(rank) +
                                                      ", <A,e> has " + std::to_string(alg_bar.dim()));

  const auto products = kernels::pairwise_products(basis, basis);
  CVector rhs(static_cast<Eigen::Index>(products.size()));
  for (std::size_t p = 0; p < products.size(); ++p) rhs(static_cast<Eigen::Index>(p)) = sys.mu(products[p]);

  // phi^T spanning = rhs^T
  const CMatrix lhs = spanning.transpose();
  const CVector phi = lhs.completeOrthogonalDecomposition().solve(rhs);
  const double res = (lhs * phi - rhs).norm();
  const double scale = std::max(1.0, rhs.norm());
  if (residual) *residual = res / scale;
  if (res > tol.extension_residual * scale)
    throw Error(ErrorCode::ExtensionInconsistent, "mu_bar(a e b) = mu(ab) has no consistent solution, residual " + sci(res));
  const double imag = phi.imag().cwiseAbs().maxCoeff();
  if (imag > tol.extension_residual * std::max(1.0, phi.norm()))
    throw Error(ErrorCode::ExtensionInconsistent, "mu_bar is not real on Hermitian elements");
  return phi.real();
}

GnsSpace build_bar_gns(const MatrixStarAlgebra& alg_bar, const RVector& mu_bar_coords,
                       const StarAutomorphism& alpha_bar, const ToleranceConfig& tol) {
  WStarSystem bar{alg_bar, TraceFunctional(density_from_coords(alg_bar, mu_bar_coords), false), alpha_bar};
  return GnsSpace::build(bar, tol);
}

BasicConstruction build_basic_construction(const GnsSpace& gns, const Subsystem& sub,
                                           const ToleranceConfig& tol) {
  BasicConstruction bc;
  const Eigen::Index d = gns.dim();
  bc.e = gns.subspace_HF(sub, tol);

  std::vector<CMatrix> generators = left_reps(gns);
  generators.push_back(bc.e);
  bc.alg_bar = generate_algebra(generators, d, tol);

  std::vector<CMatrix> jf;
  for (const auto& f : sub.algebra.basis()) jf.push_back(gns.j(f));
  const MatrixStarAlgebra via_commutant = commutant_of(jf, d, tol);
  bc.commutant_residual = bc.alg_bar.span_distance(via_commutant);
  if (!(bc.commutant_residual < tol.eps_assert))
    throw Error(ErrorCode::CommutantMismatch,
                "<A,e> has dimension " + std::to_string(bc.alg_bar.dim()) + ", (j(F))' has " +
                    std::to_string(via_commutant.dim()) + ", residual " + sci(bc.commutant_residual));

  bc.mu_bar_coords = lifted_trace(gns, bc.e, bc.alg_bar, tol, &bc.extension_residual);
  bc.alpha_bar = StarAutomorphism::conjugation(bc.alg_bar, gns.U());
  bc.bar_gns = build_bar_gns(bc.alg_bar, bc.mu_bar_coords, bc.alpha_bar, tol);
  return bc;
}

RVector lifted_trace_via_isometries(const GnsSpace& gns, const BasicConstruction& bc,
                                    const std::vector<CMatrix>& partial_isometries,
                                    const ToleranceConfig& tol) {
  const Eigen::Index d = gns.dim();
  CMatrix total = CMatrix::Zero(d, d);
  double outside = 0.0;
  for (const auto& v : partial_isometries) {
    if (v.rows() != d || v.cols() != d) throw Error(ErrorCode::DimensionMismatch, "partial isometry has wrong size");
    total += v.adjoint() * bc.e * v;
    outside = std::max(outside, bc.alg_bar.residual(gns.conjugate_by_J(v)));
  }
  const double gap = (total - CMatrix::Identity(d, d)).norm();
  if (gap > tol.eps_assert) throw Error(ErrorCode::PartitionInvalid, "sum v_i^* e v_i differs from 1 by " + sci(gap));
  if (outside > tol.eps_assert) throw Error(ErrorCode::PartitionInvalid, "v_i is not in J<A,e>J, residual " + sci(outside));

  std::vector<CVector> xi;
  for (const auto& v : partial_isometries) xi.push_back(gns.J(v.adjoint() * gns.omega()));
  RVector phi(bc.alg_bar.dim());
  for (Eigen::Index k = 0; k < bc.alg_bar.dim(); ++k) {
    Complex s{};
    for (const auto& x : xi) s += x.dot(bc.alg_bar.basis(k) * x);
    phi(k) = s.real();
  }
  return phi;
}

std::vector<CMatrix> tensor_partial_isometries(const GnsSpace& gns, const CMatrix& e,
                                               const std::vector<CMatrix>& fiber_elements) {
  std::vector<CMatrix> out;
  out.reserve(fiber_elements.size());
  for (const auto& x : fiber_elements) out.push_back(e * gns.left_rep(x));
  return out;
}

}  // namespace vnspec
