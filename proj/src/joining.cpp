#include "vnspec/joining.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
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

std::vector<CMatrix> left_reps(const GnsSpace& gns) {
  std::vector<CMatrix> out;
  for (const auto& b : gns.system().algebra.basis()) out.push_back(gns.left_rep(b));
  return out;
}

// Columns: A-coordinates of j(y) for each y (operators in A').
CMatrix j_coords(const GnsSpace& gns, const std::vector<CMatrix>& ys) {
  CMatrix out(gns.dim(), static_cast<Eigen::Index>(ys.size()));
  for (std::size_t m = 0; m < ys.size(); ++m)
    out.col(static_cast<Eigen::Index>(m)) = gns.coords_of(gns.j_operator(ys[m]) * gns.omega());
  return out;
}

double span_gap(const CMatrix& x, const CMatrix& y) {
  return std::max(inclusion_residual(x, y), inclusion_residual(y, x));
}

}  // namespace

WStarSystem build_commutant_system(const GnsSpace& gns, const ToleranceConfig& tol) {
  const MatrixStarAlgebra alg = commutant_of(left_reps(gns), gns.dim(), tol);
  const CVector& om = gns.omega();
  TraceFunctional trace(om * om.adjoint(), gns.system().trace.normalized());
  return WStarSystem{alg, trace, StarAutomorphism::conjugation(alg, gns.U())};
}

JoiningData relative_joining(const GnsSpace& gns, const Subsystem& sub, const BasicConstruction& bc,
                             const ToleranceConfig& tol) {
  JoiningData jd;
  const WStarSystem& sys = gns.system();
  jd.commutant = build_commutant_system(gns, tol);
  const MatrixStarAlgebra& a = sys.algebra;
  const MatrixStarAlgebra& ap = jd.commutant.algebra;
  const Eigen::Index d = a.dim(), dp = ap.dim();

  const CMatrix D = ConditionalExpectation(sys, sub).coordinate_map();
  // T_kl = mu(B_k B_l) = Gram for a Hermitian basis
  const CMatrix T = sys.trace.gram(a).transpose();
  const CMatrix left_factor = D.transpose() * T * D;

  // omega(x (x) y) = u^T T v, u = D c(x), v = D c(j(y))
  jd.omega_table = left_factor * j_coords(gns, ap.basis());

  // mu_bar(e a e j(y))
  std::vector<CMatrix> ea;
  for (const auto& l : left_reps(gns)) ea.push_back(bc.e * l);
  std::vector<CMatrix> jy;
  for (const auto& y : ap.basis()) jy.push_back(gns.j_operator(y));
  const CMatrix second = bc.mu_bar_coords.cast<Complex>().transpose() *
                         bc.alg_bar.coords(kernels::sandwich_products(ea, bc.e, jy));
  jd.two_formula_residual = 0.0;
  for (Eigen::Index k = 0; k < d; ++k)
    for (Eigen::Index l = 0; l < dp; ++l)
      jd.two_formula_residual = std::max(jd.two_formula_residual, std::abs(second(0, k * dp + l) - jd.omega_table(k, l)));

  const Eigen::Index n = a.ambient_dim();
  const CVector one_a = a.coords(CMatrix::Identity(n, n));
  const CVector one_ap = ap.coords(CMatrix::Identity(d, d));
  const CVector left_marg = jd.omega_table * one_ap;
  const CVector right_marg = jd.omega_table.transpose() * one_a;
  double marg = 0.0;
  for (Eigen::Index k = 0; k < d; ++k) marg = std::max(marg, std::abs(left_marg(k) - sys.mu(a.basis(k))));
  for (Eigen::Index l = 0; l < dp; ++l)
    marg = std::max(marg, std::abs(right_marg(l) - jd.commutant.mu(ap.basis(l))));
  jd.marginal_residual = marg;

  // Gram over simple tensors: omega(B_k B_k' (x) B'_l B'_l')
  const CMatrix ux = a.coords(kernels::pairwise_products(a.basis(), a.basis()));
  const CMatrix vy = j_coords(gns, kernels::pairwise_products(ap.basis(), ap.basis()));
  const CMatrix products = ux.transpose() * left_factor * vy;
  jd.gram = kernels::pair_gram(products, d, dp);
  jd.gram = 0.5 * (jd.gram + jd.gram.adjoint()).eval();

  Eigen::SelfAdjointEigenSolver<CMatrix> eig(jd.gram);
  const RVector& lambda = eig.eigenvalues();
  const Eigen::Index total = lambda.size();
  const double scale = std::max(1.0, lambda(total - 1));
  jd.min_eigenvalue = lambda(0);
  if (lambda(0) < -tol.eps_assert * scale)
    throw Error(ErrorCode::StateNotPositive, "joining Gram has eigenvalue " + sci(lambda(0)));
  Eigen::Index first = 0;
  while (first < total && lambda(first) <= tol.eps_rank * scale) ++first;
  const Eigen::Index r = total - first;
  const CMatrix v = eig.eigenvectors().rightCols(r);
  const RVector sq = lambda.tail(r).cwiseSqrt();
  jd.null_basis = eig.eigenvectors().leftCols(first);
  jd.feature = sq.cast<Complex>().asDiagonal() * v.adjoint();
  jd.section = v * sq.cwiseInverse().cast<Complex>().asDiagonal();

  const CMatrix tau = kron(sys.dynamics.coordinate_map(), jd.commutant.dynamics.coordinate_map());
  jd.W = jd.feature * tau * jd.section;
  jd.omega_vec = jd.feature * kron(one_a, one_ap);
  return jd;
}

void build_R(JoiningData& jd, const GnsSpace& gns, const Subsystem& sub, const BasicConstruction& bc,
             const ToleranceConfig& tol, std::uint64_t seed) {
  const MatrixStarAlgebra& a = gns.system().algebra;
  const MatrixStarAlgebra& ap = jd.commutant.algebra;
  const Eigen::Index d = a.dim(), dp = ap.dim();

  std::vector<CMatrix> jy;
  for (const auto& y : ap.basis()) jy.push_back(gns.j_operator(y));
  // R_0(B_k (x) B'_l) = l(B_k) e j(B'_l)
  const CMatrix psi =
      bc.bar_gns.vecs_of_coords(bc.alg_bar.coords(kernels::sandwich_products(left_reps(gns), bc.e, jy)));

  jd.R = psi * jd.section;
  jd.null_annihilation = jd.null_basis.cols() ? (psi * jd.null_basis).operatorNorm() : 0.0;

  const Eigen::Index hw = jd.R.cols(), hb = jd.R.rows();
  jd.R_star_R = (jd.R.adjoint() * jd.R - CMatrix::Identity(hw, hw)).operatorNorm();
  jd.R_R_star = (jd.R * jd.R.adjoint() - CMatrix::Identity(hb, hb)).operatorNorm();
  jd.R_intertwine = (jd.R * jd.W * jd.R.adjoint() - bc.U_bar()).operatorNorm();

  SeededRng rng(seed);
  double worst = 0.0;
  std::vector<CVector> simple;
  for (int m = 0; m < 100; ++m) {
    CVector x(d), y(dp);
    for (Eigen::Index k = 0; k < d; ++k) x(k) = rng.complex_symmetric();
    for (Eigen::Index l = 0; l < dp; ++l) y(l) = rng.complex_symmetric();
    simple.push_back(kron(x, y));
  }
  for (std::size_t m = 0; m < simple.size(); ++m) {
    const CVector& s = simple[m];
    const CVector& t = simple[(m + 1) % simple.size()];
    const Complex lhs = (psi * s).dot(psi * t);
    const Complex rhs = s.dot(jd.gram * t);
    worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
  }
  jd.eq_R0 = worst;

  // H_lambda through F (x) 1 and 1 (x) j(F), both pushed through R, against gamma_bar(e F)
  const Eigen::Index n = a.ambient_dim();
  const CVector one_a = a.coords(CMatrix::Identity(n, n));
  const CVector one_ap = ap.coords(CMatrix::Identity(d, d));
  const Eigen::Index fd = sub.algebra.dim();
  CMatrix via_left(hb, fd), via_right(hb, fd), direct(hb, fd);
  for (Eigen::Index k = 0; k < fd; ++k) {
    const CMatrix& f = sub.algebra.basis(k);
    via_left.col(k) = jd.R * jd.gamma(kron(a.coords(f), one_ap));
    via_right.col(k) = jd.R * jd.gamma(kron(one_a, ap.coords(gns.j(f))));
    direct.col(k) = bc.gamma(bc.e * gns.left_rep(f));
  }
  const CMatrix ql = orthonormal_range(via_left, tol.eps_rank);
  const CMatrix qr = orthonormal_range(via_right, tol.eps_rank);
  const CMatrix qd = orthonormal_range(direct, tol.eps_rank);
  jd.H_lambda_residual = std::max({span_gap(ql, qd), span_gap(qr, qd), span_gap(ql, qr)});
  if (ql.cols() != qd.cols() || qr.cols() != qd.cols()) jd.H_lambda_residual = std::max(jd.H_lambda_residual, 1.0);

  if (jd.eq_R0 > tol.eps_assert || jd.null_annihilation > tol.eps_assert)
    throw Error(ErrorCode::IsometryViolation, "R_0 is not isometric on simple tensors, residual " +
                                                  sci(std::max(jd.eq_R0, jd.null_annihilation)));
}

ErgodicityCheck relative_ergodicity_check(const GnsSpace& gns, const Subsystem& sub,
                                          const BasicConstruction& bc, const ToleranceConfig& tol) {
  ErgodicityCheck out;
  const CMatrix& ub = bc.U_bar();
  const Eigen::Index hb = ub.rows();
  out.fixed_basis = null_space(ub - CMatrix::Identity(hb, hb), tol.eigen_cluster);
  CMatrix lam(hb, sub.algebra.dim());
  for (Eigen::Index k = 0; k < sub.algebra.dim(); ++k)
    lam.col(k) = bc.gamma(bc.e * gns.left_rep(sub.algebra.basis(k)));
  out.H_lambda_basis = orthonormal_range(lam, tol.eps_rank);
  out.fixed_dim = out.fixed_basis.cols();
  out.H_lambda_dim = out.H_lambda_basis.cols();
  out.inclusion_residual = inclusion_residual(out.fixed_basis, out.H_lambda_basis);
  out.ergodic = out.inclusion_residual < tol.eps_assert;
  return out;
}

}  // namespace vnspec
