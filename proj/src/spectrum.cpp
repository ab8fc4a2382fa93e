#include "vnspec/spectrum.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace vnspec {

namespace {

std::string sci(double r) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", r);
  return buf;
}

CMatrix complement_basis(const CMatrix& e, const ToleranceConfig& tol) {
  const Eigen::Index d = e.rows();
  return orthonormal_range(CMatrix::Identity(d, d) - e, tol.eps_rank);
}

bool rounded_less(const CMatrix& a, const CMatrix& b) {
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    const double ra = std::round(a.data()[k].real() * 1e6), rb = std::round(b.data()[k].real() * 1e6);
    if (ra != rb) return ra > rb;
    const double ia = std::round(a.data()[k].imag() * 1e6), ib = std::round(b.data()[k].imag() * 1e6);
    if (ia != ib) return ia > ib;
  }
  return false;
}

}  // namespace

CMatrix module_projection(const GnsSpace& gns, const std::vector<CMatrix>& elements, const ToleranceConfig& tol) {
  CMatrix vecs(gns.dim(), static_cast<Eigen::Index>(elements.size()));
  for (std::size_t m = 0; m < elements.size(); ++m) vecs.col(static_cast<Eigen::Index>(m)) = gns.vec_of(elements[m]);
  const CMatrix q = orthonormal_range(vecs, tol.eps_rank);
  return q * q.adjoint();
}

SubmoduleCandidate certify_candidate(const GnsSpace& gns, const Subsystem& sub, const BasicConstruction& bc,
                                     const CMatrix& projection, std::string label, const ToleranceConfig& tol) {
  SubmoduleCandidate c;
  c.label = std::move(label);
  c.projection = projection;
  c.dim = static_cast<Eigen::Index>(std::llround(projection.trace().real()));
  c.mu_bar = bc.mu_bar(projection).real();
  c.alg_bar_residual = bc.alg_bar.residual(projection);
  const CMatrix& u = gns.U();
  c.U_residual = (u * projection * u.adjoint() - projection).norm();
  c.e_overlap = (projection * bc.e).norm();
  for (const auto& f : sub.algebra.basis()) {
    const CMatrix jf = gns.j(f);
    c.jF_commutator = std::max(c.jF_commutator, (projection * jf - jf * projection).norm());
  }
  const CVector x = bc.gamma(projection);
  c.witness_fixed = (bc.U_bar() * x - x).norm();
  for (const auto& f : sub.algebra.basis())
    c.witness_orthogonal = std::max(c.witness_orthogonal, std::abs(x.dot(bc.gamma(bc.e * gns.left_rep(f)))));
  c.is_right_F_module = c.alg_bar_residual < tol.eps_assert;
  c.is_U_invariant = c.U_residual < tol.eps_assert;
  c.orthogonal_to_HF = c.e_overlap < tol.eps_assert;
  return c;
}

std::vector<SubmoduleCandidate> find_minimal_modules(const GnsSpace& gns, const Subsystem& sub,
                                                     const BasicConstruction& bc, const ToleranceConfig& tol) {
  const CMatrix q = complement_basis(bc.e, tol);
  const Eigen::Index m = q.cols();
  if (m == 0) return {};

  std::vector<CMatrix> gens;
  const CMatrix& u = gns.U();
  gens.push_back(q.adjoint() * u * q);
  gens.push_back(q.adjoint() * u.adjoint() * q);
  for (const auto& f : sub.algebra.basis()) gens.push_back(q.adjoint() * gns.j(f) * q);

  const MatrixStarAlgebra comm = commutant_of(gens, m, tol);
  std::vector<SubmoduleCandidate> out;
  for (const auto& p : block_decomposition(comm, tol))
    out.push_back(certify_candidate(gns, sub, bc, q * p * q.adjoint(), "", tol));

  std::sort(out.begin(), out.end(), [](const SubmoduleCandidate& a, const SubmoduleCandidate& b) {
    const double ra = std::round(a.mu_bar * 1e6), rb = std::round(b.mu_bar * 1e6);
    if (ra != rb) return ra > rb;
    return rounded_less(a.projection, b.projection);
  });
  for (std::size_t k = 0; k < out.size(); ++k) out[k].label = "block_" + std::to_string(k);
  return out;
}

std::vector<double> cesaro_sequence(const WStarSystem& system, const Subsystem& sub, const CMatrix& a,
                                    int n_max, const ToleranceConfig& tol) {
  const ConditionalExpectation dexp(system, sub);
  const MatrixStarAlgebra& alg = system.algebra;
  const CVector c = alg.coords(a);
  const CMatrix da = alg.element(dexp.apply_coords(c));
  if (da.norm() > tol.eps_assert * std::max(1.0, a.norm()))
    throw Error(ErrorCode::NotMeanZero, "D(a) is not zero, |D(a)| = " + sci(da.norm()));

  const CMatrix& m = system.dynamics.coordinate_map();
  const CMatrix a_adj = a.adjoint();
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(std::max(n_max, 0)));
  CVector moved = c;
  double sum = 0.0;
  for (int n = 1; n <= n_max; ++n) {
    moved = m * moved;
    const CMatrix prod = a_adj * alg.element(moved);
    const CMatrix dp = alg.element(dexp.apply_coords(alg.coords(prod)));
    sum += system.mu(dp.adjoint() * dp).real();
    out.push_back(sum / n);
  }
  return out;
}

CesaroSample cesaro_sampled(const std::vector<double>& sequence) {
  CesaroSample s;
  for (std::size_t n = 1; n <= sequence.size(); n *= 2) {
    s.n.push_back(static_cast<int>(n));
    s.value.push_back(sequence[n - 1]);
    if (n >= 8 && std::abs(sequence[n - 1] - sequence[n / 2 - 1]) < 1e-6) break;
  }
  return s;
}

std::vector<CMatrix> admissible_test_elements(const GnsSpace& gns, const BasicConstruction& bc,
                                              const ToleranceConfig& tol) {
  const CMatrix q = complement_basis(bc.e, tol);
  if (q.cols() == 0) return {};
  const CMatrix compressed = q.adjoint() * gns.U() * q;
  Eigen::ComplexSchur<CMatrix> schur(compressed);
  const CMatrix vecs = q * schur.matrixU();
  std::vector<CMatrix> out;
  for (Eigen::Index k = 0; k < vecs.cols(); ++k) out.push_back(gns.element_of(vecs.col(k)));
  return out;
}

RdsCertificate rds_verdict(const BasicConstruction& bc, const std::vector<SubmoduleCandidate>& modules,
                           const ToleranceConfig& tol) {
  RdsCertificate r;
  const Eigen::Index d = bc.e.rows();
  const CMatrix complement = CMatrix::Identity(d, d) - bc.e;
  r.dim_complement = complement_basis(bc.e, tol).cols();
  r.mu_bar_complement = bc.mu_bar(complement).real();

  CMatrix sum = CMatrix::Zero(d, d);
  double mu_sum = 0.0;
  for (const auto& m : modules) {
    if (!m.certified() || !std::isfinite(m.mu_bar)) continue;
    sum += m.projection;
    mu_sum += m.mu_bar;
  }
  const CMatrix e_basis = orthonormal_range(sum, tol.eps_rank);
  r.dim_E = e_basis.cols();
  r.span_residual = (e_basis * e_basis.adjoint() - complement).norm();
  r.completeness_residual = (sum - complement).norm();
  r.additivity_residual = std::abs(mu_sum - r.mu_bar_complement);
  r.verdict = r.span_residual < tol.eps_assert;
  return r;
}

bool rwm_verdict_exact(const ErgodicityCheck& ergodicity, const RdsCertificate& rds) {
  const bool by_ergodicity = ergodicity.ergodic;
  const bool by_modules = rds.dim_E == 0;
  const bool by_dimension = rds.dim_complement == 0;
  if (by_ergodicity != by_modules || by_modules != by_dimension)
    throw Error(ErrorCode::VerdictMismatch,
                std::string("relative ergodicity says ") + (by_ergodicity ? "true" : "false") + ", dim E = " +
                    std::to_string(rds.dim_E) + ", dim(H - H_F) = " + std::to_string(rds.dim_complement));
  return by_ergodicity;
}

FiberAnalysis classical_fiber_analysis(const GnsSpace& gns, const Subsystem& sub,
                                       const SubmoduleCandidate& module, const ToleranceConfig& tol) {
  if (!is_commutative(sub.algebra, tol.eps_assert))
    throw Error(ErrorCode::NotCommutative, "fiber analysis needs a commutative subalgebra");
  FiberAnalysis fa;
  fa.measured = module.mu_bar;
  for (const auto& p : minimal_projections_commutative(sub.algebra, tol)) {
    const double nu = gns.system().mu(p).real();
    const Eigen::Index dim = numerical_rank(gns.j(p) * module.projection, tol.eps_rank);
    fa.nu.push_back(nu);
    fa.fiber_dims.push_back(dim);
    fa.unweighted_sum += static_cast<double>(dim);
    fa.weighted_sum += nu * static_cast<double>(dim);
    fa.rank = std::max(fa.rank, dim);
  }
  const double dw = std::abs(fa.weighted_sum - fa.measured);
  const double du = std::abs(fa.unweighted_sum - fa.measured);
  fa.flagged = dw <= du ? "weighted" : "unweighted";
  fa.flagged_residual = std::min(dw, du);
  return fa;
}

AbsoluteSpectrum absolute_spectrum_check(const GnsSpace& gns, const ToleranceConfig& tol) {
  AbsoluteSpectrum out;
  const CMatrix& u = gns.U();
  if (u.rows() == 0) {
    out.spans = true;
    return out;
  }
  Eigen::ComplexSchur<CMatrix> schur(u);
  const CMatrix& t = schur.matrixT();
  for (Eigen::Index k = 0; k < t.rows(); ++k) out.eigenvalues.push_back(t(k, k));
  // U is normal, so its Schur form is diagonal and the Schur vectors are eigenvectors.
  const double off = (t - CMatrix(t.diagonal().asDiagonal())).norm();
  out.spans = off < tol.eps_assert && numerical_rank(schur.matrixU(), tol.eps_rank) == u.rows();
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end(), [](const Complex& a, const Complex& b) {
    const double pa = std::round(std::arg(a) * 1e9), pb = std::round(std::arg(b) * 1e9);
    if (pa != pb) return pa < pb;
    return std::abs(a) < std::abs(b);
  });
  return out;
}

}  // namespace vnspec
