#pragma once

#include <vector>

#include "vnspec/gns.hpp"

namespace vnspec {

/// <A,e> acting on H, with the lifted trace stored as coordinates over the
/// basis of alg_bar: mu_bar(x) = sum_k mu_bar_coords(k) c_k(x).
struct BasicConstruction {
  CMatrix e;
  MatrixStarAlgebra alg_bar;
  double commutant_residual = 0.0;  // span distance to (j(F))'
  RVector mu_bar_coords;
  double extension_residual = 0.0;  // least-squares residual of mu_bar(a e b) = mu(ab)
  StarAutomorphism alpha_bar;
  GnsSpace bar_gns;

  Complex mu_bar(const CMatrix& x) const;
  /// Density realizing mu_bar as Tr(rho x) on alg_bar.
  CMatrix mu_bar_density() const;
  /// gamma_mu_bar(x) in H_bar coordinates.
  CVector gamma(const CMatrix& x) const { return bar_gns.vec_of(x); }
  const CMatrix& U_bar() const { return bar_gns.U(); }
};

/// Builds alg_bar from A and e, cross-checks it against (j(F))', and fills in
/// mu_bar, alpha_bar and the GNS pair (H_bar, U_bar).
/// Throws CommutantMismatch, ExtensionInconsistent, TraceNotFaithful.
BasicConstruction build_basic_construction(const GnsSpace& gns, const Subsystem& sub,
                                           const ToleranceConfig& tol);

/// mu_bar coordinates fixed by mu_bar(a e b) = mu(ab) (least squares over the
/// spanning family {a_i e a_j}). Returns the residual through `residual`.
RVector lifted_trace(const GnsSpace& gns, const CMatrix& e, const MatrixStarAlgebra& alg_bar,
                     const ToleranceConfig& tol, double* residual = nullptr);

/// mu_bar(t) = sum_i <J v_i^* Omega, t J v_i^* Omega>, as coordinates over
/// alg_bar. The v_i must lie in J<A,e>J with sum v_i^* e v_i = 1.
/// Throws PartitionInvalid.
RVector lifted_trace_via_isometries(const GnsSpace& gns, const BasicConstruction& bc,
                                    const std::vector<CMatrix>& partial_isometries,
                                    const ToleranceConfig& tol);

/// v_i = e left_rep(x_i). For a tensor system, x_i = 1 (x) c_i with {c_i Omega_sigma}
/// orthonormal gives the partial isometries 1 (x) w_i.
std::vector<CMatrix> tensor_partial_isometries(const GnsSpace& gns, const CMatrix& e,
                                               const std::vector<CMatrix>& fiber_elements);

GnsSpace build_bar_gns(const MatrixStarAlgebra& alg_bar, const RVector& mu_bar_coords,
                       const StarAutomorphism& alpha_bar, const ToleranceConfig& tol);

}  // namespace vnspec
