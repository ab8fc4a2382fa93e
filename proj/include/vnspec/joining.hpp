#pragma once

#include <cstdint>

#include "vnspec/basic_construction.hpp"

namespace vnspec {

/// A' = commutant of left_rep(A) on H, with mu'(b) = <Omega, b Omega> and
/// alpha'(b) = U b U^*.
WStarSystem build_commutant_system(const GnsSpace& gns, const ToleranceConfig& tol);

/// Relatively independent joining of A with A' over F, on pair coordinates
/// p = k * dim(A') + l for the simple tensor B_k (x) B'_l.
struct JoiningData {
  WStarSystem commutant;
  CMatrix omega_table;     // omega(B_k (x) B'_l), dim(A) x dim(A')
  double two_formula_residual = 0.0;  // conditional-expectation route vs mu_bar route
  double marginal_residual = 0.0;
  CMatrix gram;            // omega(s_p^* s_q)
  CMatrix null_basis;      // null vectors of the Gram matrix
  CMatrix feature;         // Phi: pair coordinates -> H_omega
  CMatrix section;         // V Lambda^{-1/2}: H_omega -> pair coordinates, Phi * section = 1
  CMatrix W;               // unitary implementing alpha (x) alpha'
  CVector omega_vec;       // gamma_omega(1 (x) 1)
  double min_eigenvalue = 0.0;

  // R: H_omega -> H_bar
  CMatrix R;
  double null_annihilation = 0.0;  // |R_0 applied to Gram null vectors|
  double R_star_R = 0.0;
  double R_R_star = 0.0;
  double R_intertwine = 0.0;        // |R W R^* - U_bar|
  double eq_R0 = 0.0;               // random simple tensors
  double H_lambda_residual = 0.0;   // R gamma_omega(F (x) 1) vs R gamma_omega(1 (x) j(F)) vs gamma_bar(e F)

  Eigen::Index dim_H_omega() const { return W.rows(); }
  /// gamma_omega of a pair-coordinate vector.
  CVector gamma(const CVector& pair_coords) const { return feature * pair_coords; }
};

/// omega(a (x) b) = mu(D(a) D(j(b))) for b in A'. Throws StateNotPositive.
JoiningData relative_joining(const GnsSpace& gns, const Subsystem& sub, const BasicConstruction& bc,
                             const ToleranceConfig& tol);

/// Fills R and its residuals; R gamma_omega(a (x) b) = gamma_bar(a e j(b)).
/// Throws IsometryViolation when eq_R_0 or well-definedness fails.
void build_R(JoiningData& jd, const GnsSpace& gns, const Subsystem& sub, const BasicConstruction& bc,
             const ToleranceConfig& tol, std::uint64_t seed);

struct ErgodicityCheck {
  bool ergodic = false;
  Eigen::Index fixed_dim = 0;
  Eigen::Index H_lambda_dim = 0;
  double inclusion_residual = 0.0;
  CMatrix fixed_basis;
  CMatrix H_lambda_basis;
};

/// H_bar^{U_bar} contained in H_bar_lambda = span gamma_bar(e f).
ErgodicityCheck relative_ergodicity_check(const GnsSpace& gns, const Subsystem& sub,
                                          const BasicConstruction& bc, const ToleranceConfig& tol);

}  // namespace vnspec
