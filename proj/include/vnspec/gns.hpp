#pragma once

#include "vnspec/system.hpp"

namespace vnspec {

/// GNS space of (A, mu) in standard form. H is identified with C^dim(A)
/// through h(a) = L^* c(a), where G = L L^* is the Gram matrix mu(B_k^* B_l),
/// so the coordinates are orthonormal for <a Omega, b Omega> = mu(a^* b).
///
/// J is antilinear: J x = K conj(x).
class GnsSpace {
 public:
  GnsSpace() = default;

  /// Throws TraceNotFaithful when the Gram matrix is singular at eps_rank.
  static GnsSpace build(const WStarSystem& system, const ToleranceConfig& tol);

  Eigen::Index dim() const { return system_.dim(); }
  const WStarSystem& system() const { return system_; }
  const CMatrix& gram() const { return gram_; }

  CVector vec_of(const CMatrix& a) const;            // a Omega
  CVector vec_of_coords(const CVector& c) const { return lower_adj_ * c; }
  CMatrix vecs_of_coords(const CMatrix& c) const { return lower_adj_ * c; }
  CMatrix element_of(const CVector& x) const;        // inverse of vec_of
  CVector coords_of(const CVector& x) const;         // algebra coordinates of element_of(x)
  const CVector& omega() const { return omega_; }

  /// Matrix of b Omega -> a b Omega.
  CMatrix left_rep(const CMatrix& a) const;
  CMatrix left_rep_coords(const CVector& c) const;

  const CMatrix& J_matrix() const { return k_; }
  CVector J(const CVector& x) const { return k_ * x.conjugate(); }
  /// J X J as a linear operator.
  CMatrix conjugate_by_J(const CMatrix& x) const { return k_ * x.conjugate() * k_.conjugate(); }

  /// j(a) = J a^* J for a in A, realized on H.
  CMatrix j(const CMatrix& a) const;
  /// j(x) = J x^* J for an arbitrary operator on H.
  CMatrix j_operator(const CMatrix& x) const;

  const CMatrix& U() const { return u_; }

  /// Element a with left_rep(a) = x, read off from x Omega. Only meaningful
  /// for x in the image of left_rep.
  CMatrix element_of_left_operator(const CMatrix& x) const { return element_of(x * omega_); }

  /// x a := j(a) x
  CVector right_action(const CVector& x, const CMatrix& a) const { return j(a) * x; }

  /// Orthogonal projection onto H_F = span{f Omega}.
  CMatrix subspace_HF(const Subsystem& sub, const ToleranceConfig& tol) const;

 private:
  WStarSystem system_;
  CMatrix gram_;
  CMatrix lower_adj_;      // L^*
  CMatrix lower_adj_inv_;  // L^{-*}
  CMatrix k_;
  CMatrix u_;
  CVector omega_;
};

inline GnsSpace build_gns(const WStarSystem& system, const ToleranceConfig& tol) {
  return GnsSpace::build(system, tol);
}

}  // namespace vnspec
