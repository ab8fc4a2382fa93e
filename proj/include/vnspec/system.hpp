#pragma once

#include <vector>

#include "vnspec/algebra.hpp"

namespace vnspec {

/// Trace given by a density matrix: value(a) = Tr(rho a). Only its values on
/// the algebra matter, so faithfulness and traciality are checked there.
class TraceFunctional {
 public:
  TraceFunctional() = default;
  TraceFunctional(CMatrix density, bool normalized) : density_(std::move(density)), normalized_(normalized) {}

  const CMatrix& density() const { return density_; }
  bool normalized() const { return normalized_; }

  Complex value(const CMatrix& a) const { return (density_ * a).trace(); }

  /// Gram matrix value(B_k* B_l) over the algebra basis.
  CMatrix gram(const MatrixStarAlgebra& alg) const;

  /// Throws TraceInvalid / TraceNotFaithful.
  void validate_on(const MatrixStarAlgebra& alg, const ToleranceConfig& tol) const;

 private:
  CMatrix density_;
  bool normalized_ = true;
};

/// *-automorphism stored as its matrix over the algebra's basis coordinates.
class StarAutomorphism {
 public:
  StarAutomorphism() = default;
  explicit StarAutomorphism(CMatrix coordinate_map) : map_(std::move(coordinate_map)) {}

  /// x -> W x W*, restricted to the algebra.
  static StarAutomorphism conjugation(const MatrixStarAlgebra& alg, const CMatrix& unitary);
  static StarAutomorphism identity(const MatrixStarAlgebra& alg);

  const CMatrix& coordinate_map() const { return map_; }

  CMatrix apply(const MatrixStarAlgebra& alg, const CMatrix& x) const;
  CVector apply_coords(const CVector& c) const { return map_ * c; }

  /// Throws AutomorphismInvalid naming the failed property.
  void validate(const MatrixStarAlgebra& alg, const TraceFunctional& trace, const ToleranceConfig& tol) const;

 private:
  CMatrix map_;
};

struct WStarSystem {
  MatrixStarAlgebra algebra;
  TraceFunctional trace;
  StarAutomorphism dynamics;

  Eigen::Index ambient_dim() const { return algebra.ambient_dim(); }
  Eigen::Index dim() const { return algebra.dim(); }
  Complex mu(const CMatrix& a) const { return trace.value(a); }
  CMatrix alpha(const CMatrix& a) const { return dynamics.apply(algebra, a); }

  void validate(const ToleranceConfig& tol) const;
};

/// Unital *-subalgebra F of the parent algebra; the parent is passed
/// alongside wherever it is needed.
struct Subsystem {
  MatrixStarAlgebra algebra;

  /// Inclusion, alpha(F) = F, unit and faithfulness of the restricted trace.
  /// Throws SubsystemInvalid.
  void validate(const WStarSystem& parent, const ToleranceConfig& tol) const;
};

Subsystem make_subsystem(const WStarSystem& parent, const std::vector<CMatrix>& generators,
                         const ToleranceConfig& tol);
Subsystem trivial_subsystem(const WStarSystem& parent, const ToleranceConfig& tol);
Subsystem full_subsystem(const WStarSystem& parent);

/// Trace-preserving conditional expectation onto F, i.e. the orthogonal
/// projection for <a, b> = mu(a* b), as a matrix on the parent coordinates.
class ConditionalExpectation {
 public:
  ConditionalExpectation(const WStarSystem& parent, const Subsystem& sub);

  const CMatrix& coordinate_map() const { return map_; }
  CMatrix apply(const CMatrix& a) const;
  CVector apply_coords(const CVector& c) const { return map_ * c; }

 private:
  MatrixStarAlgebra algebra_;
  CMatrix map_;
};

inline ConditionalExpectation conditional_expectation(const WStarSystem& parent, const Subsystem& sub) {
  return ConditionalExpectation(parent, sub);
}

}  // namespace vnspec
