#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vnspec/system.hpp"

namespace vnspec {

/// Finite group as an explicit multiplication table over 0..order-1.
struct GroupTable {
  std::vector<std::vector<int>> mult;

  int order() const { return static_cast<int>(mult.size()); }
  int identity() const;
  int inverse(int g) const;
  /// Throws SpecInvalid unless the table is a group.
  void validate() const;

  static GroupTable cyclic(int n);
};

/// Permutation matrix of l(g): delta_h -> delta_{gh}.
CMatrix left_regular(const GroupTable& group, int g);

/// Unitary U_gamma: delta_h -> delta_{T^{-1} h}, so that Ad(U_gamma) l(g) = l(T^{-1} g).
CMatrix group_automorphism_unitary(const GroupTable& group, const std::vector<int>& automorphism);

/// A labelled set of elements whose vectors x Omega span a module.
struct ModuleGenerators {
  std::string label;
  std::vector<CMatrix> elements;
};

struct TensorFactors {
  WStarSystem B;
  WStarSystem C;
  /// 1 (x) c_i for an orthonormal basis {c_i Omega_sigma} of the GNS space of C.
  std::vector<CMatrix> fiber_elements;
};

struct FiniteExtensionDiagnostics {
  double beta_residual = 0.0;       // both beta expressions and alpha(b (x) 1) = beta(b) (x) 1
  double offdiagonal_residual = 0.0;
  double nonproduct_distance = 0.0; // distance of alpha(1 (x) E12) from 1 (x) M_2
  Eigen::Index dim_B1 = 0;
  Eigen::Index dim_B2 = 0;
};

struct ConstructedSystem {
  WStarSystem system;
  Subsystem sub;
  std::vector<ModuleGenerators> candidate_modules;
  std::optional<TensorFactors> tensor;
  std::optional<FiniteExtensionDiagnostics> finite_extension;
};

/// Diagonal algebra over the atoms with alpha(f) = f o T.
/// Throws WeightsNotPreserved, SpecInvalid.
WStarSystem build_classical_system(const std::vector<double>& weights, const std::vector<int>& permutation,
                                   const ToleranceConfig& tol);

/// span{l(g)} with sigma(a) = <delta_e, a delta_e> and gamma = Ad(U_gamma).
/// Throws NotAutomorphism, SpecInvalid.
WStarSystem build_group_vn_system(const GroupTable& group, const std::vector<int>& automorphism,
                                  const ToleranceConfig& tol);

/// A = B (x) C, mu = nu (x) sigma, alpha = beta (x) gamma, F = B (x) 1.
ConstructedSystem build_tensor_system(const WStarSystem& b, const WStarSystem& c, const ToleranceConfig& tol);

struct SkewProductSpec {
  std::vector<double> weights;   // rho over the atoms
  std::vector<int> S;            // permutation of the atoms
  GroupTable group;
  std::vector<int> T;            // automorphism of the group
  std::vector<int> k;            // cocycle generator, one integer per atom
};

/// alpha(a)(p) = gamma^{k(p)}(a(Sp)) on block-diagonal maps X -> C, with
/// F = functions X -> C 1. Supplies the orbit modules V_g as candidates.
/// Throws SpecInvalid, NotAutomorphism.
ConstructedSystem build_skew_product(const SkewProductSpec& spec, const ToleranceConfig& tol);

/// B1, B2 are given with traces; either may be the zero algebra (ambient 0).
struct FiniteExtensionSpec {
  MatrixStarAlgebra B1;
  TraceFunctional nu1;
  MatrixStarAlgebra B2;
  TraceFunctional nu2;
  double s = 0.5;
  CMatrix v1, v2, v3, v4;  // v1, v4 act on B1's space; v2, v3 on B2's
};

/// A = B (x) M_2 realized as kron(m, b), mu = nu (x) tr, alpha = Ad(W) with
/// W = [[v1 + 0, 0 + v2], [0 + v3, v4 + 0]]. Throws ConstraintViolated, NotUnitary, SpecInvalid.
ConstructedSystem build_finite_extension(const FiniteExtensionSpec& spec, const ToleranceConfig& tol);

/// Direct sum embedding of a matrix on B1's or B2's space into B = B1 + B2.
CMatrix direct_sum(const CMatrix& b1, const CMatrix& b2);

}  // namespace vnspec
