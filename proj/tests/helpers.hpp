#pragma once

#include <gtest/gtest.h>

#include "vnspec/constructors.hpp"
#include "vnspec/spectrum.hpp"

namespace vnspec::test {

inline CMatrix unit(Eigen::Index n, Eigen::Index i, Eigen::Index j) {
  CMatrix m = CMatrix::Zero(n, n);
  m(i, j) = 1.0;
  return m;
}

inline CMatrix diag(std::initializer_list<Complex> entries) {
  CVector v(static_cast<Eigen::Index>(entries.size()));
  Eigen::Index k = 0;
  for (Complex z : entries) v(k++) = z;
  return v.asDiagonal();
}

inline MatrixStarAlgebra full_matrices(Eigen::Index n, const ToleranceConfig& tol = {}) {
  std::vector<CMatrix> gens;
  for (Eigen::Index i = 0; i + 1 < n; ++i) gens.push_back(unit(n, i, i + 1));
  return generate_algebra(gens, n, tol);
}

/// M_n with the normalized trace and alpha = Ad(w).
inline WStarSystem matrix_system(const CMatrix& w, const ToleranceConfig& tol = {}) {
  const Eigen::Index n = w.rows();
  const MatrixStarAlgebra alg = full_matrices(n, tol);
  return WStarSystem{alg, TraceFunctional(CMatrix::Identity(n, n) / static_cast<double>(n), true),
                     StarAutomorphism::conjugation(alg, w)};
}

inline WStarSystem m2_system(const CMatrix& w = CMatrix::Identity(2, 2)) { return matrix_system(w); }

inline SkewProductSpec skew_spec_z4() {
  return SkewProductSpec{{1.0 / 3, 1.0 / 3, 1.0 / 3}, {1, 2, 0}, GroupTable::cyclic(4), {0, 3, 2, 1}, {0, 1, 1}};
}

/// Everything downstream of a system, built in one go.
struct Pipeline {
  GnsSpace gns;
  BasicConstruction bc;

  Pipeline(const WStarSystem& sys, const Subsystem& sub, const ToleranceConfig& tol = {})
      : gns(build_gns(sys, tol)), bc(build_basic_construction(gns, sub, tol)) {}
};

}  // namespace vnspec::test
