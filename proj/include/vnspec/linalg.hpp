#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "vnspec/error.hpp"

namespace vnspec {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

struct ToleranceConfig {
  double eps_rank = 1e-10;    // singular-value cutoff (relative to the largest)
  double eps_assert = 1e-8;   // identity-check threshold
  int cesaro_n_max = 256;
  double extension_residual = 1e-8;  // least-squares consistency of the lifted trace
  double eigen_cluster = 1e-8;       // eigenvalue-1 cluster for fixed spaces

  void validate() const;
};

inline Complex hs_inner(const CMatrix& a, const CMatrix& b) {
  return (a.adjoint() * b).trace();
}

bool all_finite(const CMatrix& m);

/// Column-major flattening of an n x n matrix into a length n^2 vector.
CVector flatten(const CMatrix& m);
CMatrix unflatten(const Eigen::Ref<const CVector>& v, Eigen::Index n);

CMatrix kron(const CMatrix& a, const CMatrix& b);
CVector kron(const CVector& a, const CVector& b);

/// Largest absolute entry; zero for empty matrices.
double max_abs(const CMatrix& m);

struct SvdResult {
  RVector singular_values;  // descending
  CMatrix u;                // thin left vectors, when requested
  CMatrix v;                // full right vectors, when requested
};

/// LAPACK zgesvd (Eigen 3.4.0's BDCSVD mis-deflates on degenerate commutator systems).
SvdResult svd(const CMatrix& m, bool thin_u, bool full_v);

/// Orthonormal basis of the column span, columns with singular value below
/// eps_rank * max(1, sigma_max) are dropped.
CMatrix orthonormal_range(const CMatrix& columns, double eps_rank);

/// Orthonormal basis of the null space of `m`.
CMatrix null_space(const CMatrix& m, double eps_rank);

/// Rank of `m` at the cutoff used by orthonormal_range.
Eigen::Index numerical_rank(const CMatrix& m, double eps_rank);

/// ‖(I − P_Y) P_X‖ for orthonormal column bases; zero when X is empty.
double inclusion_residual(const CMatrix& x_basis, const CMatrix& y_basis);

/// Deterministic random source. Only the raw 64-bit engine output is used so
/// the stream is identical on every standard library.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double symmetric() { return 2.0 * uniform() - 1.0; }
  Complex complex_symmetric() { return {symmetric(), symmetric()}; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace vnspec
