#include "vnspec/linalg.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <mutex>

// Present when the LAPACK backend is OpenBLAS.
extern "C" void openblas_set_num_threads(int) __attribute__((weak));

namespace vnspec {

void ToleranceConfig::validate() const {
  if (!(eps_rank > 0.0) || !(eps_assert > 0.0) || !(extension_residual > 0.0) ||
      !(eigen_cluster > 0.0)) {
    throw Error(ErrorCode::InvalidTolerance, "tolerances must be strictly positive");
  }
  if (cesaro_n_max < 1) throw Error(ErrorCode::InvalidTolerance, "cesaro_n_max must be >= 1");
}

bool all_finite(const CMatrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
  return true;
}

CVector flatten(const CMatrix& m) {
  return Eigen::Map<const CVector>(m.data(), m.size());
}

CMatrix unflatten(const Eigen::Ref<const CVector>& v, Eigen::Index n) {
  CMatrix out(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) out(i, j) = v(j * n + i);
  return out;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CVector kron(const CVector& a, const CVector& b) {
  CVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

double max_abs(const CMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

namespace {

std::string lapack_info(int info) { return "zgesvd returned " + std::to_string(info); }

double cutoff(const RVector& sv, double eps_rank) {
  const double top = sv.size() ? sv(0) : 0.0;
  return eps_rank * std::max(1.0, top);
}

Eigen::Index rank_at(const RVector& sv, double eps_rank) {
  const double cut = cutoff(sv, eps_rank);
  Eigen::Index r = 0;
  while (r < sv.size() && sv(r) > cut) ++r;
  return r;
}

}  // namespace

SvdResult svd(const CMatrix& m, bool thin_u, bool full_v) {
  const auto rows = static_cast<lapack_int>(m.rows());
  const auto cols = static_cast<lapack_int>(m.cols());
  const lapack_int k = std::min(rows, cols);
  SvdResult out;
  out.singular_values.resize(k);
  if (k == 0) {
    out.u = CMatrix(m.rows(), 0);
    out.v = full_v ? CMatrix(CMatrix::Identity(m.cols(), m.cols())) : CMatrix(m.cols(), 0);
    return out;
  }
  static std::once_flag single_threaded;
  std::call_once(single_threaded, [] {
    if (openblas_set_num_threads) openblas_set_num_threads(1);
  });
  CMatrix a = m;
  CMatrix u = thin_u ? CMatrix(rows, k) : CMatrix(1, 1);
  CMatrix vt = full_v ? CMatrix(cols, cols) : CMatrix(1, 1);
  RVector superb(k);
  const int info = LAPACKE_zgesvd(LAPACK_COL_MAJOR, thin_u ? 'S' : 'N', full_v ? 'A' : 'N', rows, cols,
                                  reinterpret_cast<lapack_complex_double*>(a.data()), rows,
                                  out.singular_values.data(), reinterpret_cast<lapack_complex_double*>(u.data()),
                                  thin_u ? rows : 1, reinterpret_cast<lapack_complex_double*>(vt.data()),
                                  full_v ? cols : 1, superb.data());
  if (info != 0) throw Error(ErrorCode::DecompositionFailed, lapack_info(info));
  if (thin_u) out.u = std::move(u);
  if (full_v) out.v = vt.adjoint();
  return out;
}

CMatrix orthonormal_range(const CMatrix& columns, double eps_rank) {
  if (columns.cols() == 0 || columns.rows() == 0) return CMatrix(columns.rows(), 0);
  const SvdResult s = svd(columns, true, false);
  return s.u.leftCols(rank_at(s.singular_values, eps_rank));
}

CMatrix null_space(const CMatrix& m, double eps_rank) {
  const Eigen::Index n = m.cols();
  if (n == 0) return CMatrix(0, 0);
  if (m.rows() == 0) return CMatrix::Identity(n, n);
  const SvdResult s = svd(m, false, true);
  return s.v.rightCols(n - rank_at(s.singular_values, eps_rank));
}

Eigen::Index numerical_rank(const CMatrix& m, double eps_rank) {
  if (m.size() == 0) return 0;
  return rank_at(svd(m, false, false).singular_values, eps_rank);
}

double inclusion_residual(const CMatrix& x_basis, const CMatrix& y_basis) {
  if (x_basis.cols() == 0) return 0.0;
  CMatrix outside = x_basis;
  if (y_basis.cols() > 0) outside -= y_basis * (y_basis.adjoint() * x_basis);
  return outside.operatorNorm();
}

}  // namespace vnspec
