#include "vnspec/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace vnspec::kernels {

namespace {

inline CVector commutator_column(const Eigen::Ref<const CVector>& column, const CMatrix& g) {
  const Eigen::Index n = g.rows();
  const Eigen::Map<const CMatrix> z(column.data(), n, n);
  CMatrix c = z * g - g * z;
  return Eigen::Map<const CVector>(c.data(), c.size());
}

inline void pair_gram_row(const CMatrix& products, CMatrix& out, Eigen::Index k, Eigen::Index d1,
                          Eigen::Index d2) {
  for (Eigen::Index l = 0; l < d2; ++l)
    for (Eigen::Index kp = 0; kp < d1; ++kp)
      for (Eigen::Index lp = 0; lp < d2; ++lp)
        out(k * d2 + l, kp * d2 + lp) = products(k * d1 + kp, l * d2 + lp);
}

}  // namespace

namespace serial {

std::vector<CMatrix> pairwise_products(const std::vector<CMatrix>& left,
                                       const std::vector<CMatrix>& right) {
  std::vector<CMatrix> out(left.size() * right.size());
  for (std::size_t i = 0; i < left.size(); ++i)
    for (std::size_t j = 0; j < right.size(); ++j) out[i * right.size() + j] = left[i] * right[j];
  return out;
}

std::vector<CMatrix> sandwich_products(const std::vector<CMatrix>& left, const CMatrix& middle,
                                       const std::vector<CMatrix>& right) {
  std::vector<CMatrix> out(left.size() * right.size());
  for (std::size_t i = 0; i < left.size(); ++i) {
    const CMatrix lm = left[i] * middle;
    for (std::size_t j = 0; j < right.size(); ++j) out[i * right.size() + j] = lm * right[j];
  }
  return out;
}

CMatrix commutator_images(const CMatrix& columns, const CMatrix& g) {
  CMatrix out(columns.rows(), columns.cols());
  for (Eigen::Index c = 0; c < columns.cols(); ++c) out.col(c) = commutator_column(columns.col(c), g);
  return out;
}

CMatrix coordinates(const CMatrix& flat_basis, const std::vector<CMatrix>& elements) {
  CMatrix out(flat_basis.cols(), static_cast<Eigen::Index>(elements.size()));
  for (std::size_t m = 0; m < elements.size(); ++m) {
    const Eigen::Map<const CVector> v(elements[m].data(), elements[m].size());
    out.col(static_cast<Eigen::Index>(m)) = flat_basis.adjoint() * v;
  }
  return out;
}

CMatrix pair_gram(const CMatrix& products, Eigen::Index d1, Eigen::Index d2) {
  CMatrix out(d1 * d2, d1 * d2);
  for (Eigen::Index k = 0; k < d1; ++k) pair_gram_row(products, out, k, d1, d2);
  return out;
}

}  // namespace serial

namespace parallel {

std::vector<CMatrix> pairwise_products(const std::vector<CMatrix>& left,
                                       const std::vector<CMatrix>& right) {
  const long total = static_cast<long>(left.size() * right.size());
  std::vector<CMatrix> out(static_cast<std::size_t>(total));
#pragma omp parallel for schedule(static)
  for (long idx = 0; idx < total; ++idx) {
    const std::size_t i = static_cast<std::size_t>(idx) / right.size();
    const std::size_t j = static_cast<std::size_t>(idx) % right.size();
    out[static_cast<std::size_t>(idx)] = left[i] * right[j];
  }
  return out;
}

std::vector<CMatrix> sandwich_products(const std::vector<CMatrix>& left, const CMatrix& middle,
                                       const std::vector<CMatrix>& right) {
  std::vector<CMatrix> out(left.size() * right.size());
  const long rows = static_cast<long>(left.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < rows; ++i) {
    const CMatrix lm = left[static_cast<std::size_t>(i)] * middle;
    for (std::size_t j = 0; j < right.size(); ++j)
      out[static_cast<std::size_t>(i) * right.size() + j] = lm * right[j];
  }
  return out;
}

CMatrix commutator_images(const CMatrix& columns, const CMatrix& g) {
  CMatrix out(columns.rows(), columns.cols());
  const long cols = static_cast<long>(columns.cols());
#pragma omp parallel for schedule(static)
  for (long c = 0; c < cols; ++c) out.col(c) = commutator_column(columns.col(c), g);
  return out;
}

CMatrix coordinates(const CMatrix& flat_basis, const std::vector<CMatrix>& elements) {
  CMatrix out(flat_basis.cols(), static_cast<Eigen::Index>(elements.size()));
  const long count = static_cast<long>(elements.size());
#pragma omp parallel for schedule(static)
  for (long m = 0; m < count; ++m) {
    const CMatrix& x = elements[static_cast<std::size_t>(m)];
    const Eigen::Map<const CVector> v(x.data(), x.size());
    out.col(m) = flat_basis.adjoint() * v;
  }
  return out;
}

CMatrix pair_gram(const CMatrix& products, Eigen::Index d1, Eigen::Index d2) {
  CMatrix out(d1 * d2, d1 * d2);
  const long rows = static_cast<long>(d1);
#pragma omp parallel for schedule(static)
  for (long k = 0; k < rows; ++k) pair_gram_row(products, out, k, d1, d2);
  return out;
}

}  // namespace parallel

int thread_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace vnspec::kernels
