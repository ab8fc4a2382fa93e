#pragma once

// Data-parallel inner loops. Every kernel exists twice: `serial` is the
// reference kept for testing, `parallel` is the OpenMP version. Both write each
// output entry with the same sequence of floating-point operations, so results
// are bitwise identical for any thread count.

#include <vector>

#include "vnspec/linalg.hpp"

namespace vnspec::kernels {

namespace serial {

/// out[i * right.size() + j] = left[i] * right[j]
std::vector<CMatrix> pairwise_products(const std::vector<CMatrix>& left,
                                       const std::vector<CMatrix>& right);

/// out[i * right.size() + j] = left[i] * middle * right[j]
std::vector<CMatrix> sandwich_products(const std::vector<CMatrix>& left, const CMatrix& middle,
                                       const std::vector<CMatrix>& right);

/// Column c of the result is vec(Z_c g - g Z_c), Z_c = unflatten(columns.col(c)).
CMatrix commutator_images(const CMatrix& columns, const CMatrix& g);

/// Column m of the result is flat_basis^* vec(elements[m]).
CMatrix coordinates(const CMatrix& flat_basis, const std::vector<CMatrix>& elements);

/// Reorders the (d1^2 x d2^2) table products((k,k'),(l,l')) into the
/// (d1 d2 x d1 d2) Gram matrix indexed by ((k,l),(k',l')).
CMatrix pair_gram(const CMatrix& products, Eigen::Index d1, Eigen::Index d2);

}  // namespace serial

namespace parallel {

std::vector<CMatrix> pairwise_products(const std::vector<CMatrix>& left,
                                       const std::vector<CMatrix>& right);
std::vector<CMatrix> sandwich_products(const std::vector<CMatrix>& left, const CMatrix& middle,
                                       const std::vector<CMatrix>& right);
CMatrix commutator_images(const CMatrix& columns, const CMatrix& g);
CMatrix coordinates(const CMatrix& flat_basis, const std::vector<CMatrix>& elements);
CMatrix pair_gram(const CMatrix& products, Eigen::Index d1, Eigen::Index d2);

}  // namespace parallel

// Default entry points used by the library.
using parallel::commutator_images;
using parallel::coordinates;
using parallel::pair_gram;
using parallel::pairwise_products;
using parallel::sandwich_products;

/// Number of OpenMP threads available (1 without OpenMP).
int thread_count();

}  // namespace vnspec::kernels
