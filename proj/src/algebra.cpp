#include "vnspec/algebra.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>

#include "vnspec/kernels.hpp"

namespace vnspec {

MatrixStarAlgebra::MatrixStarAlgebra(Eigen::Index ambient_dim, std::vector<CMatrix> basis)
    : ambient_dim_(ambient_dim), basis_(std::move(basis)) {
  flat_.resize(ambient_dim_ * ambient_dim_, dim());
  for (Eigen::Index k = 0; k < dim(); ++k) flat_.col(k) = flatten(basis_[static_cast<std::size_t>(k)]);
  if (ambient_dim_ > 0) {
    const CMatrix id = CMatrix::Identity(ambient_dim_, ambient_dim_);
    contains_identity_ = residual(id) <= 1e-8 * std::sqrt(static_cast<double>(ambient_dim_));
  }
}

CVector MatrixStarAlgebra::coords(const CMatrix& x) const {
  const Eigen::Map<const CVector> v(x.data(), x.size());
  return flat_.adjoint() * v;
}

CMatrix MatrixStarAlgebra::coords(const std::vector<CMatrix>& xs) const {
  return kernels::coordinates(flat_, xs);
}

CMatrix MatrixStarAlgebra::element(const Eigen::Ref<const CVector>& c) const {
  const CVector v = flat_ * c;
  return unflatten(v, ambient_dim_);
}

double MatrixStarAlgebra::residual(const CMatrix& x) const {
  const Eigen::Map<const CVector> v(x.data(), x.size());
  if (dim() == 0) return v.norm();
  return (v - flat_ * (flat_.adjoint() * v)).norm();
}

double MatrixStarAlgebra::closure_residual() const {
  double worst = 0.0;
  const auto products = kernels::pairwise_products(basis_, basis_);
  for (const auto& p : products) worst = std::max(worst, residual(p));
  for (const auto& b : basis_) worst = std::max(worst, residual(b.adjoint()));
  return worst;
}

double MatrixStarAlgebra::span_distance(const MatrixStarAlgebra& other) const {
  if (other.ambient_dim_ != ambient_dim_ || other.dim() != dim())
    return std::numeric_limits<double>::infinity();
  return std::max(inclusion_residual(flat_, other.flat_), inclusion_residual(other.flat_, flat_));
}

CMatrix MatrixStarAlgebra::random_element(SeededRng& rng) const {
  CMatrix x = CMatrix::Zero(ambient_dim_, ambient_dim_);
  for (const auto& b : basis_) x += rng.complex_symmetric() * b;
  return x;
}

// ---------------------------------------------------------------------------

HermitianSpanBuilder::HermitianSpanBuilder(Eigen::Index ambient_dim, double eps_rank)
    : n_(ambient_dim), eps_rank_(eps_rank), flat_(ambient_dim * ambient_dim, 8) {}

bool HermitianSpanBuilder::add_hermitian(CMatrix h, double reference) {
  if (reference == 0.0) return false;
  Eigen::Map<CVector> v(h.data(), h.size());
  const Eigen::Index d = dim();
  if (d > 0) {
    const auto q = flat_.leftCols(d);
    for (int pass = 0; pass < 2; ++pass) {
      const RVector coef = (q.adjoint() * v).real();
      v -= q * coef.cast<Complex>();
    }
  }
  const double remaining = v.norm();
  if (remaining <= eps_rank_ * reference) return false;
  h /= remaining;
  h = 0.5 * (h + h.adjoint());
  h /= h.norm();
  if (d == flat_.cols()) flat_.conservativeResize(Eigen::NoChange, 2 * d);
  flat_.col(d) = flatten(h);
  basis_.push_back(std::move(h));
  return true;
}

int HermitianSpanBuilder::add(const CMatrix& x) {
  if (x.rows() != n_ || x.cols() != n_)
    throw Error(ErrorCode::DimensionMismatch, "element does not match ambient dimension");
  // Both parts are judged against max(|x|, 1): basis elements have unit norm,
  // so roundoff in a Hermitian x or in a near-zero product is not a new
  // direction.
  const CMatrix adj = x.adjoint();
  const double reference = std::max(x.norm(), 1.0);
  int added = 0;
  added += add_hermitian(0.5 * (x + adj), reference) ? 1 : 0;
  added += add_hermitian(Complex(0.0, -0.5) * (x - adj), reference) ? 1 : 0;
  return added;
}

int HermitianSpanBuilder::add_all(const std::vector<CMatrix>& xs) {
  if (xs.empty()) return 0;
  const Eigen::Index d = dim();
  std::vector<char> needed(xs.size(), 1);
  if (d > 0) {
    // Residuals of all candidates at once; only those clearly outside the
    // current span go through Gram–Schmidt.
    const auto q = flat_.leftCols(d);
    CMatrix stacked(n_ * n_, static_cast<Eigen::Index>(xs.size()));
    for (std::size_t m = 0; m < xs.size(); ++m) stacked.col(static_cast<Eigen::Index>(m)) = flatten(xs[m]);
    const CMatrix outside = stacked - q * (q.adjoint() * stacked);
    for (std::size_t m = 0; m < xs.size(); ++m) {
      const auto col = static_cast<Eigen::Index>(m);
      needed[m] = outside.col(col).norm() > 0.5 * eps_rank_ * std::max(stacked.col(col).norm(), 1.0) ? 1 : 0;
    }
  }
  int added = 0;
  for (std::size_t m = 0; m < xs.size(); ++m)
    if (needed[m]) added += add(xs[m]);
  return added;
}

// ---------------------------------------------------------------------------

namespace {

void check_generator(const CMatrix& g, Eigen::Index n) {
  if (g.rows() != g.cols())
    throw Error(ErrorCode::NonSquareGenerator,
                "generator is " + std::to_string(g.rows()) + "x" + std::to_string(g.cols()));
  if (g.rows() != n)
    throw Error(ErrorCode::DimensionMismatch, "generator of size " + std::to_string(g.rows()) +
                                                  " in ambient dimension " + std::to_string(n));
  if (!all_finite(g)) throw Error(ErrorCode::NotFinite, "generator has NaN or Inf entries");
}

MatrixStarAlgebra hermitian_span_of_columns(const CMatrix& columns, Eigen::Index n, double eps_rank) {
  HermitianSpanBuilder builder(n, eps_rank);
  for (Eigen::Index c = 0; c < columns.cols(); ++c) builder.add(unflatten(columns.col(c), n));
  return builder.build();
}

}  // namespace

MatrixStarAlgebra generate_algebra(const std::vector<CMatrix>& generators, Eigen::Index ambient_dim,
                                   const ToleranceConfig& tol) {
  if (ambient_dim <= 0) throw Error(ErrorCode::DimensionMismatch, "ambient dimension must be positive");
  for (const auto& g : generators) check_generator(g, ambient_dim);

  HermitianSpanBuilder builder(ambient_dim, tol.eps_rank);
  builder.add(CMatrix::Identity(ambient_dim, ambient_dim));
  for (const auto& g : generators) {
    const double norm = g.norm();
    if (norm > 0.0) builder.add(g / norm);
  }

  // Products involving at least one element added in the previous round.
  std::size_t done = 0;
  const Eigen::Index cap = ambient_dim * ambient_dim;
  for (Eigen::Index iter = 0; iter < cap; ++iter) {
    const std::vector<CMatrix> current = builder.basis();
    if (done == current.size()) break;
    const std::vector<CMatrix> fresh(current.begin() + static_cast<std::ptrdiff_t>(done), current.end());
    done = current.size();
    builder.add_all(kernels::pairwise_products(fresh, current));
    builder.add_all(kernels::pairwise_products(current, fresh));
  }
  return builder.build();
}

MatrixStarAlgebra commutant_of(const std::vector<CMatrix>& generators, Eigen::Index ambient_dim,
                               const ToleranceConfig& tol) {
  for (const auto& g : generators) check_generator(g, ambient_dim);
  const Eigen::Index n2 = ambient_dim * ambient_dim;
  CMatrix survivors = CMatrix::Identity(n2, n2);
  for (const auto& g : generators) {
    if (survivors.cols() == 0) break;
    const CMatrix images = kernels::commutator_images(survivors, g);
    const CMatrix kernel = null_space(images, tol.eps_rank);
    survivors = survivors * kernel;
  }
  return hermitian_span_of_columns(survivors, ambient_dim, tol.eps_rank);
}

MatrixStarAlgebra commutant(const MatrixStarAlgebra& alg, const ToleranceConfig& tol) {
  return commutant_of(alg.basis(), alg.ambient_dim(), tol);
}

MatrixStarAlgebra center(const MatrixStarAlgebra& alg, const ToleranceConfig& tol) {
  const Eigen::Index d = alg.dim();
  CMatrix survivors = CMatrix::Identity(d, d);
  for (const auto& b : alg.basis()) {
    if (survivors.cols() == 0) break;
    const CMatrix ambient = alg.flat_basis() * survivors;
    const CMatrix images = kernels::commutator_images(ambient, b);
    survivors = survivors * null_space(images, tol.eps_rank);
  }
  return hermitian_span_of_columns(alg.flat_basis() * survivors, alg.ambient_dim(), tol.eps_rank);
}

bool is_commutative(const MatrixStarAlgebra& alg, double tol) {
  for (Eigen::Index i = 0; i < alg.dim(); ++i)
    for (Eigen::Index j = i + 1; j < alg.dim(); ++j)
      if ((alg.basis(i) * alg.basis(j) - alg.basis(j) * alg.basis(i)).norm() > tol) return false;
  return true;
}

namespace {

struct ProjectionOrder {
  bool operator()(const CMatrix& a, const CMatrix& b) const {
    const auto first = [](const CMatrix& p) {
      for (Eigen::Index i = 0; i < p.rows(); ++i)
        if (std::abs(p(i, i)) > 1e-6) return i;
      return p.rows();
    };
    const Eigen::Index fa = first(a), fb = first(b);
    if (fa != fb) return fa < fb;
    for (Eigen::Index k = 0; k < a.size(); ++k) {
      const double ra = std::round(a.data()[k].real() * 1e6), rb = std::round(b.data()[k].real() * 1e6);
      if (ra != rb) return ra > rb;
      const double ia = std::round(a.data()[k].imag() * 1e6), ib = std::round(b.data()[k].imag() * 1e6);
      if (ia != ib) return ia > ib;
    }
    return false;
  }
};

}  // namespace

std::vector<CMatrix> minimal_projections_commutative(const MatrixStarAlgebra& alg,
                                                     const ToleranceConfig& tol) {
  const Eigen::Index m = alg.dim();
  if (m == 0) return {};
  const Eigen::Index n = alg.ambient_dim();
  for (int attempt = 0; attempt < 16; ++attempt) {
    SeededRng rng(0x5eedULL + static_cast<std::uint64_t>(attempt));
    CMatrix h = CMatrix::Zero(n, n);
    for (const auto& b : alg.basis()) h += rng.symmetric() * b;
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(h);
    const RVector& lambda = eig.eigenvalues();
    const double scale = std::max(1.0, lambda.cwiseAbs().maxCoeff());

    std::vector<CMatrix> projections;
    Eigen::Index start = 0;
    while (start < n) {
      Eigen::Index stop = start + 1;
      while (stop < n && lambda(stop) - lambda(stop - 1) <= 1e-7 * scale) ++stop;
      const CMatrix v = eig.eigenvectors().middleCols(start, stop - start);
      CMatrix p = v * v.adjoint();
      if (alg.residual(p) <= std::max(tol.eps_assert, 1e-9)) projections.push_back(std::move(p));
      start = stop;
    }
    if (static_cast<Eigen::Index>(projections.size()) != m) continue;
    std::sort(projections.begin(), projections.end(), ProjectionOrder{});
    return projections;
  }
  throw Error(ErrorCode::DecompositionFailed,
              "could not separate the atoms of a " + std::to_string(m) + "-dimensional commutative algebra");
}

std::vector<CMatrix> block_decomposition(const MatrixStarAlgebra& alg, const ToleranceConfig& tol) {
  return minimal_projections_commutative(center(alg, tol), tol);
}

}  // namespace vnspec
