#include "vnspec/constructors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "vnspec/gns.hpp"

namespace vnspec {

namespace {

std::string sci(double r) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", r);
  return buf;
}

void check_permutation(const std::vector<int>& p, std::size_t n, ErrorCode code, const std::string& what) {
  if (p.size() != n) throw Error(code, what + " has " + std::to_string(p.size()) + " entries, expected " + std::to_string(n));
  std::vector<char> seen(n, 0);
  for (int v : p) {
    if (v < 0 || static_cast<std::size_t>(v) >= n || seen[static_cast<std::size_t>(v)])
      throw Error(code, what + " is not a permutation");
    seen[static_cast<std::size_t>(v)] = 1;
  }
}

CMatrix matrix_unit(Eigen::Index n, Eigen::Index i, Eigen::Index j) {
  CMatrix m = CMatrix::Zero(n, n);
  m(i, j) = 1.0;
  return m;
}

// Hermitian HS-orthonormal basis of M_2.
std::vector<CMatrix> m2_basis() {
  const double r = 1.0 / std::sqrt(2.0);
  CMatrix x = CMatrix::Zero(2, 2), y = CMatrix::Zero(2, 2);
  x(0, 1) = r;
  x(1, 0) = r;
  y(0, 1) = Complex(0.0, -r);
  y(1, 0) = Complex(0.0, r);
  return {matrix_unit(2, 0, 0), matrix_unit(2, 1, 1), x, y};
}

double unitarity_gap(const CMatrix& v) {
  return (v.adjoint() * v - CMatrix::Identity(v.cols(), v.cols())).norm();
}

}  // namespace

int GroupTable::identity() const {
  for (int g = 0; g < order(); ++g) {
    bool ok = true;
    for (int h = 0; h < order() && ok; ++h) ok = mult[g][h] == h && mult[h][g] == h;
    if (ok) return g;
  }
  throw Error(ErrorCode::SpecInvalid, "group table has no identity");
}

int GroupTable::inverse(int g) const {
  const int e = identity();
  for (int h = 0; h < order(); ++h)
    if (mult[g][h] == e) return h;
  throw Error(ErrorCode::SpecInvalid, "element " + std::to_string(g) + " has no inverse");
}

void GroupTable::validate() const {
  const int n = order();
  if (n == 0) throw Error(ErrorCode::SpecInvalid, "group table is empty");
  for (const auto& row : mult) {
    if (static_cast<int>(row.size()) != n) throw Error(ErrorCode::SpecInvalid, "group table is not square");
    for (int v : row)
      if (v < 0 || v >= n) throw Error(ErrorCode::SpecInvalid, "group table entry out of range");
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (mult[mult[a][b]][c] != mult[a][mult[b][c]]) throw Error(ErrorCode::SpecInvalid, "group table is not associative");
  for (int g = 0; g < n; ++g) inverse(g);
}

GroupTable GroupTable::cyclic(int n) {
  GroupTable t;
  t.mult.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t.mult[a][b] = (a + b) % n;
  return t;
}

CMatrix left_regular(const GroupTable& group, int g) {
  const int n = group.order();
  CMatrix m = CMatrix::Zero(n, n);
  for (int h = 0; h < n; ++h) m(group.mult[g][h], h) = 1.0;
  return m;
}

CMatrix group_automorphism_unitary(const GroupTable& group, const std::vector<int>& automorphism) {
  const int n = group.order();
  CMatrix u = CMatrix::Zero(n, n);
  // U delta_h = delta_{T^{-1} h}, i.e. U delta_{T g} = delta_g
  for (int g = 0; g < n; ++g) u(g, automorphism[static_cast<std::size_t>(g)]) = 1.0;
  return u;
}

CMatrix direct_sum(const CMatrix& b1, const CMatrix& b2) {
  CMatrix out = CMatrix::Zero(b1.rows() + b2.rows(), b1.cols() + b2.cols());
  out.topLeftCorner(b1.rows(), b1.cols()) = b1;
  out.bottomRightCorner(b2.rows(), b2.cols()) = b2;
  return out;
}

WStarSystem build_classical_system(const std::vector<double>& weights, const std::vector<int>& permutation,
                                   const ToleranceConfig& tol) {
  const std::size_t n = weights.size();
  if (n == 0) throw Error(ErrorCode::SpecInvalid, "no atoms");
  check_permutation(permutation, n, ErrorCode::SpecInvalid, "permutation");
  double total = 0.0;
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) throw Error(ErrorCode::SpecInvalid, "atom weights must be positive");
    total += w;
  }
  if (std::abs(total - 1.0) > tol.eps_assert) throw Error(ErrorCode::SpecInvalid, "atom weights do not sum to 1");
  for (std::size_t j = 0; j < n; ++j)
    if (std::abs(weights[static_cast<std::size_t>(permutation[j])] - weights[j]) > tol.eps_assert)
      throw Error(ErrorCode::WeightsNotPreserved, "atom " + std::to_string(j) + " has weight " +
                                                      std::to_string(weights[j]) + ", its image " +
                                                      std::to_string(weights[static_cast<std::size_t>(permutation[j])]));

  const auto dim = static_cast<Eigen::Index>(n);
  std::vector<CMatrix> basis;
  CMatrix rho = CMatrix::Zero(dim, dim);
  CMatrix p = CMatrix::Zero(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    basis.push_back(matrix_unit(dim, j, j));
    rho(j, j) = weights[static_cast<std::size_t>(j)];
    // P delta_{T j} = delta_j gives P E_jj P^* = E_{T^{-1} j}
    p(j, permutation[static_cast<std::size_t>(j)]) = 1.0;
  }
  MatrixStarAlgebra alg(dim, std::move(basis));
  return WStarSystem{alg, TraceFunctional(rho, true), StarAutomorphism::conjugation(alg, p)};
}

WStarSystem build_group_vn_system(const GroupTable& group, const std::vector<int>& automorphism,
                                  const ToleranceConfig& tol) {
  group.validate();
  const int n = group.order();
  check_permutation(automorphism, static_cast<std::size_t>(n), ErrorCode::NotAutomorphism, "T");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (automorphism[group.mult[a][b]] != group.mult[automorphism[a]][automorphism[b]])
        throw Error(ErrorCode::NotAutomorphism, "T(" + std::to_string(a) + "*" + std::to_string(b) +
                                                    ") != T(" + std::to_string(a) + ")T(" + std::to_string(b) + ")");

  std::vector<CMatrix> gens;
  for (int g = 0; g < n; ++g) gens.push_back(left_regular(group, g));
  MatrixStarAlgebra alg = generate_algebra(gens, n, tol);
  const int e = group.identity();
  CMatrix rho = CMatrix::Zero(n, n);
  rho(e, e) = 1.0;
  return WStarSystem{alg, TraceFunctional(rho, true),
                     StarAutomorphism::conjugation(alg, group_automorphism_unitary(group, automorphism))};
}

ConstructedSystem build_tensor_system(const WStarSystem& b, const WStarSystem& c, const ToleranceConfig& tol) {
  const Eigen::Index nb = b.ambient_dim(), nc = c.ambient_dim();
  std::vector<CMatrix> basis;
  for (const auto& x : b.algebra.basis())
    for (const auto& y : c.algebra.basis()) basis.push_back(kron(x, y));
  MatrixStarAlgebra alg(nb * nc, std::move(basis));
  TraceFunctional trace(kron(b.trace.density(), c.trace.density()), b.trace.normalized() && c.trace.normalized());
  StarAutomorphism dyn(kron(b.dynamics.coordinate_map(), c.dynamics.coordinate_map()));

  ConstructedSystem out{WStarSystem{alg, trace, dyn}, {}, {}, {}, {}};
  std::vector<CMatrix> f_gens;
  const CMatrix ic = CMatrix::Identity(nc, nc);
  for (const auto& x : b.algebra.basis()) f_gens.push_back(kron(x, ic));
  out.sub = make_subsystem(out.system, f_gens, tol);

  TensorFactors factors{b, c, {}};
  const GnsSpace c_gns = GnsSpace::build(c, tol);
  const CMatrix ib = CMatrix::Identity(nb, nb);
  for (Eigen::Index i = 0; i < c_gns.dim(); ++i)
    factors.fiber_elements.push_back(kron(ib, c_gns.element_of(CVector::Unit(c_gns.dim(), i))));
  out.tensor = std::move(factors);
  return out;
}

ConstructedSystem build_skew_product(const SkewProductSpec& spec, const ToleranceConfig& tol) {
  const std::size_t nx = spec.weights.size();
  if (nx == 0) throw Error(ErrorCode::SpecInvalid, "skew product has no atoms");
  check_permutation(spec.S, nx, ErrorCode::SpecInvalid, "S");
  if (spec.k.size() != nx) throw Error(ErrorCode::SpecInvalid, "k needs one entry per atom");
  double total = 0.0;
  for (double w : spec.weights) {
    if (!(w > 0.0) || !std::isfinite(w)) throw Error(ErrorCode::SpecInvalid, "atom weights must be positive");
    total += w;
  }
  if (std::abs(total - 1.0) > tol.eps_assert) throw Error(ErrorCode::SpecInvalid, "atom weights do not sum to 1");
  for (std::size_t p = 0; p < nx; ++p)
    if (std::abs(spec.weights[static_cast<std::size_t>(spec.S[p])] - spec.weights[p]) > tol.eps_assert)
      throw Error(ErrorCode::SpecInvalid, "S does not preserve the atom weights");

  const WStarSystem fiber = build_group_vn_system(spec.group, spec.T, tol);
  const Eigen::Index ng = spec.group.order();
  const auto ax = static_cast<Eigen::Index>(nx);
  const Eigen::Index n = ax * ng;

  std::vector<CMatrix> basis;
  for (Eigen::Index x = 0; x < ax; ++x)
    for (const auto& c : fiber.algebra.basis()) basis.push_back(kron(matrix_unit(ax, x, x), c));
  MatrixStarAlgebra alg(n, std::move(basis));

  CMatrix weights = CMatrix::Zero(ax, ax);
  for (Eigen::Index x = 0; x < ax; ++x) weights(x, x) = spec.weights[static_cast<std::size_t>(x)];
  TraceFunctional trace(kron(weights, fiber.trace.density()), true);

  const CMatrix ug = group_automorphism_unitary(spec.group, spec.T);
  CMatrix w = CMatrix::Zero(n, n);
  for (Eigen::Index p = 0; p < ax; ++p) {
    const int kp = spec.k[static_cast<std::size_t>(p)];
    CMatrix power = CMatrix::Identity(ng, ng);
    const CMatrix step = kp >= 0 ? ug : CMatrix(ug.adjoint());
    for (int r = 0; r < std::abs(kp); ++r) power = power * step;
    w += kron(matrix_unit(ax, p, spec.S[static_cast<std::size_t>(p)]), power);
  }

  ConstructedSystem out{WStarSystem{alg, trace, StarAutomorphism::conjugation(alg, w)}, {}, {}, {}, {}};
  std::vector<CMatrix> f_gens;
  const CMatrix ig = CMatrix::Identity(ng, ng);
  for (Eigen::Index x = 0; x < ax; ++x) f_gens.push_back(kron(matrix_unit(ax, x, x), ig));
  out.sub = make_subsystem(out.system, f_gens, tol);

  // Orbit modules V_g = span{(E_xx (x) l(h)) Omega : h in the T-orbit of g}, g != e.
  const int e = spec.group.identity();
  std::vector<char> done(static_cast<std::size_t>(ng), 0);
  for (int g = 0; g < ng; ++g) {
    if (g == e || done[static_cast<std::size_t>(g)]) continue;
    std::vector<int> orbit;
    for (int h = g; !done[static_cast<std::size_t>(h)]; h = spec.T[static_cast<std::size_t>(h)]) {
      done[static_cast<std::size_t>(h)] = 1;
      orbit.push_back(h);
    }
    std::sort(orbit.begin(), orbit.end());
    ModuleGenerators mg{"orbit_" + std::to_string(g), {}};
    for (Eigen::Index x = 0; x < ax; ++x)
      for (int h : orbit) mg.elements.push_back(kron(matrix_unit(ax, x, x), left_regular(spec.group, h)));
    out.candidate_modules.push_back(std::move(mg));
  }
  return out;
}

ConstructedSystem build_finite_extension(const FiniteExtensionSpec& spec, const ToleranceConfig& tol) {
  const Eigen::Index n1 = spec.B1.ambient_dim(), n2 = spec.B2.ambient_dim();
  if (n1 + n2 == 0) throw Error(ErrorCode::SpecInvalid, "B1 and B2 are both zero");
  if (n1 > 0 && n2 > 0 && !(spec.s > 0.0 && spec.s < 1.0)) throw Error(ErrorCode::SpecInvalid, "s must lie in (0,1)");
  const auto sized = [](const CMatrix& v, Eigen::Index m, const char* name) {
    if (v.rows() != m || v.cols() != m)
      throw Error(ErrorCode::DimensionMismatch, std::string(name) + " must be " + std::to_string(m) + "x" + std::to_string(m));
  };
  sized(spec.v1, n1, "v1");
  sized(spec.v4, n1, "v4");
  sized(spec.v2, n2, "v2");
  sized(spec.v3, n2, "v3");
  const CMatrix* vs[] = {&spec.v1, &spec.v2, &spec.v3, &spec.v4};
  for (int i = 0; i < 4; ++i)
    if (unitarity_gap(*vs[i]) > tol.eps_assert)
      throw Error(ErrorCode::NotUnitary, "v" + std::to_string(i + 1) + " is not unitary");

  const auto check_side = [&](const MatrixStarAlgebra& b, const CMatrix& va, const CMatrix& vb, const char* name,
                              const char* rel) {
    double moved = 0.0, comm = 0.0;
    const CMatrix q = vb.adjoint() * va;
    for (const auto& x : b.basis()) {
      moved = std::max({moved, b.residual(va * x * va.adjoint()), b.residual(vb * x * vb.adjoint())});
      comm = std::max(comm, (q * x - x * q).norm());
    }
    if (moved > tol.eps_assert) throw Error(ErrorCode::ConstraintViolated, std::string("Ad(v) does not preserve ") + name);
    if (comm > tol.eps_assert)
      throw Error(ErrorCode::ConstraintViolated, std::string(rel) + " is not in " + name + "', residual " + sci(comm));
  };
  if (n1 > 0) check_side(spec.B1, spec.v1, spec.v4, "B1", "v4^* v1");
  if (n2 > 0) check_side(spec.B2, spec.v2, spec.v3, "B2", "v3^* v2");

  const CMatrix z1 = CMatrix::Zero(n1, n1), z2 = CMatrix::Zero(n2, n2);
  std::vector<CMatrix> b_basis;
  for (const auto& x : spec.B1.basis()) b_basis.push_back(direct_sum(x, z2));
  for (const auto& x : spec.B2.basis()) b_basis.push_back(direct_sum(z1, x));
  const double s1 = n2 == 0 ? 1.0 : (n1 == 0 ? 0.0 : spec.s);
  const CMatrix rho1 = n1 > 0 ? CMatrix(spec.nu1.density()) : z1;
  const CMatrix rho2 = n2 > 0 ? CMatrix(spec.nu2.density()) : z2;
  const CMatrix nu = direct_sum(s1 * rho1, (1.0 - s1) * rho2);
  const Eigen::Index nb = n1 + n2;

  std::vector<CMatrix> basis;
  for (const auto& m : m2_basis())
    for (const auto& x : b_basis) basis.push_back(kron(m, x));
  MatrixStarAlgebra alg(2 * nb, std::move(basis));
  TraceFunctional trace(kron(0.5 * CMatrix::Identity(2, 2), nu), true);

  const CMatrix w1 = direct_sum(spec.v1, z2), w4 = direct_sum(spec.v4, z2);
  const CMatrix w2 = direct_sum(z1, spec.v2), w3 = direct_sum(z1, spec.v3);
  CMatrix w(2 * nb, 2 * nb);
  w << w1, w2, w3, w4;
  if (unitarity_gap(w) > tol.eps_assert) throw Error(ErrorCode::NotUnitary, "W is not unitary");

  ConstructedSystem out{WStarSystem{alg, trace, StarAutomorphism::conjugation(alg, w)}, {}, {}, {}, {}};
  std::vector<CMatrix> f_gens;
  const CMatrix i2 = CMatrix::Identity(2, 2);
  for (const auto& x : b_basis) f_gens.push_back(kron(i2, x));
  out.sub = make_subsystem(out.system, f_gens, tol);

  FiniteExtensionDiagnostics diag;
  diag.dim_B1 = spec.B1.dim();
  diag.dim_B2 = spec.B2.dim();
  for (const auto& b : b_basis) {
    const CMatrix first = w1 * b * w1.adjoint() + w2 * b * w2.adjoint();
    const CMatrix second = w3 * b * w3.adjoint() + w4 * b * w4.adjoint();
    const CMatrix image = out.system.alpha(kron(i2, b));
    diag.beta_residual = std::max({diag.beta_residual, (first - second).norm(), (image - kron(i2, first)).norm()});
    const CMatrix off1 = w1 * b * w3.adjoint() + w2 * b * w4.adjoint();
    const CMatrix off2 = w3 * b * w1.adjoint() + w4 * b * w2.adjoint();
    diag.offdiagonal_residual = std::max({diag.offdiagonal_residual, off1.norm(), off2.norm()});
  }
  // distance of alpha(1 (x) E12) from span{1 (x) m}
  const CMatrix ib = CMatrix::Identity(nb, nb);
  const CMatrix image = out.system.alpha(kron(matrix_unit(2, 0, 1), ib));
  std::vector<CMatrix> product_basis;
  for (const auto& m : m2_basis()) product_basis.push_back(kron(m, ib) / std::sqrt(static_cast<double>(nb)));
  diag.nonproduct_distance = MatrixStarAlgebra(2 * nb, std::move(product_basis)).residual(image);
  out.finite_extension = diag;
  return out;
}

}  // namespace vnspec
