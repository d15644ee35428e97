#pragma once

// Shared fixtures and random generators for the test suites.

#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "famw/axioms.hpp"
#include "famw/cochain.hpp"
#include "famw/constructions.hpp"
#include "famw/deformation.hpp"

namespace famw::test {

using Entry = std::tuple<std::size_t, std::size_t, std::size_t, Scalar>;

inline StructureTensor tensor_of(std::size_t dim, const std::vector<Entry>& entries) {
  StructureTensor t(dim);
  for (const auto& [i, j, k, v] : entries) t(i, j, k) = v;
  return t;
}

// --- worked examples -------------------------------------------------------

/// e2.e3 = e3.e2 = e1, e3.e3 = e2 (0-based below).
inline StructureTensor three_dim_mul() {
  return tensor_of(3, {{1, 2, 0, 1}, {2, 1, 0, 1}, {2, 2, 1, 1}});
}

/// Three-dimensional algebra with bracket [e2, e3] = -a e1.
inline Algebra three_dim(Scalar a) {
  Algebra alg(3);
  alg.set_product(kMul, three_dim_mul());
  alg.set_product(kBracket, tensor_of(3, {{1, 2, 0, -a}, {2, 1, 0, a}}));
  return alg;
}

/// e1.e1 = e1, e1.e2 = e2.e1 = e2 with bracket [e1, e2] = a e2.
inline Algebra two_dim(Scalar a) {
  Algebra alg(2);
  alg.set_product(kMul, tensor_of(2, {{0, 0, 0, 1}, {0, 1, 1, 1}, {1, 0, 1, 1}}));
  alg.set_product(kBracket, tensor_of(2, {{0, 1, 1, a}, {1, 0, 1, -a}}));
  return alg;
}

/// D(e1) = 3a e1, D(e2) = 2b e1 + 2a e2, D(e3) = c e1 + b e2 + a e3.
inline LinearOperator three_dim_derivation(Scalar a, Scalar b, Scalar c) {
  return {Matrix{{3 * a, 2 * b, c}, {0, 2 * a, b}, {0, 0, a}}};
}

/// B(e1) = r e1, B(e2) = 2s e1 + 3/2 r e2, B(e3) = t e1 + 3s e2 + 3r e3.
inline LinearOperator rota_baxter_example(Scalar r, Scalar s, Scalar t) {
  return {Matrix{{r, 2 * s, t}, {0, Scalar(3, 2) * r, 3 * s}, {0, 0, 3 * r}}};
}

/// alpha(e1) = r e1, alpha(e2) = s e1 + r e2, alpha(e3) = t e1 + s e2 + r e3.
inline LinearOperator average_example(Scalar r, Scalar s, Scalar t) {
  return {Matrix{{r, s, t}, {0, r, s}, {0, 0, r}}};
}

inline Algebra zero_algebra(std::size_t dim) {
  Algebra a(dim);
  a.set_product(kMul, StructureTensor(dim));
  a.set_product(kBracket, StructureTensor(dim));
  return a;
}

// --- linear algebra helpers ------------------------------------------------

inline Matrix inverse(const Matrix& m) {
  const std::size_t n = m.rows();
  Matrix out(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    auto sol = solve(m, unit_vector(n, c));
    if (!sol.particular || !sol.kernel_basis.empty()) throw Error("matrix is singular");
    for (std::size_t r = 0; r < n; ++r) out(r, c) = (*sol.particular)[r];
  }
  return out;
}

/// Structure constants in the basis f_i = P e_i.
inline StructureTensor change_basis(const StructureTensor& t, const Matrix& p, const Matrix& pinv) {
  const std::size_t n = t.dim();
  return tensor_from(n, [&](const Vector& x, const Vector& y) {
    return pinv.apply(tensor_contract(t, p.apply(x), p.apply(y)));
  });
}

inline Algebra change_basis(const Algebra& a, const Matrix& p) {
  const Matrix pinv = inverse(p);
  Algebra out(a.dim(), a.labels());
  for (const auto& [name, t] : a.products()) out.set_product(name, change_basis(t, p, pinv));
  return out;
}

/// Operator matrix in the basis f_i = P e_i.
inline LinearOperator change_basis(const LinearOperator& op, const Matrix& p) {
  return {inverse(p) * op.matrix * p};
}

inline BilinearForm change_basis(const BilinearForm& f, const Matrix& p) {
  return {p.transpose() * f.b * p};
}

// --- randomness ----------------------------------------------------------------

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(gen_); }
  std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(gen_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(gen_); }

  /// Small rational p/q with |p| <= 5, 1 <= q <= 4.
  Scalar rational() { return Scalar(integer(-5, 5), integer(1, 4)); }
  Scalar nonzero_rational() {
    Scalar s;
    while (s.is_zero()) s = rational();
    return s;
  }

  Vector vector(std::size_t n) {
    Vector v(n);
    for (auto& x : v) x = rational();
    return v;
  }

  Matrix matrix(std::size_t r, std::size_t c) {
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = rational();
    return m;
  }

  /// Unit lower-triangular times upper-triangular with small entries: always invertible.
  Matrix invertible(std::size_t n) {
    Matrix l = Matrix::identity(n), u = Matrix::identity(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (i > j) l(i, j) = integer(-2, 2);
        if (i < j) u(i, j) = integer(-2, 2);
        if (i == j) u(i, j) = nonzero_rational();
      }
    return l * u;
  }

  StructureTensor tensor(std::size_t n, double density = 0.4) {
    StructureTensor t(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          if (coin(density)) t(i, j, k) = rational();
    return t;
  }

  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

// --- generators ----------------------------------------------------------------

/// Commutative associative monomial algebra: basis a set of monomials x^a y^b
/// closed under division (optionally without 1), product m m' or 0.
struct GradedAlgebra {
  Algebra algebra;
  std::vector<std::size_t> degree;  ///< total degree of each basis monomial

  /// Euler derivation x -> deg(x) x.
  LinearOperator euler() const {
    Matrix m(degree.size(), degree.size());
    for (std::size_t i = 0; i < degree.size(); ++i) m(i, i) = static_cast<long>(degree[i]);
    return {m};
  }

  /// Basis elements that multiply everything to zero.
  std::vector<std::size_t> socle() const {
    std::vector<std::size_t> out;
    const auto& t = algebra.product(kMul);
    for (std::size_t i = 0; i < degree.size(); ++i) {
      bool zero = true;
      for (std::size_t j = 0; j < degree.size(); ++j)
        for (std::size_t k = 0; k < degree.size(); ++k) zero = zero && t(i, j, k).is_zero();
      if (zero) out.push_back(i);
    }
    return out;
  }
};

inline GradedAlgebra monomial_algebra(const std::vector<std::pair<int, int>>& monomials) {
  const std::size_t n = monomials.size();
  GradedAlgebra g{Algebra(n), {}};
  StructureTensor t(n);
  for (std::size_t i = 0; i < n; ++i) {
    g.degree.push_back(static_cast<std::size_t>(monomials[i].first + monomials[i].second));
    for (std::size_t j = 0; j < n; ++j) {
      std::pair<int, int> p{monomials[i].first + monomials[j].first,
                            monomials[i].second + monomials[j].second};
      for (std::size_t k = 0; k < n; ++k)
        if (monomials[k] == p) t(i, j, k) = 1;
    }
  }
  g.algebra.set_product(kMul, std::move(t));
  return g;
}

/// Random order ideal of monomials x^a y^b with `dim` elements, excluding 1
/// unless `unital`.
inline std::vector<std::pair<int, int>> random_monomials(Rng& rng, std::size_t dim, bool unital) {
  std::set<std::pair<int, int>> s{{0, 0}};
  const std::size_t target = unital ? dim : dim + 1;
  while (s.size() < target) {
    std::vector<std::pair<int, int>> candidates;
    for (const auto& m : s)
      for (auto c : {std::pair{m.first + 1, m.second}, std::pair{m.first, m.second + 1}}) {
        if (s.contains(c)) continue;
        bool closed = (c.first == 0 || s.contains({c.first - 1, c.second})) &&
                      (c.second == 0 || s.contains({c.first, c.second - 1}));
        if (closed) candidates.push_back(c);
      }
    s.insert(candidates[rng.index(candidates.size())]);
  }
  std::vector<std::pair<int, int>> monomials;
  for (const auto& m : s)
    if (unital || m != std::pair{0, 0}) monomials.push_back(m);
  return monomials;
}

inline GradedAlgebra random_monomial_algebra(Rng& rng, std::size_t dim, bool unital) {
  return monomial_algebra(random_monomials(rng, dim, unital));
}

/// Keeps only the entries of `op` between basis elements of equal degree.
inline LinearOperator degree_zero_part(const LinearOperator& op, const std::vector<std::size_t>& deg) {
  Matrix m = op.matrix;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (deg[r] != deg[c]) m(r, c) = 0;
  return {m};
}

inline LinearOperator random_combination(Rng& rng, const std::vector<LinearOperator>& ops,
                                         std::size_t n) {
  Matrix m(n, n);
  for (const auto& op : ops)
    if (rng.coin(0.7)) m += rng.rational() * op.matrix;
  return {m};
}

/// Random derivation of a graded algebra's product.
inline LinearOperator random_derivation(Rng& rng, const Algebra& a) {
  return random_combination(rng, solve_derivations(a, kMul), a.dim());
}

/// Commutative associative algebra of dim 2..4, in a random basis when `rebase`.
inline Algebra random_commutative(Rng& rng, std::size_t dim, bool rebase = true) {
  GradedAlgebra g = random_monomial_algebra(rng, dim, rng.coin());
  return rebase ? change_basis(g.algebra, rng.invertible(dim)) : g.algebra;
}

/// Pre-Lie product x.D(y) + w.x.y on a commutative algebra (stored in "bracket"
/// alongside "mul"); the weight is a scalar or an element.
inline Algebra random_prelie(Rng& rng, std::size_t dim) {
  Algebra base = random_commutative(rng, dim);
  if (rng.coin(0.15)) {
    Algebra out(dim);
    out.set_product(kBracket, base.product(kMul));
    return out;
  }
  LinearOperator d = random_derivation(rng, base);
  DerivationWeight w = rng.coin() ? DerivationWeight(rng.rational())
                                  : DerivationWeight(rng.vector(dim));
  Algebra induced = derivation_induced(base, d, w, true);
  Algebra out(dim);
  out.set_product(kBracket, induced.product(kStar));
  return out;
}

/// F-manifold algebra (mul, x.D(y) - y.D(x)) on a non-unital graded monomial
/// algebra with D of degree zero, together with its invertible Euler derivation.
struct GradedFManifold {
  Algebra algebra;
  GradedAlgebra graded;
};

inline GradedFManifold random_graded_f_manifold(Rng& rng, std::size_t dim) {
  GradedAlgebra g = random_monomial_algebra(rng, dim, false);
  LinearOperator d = degree_zero_part(random_derivation(rng, g.algebra), g.degree);
  Algebra a = derivation_induced(g.algebra, d, Scalar(0), true);
  Algebra out(dim);
  out.set_product(kMul, a.product(kMul));
  out.set_product(kBracket, a.product(kBracket));
  return {out, g};
}

/// c * Euler^{-1}: the inverse of an invertible derivation of both products is
/// a Rota-Baxter operator on both.
inline LinearOperator random_euler_rota_baxter(Rng& rng, const GradedFManifold& f) {
  Matrix e = f.graded.euler().matrix;
  return {rng.nonzero_rational() * inverse(e)};
}

/// Poisson structure on a monomial algebra: {m, m'} = c (a d - b c') m m' for
/// m = x^a y^b, m' = x^c' y^d. Monomial ideals are Poisson ideals for it, and
/// the Euler derivation is a derivation of both products.
inline GradedAlgebra log_canonical_poisson(Rng& rng, std::size_t dim, bool unital) {
  std::vector<std::pair<int, int>> monomials = random_monomials(rng, dim, unital);
  GradedAlgebra g = monomial_algebra(monomials);
  const std::size_t n = monomials.size();
  StructureTensor br(n);
  const Scalar scale = rng.nonzero_rational();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto [a, b] = monomials[i];
      auto [c, d] = monomials[j];
      for (std::size_t k = 0; k < n; ++k)
        if (monomials[k] == std::pair{a + c, b + d}) br(i, j, k) = scale * Scalar(a * d - b * c);
    }
  g.algebra.set_product(kBracket, std::move(br));
  return g;
}

/// Basis of the bilinear forms satisfying the linear conditions selected by
/// `kind` (symmetry or antisymmetry plus invariance or cyclicity), ignoring
/// nondegeneracy.
inline std::vector<Matrix> form_space(const Algebra& a, FormKind kind) {
  const std::size_t n = a.dim();
  const bool symmetric = kind == FormKind::invariant_symmetric;
  std::vector<Vector> rows;
  auto var = [n](std::size_t p, std::size_t q) { return p * n + q; };
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q) {
      Vector r(n * n);
      r[var(p, q)] += 1;
      r[var(q, p)] += symmetric ? -1 : 1;
      rows.push_back(std::move(r));
    }
  for (const auto* slot : {&kMul, &kBracket}) {
    const StructureTensor& c = a.product(*slot);
    if (kind == FormKind::connes_cyclic && *slot != kMul) continue;
    if (kind == FormKind::symplectic && *slot != kBracket) continue;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          Vector r(n * n);
          for (std::size_t p = 0; p < n; ++p) {
            if (symmetric) {
              r[var(p, k)] += c(i, j, p);
              r[var(i, p)] -= c(j, k, p);
            } else {
              r[var(p, k)] += c(i, j, p);
              r[var(p, i)] += c(j, k, p);
              r[var(p, j)] += c(k, i, p);
            }
          }
          rows.push_back(std::move(r));
        }
  }
  Matrix m(rows.size(), n * n);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < n * n; ++c) m(r, c) = rows[r][c];
  std::vector<Matrix> out;
  for (const auto& v : kernel(m)) {
    Matrix b(n, n);
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q) b(p, q) = v[var(p, q)];
    out.push_back(std::move(b));
  }
  return out;
}

/// Random element of a form space, or nothing if it is degenerate.
inline std::optional<BilinearForm> random_nondegenerate(Rng& rng, const std::vector<Matrix>& space,
                                                        std::size_t n) {
  Matrix b(n, n);
  for (const auto& m : space) b += Scalar(rng.integer(-3, 3)) * m;
  if (rank(b) != n) return std::nullopt;
  return BilinearForm{b};
}

/// Three-dimensional Lie algebra (sl2, Heisenberg or abelian) with zero product.
inline Algebra zero_product_lie(Rng& rng) {
  Algebra a(3);
  a.set_product(kMul, StructureTensor(3));
  switch (rng.index(3)) {
    case 0:
      a.set_product(kBracket, tensor_of(3, {{0, 1, 1, 2}, {1, 0, 1, -2}, {0, 2, 2, -2},
                                            {2, 0, 2, 2}, {1, 2, 0, 1}, {2, 1, 0, -1}}));
      break;
    case 1: a.set_product(kBracket, tensor_of(3, {{0, 1, 2, 1}, {1, 0, 2, -1}})); break;
    default: a.set_product(kBracket, StructureTensor(3));
  }
  return a;
}

/// Random element of a representation-compatible cochain space.
inline Cochain random_cochain(Rng& rng, std::size_t degree, std::size_t dim, std::size_t mdim) {
  Cochain c(degree, dim, mdim);
  Vector v(c.size());
  for (auto& x : v)
    if (rng.coin(0.6)) x = rng.rational();
  c.set_values(std::move(v));
  return c;
}

/// Block-diagonal sum of two representations of the same algebra.
inline Representation direct_sum(const Representation& a, const Representation& b) {
  Representation out = Representation::zero(a.algebra_dim, a.module_dim + b.module_dim);
  for (std::size_t i = 0; i < a.algebra_dim; ++i)
    for (auto [src, dst] : {std::pair{&a, std::size_t{0}}, std::pair{&b, a.module_dim}}) {
      for (std::size_t r = 0; r < src->module_dim; ++r)
        for (std::size_t c = 0; c < src->module_dim; ++c) {
          out.rho[i](dst + r, dst + c) = src->rho[i](r, c);
          out.mu[i](dst + r, dst + c) = src->mu[i](r, c);
        }
    }
  return out;
}

}  // namespace famw::test
