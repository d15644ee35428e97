#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "famw/algebra.hpp"
#include "famw/axioms.hpp"

namespace famw {

namespace detail {

inline Algebra with_products(std::size_t dim, StructureTensor mul, StructureTensor bracket) {
  Algebra out(dim);
  out.set_product(kMul, std::move(mul));
  out.set_product(kBracket, std::move(bracket));
  return out;
}

}  // namespace detail

/// x o y - y o x.
inline StructureTensor commutator_bracket(const Algebra& a, const std::string& slot) {
  const StructureTensor& t = a.product(slot);
  return t - t.opposite();
}

/// x o y + y o x.
inline StructureTensor symmetrized_product(const Algebra& a, const std::string& slot) {
  const StructureTensor& t = a.product(slot);
  return t + t.opposite();
}

/// (A, <>, *) with <> in "mul" and * in "bracket" -> (A, x<>y + y<>x, x*y - y*x).
inline Algebra sub_adjacent_f_manifold(const Algebra& a, bool force = false) {
  if (!force) detail::require(check_class(a, AlgebraClass::pre_f_manifold));
  return detail::with_products(a.dim(), symmetrized_product(a, kMul),
                               commutator_bracket(a, kBracket));
}

/// Block-diagonal sum on dim(a) + dim(b). Both inputs must carry the same product slots.
inline Algebra direct_sum(const Algebra& a, const Algebra& b) {
  const std::size_t n = a.dim(), m = b.dim();
  std::vector<std::string> labels = a.labels();
  for (const auto& l : b.labels()) labels.push_back(l + "'");
  Algebra out(n + m, std::move(labels));
  for (const auto& [name, ta] : a.products()) {
    const StructureTensor& tb = b.product(name);
    StructureTensor t(n + m);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) t(i, j, k) = ta(i, j, k);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        for (std::size_t k = 0; k < m; ++k) t(n + i, n + j, n + k) = tb(i, j, k);
    out.set_product(name, std::move(t));
  }
  for (const auto& [name, tb] : b.products())
    if (!a.has_product(name)) throw MissingSlot(name);
  return out;
}

/// Tensor product on dim(a) * dim(b), basis e_i (x) f_j at index i * dim(b) + j:
///   (x1 (x) x2)(y1 (x) y2) = x1 y1 (x) x2 y2
///   [x1 (x) x2, y1 (x) y2] = [x1, y1] (x) x2 y2 + x1 y1 (x) [x2, y2]
inline Algebra tensor_product(const Algebra& a, const Algebra& b) {
  const std::size_t n = a.dim(), m = b.dim();
  const auto &ma = a.product(kMul), &ba = a.product(kBracket);
  const auto &mb = b.product(kMul), &bb = b.product(kBracket);
  std::vector<std::string> labels;
  for (const auto& la : a.labels())
    for (const auto& lb : b.labels()) labels.push_back(la + "*" + lb);
  StructureTensor mul(n * m), br(n * m);
  auto idx = [m](std::size_t i, std::size_t j) { return i * m + j; };
  for (std::size_t i1 = 0; i1 < n; ++i1)
    for (std::size_t j1 = 0; j1 < n; ++j1)
      for (std::size_t k1 = 0; k1 < n; ++k1) {
        const Scalar &pa = ma(i1, j1, k1), &qa = ba(i1, j1, k1);
        if (pa.is_zero() && qa.is_zero()) continue;
        for (std::size_t i2 = 0; i2 < m; ++i2)
          for (std::size_t j2 = 0; j2 < m; ++j2)
            for (std::size_t k2 = 0; k2 < m; ++k2) {
              const Scalar &pb = mb(i2, j2, k2), &qb = bb(i2, j2, k2);
              if (pb.is_zero() && qb.is_zero()) continue;
              const std::size_t i = idx(i1, i2), j = idx(j1, j2), k = idx(k1, k2);
              mul(i, j, k) += pa * pb;
              br(i, j, k) += qa * pb + pa * qb;
            }
      }
  Algebra out(n * m, std::move(labels));
  out.set_product(kMul, std::move(mul));
  out.set_product(kBracket, std::move(br));
  return out;
}

/// A |x V with (x1+v1)(x2+v2) = x1 x2 + mu(x1)v2 + mu(x2)v1 and
/// [x1+v1, x2+v2] = [x1,x2] + rho(x1)v2 - rho(x2)v1.
inline Algebra semidirect_product(const Algebra& a, const Representation& r, bool force = false) {
  if (!force) detail::require(check_representation(a, r));
  r.validate();
  const std::size_t n = a.dim(), m = r.module_dim;
  std::vector<std::string> labels = a.labels();
  for (std::size_t i = 0; i < m; ++i) labels.push_back("v" + std::to_string(i + 1));
  StructureTensor mul(n + m), br(n + m);
  const auto &am = a.product(kMul), &ab = a.product(kBracket);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        mul(i, j, k) = am(i, j, k);
        br(i, j, k) = ab(i, j, k);
      }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t v = 0; v < m; ++v)
      for (std::size_t w = 0; w < m; ++w) {
        // column v of mu(e_i) is mu(e_i) applied to the v-th module basis vector
        const Scalar& mu = r.mu[i](w, v);
        const Scalar& rho = r.rho[i](w, v);
        mul(i, n + v, n + w) = mu;
        mul(n + v, i, n + w) = mu;
        br(i, n + v, n + w) = rho;
        br(n + v, i, n + w) = -rho;
      }
  Algebra out(n + m, std::move(labels));
  out.set_product(kMul, std::move(mul));
  out.set_product(kBracket, std::move(br));
  return out;
}

/// Weight in x *_a y = x.D(y) + a.(x.y): a scalar, or an algebra element w
/// giving w.(x.y).
using DerivationWeight = std::variant<Scalar, Vector>;

inline const std::string kStar = "star";

/// From a commutative associative "mul" and derivation D, adds
///   "star":    x *_a y = x.D(y) + a.(x.y)
///   "bracket": x.D(y) - y.D(x)  (the commutator of star)
inline Algebra derivation_induced(const Algebra& a, const LinearOperator& d,
                                  const DerivationWeight& weight = Scalar(0), bool force = false) {
  if (!force) detail::require(check_operator(a, d, OperatorKind::derivation, nullptr, {kMul}));
  Product mul(a.product(kMul));
  const std::size_t n = a.dim();
  StructureTensor star;
  if (const auto* s = std::get_if<Scalar>(&weight)) {
    star = tensor_from(n, [&](const Vector& x, const Vector& y) {
      return mul(x, d(y)) + *s * mul(x, y);
    });
  } else {
    const Vector& w = std::get<Vector>(weight);
    check_same_size(w.size(), n, "weight element");
    star = tensor_from(n, [&](const Vector& x, const Vector& y) {
      return mul(x, d(y)) + mul(w, mul(x, y));
    });
  }
  Algebra out(n, a.labels());
  out.set_product(kMul, a.product(kMul));
  out.set_product(kStar, star);
  out.set_product(kBracket, star - star.opposite());
  return out;
}

/// u <> v = mu(T u) v and u * v = rho(T u) v on the module, stored as "mul" and "bracket".
inline Algebra o_operator_induced_pre_f(const Algebra& a, const Representation& r,
                                        const LinearOperator& t, bool force = false) {
  if (!force) {
    detail::require(check_representation(a, r));
    detail::require(check_operator(a, t, OperatorKind::o_operator, &r));
  }
  r.validate();
  const std::size_t m = r.module_dim;
  if (t.source_dim() != m || t.target_dim() != a.dim())
    throw DimensionMismatch("operator must map the module to the algebra");
  StructureTensor diamond(m), star(m);
  for (std::size_t u = 0; u < m; ++u) {
    Vector tu = t(unit_vector(m, u));
    Matrix mu = r.mu_of(tu), rho = r.rho_of(tu);
    for (std::size_t v = 0; v < m; ++v)
      for (std::size_t w = 0; w < m; ++w) {
        diamond(u, v, w) = mu(w, v);
        star(u, v, w) = rho(w, v);
      }
  }
  return detail::with_products(m, std::move(diamond), std::move(star));
}

/// (A; ad, L): rho(x) = [x, -], mu(x) = x . -. Applied to a pre-F-manifold
/// algebra stored as (<>, *) this gives (A; L_*, L_<>), a representation of its
/// sub-adjacent algebra.
inline Representation regular_representation(const Algebra& a) {
  const std::size_t n = a.dim();
  Representation r{n, n, {}, {}};
  for (std::size_t i = 0; i < n; ++i) {
    r.rho.push_back(left_multiplication(a.product(kBracket), unit_vector(n, i)));
    r.mu.push_back(left_multiplication(a.product(kMul), unit_vector(n, i)));
  }
  return r;
}

/// (V*; rho*, -mu*): rho -> -rho^T, mu -> mu^T.
inline Representation dual_representation(const Representation& r) {
  r.validate();
  Representation out = r;
  for (auto& m : out.rho) m = -m.transpose();
  for (auto& m : out.mu) m = m.transpose();
  return out;
}

/// x <> y = B(x).y and x * y = [B(x), y]: the O-operator construction for the
/// regular representation.
inline Algebra rota_baxter_induced_pre_f(const Algebra& a, const LinearOperator& b,
                                         bool force = false) {
  if (!force) {
    detail::require(check_class(a, AlgebraClass::f_manifold));
    detail::require(check_operator(a, b, OperatorKind::rota_baxter));
  }
  return o_operator_induced_pre_f(a, regular_representation(a), b, true);
}

/// x . y = alpha(x).y and {x, y} = [alpha(x), y], stored as "mul" and "bracket".
inline Algebra average_induced_dual_pre_f(const Algebra& a, const LinearOperator& alpha,
                                          bool force = false) {
  if (!force) detail::require(check_operator(a, alpha, OperatorKind::average));
  Product mul(a.product(kMul)), br(a.product(kBracket));
  const std::size_t n = a.dim();
  if (alpha.source_dim() != n || alpha.target_dim() != n)
    throw DimensionMismatch("average operator must be dim x dim");
  auto bullet = tensor_from(n, [&](const Vector& x, const Vector& y) { return mul(alpha(x), y); });
  auto braces = tensor_from(n, [&](const Vector& x, const Vector& y) { return br(alpha(x), y); });
  Algebra out(n, a.labels());
  out.set_product(kMul, std::move(bullet));
  out.set_product(kBracket, std::move(braces));
  return out;
}

/// Pre-F-manifold structure determined by
///   w(x <> y, z) = w(y, x.z),  w(x * y, z) = w(y, [z, x])
/// on a coherence F-manifold algebra with a symplectic Connes-cyclic form w.
inline Algebra form_induced_pre_f(const Algebra& a, const BilinearForm& omega, bool force = false) {
  if (!force) {
    detail::require(check_class(a, AlgebraClass::coherence_f_manifold));
    detail::require(check_form(a, omega, FormKind::connes_cyclic));
    detail::require(check_form(a, omega, FormKind::symplectic));
  }
  const std::size_t n = a.dim();
  if (omega.dim() != n || omega.b.cols() != n) throw DimensionMismatch("form is not dim x dim");
  Product mul(a.product(kMul)), br(a.product(kBracket));
  // w(v, e_k) = sum_l v_l W(l, k), so v solves W^T v = rhs
  const Matrix wt = omega.b.transpose();
  auto solve_for = [&](auto&& rhs_of) {
    StructureTensor t(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Vector rhs(n);
        for (std::size_t k = 0; k < n; ++k) rhs[k] = rhs_of(i, j, k);
        auto sol = solve(wt, rhs);
        if (!sol.particular || !sol.kernel_basis.empty())
          throw Error("form is degenerate: induced product is not uniquely determined");
        for (std::size_t k = 0; k < n; ++k) t(i, j, k) = (*sol.particular)[k];
      }
    return t;
  };
  auto e = [n](std::size_t i) { return unit_vector(n, i); };
  StructureTensor diamond = solve_for([&](std::size_t i, std::size_t j, std::size_t k) {
    return omega(e(j), mul(e(i), e(k)));
  });
  StructureTensor star = solve_for([&](std::size_t i, std::size_t j, std::size_t k) {
    return omega(e(j), br(e(k), e(i)));
  });
  return detail::with_products(n, std::move(diamond), std::move(star));
}

}  // namespace famw
