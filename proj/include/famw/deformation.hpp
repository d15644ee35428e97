#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "famw/cochain.hpp"
#include "famw/constructions.hpp"

namespace famw {

/// Truncated pre-Lie deformation mu_0 + h mu_1 + ... + h^n mu_n of the
/// commutative associative product "mul" of `base`.
struct DeformationFamily {
  Algebra base;
  std::vector<StructureTensor> mus;  ///< mu_1, ..., mu_n

  std::size_t order() const { return mus.size(); }
  std::size_t dim() const { return base.dim(); }

  /// mu_k, with mu_0 the base product.
  const StructureTensor& mu(std::size_t k) const {
    return k == 0 ? base.product(kMul) : mus.at(k - 1);
  }

  void validate() const {
    for (const auto& t : mus) check_same_size(t.dim(), base.dim(), "deformation tensor dimension");
  }

  friend bool operator==(const DeformationFamily&, const DeformationFamily&) = default;
};

namespace detail {

/// sum over (i, j) in pairs of
///   mu_i(mu_j(x,y),z) - mu_i(x,mu_j(y,z)) - mu_i(mu_j(y,x),z) + mu_i(y,mu_j(x,z)).
inline Vector pre_lie_rule_terms(const DeformationFamily& f,
                                 const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                                 const Vector& x, const Vector& y, const Vector& z) {
  Vector out(f.dim());
  for (auto [i, j] : pairs) {
    Product mi(f.mu(i)), mj(f.mu(j));
    out += mi(mj(x, y), z) - mi(x, mj(y, z)) - mi(mj(y, x), z) + mi(y, mj(x, z));
  }
  return out;
}

inline std::vector<std::pair<std::size_t, std::size_t>> pairs_summing_to(std::size_t k,
                                                                         std::size_t lo) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = lo; i + lo <= k; ++i) out.emplace_back(i, k - i);
  return out;
}

}  // namespace detail

/// The pre-Lie rule at order k as an identity over basis triples.
inline Identity deformation_order_identity(const DeformationFamily& f, std::size_t k) {
  const std::size_t n = f.dim();
  return {"order-" + std::to_string(k),
          {n, n, n},
          [&f, pairs = detail::pairs_summing_to(k, 0)](std::span<const Vector> v) {
            return detail::pre_lie_rule_terms(f, pairs, v[0], v[1], v[2]);
          }};
}

/// Checks that mu_0 is commutative associative and that the pre-Lie rule holds
/// at every order k = 0..n (identity names "order-k").
inline CheckReport verify_n_deformation(const DeformationFamily& f) {
  f.validate();
  CheckReport base = check_class(f.base, AlgebraClass::commutative_associative, {kMul});
  if (!base.passed) {
    base.check = "deformation";
    return base;
  }
  std::vector<Identity> ids;
  for (std::size_t k = 0; k <= f.order(); ++k) ids.push_back(deformation_order_identity(f, k));
  return run_identities("deformation", ids);
}

/// The pre-Lie rule at the single order k.
inline CheckReport verify_order(const DeformationFamily& f, std::size_t k) {
  f.validate();
  if (k > f.order()) throw Error("order exceeds the family length");
  return run_identities("order-" + std::to_string(k), {deformation_order_identity(f, k)});
}

/// Coboundary under the regular representation of (base, mul) viewed as a pre-Lie algebra.
inline Coboundary regular_coboundary(const Algebra& base) {
  return Coboundary(base, prelie_regular_representation(base, kMul), kMul);
}

/// d^reg mu_1 = 0, computed through the cochain complex.
inline bool is_two_cocycle(const Algebra& base, const StructureTensor& mu1) {
  return regular_coboundary(base)(cochain_from_tensor(mu1)).is_zero();
}

/// A linear map phi with mu1 - mu1p = d^reg phi, if one exists.
inline std::optional<LinearOperator> deformation_equivalent(const Algebra& base,
                                                            const StructureTensor& mu1,
                                                            const StructureTensor& mu1p) {
  detail::require(verify_n_deformation({base, {mu1}}));
  detail::require(verify_n_deformation({base, {mu1p}}));
  const Coboundary d = regular_coboundary(base);
  Cochain diff = cochain_from_tensor(mu1 - mu1p);
  auto sol = solve(d.matrix(1), diff.values());
  if (!sol.particular) return std::nullopt;
  Cochain phi(1, base.dim(), base.dim());
  phi.set_values(std::move(*sol.particular));
  return operator_from_cochain(phi);
}

/// Theta_n(x, y, z) at arbitrary arguments.
inline Vector obstruction_value(const DeformationFamily& f, const Vector& x, const Vector& y,
                                const Vector& z) {
  return detail::pre_lie_rule_terms(f, detail::pairs_summing_to(f.order() + 1, 1), x, y, z);
}

/// The degree-3 cochain Theta_n read off on canonical tuples.
inline Cochain obstruction(const DeformationFamily& f) {
  detail::require(verify_n_deformation(f));
  const std::size_t n = f.dim();
  Cochain theta(3, n, n);
  for (std::size_t w = 0; w < theta.wedges().size(); ++w) {
    const auto& ij = theta.wedges()[w];
    for (std::size_t k = 0; k < n; ++k) {
      Vector v = obstruction_value(f, unit_vector(n, ij[0]), unit_vector(n, ij[1]),
                                   unit_vector(n, k));
      for (std::size_t c = 0; c < n; ++c) theta.at(w, k, c) = std::move(v[c]);
    }
  }
  return theta;
}

/// mu_{n+1} solving d^reg mu_{n+1} = Theta_n with free parameters zero, or
/// nothing when the obstruction class is nonzero.
inline std::optional<StructureTensor> extend_deformation(const DeformationFamily& f) {
  Cochain theta = obstruction(f);
  auto sol = solve(regular_coboundary(f.base).matrix(2), theta.values());
  if (!sol.particular) return std::nullopt;
  Cochain psi(2, f.dim(), f.dim());
  psi.set_values(std::move(*sol.particular));
  return tensor_from_cochain(psi);
}

/// (A, mu_0, mu_1(x,y) - mu_1(y,x)).
inline Algebra semi_classical_limit(const DeformationFamily& f) {
  if (f.order() < 1) throw Error("semi-classical limit needs a deformation of order at least 1");
  detail::require(verify_n_deformation(f));
  Algebra out(f.dim(), f.base.labels());
  out.set_product(kMul, f.mu(0));
  out.set_product(kBracket, f.mu(1) - f.mu(1).opposite());
  return out;
}

}  // namespace famw
