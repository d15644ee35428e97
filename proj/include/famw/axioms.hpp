#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "famw/algebra.hpp"
#include "famw/identities.hpp"

namespace famw {

enum class AlgebraClass {
  commutative,
  associative,
  commutative_associative,
  lie,
  pre_lie,
  lie_admissible,
  zinbiel,
  permutative,
  leibniz,
  poisson,
  f_manifold,
  f_manifold_admissible,
  prelie_com,
  pre_f_manifold,
  dual_pre_f_manifold,
  coherence_f_manifold,
};

namespace detail {

struct ClassInfo {
  AlgebraClass cls;
  std::string_view name;
  std::size_t slots;
  std::string_view single_default;  // used when slots == 1
};

inline constexpr std::array<ClassInfo, 16> kClasses{{
    {AlgebraClass::commutative, "commutative", 1, "mul"},
    {AlgebraClass::associative, "associative", 1, "mul"},
    {AlgebraClass::commutative_associative, "commutative-associative", 1, "mul"},
    {AlgebraClass::lie, "lie", 1, "bracket"},
    {AlgebraClass::pre_lie, "pre-lie", 1, "bracket"},
    {AlgebraClass::lie_admissible, "lie-admissible", 1, "bracket"},
    {AlgebraClass::zinbiel, "zinbiel", 1, "mul"},
    {AlgebraClass::permutative, "permutative", 1, "mul"},
    {AlgebraClass::leibniz, "leibniz", 1, "bracket"},
    {AlgebraClass::poisson, "poisson", 2, ""},
    {AlgebraClass::f_manifold, "f-manifold", 2, ""},
    {AlgebraClass::f_manifold_admissible, "f-manifold-admissible", 2, ""},
    {AlgebraClass::prelie_com, "prelie-com", 2, ""},
    {AlgebraClass::pre_f_manifold, "pre-f-manifold", 2, ""},
    {AlgebraClass::dual_pre_f_manifold, "dual-pre-f-manifold", 2, ""},
    {AlgebraClass::coherence_f_manifold, "coherence-f-manifold", 2, ""},
}};

inline void require(const CheckReport& r) {
  if (!r.passed) throw PreconditionFailed(r);
}

inline const ClassInfo& info(AlgebraClass c) {
  for (const auto& i : kClasses)
    if (i.cls == c) return i;
  throw UnknownName("unknown algebra class");
}

}  // namespace detail

inline std::string_view to_string(AlgebraClass c) { return detail::info(c).name; }

inline AlgebraClass parse_algebra_class(std::string_view name) {
  for (const auto& i : detail::kClasses)
    if (i.name == name) return i.cls;
  throw UnknownName("unknown algebra class '" + std::string(name) + "'");
}

inline std::vector<AlgebraClass> all_algebra_classes() {
  std::vector<AlgebraClass> out;
  for (const auto& i : detail::kClasses) out.push_back(i.cls);
  return out;
}

/// One defining identity of a class. `evaluate` receives the bound products in
/// slot order and the argument vectors.
struct IdentityCatalogEntry {
  std::string name;
  std::size_t arity;
  std::function<Vector(std::span<const Product>, std::span<const Vector>)> evaluate;
};

namespace catalog {

using Args = std::span<const Vector>;
using Ops = std::span<const Product>;

inline IdentityCatalogEntry commutativity(std::size_t p) {
  return {"commutativity", 2, [p](Ops o, Args a) { return commutator(o[p], a[0], a[1]); }};
}

inline IdentityCatalogEntry associativity(std::size_t p) {
  return {"associativity", 3, [p](Ops o, Args a) {
            return o[p](o[p](a[0], a[1]), a[2]) - o[p](a[0], o[p](a[1], a[2]));
          }};
}

inline IdentityCatalogEntry antisymmetry(std::size_t p) {
  return {"antisymmetry", 2, [p](Ops o, Args a) { return anticommutator(o[p], a[0], a[1]); }};
}

inline IdentityCatalogEntry jacobi(std::size_t p) {
  return {"jacobi", 3, [p](Ops o, Args a) {
            const auto& b = o[p];
            return b(a[0], b(a[1], a[2])) + b(a[1], b(a[2], a[0])) + b(a[2], b(a[0], a[1]));
          }};
}

/// Associator (x,y,z) = (x*y)*z - x*(y*z).
inline Vector associator(const Product& m, const Vector& x, const Vector& y, const Vector& z) {
  return m(m(x, y), z) - m(x, m(y, z));
}

inline IdentityCatalogEntry left_symmetry(std::size_t p) {
  return {"left-symmetry", 3, [p](Ops o, Args a) {
            return associator(o[p], a[0], a[1], a[2]) - associator(o[p], a[1], a[0], a[2]);
          }};
}

inline IdentityCatalogEntry lie_admissibility(std::size_t p) {
  return {"lie-admissibility", 3, [p](Ops o, Args a) {
            const auto& m = o[p];
            const auto &x = a[0], &y = a[1], &z = a[2];
            return associator(m, x, y, z) - associator(m, y, x, z) + associator(m, y, z, x) -
                   associator(m, z, y, x) + associator(m, z, x, y) - associator(m, x, z, y);
          }};
}

inline IdentityCatalogEntry zinbiel(std::size_t p) {
  return {"zinbiel", 3, [p](Ops o, Args a) {
            const auto& d = o[p];
            return d(a[0], d(a[1], a[2])) - d(d(a[1], a[0]), a[2]) - d(d(a[0], a[1]), a[2]);
          }};
}

inline IdentityCatalogEntry permutative_left_commutativity(std::size_t p) {
  return {"left-commutativity", 3, [p](Ops o, Args a) {
            const auto& m = o[p];
            return m(m(a[0], a[1]), a[2]) - m(m(a[1], a[0]), a[2]);
          }};
}

inline IdentityCatalogEntry leibniz(std::size_t p) {
  return {"leibniz", 3, [p](Ops o, Args a) {
            const auto& b = o[p];
            return b(a[0], b(a[1], a[2])) - b(b(a[0], a[1]), a[2]) - b(a[1], b(a[0], a[2]));
          }};
}

inline IdentityCatalogEntry leibniz_rule() {
  return {"leibniz-rule", 3,
          [](Ops o, Args a) { return functionals::P(o[0], o[1], a[0], a[1], a[2]); }};
}

inline IdentityCatalogEntry hertling_manin() {
  return {"hertling-manin", 4, [](Ops o, Args a) {
            const auto &x = a[0], &y = a[1], &z = a[2], &w = a[3];
            const auto &m = o[0], &b = o[1];
            return functionals::P(m, b, m(x, y), z, w) - m(x, functionals::P(m, b, y, z, w)) -
                   m(y, functionals::P(m, b, x, z, w));
          }};
}

inline IdentityCatalogEntry f_manifold_admissibility() {
  return {"f-manifold-admissibility", 3, [](Ops o, Args a) {
            const auto &m = o[0], &s = o[1];
            auto side = [&](const Vector& x, const Vector& y, const Vector& z) {
              return s(x, m(y, z)) - m(s(x, y), z) - m(y, s(x, z));
            };
            return side(a[0], a[1], a[2]) - side(a[1], a[0], a[2]);
          }};
}

inline IdentityCatalogEntry prelie_com_compatibility() {
  return {"prelie-com-compatibility", 3, [](Ops o, Args a) {
            const auto &m = o[0], &s = o[1];
            return s(a[0], m(a[1], a[2])) - m(s(a[0], a[1]), a[2]) - m(a[1], s(a[0], a[2]));
          }};
}

inline IdentityCatalogEntry pre_f_manifold_1() {
  return {"pre-f-manifold-1", 4, [](Ops o, Args a) {
            const auto &d = o[0], &s = o[1];
            const auto &x = a[0], &y = a[1], &z = a[2], &w = a[3];
            return functionals::F1(d, s, anticommutator(d, x, y), z, w) -
                   d(x, functionals::F1(d, s, y, z, w)) - d(y, functionals::F1(d, s, x, z, w));
          }};
}

inline IdentityCatalogEntry pre_f_manifold_2() {
  return {"pre-f-manifold-2", 4, [](Ops o, Args a) {
            const auto &d = o[0], &s = o[1];
            const auto &x = a[0], &y = a[1], &z = a[2], &w = a[3];
            Vector lhs = functionals::F1(d, s, x, y, z) + functionals::F1(d, s, x, z, y) +
                         functionals::F2(d, s, y, z, x);
            return d(lhs, w) - functionals::F2(d, s, y, z, d(x, w)) +
                   d(x, functionals::F2(d, s, y, z, w));
          }};
}

inline IdentityCatalogEntry dual_pre_f_manifold_1() {
  return {"dual-pre-f-manifold-1", 4, [](Ops o, Args a) {
            const auto &m = o[0], &b = o[1];
            const auto &x = a[0], &y = a[1], &z = a[2], &w = a[3];
            return functionals::G1(m, b, m(x, y), z, w) - m(x, functionals::G1(m, b, y, z, w)) -
                   m(y, functionals::G1(m, b, x, z, w));
          }};
}

inline IdentityCatalogEntry dual_pre_f_manifold_2() {
  return {"dual-pre-f-manifold-2", 4, [](Ops o, Args a) {
            const auto &m = o[0], &b = o[1];
            const auto &x = a[0], &y = a[1], &z = a[2], &w = a[3];
            return functionals::G2(m, b, m(y, x), z, w) - m(y, functionals::G2(m, b, x, z, w)) +
                   m(functionals::G1(m, b, y, z, w), x);
          }};
}

inline IdentityCatalogEntry dual_pre_f_manifold_3() {
  return {"dual-pre-f-manifold-3", 3, [](Ops o, Args a) {
            const auto &m = o[0], &b = o[1];
            return m(b(a[0], a[1]), a[2]) + m(b(a[1], a[0]), a[2]);
          }};
}

inline IdentityCatalogEntry coherence_1() {
  return {"coherence-1", 4, [](Ops o, Args a) {
            const auto &m = o[0], &b = o[1];
            const auto &x = a[0], &y = a[1], &z = a[2], &w = a[3];
            return functionals::P(m, b, m(x, y), z, w) - functionals::P(m, b, y, z, m(x, w)) -
                   functionals::P(m, b, x, z, m(y, w));
          }};
}

inline IdentityCatalogEntry coherence_2() {
  return {"coherence-2", 4, [](Ops o, Args a) {
            const auto &m = o[0], &b = o[1];
            const auto &x = a[0], &y = a[1], &z = a[2], &w = a[3];
            return m(functionals::P(m, b, x, y, z), w) - m(x, functionals::Q(m, b, y, z, w)) +
                   functionals::Q(m, b, y, z, m(x, w));
          }};
}

}  // namespace catalog

/// Defining identities of a class, in the order they are checked. Composite
/// classes list the axioms of their constituent products first.
inline std::vector<IdentityCatalogEntry> identity_catalog(AlgebraClass c) {
  using namespace catalog;
  using C = AlgebraClass;
  switch (c) {
    case C::commutative: return {commutativity(0)};
    case C::associative: return {associativity(0)};
    case C::commutative_associative: return {commutativity(0), associativity(0)};
    case C::lie: return {antisymmetry(0), jacobi(0)};
    case C::pre_lie: return {left_symmetry(0)};
    case C::lie_admissible: return {lie_admissibility(0)};
    case C::zinbiel: return {zinbiel(0)};
    case C::permutative: return {associativity(0), permutative_left_commutativity(0)};
    case C::leibniz: return {leibniz(0)};
    case C::poisson:
      return {commutativity(0), associativity(0), antisymmetry(1), jacobi(1), leibniz_rule()};
    case C::f_manifold:
      return {commutativity(0), associativity(0), antisymmetry(1), jacobi(1), hertling_manin()};
    case C::f_manifold_admissible:
      return {commutativity(0), associativity(0), lie_admissibility(1),
              f_manifold_admissibility()};
    case C::prelie_com:
      return {commutativity(0), associativity(0), left_symmetry(1), prelie_com_compatibility()};
    case C::pre_f_manifold:
      return {zinbiel(0), left_symmetry(1), pre_f_manifold_1(), pre_f_manifold_2()};
    case C::dual_pre_f_manifold:
      return {associativity(0),        permutative_left_commutativity(0),
              leibniz(1),              dual_pre_f_manifold_1(),
              dual_pre_f_manifold_2(), dual_pre_f_manifold_3()};
    case C::coherence_f_manifold:
      return {commutativity(0), associativity(0), antisymmetry(1), jacobi(1),
              hertling_manin(), coherence_1(),    coherence_2()};
  }
  throw UnknownName("unknown algebra class");
}

/// Product slots a class check reads. An empty request means the defaults:
/// ("mul", "bracket") for two-product classes; for one-product classes the
/// conventional slot, or the sole product when the algebra has only one.
inline std::vector<std::string> resolve_slots(const Algebra& a, AlgebraClass c,
                                              std::vector<std::string> slots) {
  const auto& i = detail::info(c);
  if (slots.empty()) {
    if (i.slots == 2) {
      slots = {kMul, kBracket};
    } else {
      std::string def(i.single_default);
      if (!a.has_product(def) && a.products().size() == 1) def = a.products().begin()->first;
      slots = {def};
    }
  }
  if (slots.size() != i.slots)
    throw UnknownName("class '" + std::string(i.name) + "' takes " + std::to_string(i.slots) +
                      " product slot(s), got " + std::to_string(slots.size()));
  for (const auto& s : slots)
    if (!a.has_product(s)) throw MissingSlot(s);
  return slots;
}

namespace detail {

inline std::vector<Product> bind(const Algebra& a, const std::vector<std::string>& slots) {
  std::vector<Product> ops;
  for (const auto& s : slots) ops.emplace_back(a.product(s));
  return ops;
}

}  // namespace detail

/// Decides membership of (a, slots) in class c over all basis tuples.
inline CheckReport check_class(const Algebra& a, AlgebraClass c,
                               std::vector<std::string> slots = {}) {
  slots = resolve_slots(a, c, std::move(slots));
  auto ops = detail::bind(a, slots);
  std::vector<Identity> ids;
  for (auto& e : identity_catalog(c)) {
    ids.push_back({e.name, std::vector<std::size_t>(e.arity, a.dim()),
                   [ops, f = std::move(e.evaluate)](std::span<const Vector> args) {
                     return f(ops, args);
                   }});
  }
  return run_identities(std::string(to_string(c)), ids);
}

/// Value of one named defining identity of class c at arbitrary arguments.
inline Vector evaluate_class_identity(const Algebra& a, AlgebraClass c,
                                      std::vector<std::string> slots, const std::string& identity,
                                      std::span<const Vector> args) {
  slots = resolve_slots(a, c, std::move(slots));
  auto ops = detail::bind(a, slots);
  for (const auto& e : identity_catalog(c)) {
    if (e.name != identity) continue;
    check_same_size(args.size(), e.arity, "identity arity");
    return e.evaluate(ops, args);
  }
  throw UnknownName("class '" + std::string(to_string(c)) + "' has no identity '" + identity +
                    "'");
}

// ---------------------------------------------------------------------------
// Structure functionals

enum class Functional { P, Q, F1, F2, G1, G2 };

inline Functional parse_functional(std::string_view s) {
  if (s == "P") return Functional::P;
  if (s == "Q") return Functional::Q;
  if (s == "F1") return Functional::F1;
  if (s == "F2") return Functional::F2;
  if (s == "G1") return Functional::G1;
  if (s == "G2") return Functional::G2;
  throw UnknownName("unknown functional '" + std::string(s) + "'");
}

/// Trilinear functional of the (first, second) product pair, default ("mul", "bracket").
inline Vector structure_functional(const Algebra& a, Functional which, const Vector& x,
                                   const Vector& y, const Vector& z,
                                   std::vector<std::string> slots = {}) {
  if (slots.empty()) slots = {kMul, kBracket};
  check_same_size(slots.size(), 2, "functional slot count");
  Product first(a.product(slots[0]));
  Product second(a.product(slots[1]));
  switch (which) {
    case Functional::P: return functionals::P(first, second, x, y, z);
    case Functional::Q: return functionals::Q(first, second, x, y, z);
    case Functional::F1: return functionals::F1(first, second, x, y, z);
    case Functional::F2: return functionals::F2(first, second, x, y, z);
    case Functional::G1: return functionals::G1(first, second, x, y, z);
    case Functional::G2: return functionals::G2(first, second, x, y, z);
  }
  throw UnknownName("unknown functional");
}

// ---------------------------------------------------------------------------
// Representations

enum class RepFunctional { R, S, T };

namespace detail {

inline void check_rep_shape(const Algebra& a, const Representation& r) {
  r.validate();
  check_same_size(r.algebra_dim, a.dim(), "representation algebra_dim");
}

inline Vector flatten(const Matrix& m) { return Vector(m.data().begin(), m.data().end()); }

/// Operator-valued functionals of an F-manifold representation.
struct RepContext {
  Product mul;
  Product br;
  const Representation* r;

  Matrix rho(const Vector& x) const { return r->rho_of(x); }
  Matrix mu(const Vector& x) const { return r->mu_of(x); }

  Matrix R(const Vector& x, const Vector& y) const {
    return rho(x) * mu(y) - mu(y) * rho(x) - mu(br(x, y));
  }
  Matrix S(const Vector& x, const Vector& y) const {
    return mu(x) * rho(y) + mu(y) * rho(x) - rho(mul(x, y));
  }
  Matrix T(const Vector& x, const Vector& y) const {
    return rho(y) * mu(x) + rho(x) * mu(y) - rho(mul(x, y));
  }
};

inline RepContext rep_context(const Algebra& a, const Representation& r,
                              const std::vector<std::string>& slots) {
  check_rep_shape(a, r);
  std::vector<std::string> s = slots.empty() ? std::vector<std::string>{kMul, kBracket} : slots;
  check_same_size(s.size(), 2, "representation slot count");
  return {Product(a.product(s[0])), Product(a.product(s[1])), &r};
}

}  // namespace detail

/// R, S or T functional of (V; rho, mu) evaluated at (x, y).
inline Matrix rep_functional(const Algebra& a, const Representation& r, RepFunctional which,
                             const Vector& x, const Vector& y,
                             std::vector<std::string> slots = {}) {
  auto ctx = detail::rep_context(a, r, slots);
  switch (which) {
    case RepFunctional::R: return ctx.R(x, y);
    case RepFunctional::S: return ctx.S(x, y);
    case RepFunctional::T: return ctx.T(x, y);
  }
  throw UnknownName("unknown representation functional");
}

/// (V; rho, mu) is a representation of the F-manifold algebra (a, mul, bracket).
inline CheckReport check_representation(const Algebra& a, const Representation& r,
                                        std::vector<std::string> slots = {}) {
  auto ctx = detail::rep_context(a, r, slots);
  const std::size_t n = a.dim();
  using detail::flatten;
  std::vector<Identity> ids{
      {"lie-representation",
       {n, n},
       [ctx](std::span<const Vector> v) {
         return flatten(ctx.rho(ctx.br(v[0], v[1])) - commutator(ctx.rho(v[0]), ctx.rho(v[1])));
       }},
      {"commutative-representation",
       {n, n},
       [ctx](std::span<const Vector> v) {
         return flatten(ctx.mu(ctx.mul(v[0], v[1])) - ctx.mu(v[0]) * ctx.mu(v[1]));
       }},
      {"representation-1",
       {n, n, n},
       [ctx](std::span<const Vector> v) {
         const auto &x = v[0], &y = v[1], &z = v[2];
         return flatten(ctx.R(ctx.mul(x, y), z) - ctx.mu(x) * ctx.R(y, z) -
                        ctx.mu(y) * ctx.R(x, z));
       }},
      {"representation-2",
       {n, n, n},
       [ctx](std::span<const Vector> v) {
         const auto &x = v[0], &y = v[1], &z = v[2];
         Matrix s = ctx.S(y, z);
         return flatten(ctx.mu(functionals::P(ctx.mul, ctx.br, x, y, z)) - s * ctx.mu(x) +
                        ctx.mu(x) * s);
       }},
  };
  return run_identities("representation", ids);
}

/// Sufficient condition for (V*; rho*, -mu*) to be a representation.
inline CheckReport check_dual_rep_condition(const Algebra& a, const Representation& r,
                                            std::vector<std::string> slots = {}) {
  auto ctx = detail::rep_context(a, r, slots);
  const std::size_t n = a.dim();
  using detail::flatten;
  std::vector<Identity> ids{
      {"dual-representation-1",
       {n, n, n},
       [ctx](std::span<const Vector> v) {
         const auto &x = v[0], &y = v[1], &z = v[2];
         return flatten(ctx.R(ctx.mul(x, y), z) - ctx.R(y, z) * ctx.mu(x) -
                        ctx.R(x, z) * ctx.mu(y));
       }},
      {"dual-representation-2",
       {n, n, n},
       [ctx](std::span<const Vector> v) {
         const auto &x = v[0], &y = v[1], &z = v[2];
         Matrix t = ctx.T(y, z);
         return flatten(ctx.mu(functionals::P(ctx.mul, ctx.br, x, y, z)) - t * ctx.mu(x) +
                        ctx.mu(x) * t);
       }},
  };
  return run_identities("dual-representation-condition", ids);
}

/// (V; rho, mu) is a representation of the pre-Lie algebra (a, slot).
inline CheckReport check_prelie_representation(const Algebra& a, const Representation& r,
                                               const std::string& slot = kBracket) {
  detail::check_rep_shape(a, r);
  Product star(a.product(slot));
  const Representation* rp = &r;
  const std::size_t n = a.dim();
  using detail::flatten;
  std::vector<Identity> ids{
      {"lie-representation",
       {n, n},
       [star, rp](std::span<const Vector> v) {
         return flatten(rp->rho_of(commutator(star, v[0], v[1])) -
                        commutator(rp->rho_of(v[0]), rp->rho_of(v[1])));
       }},
      {"prelie-representation",
       {n, n},
       [star, rp](std::span<const Vector> v) {
         const auto &x = v[0], &y = v[1];
         return flatten(commutator(rp->rho_of(x), rp->mu_of(y)) - rp->mu_of(star(x, y)) +
                        rp->mu_of(y) * rp->mu_of(x));
       }},
  };
  return run_identities("prelie-representation", ids);
}

// ---------------------------------------------------------------------------
// Operators

enum class OperatorKind { derivation, rota_baxter, o_operator, average };

inline OperatorKind parse_operator_kind(std::string_view s) {
  if (s == "derivation") return OperatorKind::derivation;
  if (s == "rota-baxter") return OperatorKind::rota_baxter;
  if (s == "o-operator") return OperatorKind::o_operator;
  if (s == "average") return OperatorKind::average;
  throw UnknownName("unknown operator kind '" + std::string(s) + "'");
}

inline std::string_view to_string(OperatorKind k) {
  switch (k) {
    case OperatorKind::derivation: return "derivation";
    case OperatorKind::rota_baxter: return "rota-baxter";
    case OperatorKind::o_operator: return "o-operator";
    case OperatorKind::average: return "average";
  }
  return "?";
}

/// Checks the defining identity of `kind` on every requested product slot.
///
/// Default slots: {"mul"} for derivations, {"mul", "bracket"} otherwise. For
/// O-operators slots[0] is paired with mu (commutative form) and slots[1] with
/// rho (Lie form), and `rep` is required.
inline CheckReport check_operator(const Algebra& a, const LinearOperator& op, OperatorKind kind,
                                  const Representation* rep = nullptr,
                                  std::vector<std::string> slots = {}) {
  if (slots.empty())
    slots = kind == OperatorKind::derivation ? std::vector<std::string>{kMul}
                                             : std::vector<std::string>{kMul, kBracket};
  const std::size_t n = a.dim();
  std::vector<Identity> ids;
  const std::string prefix(to_string(kind));

  if (kind == OperatorKind::o_operator) {
    if (!rep) throw Error("o-operator check requires a representation");
    detail::check_rep_shape(a, *rep);
    const std::size_t m = rep->module_dim;
    if (op.target_dim() != n || op.source_dim() != m)
      throw DimensionMismatch("o-operator must map the module (dim " + std::to_string(m) +
                              ") to the algebra (dim " + std::to_string(n) + ")");
    if (slots.size() > 2) throw UnknownName("o-operator takes at most two slots");
    const Representation* r = rep;
    for (std::size_t s = 0; s < slots.size(); ++s) {
      Product p(a.product(slots[s]));
      if (s == 0) {
        ids.push_back({prefix + ":" + slots[s], {m, m}, [p, op, r](std::span<const Vector> v) {
                         Vector tu = op(v[0]), tv = op(v[1]);
                         return p(tu, tv) - op(r->mu_of(tu).apply(v[1]) + r->mu_of(tv).apply(v[0]));
                       }});
      } else {
        ids.push_back({prefix + ":" + slots[s], {m, m}, [p, op, r](std::span<const Vector> v) {
                         Vector tu = op(v[0]), tv = op(v[1]);
                         return p(tu, tv) -
                                op(r->rho_of(tu).apply(v[1]) - r->rho_of(tv).apply(v[0]));
                       }});
      }
    }
    return run_identities(prefix, ids);
  }

  if (op.source_dim() != n || op.target_dim() != n)
    throw DimensionMismatch(prefix + " must be a square operator of the algebra dimension");
  for (const auto& slot : slots) {
    Product p(a.product(slot));
    std::function<Vector(std::span<const Vector>)> f;
    switch (kind) {
      case OperatorKind::derivation:
        f = [p, op](std::span<const Vector> v) {
          return op(p(v[0], v[1])) - p(op(v[0]), v[1]) - p(v[0], op(v[1]));
        };
        break;
      case OperatorKind::rota_baxter:
        f = [p, op](std::span<const Vector> v) {
          Vector bx = op(v[0]), by = op(v[1]);
          return p(bx, by) - op(p(bx, v[1]) + p(v[0], by));
        };
        break;
      case OperatorKind::average:
        f = [p, op](std::span<const Vector> v) {
          Vector ax = op(v[0]);
          return p(ax, op(v[1])) - op(p(ax, v[1]));
        };
        break;
      case OperatorKind::o_operator: break;
    }
    ids.push_back({prefix + ":" + slot, {n, n}, std::move(f)});
  }
  return run_identities(prefix, ids);
}

/// f(x o y) = f(x) o f(y) for every listed slot (default "mul" and "bracket").
inline CheckReport check_homomorphism(const Algebra& src, const Algebra& dst,
                                      const LinearOperator& f,
                                      std::vector<std::string> slots = {}) {
  if (slots.empty()) slots = {kMul, kBracket};
  if (f.source_dim() != src.dim() || f.target_dim() != dst.dim())
    throw DimensionMismatch("homomorphism shape does not match source/target dimensions");
  std::vector<Identity> ids;
  for (const auto& slot : slots) {
    Product ps(src.product(slot)), pd(dst.product(slot));
    ids.push_back({"homomorphism:" + slot,
                   {src.dim(), src.dim()},
                   [ps, pd, f](std::span<const Vector> v) {
                     return f(ps(v[0], v[1])) - pd(f(v[0]), f(v[1]));
                   }});
  }
  return run_identities("homomorphism", ids);
}

// ---------------------------------------------------------------------------
// Bilinear forms

enum class FormKind { invariant_symmetric, connes_cyclic, symplectic, nondegenerate };

inline FormKind parse_form_kind(std::string_view s) {
  if (s == "invariant-symmetric") return FormKind::invariant_symmetric;
  if (s == "connes-cyclic") return FormKind::connes_cyclic;
  if (s == "symplectic") return FormKind::symplectic;
  if (s == "nondegenerate") return FormKind::nondegenerate;
  throw UnknownName("unknown form kind '" + std::string(s) + "'");
}

inline std::string_view to_string(FormKind k) {
  switch (k) {
    case FormKind::invariant_symmetric: return "invariant-symmetric";
    case FormKind::connes_cyclic: return "connes-cyclic";
    case FormKind::symplectic: return "symplectic";
    case FormKind::nondegenerate: return "nondegenerate";
  }
  return "?";
}

/// invariant-symmetric: symmetric with B(x.y,z)=B(x,y.z) and B([x,y],z)=B(x,[y,z]).
/// connes-cyclic: antisymmetric with vanishing cyclic sum over the product.
/// symplectic: antisymmetric, nondegenerate, vanishing cyclic sum over the bracket.
/// nondegenerate: full rank.
inline CheckReport check_form(const Algebra& a, const BilinearForm& form, FormKind kind,
                              std::vector<std::string> slots = {}) {
  if (slots.empty()) slots = {kMul, kBracket};
  check_same_size(slots.size(), 2, "form slot count");
  const std::size_t n = a.dim();
  if (form.b.rows() != n || form.b.cols() != n)
    throw DimensionMismatch("form is not dim x dim");
  const BilinearForm B = form;
  auto scalar = [](Scalar s) { return Vector{std::move(s)}; };

  Identity symmetric{"symmetry", {n, n}, [B, scalar](std::span<const Vector> v) {
                       return scalar(B(v[0], v[1]) - B(v[1], v[0]));
                     }};
  Identity antisymmetric{"antisymmetry", {n, n}, [B, scalar](std::span<const Vector> v) {
                           return scalar(B(v[0], v[1]) + B(v[1], v[0]));
                         }};
  Identity nondegenerate{"nondegeneracy", {}, [B](std::span<const Vector>) {
                           auto ker = kernel(B.b);
                           return ker.empty() ? Vector(B.dim()) : ker.front();
                         }};
  auto invariance = [&](const std::string& slot) {
    Product p(a.product(slot));
    return Identity{"invariance:" + slot, {n, n, n}, [B, p, scalar](std::span<const Vector> v) {
                      return scalar(B(p(v[0], v[1]), v[2]) - B(v[0], p(v[1], v[2])));
                    }};
  };
  auto cyclic = [&](const std::string& slot) {
    Product p(a.product(slot));
    return Identity{"cyclic:" + slot, {n, n, n}, [B, p, scalar](std::span<const Vector> v) {
                      const auto &x = v[0], &y = v[1], &z = v[2];
                      return scalar(B(p(x, y), z) + B(p(y, z), x) + B(p(z, x), y));
                    }};
  };

  std::vector<Identity> ids;
  switch (kind) {
    case FormKind::invariant_symmetric:
      ids = {symmetric, invariance(slots[0]), invariance(slots[1])};
      break;
    case FormKind::connes_cyclic: ids = {antisymmetric, cyclic(slots[0])}; break;
    case FormKind::symplectic: ids = {antisymmetric, nondegenerate, cyclic(slots[1])}; break;
    case FormKind::nondegenerate: ids = {nondegenerate}; break;
  }
  return run_identities(std::string(to_string(kind)), ids);
}

// ---------------------------------------------------------------------------
// Derivations

/// Basis of the derivation space of (a, slot): all D with
/// D(x o y) = D(x) o y + x o D(y), solved as a linear system in dim^2 unknowns.
inline std::vector<LinearOperator> solve_derivations(const Algebra& a, const std::string& slot) {
  const StructureTensor& c = a.product(slot);
  const std::size_t n = a.dim();
  // unknown D(k, l) (coefficient of e_k in D(e_l)) has index k * n + l
  Matrix eq(n * n * n, n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t m = 0; m < n; ++m) {
        const std::size_t row = (i * n + j) * n + m;
        for (std::size_t k = 0; k < n; ++k) {
          eq(row, m * n + k) += c(i, j, k);
          eq(row, k * n + i) -= c(k, j, m);
          eq(row, k * n + j) -= c(i, k, m);
        }
      }
  std::vector<LinearOperator> out;
  for (const auto& v : kernel(eq)) {
    Matrix d(n, n);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t l = 0; l < n; ++l) d(k, l) = v[k * n + l];
    out.push_back({std::move(d)});
  }
  return out;
}

}  // namespace famw
