#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "famw/algebra.hpp"

namespace famw {

/// A multilinear identity: holds iff `evaluate` vanishes on every tuple of
/// basis vectors, argument a ranging over a basis of size ranges[a].
struct Identity {
  std::string name;
  std::vector<std::size_t> ranges;
  std::function<Vector(std::span<const Vector>)> evaluate;
};

/// Evaluates each identity in order over all basis tuples in lexicographic
/// order and reports the first nonzero defect.
inline CheckReport run_identities(std::string check, const std::vector<Identity>& identities) {
  std::map<std::size_t, std::vector<Vector>> units;
  auto basis = [&](std::size_t n) -> const std::vector<Vector>& {
    auto [it, inserted] = units.try_emplace(n);
    if (inserted)
      for (std::size_t i = 0; i < n; ++i) it->second.push_back(unit_vector(n, i));
    return it->second;
  };

  for (const auto& id : identities) {
    const std::size_t arity = id.ranges.size();
    if (std::any_of(id.ranges.begin(), id.ranges.end(), [](std::size_t n) { return n == 0; }))
      continue;
    std::vector<std::size_t> tuple(arity, 0);
    std::vector<Vector> args(arity);
    while (true) {
      for (std::size_t a = 0; a < arity; ++a) args[a] = basis(id.ranges[a])[tuple[a]];
      Vector defect = id.evaluate(args);
      if (!is_zero(defect))
        return {false, std::move(check), id.name, tuple, std::move(defect)};
      std::size_t a = arity;
      while (a > 0 && ++tuple[a - 1] == id.ranges[a - 1]) tuple[--a] = 0;
      if (a == 0) break;
    }
  }
  return {true, std::move(check), {}, {}, {}};
}

/// Bilinear product bound to a structure tensor.
class Product {
 public:
  explicit Product(const StructureTensor& t) : t_(&t) {}
  Vector operator()(std::span<const Scalar> u, std::span<const Scalar> v) const {
    return tensor_contract(*t_, u, v);
  }
  std::size_t dim() const { return t_->dim(); }
  const StructureTensor& tensor() const { return *t_; }

 private:
  const StructureTensor* t_;
};

/// Commutator of a bound product: x o y - y o x.
inline Vector commutator(const Product& p, const Vector& x, const Vector& y) {
  return p(x, y) - p(y, x);
}

/// Symmetrisation of a bound product: x o y + y o x.
inline Vector anticommutator(const Product& p, const Vector& x, const Vector& y) {
  return p(x, y) + p(y, x);
}

namespace functionals {

/// Leibniz-rule defect P_x(y,z) = [x, y.z] - [x,y].z - y.[x,z].
inline Vector P(const Product& mul, const Product& br, const Vector& x, const Vector& y,
                const Vector& z) {
  return br(x, mul(y, z)) - mul(br(x, y), z) - mul(y, br(x, z));
}

/// Q(x,y,z) = [x.y, z] + [y.z, x] + [z.x, y].
inline Vector Q(const Product& mul, const Product& br, const Vector& x, const Vector& y,
                const Vector& z) {
  return br(mul(x, y), z) + br(mul(y, z), x) + br(mul(z, x), y);
}

/// F1(x,y,z) = x*(y<>z) - y<>(x*z) - [x,y]<>z with [x,y] = x*y - y*x.
inline Vector F1(const Product& diamond, const Product& star, const Vector& x, const Vector& y,
                 const Vector& z) {
  return star(x, diamond(y, z)) - diamond(y, star(x, z)) - diamond(commutator(star, x, y), z);
}

/// F2(x,y,z) = x<>(y*z) + y<>(x*z) - (x.y)*z with x.y = x<>y + y<>x.
inline Vector F2(const Product& diamond, const Product& star, const Vector& x, const Vector& y,
                 const Vector& z) {
  return diamond(x, star(y, z)) + diamond(y, star(x, z)) - star(anticommutator(diamond, x, y), z);
}

/// G1(x,y,z) = {x, y.z} - {x,y}.z - y.{x,z}.
inline Vector G1(const Product& bullet, const Product& braces, const Vector& x, const Vector& y,
                 const Vector& z) {
  return braces(x, bullet(y, z)) - bullet(braces(x, y), z) - bullet(y, braces(x, z));
}

/// G2(x,y,z) = {y.z, x} - z.{y,x} - y.{z,x}.
inline Vector G2(const Product& bullet, const Product& braces, const Vector& x, const Vector& y,
                 const Vector& z) {
  return braces(bullet(y, z), x) - bullet(z, braces(y, x)) - bullet(y, braces(z, x));
}

}  // namespace functionals

}  // namespace famw
