#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "famw/linalg.hpp"

namespace famw {

/// Structure constants of a bilinear product: e_i o e_j = sum_k c(i,j,k) e_k.
class StructureTensor {
 public:
  StructureTensor() = default;
  explicit StructureTensor(std::size_t dim) : dim_(dim), c_(dim * dim * dim) {}

  std::size_t dim() const { return dim_; }

  Scalar& operator()(std::size_t i, std::size_t j, std::size_t k) { return c_[index(i, j, k)]; }
  const Scalar& operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return c_[index(i, j, k)];
  }

  /// The vector e_i o e_j.
  Vector column(std::size_t i, std::size_t j) const {
    return Vector(c_.begin() + index(i, j, 0), c_.begin() + index(i, j, 0) + dim_);
  }

  bool is_zero() const { return famw::is_zero(c_); }
  std::span<const Scalar> data() const { return c_; }

  StructureTensor& operator+=(const StructureTensor& o) {
    check_same_size(dim_, o.dim_, "tensor sum");
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  StructureTensor& operator-=(const StructureTensor& o) {
    check_same_size(dim_, o.dim_, "tensor difference");
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  friend StructureTensor operator+(StructureTensor a, const StructureTensor& b) { return a += b; }
  friend StructureTensor operator-(StructureTensor a, const StructureTensor& b) { return a -= b; }
  friend StructureTensor operator*(const Scalar& s, StructureTensor t) {
    for (auto& x : t.c_) x *= s;
    return t;
  }

  /// Opposite product: (x, y) -> y o x.
  StructureTensor opposite() const {
    StructureTensor t(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j)
        for (std::size_t k = 0; k < dim_; ++k) t(i, j, k) = (*this)(j, i, k);
    return t;
  }

  friend bool operator==(const StructureTensor&, const StructureTensor&) = default;

 private:
  std::size_t index(std::size_t i, std::size_t j, std::size_t k) const {
    return (i * dim_ + j) * dim_ + k;
  }

  std::size_t dim_ = 0;
  std::vector<Scalar> c_;
};

/// result_k = sum_{i,j} u_i v_j c(i,j,k). Zero coordinates are skipped, so basis
/// vectors cost O(dim).
inline Vector tensor_contract(const StructureTensor& c, std::span<const Scalar> u,
                              std::span<const Scalar> v) {
  const std::size_t n = c.dim();
  check_same_size(u.size(), n, "left operand");
  check_same_size(v.size(), n, "right operand");
  Vector out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (u[i].is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (v[j].is_zero()) continue;
      const Scalar w = u[i] * v[j];
      for (std::size_t k = 0; k < n; ++k)
        if (!c(i, j, k).is_zero()) out[k].add_product(w, c(i, j, k));
    }
  }
  return out;
}

/// Tensor of the bilinear map (x, y) -> f(x, y), read off on basis pairs.
template <typename F>
StructureTensor tensor_from(std::size_t dim, F&& f) {
  StructureTensor t(dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      Vector v = f(unit_vector(dim, i), unit_vector(dim, j));
      check_same_size(v.size(), dim, "bilinear map value");
      for (std::size_t k = 0; k < dim; ++k) t(i, j, k) = std::move(v[k]);
    }
  return t;
}

/// Left multiplication operator L_x as a matrix: column l is x o e_l.
inline Matrix left_multiplication(const StructureTensor& c, std::span<const Scalar> x) {
  const std::size_t n = c.dim();
  Matrix m(n, n);
  for (std::size_t l = 0; l < n; ++l) {
    Vector col = tensor_contract(c, x, unit_vector(n, l));
    for (std::size_t k = 0; k < n; ++k) m(k, l) = std::move(col[k]);
  }
  return m;
}

/// Right multiplication operator R_x: column l is e_l o x.
inline Matrix right_multiplication(const StructureTensor& c, std::span<const Scalar> x) {
  const std::size_t n = c.dim();
  Matrix m(n, n);
  for (std::size_t l = 0; l < n; ++l) {
    Vector col = tensor_contract(c, unit_vector(n, l), x);
    for (std::size_t k = 0; k < n; ++k) m(k, l) = std::move(col[k]);
  }
  return m;
}

}  // namespace famw
