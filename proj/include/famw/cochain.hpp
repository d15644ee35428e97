#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "famw/algebra.hpp"
#include "famw/axioms.hpp"

namespace famw {

/// Strictly increasing r-subsets of {0..n-1} in lexicographic order.
inline std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t r) {
  std::vector<std::vector<std::size_t>> out;
  if (r > n) return out;
  std::vector<std::size_t> c(r);
  for (std::size_t i = 0; i < r; ++i) c[i] = i;
  while (true) {
    out.push_back(c);
    std::size_t i = r;
    while (i > 0 && c[i - 1] == n - r + i - 1) --i;
    if (i == 0) break;
    ++c[i - 1];
    for (std::size_t k = i; k < r; ++k) c[k] = c[k - 1] + 1;
  }
  return out;
}

inline std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// An element of C^n(g, V) = Hom(wedge^{n-1} g (x) g, V), stored on canonical
/// index tuples (i_1 < ... < i_{n-1}, j) and extended by antisymmetry in the
/// first n-1 arguments.
class Cochain {
 public:
  Cochain() = default;
  Cochain(std::size_t degree, std::size_t algebra_dim, std::size_t module_dim)
      : degree_(degree), d_(algebra_dim), m_(module_dim) {
    if (degree == 0) throw Error("cochain degree must be at least 1");
    wedges_ = combinations(d_, degree - 1);
    for (std::size_t w = 0; w < wedges_.size(); ++w) lookup_.emplace(wedges_[w], w);
    values_.resize(wedges_.size() * d_ * m_);
  }

  static std::size_t space_dim(std::size_t degree, std::size_t algebra_dim,
                               std::size_t module_dim) {
    return binomial(algebra_dim, degree - 1) * algebra_dim * module_dim;
  }

  std::size_t degree() const { return degree_; }
  std::size_t algebra_dim() const { return d_; }
  std::size_t module_dim() const { return m_; }
  std::size_t size() const { return values_.size(); }

  /// Canonical wedge index tuples in storage order.
  const std::vector<std::vector<std::size_t>>& wedges() const { return wedges_; }

  Scalar& at(std::size_t wedge, std::size_t j, std::size_t comp) {
    return values_[(wedge * d_ + j) * m_ + comp];
  }
  const Scalar& at(std::size_t wedge, std::size_t j, std::size_t comp) const {
    return values_[(wedge * d_ + j) * m_ + comp];
  }

  std::span<const Scalar> values() const { return values_; }
  void set_values(Vector v) {
    check_same_size(v.size(), values_.size(), "cochain value count");
    values_ = std::move(v);
  }
  bool is_zero() const { return famw::is_zero(values_); }

  /// Value on basis vectors e_{t_1}, ..., e_{t_n}.
  Vector value(std::span<const std::size_t> tuple) const {
    check_same_size(tuple.size(), degree_, "cochain argument count");
    std::vector<std::size_t> w(tuple.begin(), tuple.end() - 1);
    // insertion sort, tracking the permutation sign
    bool negative = false;
    for (std::size_t i = 1; i < w.size(); ++i)
      for (std::size_t k = i; k > 0 && w[k - 1] > w[k]; --k) {
        std::swap(w[k - 1], w[k]);
        negative = !negative;
      }
    Vector out(m_);
    if (std::adjacent_find(w.begin(), w.end()) != w.end()) return out;
    const std::size_t wi = lookup_.at(w);
    const std::size_t j = tuple.back();
    for (std::size_t c = 0; c < m_; ++c) out[c] = negative ? -at(wi, j, c) : at(wi, j, c);
    return out;
  }

  /// Multilinear evaluation at arbitrary coordinate vectors.
  Vector evaluate(std::span<const Vector> args) const {
    check_same_size(args.size(), degree_, "cochain argument count");
    for (const auto& a : args) check_same_size(a.size(), d_, "cochain argument length");
    Vector out(m_);
    std::vector<std::size_t> tuple(degree_);
    expand(args, 0, Scalar(1), tuple, out);
    return out;
  }

  /// Offset of the value block of a basis tuple with its sign, or nothing when
  /// the leading indices repeat. value(tuple)[c] = sign * values()[offset + c].
  std::optional<std::pair<std::size_t, bool>> locate(std::span<const std::size_t> tuple) const {
    std::vector<std::size_t> w(tuple.begin(), tuple.end() - 1);
    bool negative = false;
    for (std::size_t i = 1; i < w.size(); ++i)
      for (std::size_t k = i; k > 0 && w[k - 1] > w[k]; --k) {
        std::swap(w[k - 1], w[k]);
        negative = !negative;
      }
    if (std::adjacent_find(w.begin(), w.end()) != w.end()) return std::nullopt;
    return std::pair{(lookup_.at(w) * d_ + tuple.back()) * m_, negative};
  }

  /// evaluate(args) as a linear form in the stored values: pairs (offset, s)
  /// with evaluate(args)[c] = sum s * values()[offset + c].
  std::vector<std::pair<std::size_t, Scalar>> evaluation_terms(std::span<const Vector> args) const {
    check_same_size(args.size(), degree_, "cochain argument count");
    std::map<std::size_t, Scalar> acc;
    std::vector<std::size_t> tuple(degree_);
    auto rec = [&](auto&& self, std::size_t pos, const Scalar& coeff) -> void {
      if (pos == args.size()) {
        if (auto loc = locate(tuple)) acc[loc->first] += loc->second ? -coeff : coeff;
        return;
      }
      for (std::size_t i = 0; i < d_; ++i) {
        if (args[pos][i].is_zero()) continue;
        tuple[pos] = i;
        self(self, pos + 1, coeff * args[pos][i]);
      }
    };
    rec(rec, 0, Scalar(1));
    std::vector<std::pair<std::size_t, Scalar>> out;
    for (auto& [offset, s] : acc)
      if (!s.is_zero()) out.emplace_back(offset, std::move(s));
    return out;
  }

  friend bool operator==(const Cochain& a, const Cochain& b) {
    return a.degree_ == b.degree_ && a.d_ == b.d_ && a.m_ == b.m_ && a.values_ == b.values_;
  }

 private:
  void expand(std::span<const Vector> args, std::size_t pos, const Scalar& coeff,
              std::vector<std::size_t>& tuple, Vector& out) const {
    if (pos == args.size()) {
      axpy(out, coeff, value(tuple));
      return;
    }
    for (std::size_t i = 0; i < d_; ++i) {
      if (args[pos][i].is_zero()) continue;
      tuple[pos] = i;
      expand(args, pos + 1, coeff * args[pos][i], tuple, out);
    }
  }

  std::size_t degree_ = 0;
  std::size_t d_ = 0;
  std::size_t m_ = 0;
  std::vector<std::vector<std::size_t>> wedges_;
  std::map<std::vector<std::size_t>, std::size_t> lookup_;
  Vector values_;
};

/// 2-cochain with values c(i, j, .) on (e_i, e_j).
inline Cochain cochain_from_tensor(const StructureTensor& t) {
  const std::size_t n = t.dim();
  Cochain c(2, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) c.at(i, j, k) = t(i, j, k);
  return c;
}

inline StructureTensor tensor_from_cochain(const Cochain& c) {
  if (c.degree() != 2 || c.algebra_dim() != c.module_dim())
    throw DimensionMismatch("only degree-2 cochains with values in the algebra are tensors");
  const std::size_t n = c.algebra_dim();
  StructureTensor t(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) t(i, j, k) = c.at(i, j, k);
  return t;
}

/// 1-cochain phi(e_j) = column j of the operator.
inline Cochain cochain_from_operator(const LinearOperator& op) {
  Cochain c(1, op.source_dim(), op.target_dim());
  for (std::size_t j = 0; j < op.source_dim(); ++j)
    for (std::size_t k = 0; k < op.target_dim(); ++k) c.at(0, j, k) = op.matrix(k, j);
  return c;
}

inline LinearOperator operator_from_cochain(const Cochain& c) {
  if (c.degree() != 1) throw DimensionMismatch("only degree-1 cochains are linear maps");
  Matrix m(c.module_dim(), c.algebra_dim());
  for (std::size_t j = 0; j < c.algebra_dim(); ++j)
    for (std::size_t k = 0; k < c.module_dim(); ++k) m(k, j) = c.at(0, j, k);
  return {std::move(m)};
}

/// (g; L, R): rho(x) = x * -, mu(x) = - * x.
inline Representation prelie_regular_representation(const Algebra& a, const std::string& slot) {
  const StructureTensor& t = a.product(slot);
  const std::size_t n = a.dim();
  Representation r{n, n, {}, {}};
  for (std::size_t i = 0; i < n; ++i) {
    r.rho.push_back(left_multiplication(t, unit_vector(n, i)));
    r.mu.push_back(right_multiplication(t, unit_vector(n, i)));
  }
  return r;
}

/// (g*; L* - R*, -R*) with L*_x = -L_x^T and R*_x = -R_x^T.
inline Representation prelie_dual_representation(const Algebra& a, const std::string& slot) {
  Representation reg = prelie_regular_representation(a, slot);
  Representation r = reg;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    r.rho[i] = reg.mu[i].transpose() - reg.rho[i].transpose();
    r.mu[i] = reg.mu[i].transpose();
  }
  return r;
}

/// Coboundary operator of a pre-Lie algebra (g, *) with representation (V; rho, mu).
class Coboundary {
 public:
  /// `slot` empty selects the default pre-Lie slot. With `validate` the slot
  /// must pass the pre-Lie check and r the pre-Lie representation check.
  Coboundary(const Algebra& a, Representation r, std::string slot = {}, bool validate = true)
      : slot_(resolve_slots(a, AlgebraClass::pre_lie, slot.empty()
                                                        ? std::vector<std::string>{}
                                                        : std::vector<std::string>{slot})
                  .front()),
        star_(a.product(slot_)),
        rep_(std::move(r)) {
    check_same_size(rep_.algebra_dim, a.dim(), "representation algebra_dim");
    rep_.validate();
    if (validate) {
      detail::require(check_class(a, AlgebraClass::pre_lie, {slot_}));
      detail::require(check_prelie_representation(a, rep_, slot_));
    }
    for (std::size_t i = 0; i < a.dim(); ++i) basis_.push_back(unit_vector(a.dim(), i));
  }

  std::size_t algebra_dim() const { return basis_.size(); }
  std::size_t module_dim() const { return rep_.module_dim; }
  const std::string& slot() const { return slot_; }
  const Representation& representation() const { return rep_; }

  /// (d phi)(x_1, ..., x_{n+1}) for phi of degree n.
  Vector value(const Cochain& phi, std::span<const Vector> x) const {
    const std::size_t n = phi.degree();
    check_same_size(x.size(), n + 1, "coboundary argument count");
    const Product star(star_);
    Vector out(module_dim());
    std::vector<Vector> args;
    args.reserve(n);
    auto sign = [](std::size_t k) { return k % 2 == 0 ? Scalar(1) : Scalar(-1); };

    // 1-based i in the formula corresponds to index i - 1 here; (-1)^{i+1} = sign(i - 1).
    for (std::size_t i = 0; i < n; ++i) {
      args.clear();
      for (std::size_t k = 0; k <= n; ++k)
        if (k != i) args.push_back(x[k]);
      axpy(out, sign(i), rep_.rho_of(x[i]).apply(phi.evaluate(args)));

      args.clear();
      for (std::size_t k = 0; k < n; ++k)
        if (k != i) args.push_back(x[k]);
      args.push_back(x[i]);
      axpy(out, sign(i), rep_.mu_of(x[n]).apply(phi.evaluate(args)));

      args.back() = star(x[i], x[n]);
      axpy(out, -sign(i), phi.evaluate(args));
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        args.clear();
        args.push_back(commutator(star, x[i], x[j]));
        for (std::size_t k = 0; k <= n; ++k)
          if (k != i && k != j) args.push_back(x[k]);
        axpy(out, sign(i + j), phi.evaluate(args));
      }
    return out;
  }

  /// Adds the rows of d (one per module component) at basis tuple `tuple`
  /// into m starting at row `row`, columns indexed by the values of `shape`.
  /// Same formula as value(), expanded into cochain coordinates.
  void add_rows(Matrix& m, std::size_t row, const Cochain& shape,
                std::span<const std::size_t> tuple) const {
    const std::size_t n = shape.degree(), md = module_dim();
    std::vector<Vector> x;
    for (auto t : tuple) x.push_back(basis_.at(t));
    const Product star(star_);
    auto sign = [](std::size_t k) { return k % 2 == 0 ? Scalar(1) : Scalar(-1); };
    // add coeff * A * phi(args), A = nullptr meaning the identity
    auto add = [&](const Scalar& coeff, const Matrix* a, const std::vector<Vector>& args) {
      for (const auto& [offset, s] : shape.evaluation_terms(args)) {
        const Scalar cs = coeff * s;
        for (std::size_t c = 0; c < md; ++c) {
          if (!a) {
            m(row + c, offset + c) += cs;
            continue;
          }
          for (std::size_t r = 0; r < md; ++r)
            if (!(*a)(r, c).is_zero()) m(row + r, offset + c).add_product(cs, (*a)(r, c));
        }
      }
    };
    std::vector<Vector> args;
    for (std::size_t i = 0; i < n; ++i) {
      args.clear();
      for (std::size_t k = 0; k <= n; ++k)
        if (k != i) args.push_back(x[k]);
      const Matrix rho = rep_.rho_of(x[i]);
      add(sign(i), &rho, args);

      args.clear();
      for (std::size_t k = 0; k < n; ++k)
        if (k != i) args.push_back(x[k]);
      args.push_back(x[i]);
      const Matrix mu = rep_.mu_of(x[n]);
      add(sign(i), &mu, args);

      args.back() = star(x[i], x[n]);
      add(-sign(i), nullptr, args);
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        args.clear();
        args.push_back(commutator(star, x[i], x[j]));
        for (std::size_t k = 0; k <= n; ++k)
          if (k != i && k != j) args.push_back(x[k]);
        add(sign(i + j), nullptr, args);
      }
  }

  Vector value_at(const Cochain& phi, std::span<const std::size_t> tuple) const {
    std::vector<Vector> x;
    for (auto t : tuple) x.push_back(basis_.at(t));
    return value(phi, x);
  }

  Cochain operator()(const Cochain& phi) const {
    check_same_size(phi.algebra_dim(), algebra_dim(), "cochain algebra_dim");
    check_same_size(phi.module_dim(), module_dim(), "cochain module_dim");
    Cochain out(phi.degree() + 1, algebra_dim(), module_dim());
    std::vector<std::size_t> tuple;
    for (std::size_t w = 0; w < out.wedges().size(); ++w)
      for (std::size_t j = 0; j < algebra_dim(); ++j) {
        tuple = out.wedges()[w];
        tuple.push_back(j);
        Vector v = value_at(phi, tuple);
        for (std::size_t c = 0; c < module_dim(); ++c) out.at(w, j, c) = std::move(v[c]);
      }
    return out;
  }

  /// Matrix of d: C^n -> C^{n+1} in canonical coordinates.
  Matrix matrix(std::size_t n) const {
    const std::size_t d = algebra_dim(), mdim = module_dim();
    const Cochain shape(n, d, mdim), target(n + 1, d, mdim);
    Matrix m(target.size(), shape.size());
    std::vector<std::size_t> tuple;
    for (std::size_t w = 0; w < target.wedges().size(); ++w)
      for (std::size_t j = 0; j < d; ++j) {
        tuple = target.wedges()[w];
        tuple.push_back(j);
        add_rows(m, (w * d + j) * mdim, shape, tuple);
      }
    return m;
  }

  /// Matrix of d with one row per full (n+1)-tuple of basis indices and module
  /// component, evaluated directly at that tuple.
  Matrix full_tuple_matrix(std::size_t n) const {
    const std::size_t d = algebra_dim(), mdim = module_dim();
    std::size_t tuples = 1;
    for (std::size_t k = 0; k <= n; ++k) tuples *= d;
    const Cochain shape(n, d, mdim);
    Matrix m(tuples * mdim, shape.size());
    std::vector<std::size_t> tuple(n + 1);
    for (std::size_t t = 0; t < tuples; ++t) {
      std::size_t rest = t;
      for (std::size_t k = n + 1; k-- > 0;) {
        tuple[k] = rest % d;
        rest /= d;
      }
      add_rows(m, t * mdim, shape, tuple);
    }
    return m;
  }

 private:
  std::string slot_;
  StructureTensor star_;  // owned, so a Coboundary may outlive its algebra
  Representation rep_;
  std::vector<Vector> basis_;
};

struct CohomologyLimits {
  std::size_t max_degree = 4;
  std::size_t max_cochain_dim = 20000;
};

enum class MatrixLayout { canonical, full_tuple };

struct CohomologyResult {
  std::size_t degree = 0;
  std::size_t dim_prev = 0;  ///< dim C^{n-1} (0 when n = 1)
  std::size_t dim_cur = 0;   ///< dim C^n
  std::size_t dim_next = 0;  ///< dim C^{n+1}
  std::size_t rank_prev = 0;  ///< rank of d_{n-1}
  std::size_t rank_cur = 0;   ///< rank of d_n
  std::size_t h = 0;
};

/// dim H^n = dim ker d_n - rank d_{n-1}; for n = 1 this is dim ker d_1.
inline CohomologyResult cohomology(const Coboundary& d, std::size_t n, CohomologyLimits limits = {},
                                   MatrixLayout layout = MatrixLayout::canonical) {
  if (n == 0) throw Error("cohomology degree must be at least 1");
  if (n > limits.max_degree)
    throw ResourceLimit("degree " + std::to_string(n) + " exceeds the cap of " +
                        std::to_string(limits.max_degree));
  const std::size_t ad = d.algebra_dim(), md = d.module_dim();
  CohomologyResult r;
  r.degree = n;
  r.dim_prev = n > 1 ? Cochain::space_dim(n - 1, ad, md) : 0;
  r.dim_cur = Cochain::space_dim(n, ad, md);
  r.dim_next = Cochain::space_dim(n + 1, ad, md);
  for (std::size_t s : {r.dim_prev, r.dim_cur, r.dim_next})
    if (s > limits.max_cochain_dim)
      throw ResourceLimit("cochain space of dimension " + std::to_string(s) +
                          " exceeds the cap of " + std::to_string(limits.max_cochain_dim));
  if (r.dim_cur == 0) return r;
  auto mat = [&](std::size_t k) {
    return layout == MatrixLayout::canonical ? d.matrix(k) : d.full_tuple_matrix(k);
  };
  r.rank_cur = rank(mat(n));
  r.rank_prev = n > 1 && r.dim_prev > 0 ? rank(mat(n - 1)) : 0;
  r.h = r.dim_cur - r.rank_cur - r.rank_prev;
  return r;
}

inline std::size_t cohomology_dim(const Algebra& a, const Representation& rep, std::size_t n,
                                  const std::string& slot = {}, CohomologyLimits limits = {}) {
  return cohomology(Coboundary(a, rep, slot), n, limits).h;
}

}  // namespace famw
