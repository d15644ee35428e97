#pragma once

// Direct-evaluation oracles. These deliberately avoid the library's Product,
// functionals and identity runner: every identity is expanded by hand with
// explicit index loops over the raw structure constants.

#include <vector>

#include "famw/algebra.hpp"

namespace famw::oracle {

using V = std::vector<Scalar>;

inline V op(const StructureTensor& c, const V& u, const V& v) {
  const std::size_t n = c.dim();
  V out(n);
  for (std::size_t k = 0; k < n; ++k) {
    Scalar s;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) s += u[i] * v[j] * c(i, j, k);
    out[k] = s;
  }
  return out;
}

inline V add(V a, const V& b, Scalar s = 1) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += s * b[i];
  return a;
}

inline V basis(std::size_t n, std::size_t i) {
  V v(n);
  v[i] = 1;
  return v;
}

/// P_x(y,z) = [x, yz] - [x,y]z - y[x,z]
inline V P(const StructureTensor& m, const StructureTensor& b, const V& x, const V& y, const V& z) {
  V out = op(b, x, op(m, y, z));
  out = add(out, op(m, op(b, x, y), z), -1);
  return add(out, op(m, y, op(b, x, z)), -1);
}

/// Hertling-Manin defect P_{xy}(z,w) - x P_y(z,w) - y P_x(z,w).
inline V hm(const StructureTensor& m, const StructureTensor& b, const V& x, const V& y, const V& z,
            const V& w) {
  V out = P(m, b, op(m, x, y), z, w);
  out = add(out, op(m, x, P(m, b, y, z, w)), -1);
  return add(out, op(m, y, P(m, b, x, z, w)), -1);
}

/// True iff the Hertling-Manin relation holds on all basis quadruples.
inline bool hertling_manin_holds(const StructureTensor& m, const StructureTensor& b) {
  const std::size_t n = m.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          V d = hm(m, b, basis(n, i), basis(n, j), basis(n, k), basis(n, l));
          for (const auto& s : d)
            if (!s.is_zero()) return false;
        }
  return true;
}

/// Zinbiel defect x(yz) - (yx)z - (xy)z on basis triples; true iff all vanish.
inline bool zinbiel_holds(const StructureTensor& d) {
  const std::size_t n = d.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        V x = basis(n, i), y = basis(n, j), z = basis(n, k);
        V out = op(d, x, op(d, y, z));
        out = add(out, op(d, op(d, y, x), z), -1);
        out = add(out, op(d, op(d, x, y), z), -1);
        for (const auto& s : out)
          if (!s.is_zero()) return false;
      }
  return true;
}

/// Q(x,y,z) = [xy,z] + [yz,x] + [zx,y], term by term.
inline V Q(const StructureTensor& m, const StructureTensor& b, const V& x, const V& y, const V& z) {
  V out = op(b, op(m, x, y), z);
  out = add(out, op(b, op(m, y, z), x));
  return add(out, op(b, op(m, z, x), y));
}

/// Matrix of the left action v -> c(e_i, v): entry (k, l) = c(i, l, k).
inline Matrix left_matrix(const StructureTensor& c, std::size_t i) {
  const std::size_t n = c.dim();
  Matrix m(n, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l) m(k, l) = c(i, l, k);
  return m;
}

/// Regular-representation dual condition written out through the
/// coherence identities evaluated on all basis quadruples.
inline bool coherence_identities_hold(const StructureTensor& m, const StructureTensor& b) {
  const std::size_t n = m.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          V x = basis(n, i), y = basis(n, j), z = basis(n, k), w = basis(n, l);
          V c1 = P(m, b, op(m, x, y), z, w);
          c1 = add(c1, P(m, b, y, z, op(m, x, w)), -1);
          c1 = add(c1, P(m, b, x, z, op(m, y, w)), -1);
          V c2 = op(m, P(m, b, x, y, z), w);
          c2 = add(c2, op(m, x, Q(m, b, y, z, w)), -1);
          c2 = add(c2, Q(m, b, y, z, op(m, x, w)));
          for (const auto& s : c1)
            if (!s.is_zero()) return false;
          for (const auto& s : c2)
            if (!s.is_zero()) return false;
        }
  return true;
}

// Plain nested-vector matrices for the representation oracle.
using M = std::vector<std::vector<Scalar>>;

inline M zeros(std::size_t m) { return M(m, std::vector<Scalar>(m)); }

inline M mat(const Matrix& a) {
  M out = zeros(a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out[r][c] = a(r, c);
  return out;
}

inline M mul(const M& a, const M& b) {
  const std::size_t m = a.size();
  M out = zeros(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < m; ++k)
      for (std::size_t j = 0; j < m; ++j) out[i][j] += a[i][k] * b[k][j];
  return out;
}

inline M lin(const M& a, const M& b, Scalar s) {
  M out = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) out[i][j] += s * b[i][j];
  return out;
}

inline bool zero(const M& a) {
  for (const auto& row : a)
    for (const auto& s : row)
      if (!s.is_zero()) return false;
  return true;
}

/// sum_k v_k family[k].
inline M comb(const std::vector<Matrix>& family, const V& v) {
  M out = zeros(family.empty() ? 0 : family[0].rows());
  for (std::size_t k = 0; k < v.size(); ++k) out = lin(out, mat(family[k]), v[k]);
  return out;
}

/// The two compatibility conditions of an F-manifold representation on basis
/// triples, with R and S expanded by hand. The underlying Lie and commutative
/// module axioms are not part of this oracle.
inline bool representation_compatibility_holds(const StructureTensor& m, const StructureTensor& b,
                                               const std::vector<Matrix>& rho,
                                               const std::vector<Matrix>& mu) {
  const std::size_t n = m.dim();
  auto R = [&](const V& x, const V& y) {
    M rx = comb(rho, x), my = comb(mu, y);
    return lin(lin(mul(rx, my), mul(my, rx), -1), comb(mu, op(b, x, y)), -1);
  };
  auto S = [&](const V& x, const V& y) {
    return lin(lin(mul(comb(mu, x), comb(rho, y)), mul(comb(mu, y), comb(rho, x)), 1),
               comb(rho, op(m, x, y)), -1);
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        V x = basis(n, i), y = basis(n, j), z = basis(n, k);
        M mx = comb(mu, x), my = comb(mu, y);
        M first = lin(lin(R(op(m, x, y), z), mul(mx, R(y, z)), -1), mul(my, R(x, z)), -1);
        M s = S(y, z);
        M second = lin(lin(comb(mu, P(m, b, x, y, z)), mul(s, mx), -1), mul(mx, s), 1);
        if (!zero(first) || !zero(second)) return false;
      }
  return true;
}

}  // namespace famw::oracle
