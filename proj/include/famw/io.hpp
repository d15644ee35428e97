#pragma once

#include <cstddef>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "famw/algebra.hpp"
#include "famw/deformation.hpp"

namespace famw::io {

using Json = nlohmann::json;

/// One step of a path into a JSON document: object key or array index.
using PathStep = std::variant<std::string, std::size_t>;
using JsonPath = std::vector<PathStep>;

namespace detail {

inline std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

/// Minimal scanner over already-validated JSON text, used only to map a path
/// back to a source offset for error messages.
class Locator {
 public:
  explicit Locator(std::string_view text) : t_(text) {}

  /// Offset of the value at `path`, or of the deepest enclosing value found.
  std::size_t find(const JsonPath& path) {
    pos_ = 0;
    ws();
    for (const auto& step : path) {
      const std::size_t here = pos_;
      if (!descend(step)) return here;
    }
    return pos_;
  }

 private:
  void ws() {
    while (pos_ < t_.size() && (t_[pos_] == ' ' || t_[pos_] == '\n' || t_[pos_] == '\r' ||
                                t_[pos_] == '\t'))
      ++pos_;
  }

  std::string string() {
    std::string out;
    ++pos_;  // opening quote
    while (pos_ < t_.size() && t_[pos_] != '"') {
      if (t_[pos_] == '\\') ++pos_;
      if (pos_ < t_.size()) out += t_[pos_++];
    }
    ++pos_;
    return out;
  }

  void skip_value() {
    ws();
    if (pos_ >= t_.size()) return;
    const char c = t_[pos_];
    if (c == '"') {
      string();
    } else if (c == '{' || c == '[') {
      const char close = c == '{' ? '}' : ']';
      ++pos_;
      ws();
      while (pos_ < t_.size() && t_[pos_] != close) {
        if (c == '{') {
          string();
          ws();
          ++pos_;  // colon
        }
        skip_value();
        ws();
        if (pos_ < t_.size() && t_[pos_] == ',') ++pos_;
        ws();
      }
      ++pos_;
    } else {
      while (pos_ < t_.size() && t_[pos_] != ',' && t_[pos_] != '}' && t_[pos_] != ']' &&
             t_[pos_] != ' ' && t_[pos_] != '\n' && t_[pos_] != '\r' && t_[pos_] != '\t')
        ++pos_;
    }
  }

  bool descend(const PathStep& step) {
    ws();
    if (pos_ >= t_.size()) return false;
    if (const auto* key = std::get_if<std::string>(&step)) {
      if (t_[pos_] != '{') return false;
      ++pos_;
      ws();
      while (pos_ < t_.size() && t_[pos_] != '}') {
        std::string k = string();
        ws();
        ++pos_;
        ws();
        if (k == *key) return true;
        skip_value();
        ws();
        if (pos_ < t_.size() && t_[pos_] == ',') ++pos_;
        ws();
      }
      return false;
    }
    const std::size_t index = std::get<std::size_t>(step);
    if (t_[pos_] != '[') return false;
    ++pos_;
    ws();
    for (std::size_t i = 0; pos_ < t_.size() && t_[pos_] != ']'; ++i) {
      if (i == index) return true;
      skip_value();
      ws();
      if (pos_ < t_.size() && t_[pos_] == ',') ++pos_;
      ws();
    }
    return false;
  }

  std::string_view t_;
  std::size_t pos_ = 0;
};

inline std::string path_string(const JsonPath& path) {
  std::string out = "$";
  for (const auto& s : path) {
    if (const auto* k = std::get_if<std::string>(&s))
      out += "." + *k;
    else
      out += "[" + std::to_string(std::get<std::size_t>(s)) + "]";
  }
  return out;
}

/// Validating reader that reports semantic errors at the source location of
/// the offending value.
class Reader {
 public:
  explicit Reader(std::string text) : text_(std::move(text)) {
    try {
      root_ = Json::parse(text_);
    } catch (const Json::parse_error& e) {
      auto [line, col] = line_column(text_, e.byte > 0 ? e.byte - 1 : 0);
      throw ParseError("malformed JSON", line, col);
    }
  }

  const Json& root() const { return root_; }

  [[noreturn]] void fail(const JsonPath& path, const std::string& what) const {
    Locator loc(text_);
    auto [line, col] = line_column(text_, loc.find(path));
    throw ParseError(path_string(path) + ": " + what, line, col);
  }

  const Json& at(const Json& obj, const JsonPath& path, const std::string& key) const {
    if (!obj.contains(key)) fail(path, "missing field '" + key + "'");
    return obj.at(key);
  }

  void expect_object(const Json& v, const JsonPath& path,
                     std::initializer_list<std::string_view> allowed) const {
    if (!v.is_object()) fail(path, "expected an object");
    for (const auto& [k, _] : v.items()) {
      bool ok = false;
      for (auto a : allowed) ok = ok || a == k;
      if (!ok) {
        JsonPath p = path;
        p.push_back(k);
        fail(p, "unknown field '" + k + "'");
      }
    }
  }

  std::size_t count(const Json& v, const JsonPath& path) const {
    if (!v.is_number_unsigned()) fail(path, "expected a non-negative integer");
    return v.get<std::size_t>();
  }

  std::size_t index(const Json& v, const JsonPath& path, std::size_t bound) const {
    std::size_t i = count(v, path);
    if (i >= bound)
      fail(path, "index " + std::to_string(i) + " out of range for dimension " +
                     std::to_string(bound));
    return i;
  }

  Scalar scalar(const Json& v, const JsonPath& path) const {
    if (!v.is_string()) fail(path, "expected a rational string such as \"-3/2\"");
    try {
      return Scalar::parse(v.get<std::string>());
    } catch (const ParseError& e) {
      fail(path, e.what());
    }
  }

  std::string string(const Json& v, const JsonPath& path) const {
    if (!v.is_string()) fail(path, "expected a string");
    return v.get<std::string>();
  }

  Matrix matrix(const Json& v, const JsonPath& path, std::optional<std::size_t> rows = {},
                std::optional<std::size_t> cols = {}) const {
    if (!v.is_array()) fail(path, "expected a matrix (array of rows)");
    if (rows && v.size() != *rows)
      fail(path, "expected " + std::to_string(*rows) + " rows, got " + std::to_string(v.size()));
    std::size_t c = cols ? *cols : (v.empty() ? 0 : v.front().size());
    Matrix m(v.size(), c);
    for (std::size_t r = 0; r < v.size(); ++r) {
      JsonPath rp = path;
      rp.push_back(r);
      if (!v[r].is_array()) fail(rp, "expected a row array");
      if (v[r].size() != c)
        fail(rp, "expected " + std::to_string(c) + " columns, got " + std::to_string(v[r].size()));
      for (std::size_t k = 0; k < c; ++k) {
        JsonPath ep = rp;
        ep.push_back(k);
        m(r, k) = scalar(v[r][k], ep);
      }
    }
    return m;
  }

  StructureTensor tensor(const Json& v, const JsonPath& path, std::size_t dim) const {
    if (!v.is_array()) fail(path, "expected an array of entries");
    StructureTensor t(dim);
    std::set<std::tuple<std::size_t, std::size_t, std::size_t>> seen;
    for (std::size_t e = 0; e < v.size(); ++e) {
      JsonPath ep = path;
      ep.push_back(e);
      const Json& entry = v[e];
      expect_object(entry, ep, {"i", "j", "k", "v"});
      auto field = [&](const char* key) {
        JsonPath fp = ep;
        fp.push_back(std::string(key));
        return std::pair<const Json&, JsonPath>(at(entry, ep, key), fp);
      };
      auto [iv, ip] = field("i");
      auto [jv, jp] = field("j");
      auto [kv, kp] = field("k");
      auto [vv, vp] = field("v");
      const std::size_t i = index(iv, ip, dim), j = index(jv, jp, dim), k = index(kv, kp, dim);
      if (!seen.emplace(i, j, k).second) fail(ep, "duplicate entry for (i,j,k)");
      t(i, j, k) = scalar(vv, vp);
    }
    return t;
  }

  Algebra algebra(const Json& v, const JsonPath& path) const {
    expect_object(v, path, {"dim", "basis", "comment", "products"});
    auto sub = [&](const std::string& k) {
      JsonPath p = path;
      p.push_back(k);
      return p;
    };
    const std::size_t dim = count(at(v, path, "dim"), sub("dim"));
    std::vector<std::string> labels;
    if (v.contains("basis")) {
      const Json& b = v["basis"];
      if (!b.is_array()) fail(sub("basis"), "expected an array of labels");
      if (b.size() != dim)
        fail(sub("basis"), "expected " + std::to_string(dim) + " labels, got " +
                               std::to_string(b.size()));
      for (std::size_t i = 0; i < b.size(); ++i) {
        JsonPath lp = sub("basis");
        lp.push_back(i);
        labels.push_back(string(b[i], lp));
      }
    }
    Algebra a(dim, std::move(labels));
    if (v.contains("comment")) a.set_comment(string(v["comment"], sub("comment")));
    const Json& products = at(v, path, "products");
    if (!products.is_object()) fail(sub("products"), "expected an object of named products");
    for (const auto& [name, entries] : products.items()) {
      JsonPath pp = sub("products");
      pp.push_back(name);
      a.set_product(name, tensor(entries, pp, dim));
    }
    return a;
  }

 private:
  std::string text_;
  Json root_;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << content;
  if (!out) throw Error("write to '" + path + "' failed");
}

inline std::string quote(const std::string& s) { return Json(s).dump(); }

inline void write_entries(std::ostream& os, const StructureTensor& t, const std::string& indent) {
  std::vector<std::string> lines;
  const std::size_t n = t.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (!t(i, j, k).is_zero())
          lines.push_back("{\"i\": " + std::to_string(i) + ", \"j\": " + std::to_string(j) +
                          ", \"k\": " + std::to_string(k) + ", \"v\": " + quote(t(i, j, k).str()) +
                          "}");
  if (lines.empty()) {
    os << "[]";
    return;
  }
  os << "[\n";
  for (std::size_t l = 0; l < lines.size(); ++l)
    os << indent << "  " << lines[l] << (l + 1 < lines.size() ? ",\n" : "\n");
  os << indent << "]";
}

inline void write_algebra(std::ostream& os, const Algebra& a, const std::string& indent) {
  os << "{\n";
  os << indent << "  \"dim\": " << a.dim() << ",\n";
  os << indent << "  \"basis\": [";
  for (std::size_t i = 0; i < a.labels().size(); ++i) os << (i ? ", " : "") << quote(a.labels()[i]);
  os << "],\n";
  if (!a.comment().empty()) os << indent << "  \"comment\": " << quote(a.comment()) << ",\n";
  os << indent << "  \"products\": {";
  if (a.products().empty()) {
    os << "}\n";
  } else {
    os << "\n";
    std::size_t p = 0;
    for (const auto& [name, t] : a.products()) {
      os << indent << "    " << quote(name) << ": ";
      write_entries(os, t, indent + "    ");
      os << (++p < a.products().size() ? ",\n" : "\n");
    }
    os << indent << "  }\n";
  }
  os << indent << "}";
}

inline void write_matrix(std::ostream& os, const Matrix& m, const std::string& indent) {
  if (m.rows() == 0) {
    os << "[]";
    return;
  }
  os << "[\n";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    os << indent << "  [";
    for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? ", " : "") << quote(m(r, c).str());
    os << "]" << (r + 1 < m.rows() ? ",\n" : "\n");
  }
  os << indent << "]";
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Algebras

inline Algebra parse_algebra(std::string text) {
  detail::Reader r(std::move(text));
  return r.algebra(r.root(), {});
}

/// Canonical text: products alphabetical, entries lexicographic in (i, j, k),
/// zero entries omitted, one entry per line.
inline std::string format_algebra(const Algebra& a) {
  std::ostringstream os;
  detail::write_algebra(os, a, "");
  os << "\n";
  return os.str();
}

inline Algebra load_algebra(const std::string& path) { return parse_algebra(detail::read_file(path)); }

inline void save_algebra(const Algebra& a, const std::string& path) {
  detail::write_file(path, format_algebra(a));
}

// ---------------------------------------------------------------------------
// Matrices, operators, forms

/// Row-major grid of rational strings; column l is the image of e_l.
inline Matrix parse_matrix(std::string text) {
  detail::Reader r(std::move(text));
  return r.matrix(r.root(), {});
}

inline std::string format_matrix(const Matrix& m) {
  std::ostringstream os;
  detail::write_matrix(os, m, "");
  os << "\n";
  return os.str();
}

inline LinearOperator load_operator(const std::string& path) {
  return {parse_matrix(detail::read_file(path))};
}

inline BilinearForm load_form(const std::string& path) {
  Matrix m = parse_matrix(detail::read_file(path));
  if (!m.is_square()) throw ParseError("bilinear form in '" + path + "' is not square");
  return {std::move(m)};
}

// ---------------------------------------------------------------------------
// Representations

/// {"algebra_dim": n, "module_dim": m, "rho": [...], "mu": [...]}. A missing
/// family is read as zero matrices and flagged absent.
inline Representation parse_representation(std::string text) {
  detail::Reader r(std::move(text));
  const Json& root = r.root();
  r.expect_object(root, {}, {"algebra_dim", "module_dim", "rho", "mu"});
  const std::size_t n = r.count(r.at(root, {}, "algebra_dim"), {std::string("algebra_dim")});
  const std::size_t m = r.count(r.at(root, {}, "module_dim"), {std::string("module_dim")});
  Representation rep = Representation::zero(n, m);
  auto family = [&](const char* key, std::vector<Matrix>& out, bool& present) {
    present = root.contains(key);
    if (!present) return;
    const Json& f = root[key];
    JsonPath fp{std::string(key)};
    if (!f.is_array() || f.size() != n)
      r.fail(fp, "expected " + std::to_string(n) + " matrices (one per algebra basis element)");
    for (std::size_t i = 0; i < n; ++i) {
      JsonPath mp = fp;
      mp.push_back(i);
      out[i] = r.matrix(f[i], mp, m, m);
    }
  };
  family("rho", rep.rho, rep.has_rho);
  family("mu", rep.mu, rep.has_mu);
  return rep;
}

inline std::string format_representation(const Representation& rep) {
  std::ostringstream os;
  os << "{\n  \"algebra_dim\": " << rep.algebra_dim << ",\n  \"module_dim\": " << rep.module_dim;
  auto family = [&](const char* key, const std::vector<Matrix>& f) {
    os << ",\n  \"" << key << "\": [";
    for (std::size_t i = 0; i < f.size(); ++i) {
      os << (i ? ",\n    " : "\n    ");
      detail::write_matrix(os, f[i], "    ");
    }
    os << (f.empty() ? "]" : "\n  ]");
  };
  if (rep.has_rho) family("rho", rep.rho);
  if (rep.has_mu) family("mu", rep.mu);
  os << "\n}\n";
  return os.str();
}

inline Representation load_representation(const std::string& path) {
  return parse_representation(detail::read_file(path));
}

// ---------------------------------------------------------------------------
// Deformation families

/// {"base": <algebra>, "mus": [<entries>, ...]}.
inline DeformationFamily parse_family(std::string text) {
  detail::Reader r(std::move(text));
  const Json& root = r.root();
  r.expect_object(root, {}, {"base", "mus"});
  DeformationFamily f;
  f.base = r.algebra(r.at(root, {}, "base"), {std::string("base")});
  const Json& mus = r.at(root, {}, "mus");
  if (!mus.is_array()) r.fail({std::string("mus")}, "expected an array of tensors");
  for (std::size_t k = 0; k < mus.size(); ++k)
    f.mus.push_back(r.tensor(mus[k], {std::string("mus"), k}, f.base.dim()));
  return f;
}

inline std::string format_family(const DeformationFamily& f) {
  std::ostringstream os;
  os << "{\n  \"base\": ";
  detail::write_algebra(os, f.base, "  ");
  os << ",\n  \"mus\": [";
  for (std::size_t k = 0; k < f.mus.size(); ++k) {
    os << (k ? ",\n    " : "\n    ");
    detail::write_entries(os, f.mus[k], "    ");
  }
  os << (f.mus.empty() ? "]" : "\n  ]") << "\n}\n";
  return os.str();
}

inline DeformationFamily load_family(const std::string& path) {
  return parse_family(detail::read_file(path));
}

inline void save_family(const DeformationFamily& f, const std::string& path) {
  detail::write_file(path, format_family(f));
}

}  // namespace famw::io
