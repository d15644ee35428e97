#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "famw/linalg.hpp"
#include "famw/tensor.hpp"

namespace famw {

/// Conventional product slot names. Double-structure classes read their first
/// operation from "mul" and their second from "bracket".
inline const std::string kMul = "mul";
inline const std::string kBracket = "bracket";

/// A finite-dimensional vector space with any number of named bilinear products.
class Algebra {
 public:
  Algebra() = default;

  explicit Algebra(std::size_t dim, std::vector<std::string> labels = {})
      : dim_(dim), labels_(std::move(labels)) {
    if (labels_.empty())
      for (std::size_t i = 0; i < dim; ++i) labels_.push_back("e" + std::to_string(i + 1));
    check_same_size(labels_.size(), dim_, "basis label count");
  }

  std::size_t dim() const { return dim_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& comment() const { return comment_; }
  void set_comment(std::string c) { comment_ = std::move(c); }

  bool has_product(const std::string& name) const { return products_.contains(name); }

  const StructureTensor& product(const std::string& name) const {
    auto it = products_.find(name);
    if (it == products_.end()) throw MissingSlot(name);
    return it->second;
  }

  void set_product(const std::string& name, StructureTensor t) {
    check_same_size(t.dim(), dim_, "product '" + name + "' dimension");
    products_.insert_or_assign(name, std::move(t));
  }

  /// Alphabetically ordered.
  const std::map<std::string, StructureTensor>& products() const { return products_; }

  Vector multiply(const std::string& name, std::span<const Scalar> u,
                  std::span<const Scalar> v) const {
    return tensor_contract(product(name), u, v);
  }

  friend bool operator==(const Algebra&, const Algebra&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<std::string> labels_;
  std::string comment_;
  std::map<std::string, StructureTensor> products_;
};

/// x -> sum_i x_i M_i for a family of matrices indexed by a basis.
inline Matrix combine(const std::vector<Matrix>& family, std::span<const Scalar> x,
                      std::size_t rows, std::size_t cols) {
  check_same_size(x.size(), family.size(), "family coefficient count");
  Matrix out(rows, cols);
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!x[i].is_zero()) out += x[i] * family[i];
  return out;
}

/// Module V with two families of operators rho(e_i), mu(e_i) in gl(V).
///
/// A single-map representation keeps the unused family as zero matrices and
/// clears the corresponding `has_*` flag.
struct Representation {
  std::size_t algebra_dim = 0;
  std::size_t module_dim = 0;
  std::vector<Matrix> rho;
  std::vector<Matrix> mu;
  bool has_rho = true;
  bool has_mu = true;

  static Representation zero(std::size_t algebra_dim, std::size_t module_dim) {
    Representation r{algebra_dim, module_dim, {}, {}};
    r.rho.assign(algebra_dim, Matrix(module_dim, module_dim));
    r.mu.assign(algebra_dim, Matrix(module_dim, module_dim));
    return r;
  }

  void validate() const {
    check_same_size(rho.size(), algebra_dim, "rho family length");
    check_same_size(mu.size(), algebra_dim, "mu family length");
    for (const auto* family : {&rho, &mu})
      for (const auto& m : *family)
        if (m.rows() != module_dim || m.cols() != module_dim)
          throw DimensionMismatch("representation matrix is not module_dim x module_dim");
  }

  Matrix rho_of(std::span<const Scalar> x) const { return combine(rho, x, module_dim, module_dim); }
  Matrix mu_of(std::span<const Scalar> x) const { return combine(mu, x, module_dim, module_dim); }

  friend bool operator==(const Representation&, const Representation&) = default;
};

/// Linear map between coordinate spaces; column l is the image of e_l.
struct LinearOperator {
  Matrix matrix;

  std::size_t source_dim() const { return matrix.cols(); }
  std::size_t target_dim() const { return matrix.rows(); }
  Vector operator()(std::span<const Scalar> x) const { return matrix.apply(x); }

  static LinearOperator identity(std::size_t n) { return {Matrix::identity(n)}; }

  friend bool operator==(const LinearOperator&, const LinearOperator&) = default;
};

/// Bilinear form B(x, y) = x^T b y.
struct BilinearForm {
  Matrix b;

  std::size_t dim() const { return b.rows(); }
  Scalar operator()(std::span<const Scalar> x, std::span<const Scalar> y) const {
    Vector by = b.apply(y);
    Scalar s;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (!x[i].is_zero()) s.add_product(x[i], by[i]);
    return s;
  }
};

/// Outcome of a decision procedure. On failure `witness` holds the
/// lexicographically first failing basis tuple and `defect` the nonzero value
/// of the identity named by `identity_name` there.
struct CheckReport {
  bool passed = true;
  std::string check;
  std::string identity_name;
  std::optional<std::vector<std::size_t>> witness;
  std::optional<Vector> defect;

  explicit operator bool() const { return passed; }
};

inline std::ostream& operator<<(std::ostream& os, const CheckReport& r) {
  os << r.check << ": " << (r.passed ? "pass" : "fail");
  if (!r.passed) {
    os << " [" << r.identity_name << "]";
    if (r.witness) {
      os << " at (";
      for (std::size_t i = 0; i < r.witness->size(); ++i) os << (i ? "," : "") << (*r.witness)[i];
      os << ")";
    }
  }
  return os;
}

/// A construction's hypothesis did not hold.
class PreconditionFailed : public Error {
 public:
  explicit PreconditionFailed(CheckReport report)
      : Error("precondition failed: " + report.check + " [" + report.identity_name + "]"),
        report_(std::move(report)) {}
  const CheckReport& report() const { return report_; }

 private:
  CheckReport report_;
};

}  // namespace famw
