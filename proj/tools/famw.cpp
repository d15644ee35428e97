// famw: command-line front end for the famw algebra workbench.
//
// Exit codes: 0 pass, 1 a check came out false, 2 usage or input error.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "famw/axioms.hpp"
#include "famw/cochain.hpp"
#include "famw/constructions.hpp"
#include "famw/deformation.hpp"
#include "famw/io.hpp"

namespace {

using namespace famw;
using Json = nlohmann::json;

constexpr int kPass = 0;
constexpr int kFalse = 1;
constexpr int kInputError = 2;

struct Options {
  std::vector<std::string> slots;
  std::string rep;
  std::string op;
  std::string form;
  std::string target;
  std::string weight;
  std::string weight_element;
  std::size_t degree = 2;
  bool force = false;
  bool json = false;
  std::string out;
};

Json scalars_json(std::span<const Scalar> v) {
  Json out = Json::array();
  for (const auto& s : v) out.push_back(s.str());
  return out;
}

std::string scalars_text(std::span<const Scalar> v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + v[i].str();
  return out + ")";
}

/// Prints a check report; `labels` names the basis the witness indexes.
int report(const CheckReport& r, const std::vector<std::string>& labels, const Options& o) {
  std::vector<std::string> names;
  if (r.witness)
    for (auto i : *r.witness) names.push_back(i < labels.size() ? labels[i] : std::to_string(i));
  if (o.json) {
    Json j;
    j["check"] = r.check;
    j["passed"] = r.passed;
    if (!r.passed) {
      j["identity"] = r.identity_name;
      j["witness"] = r.witness ? Json(*r.witness) : Json::array();
      j["witness_labels"] = names;
      j["defect"] = r.defect ? scalars_json(*r.defect) : Json::array();
    }
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << r.check << ": " << (r.passed ? "pass" : "fail") << "\n";
    if (!r.passed) {
      std::cout << "  identity: " << r.identity_name << "\n";
      if (r.witness) {
        std::cout << "  witness: (";
        for (std::size_t i = 0; i < names.size(); ++i) std::cout << (i ? ", " : "") << names[i];
        std::cout << ")\n";
      }
      if (r.defect) std::cout << "  defect: " << scalars_text(*r.defect) << "\n";
    }
  }
  return r.passed ? kPass : kFalse;
}

std::vector<std::string> module_labels(std::size_t m) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < m; ++i) out.push_back("v" + std::to_string(i + 1));
  return out;
}

Representation load_rep(const Algebra& a, const std::string& spec) {
  if (spec.empty() || spec == "regular") return regular_representation(a);
  return io::load_representation(spec);
}

void require_option(const std::string& value, const char* flag, const std::string& what) {
  if (value.empty()) throw UsageError(std::string(flag) + " is required for " + what);
}

std::size_t degree_cap() {
  if (const char* env = std::getenv("FAMW_DEGREE_CAP")) {
    try {
      std::size_t pos = 0;
      const unsigned long v = std::stoul(env, &pos);
      if (pos == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError("FAMW_DEGREE_CAP must be a non-negative integer");
  }
  return CohomologyLimits{}.max_degree;
}

void emit(const std::string& content, const Options& o, const std::string& summary) {
  if (o.out.empty()) {
    std::cout << content;
  } else {
    io::detail::write_file(o.out, content);
    std::cout << summary << "\n";
  }
}

std::string algebra_summary(const Algebra& a, const Options& o) {
  std::string s = "wrote " + o.out + ": dim " + std::to_string(a.dim()) + ", products";
  for (const auto& [name, t] : a.products()) s += " " + name;
  return s;
}

void emit_algebra(const Algebra& a, const Options& o) {
  emit(io::format_algebra(a), o, algebra_summary(a, o));
}

// ---------------------------------------------------------------------------

int cmd_check(const std::string& what, const std::string& file, const Options& o) {
  Algebra a = io::load_algebra(file);
  const auto& labels = a.labels();

  if (what == "representation" || what == "dual-representation") {
    Representation r = load_rep(a, o.rep);
    return report(what == "representation" ? check_representation(a, r, o.slots)
                                           : check_dual_rep_condition(a, r, o.slots),
                  labels, o);
  }
  if (what == "prelie-representation") {
    const std::string slot =
        resolve_slots(a, AlgebraClass::pre_lie, o.slots).front();
    Representation r = o.rep.empty() || o.rep == "regular" ? prelie_regular_representation(a, slot)
                                                           : io::load_representation(o.rep);
    return report(check_prelie_representation(a, r, slot), labels, o);
  }
  if (what == "derivation" || what == "rota-baxter" || what == "average" ||
      what == "o-operator") {
    require_option(o.op, "--operator", what);
    const OperatorKind kind = parse_operator_kind(what);
    LinearOperator op = io::load_operator(o.op);
    if (kind == OperatorKind::o_operator) {
      Representation r = load_rep(a, o.rep);
      return report(check_operator(a, op, kind, &r, o.slots), module_labels(r.module_dim), o);
    }
    return report(check_operator(a, op, kind, nullptr, o.slots), labels, o);
  }
  if (what == "homomorphism") {
    require_option(o.op, "--operator", what);
    require_option(o.target, "--target", what);
    Algebra dst = io::load_algebra(o.target);
    return report(check_homomorphism(a, dst, io::load_operator(o.op), o.slots), labels, o);
  }
  if (what == "invariant-symmetric" || what == "connes-cyclic" || what == "symplectic" ||
      what == "nondegenerate") {
    require_option(o.form, "--form", what);
    return report(check_form(a, io::load_form(o.form), parse_form_kind(what), o.slots), labels,
                  o);
  }
  return report(check_class(a, parse_algebra_class(what), o.slots), labels, o);
}

DerivationWeight parse_weight(const Options& o, std::size_t dim) {
  if (!o.weight.empty() && !o.weight_element.empty())
    throw UsageError("--weight and --weight-element are mutually exclusive");
  if (!o.weight_element.empty()) {
    Vector w;
    std::stringstream ss(o.weight_element);
    std::string item;
    while (std::getline(ss, item, ',')) w.push_back(Scalar::parse(item));
    check_same_size(w.size(), dim, "--weight-element length");
    return w;
  }
  return o.weight.empty() ? Scalar(0) : Scalar::parse(o.weight);
}

int cmd_construct(const std::string& kind, const std::vector<std::string>& files,
                  const Options& o) {
  auto expect_files = [&](std::size_t n) {
    if (files.size() != n)
      throw UsageError("construct " + kind + " takes " + std::to_string(n) + " input file(s)");
  };
  auto single_slot = [&](const Algebra& a) {
    if (o.slots.size() > 1) throw UsageError(kind + " takes a single --slot");
    if (!o.slots.empty()) return o.slots.front();
    if (a.products().size() == 1) return a.products().begin()->first;
    throw UsageError(kind + " needs --slot when the algebra has several products");
  };

  if (kind == "direct-sum" || kind == "tensor") {
    expect_files(2);
    Algebra a = io::load_algebra(files[0]), b = io::load_algebra(files[1]);
    emit_algebra(kind == "direct-sum" ? direct_sum(a, b) : tensor_product(a, b), o);
    return kPass;
  }
  expect_files(1);
  Algebra a = io::load_algebra(files[0]);

  if (kind == "commutator" || kind == "symmetrize") {
    const std::string slot = single_slot(a);
    Algebra out(a.dim(), a.labels());
    if (kind == "commutator")
      out.set_product(kBracket, commutator_bracket(a, slot));
    else
      out.set_product(kMul, symmetrized_product(a, slot));
    emit_algebra(out, o);
  } else if (kind == "sub-adjacent") {
    emit_algebra(sub_adjacent_f_manifold(a, o.force), o);
  } else if (kind == "semidirect") {
    emit_algebra(semidirect_product(a, load_rep(a, o.rep), o.force), o);
  } else if (kind == "derivation") {
    require_option(o.op, "--operator", kind);
    emit_algebra(derivation_induced(a, io::load_operator(o.op), parse_weight(o, a.dim()), o.force),
                 o);
  } else if (kind == "o-pre-f") {
    require_option(o.op, "--operator", kind);
    emit_algebra(o_operator_induced_pre_f(a, load_rep(a, o.rep), io::load_operator(o.op), o.force),
                 o);
  } else if (kind == "rb-pre-f") {
    require_option(o.op, "--operator", kind);
    emit_algebra(rota_baxter_induced_pre_f(a, io::load_operator(o.op), o.force), o);
  } else if (kind == "avg-dual") {
    require_option(o.op, "--operator", kind);
    emit_algebra(average_induced_dual_pre_f(a, io::load_operator(o.op), o.force), o);
  } else if (kind == "form-pre-f") {
    require_option(o.form, "--form", kind);
    emit_algebra(form_induced_pre_f(a, io::load_form(o.form), o.force), o);
  } else if (kind == "regular-rep" || kind == "dual-rep") {
    Representation r = kind == "regular-rep" ? regular_representation(a)
                                             : dual_representation(load_rep(a, o.rep));
    emit(io::format_representation(r), o,
         "wrote " + o.out + ": representation on a module of dim " + std::to_string(r.module_dim));
  } else {
    throw UnknownName("unknown construction '" + kind + "'");
  }
  return kPass;
}

int cmd_derivations(const std::string& file, const Options& o) {
  Algebra a = io::load_algebra(file);
  if (o.slots.size() > 1) throw UsageError("derivations takes a single --slot");
  const std::string slot = o.slots.empty() ? kMul : o.slots.front();
  auto basis = solve_derivations(a, slot);
  if (o.json) {
    Json j;
    j["slot"] = slot;
    j["dimension"] = basis.size();
    j["basis"] = Json::array();
    for (const auto& d : basis) {
      Json m = Json::array();
      for (std::size_t r = 0; r < d.matrix.rows(); ++r) m.push_back(scalars_json(d.matrix.row(r)));
      j["basis"].push_back(m);
    }
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "derivations of " << slot << ": dimension " << basis.size() << "\n";
    for (std::size_t i = 0; i < basis.size(); ++i)
      std::cout << "  D" << i + 1 << " = " << basis[i].matrix << "\n";
  }
  return kPass;
}

int cmd_cohomology(const std::string& file, const Options& o) {
  Algebra a = io::load_algebra(file);
  if (o.slots.size() > 1) throw UsageError("cohomology takes a single --slot");
  const std::string slot = resolve_slots(a, AlgebraClass::pre_lie, o.slots).front();
  CohomologyLimits limits;
  limits.max_degree = degree_cap();
  if (o.degree > limits.max_degree)
    throw ResourceLimit("degree " + std::to_string(o.degree) + " exceeds the cap of " +
                        std::to_string(limits.max_degree) + " (set FAMW_DEGREE_CAP to raise it)");
  Representation r = o.rep.empty() || o.rep == "regular" ? prelie_regular_representation(a, slot)
                                                         : io::load_representation(o.rep);
  CohomologyResult c = cohomology(Coboundary(a, r, slot), o.degree, limits);
  const std::size_t n = c.degree;
  if (o.json) {
    Json j;
    j["degree"] = n;
    j["slot"] = slot;
    j["dim_c_prev"] = c.dim_prev;
    j["dim_c"] = c.dim_cur;
    j["dim_c_next"] = c.dim_next;
    j["rank_d_prev"] = c.rank_prev;
    j["rank_d"] = c.rank_cur;
    j["h"] = c.h;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "dim C^" << n - 1 << " = " << c.dim_prev << "\n"
              << "dim C^" << n << " = " << c.dim_cur << "\n"
              << "dim C^" << n + 1 << " = " << c.dim_next << "\n"
              << "rank d_" << n - 1 << " = " << c.rank_prev << "\n"
              << "rank d_" << n << " = " << c.rank_cur << "\n"
              << "dim H^" << n << " = " << c.h << "\n";
  }
  return kPass;
}

int cmd_deform(const std::string& sub, const std::vector<std::string>& files, const Options& o) {
  auto expect_files = [&](std::size_t n) {
    if (files.size() != n)
      throw UsageError("deform " + sub + " takes " + std::to_string(n) + " input file(s)");
  };
  if (sub == "verify") {
    expect_files(1);
    DeformationFamily f = io::load_family(files[0]);
    CheckReport base = check_class(f.base, AlgebraClass::commutative_associative, {kMul});
    if (!base.passed) return report(base, f.base.labels(), o);
    std::vector<CheckReport> orders;
    bool all = true;
    for (std::size_t k = 0; k <= f.order(); ++k) {
      orders.push_back(verify_order(f, k));
      all = all && orders.back().passed;
    }
    if (o.json) {
      Json j = Json::array();
      for (const auto& r : orders) {
        Json e;
        e["order"] = r.check;
        e["passed"] = r.passed;
        if (!r.passed) {
          e["witness"] = *r.witness;
          e["defect"] = scalars_json(*r.defect);
        }
        j.push_back(e);
      }
      std::cout << j.dump(2) << "\n";
    } else {
      for (const auto& r : orders) {
        std::cout << r.check << ": " << (r.passed ? "pass" : "fail");
        if (!r.passed) {
          std::cout << " at (";
          for (std::size_t i = 0; i < r.witness->size(); ++i)
            std::cout << (i ? ", " : "") << f.base.labels()[(*r.witness)[i]];
          std::cout << ") defect " << scalars_text(*r.defect);
        }
        std::cout << "\n";
      }
    }
    return all ? kPass : kFalse;
  }
  if (sub == "extend") {
    expect_files(1);
    DeformationFamily f = io::load_family(files[0]);
    auto psi = extend_deformation(f);
    if (!psi) {
      std::cout << "obstruction class is nonzero: no extension to order " << f.order() + 1 << "\n";
      return kFalse;
    }
    f.mus.push_back(std::move(*psi));
    emit(io::format_family(f), o,
         "wrote " + o.out + ": deformation of order " + std::to_string(f.order()));
    return kPass;
  }
  if (sub == "limit") {
    expect_files(1);
    emit_algebra(semi_classical_limit(io::load_family(files[0])), o);
    return kPass;
  }
  if (sub == "equivalent") {
    expect_files(2);
    DeformationFamily f = io::load_family(files[0]), g = io::load_family(files[1]);
    if (f.order() < 1 || g.order() < 1) throw UsageError("both families need order at least 1");
    if (!(f.base == g.base)) throw UsageError("families must share the same base algebra");
    auto phi = deformation_equivalent(f.base, f.mu(1), g.mu(1));
    if (!phi) {
      std::cout << "inequivalent\n";
      return kFalse;
    }
    emit(io::format_matrix(phi->matrix), o, "wrote " + o.out + ": equivalence map");
    return kPass;
  }
  throw UnknownName("unknown deform subcommand '" + sub + "'");
}

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--slot", o.slots, "Product slot(s), comma separated or repeated")
      ->delimiter(',');
  cmd->add_flag("--json", o.json, "Machine-readable output");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact workbench for finite-dimensional algebras given by structure constants"};
  app.require_subcommand(1);
  Options o;
  std::string what, file, kind, sub;
  std::vector<std::string> files;

  auto* check = app.add_subcommand("check", "Decide an algebra class or property");
  check->add_option("what", what, "Class, operator kind, form kind, or representation check")
      ->required();
  check->add_option("file", file, "Algebra file")->required();
  add_common(check, o);
  check->add_option("--rep", o.rep, "regular or a representation file");
  check->add_option("--operator", o.op, "Operator matrix file");
  check->add_option("--form", o.form, "Bilinear form matrix file");
  check->add_option("--target", o.target, "Target algebra for homomorphism checks");

  auto* construct = app.add_subcommand("construct", "Build a new structure");
  construct->add_option("kind", kind, "Construction kind")->required();
  construct->add_option("files", files, "Input algebra file(s)")->required();
  add_common(construct, o);
  construct->add_option("--rep", o.rep, "regular or a representation file");
  construct->add_option("--operator", o.op, "Operator matrix file");
  construct->add_option("--form", o.form, "Bilinear form matrix file");
  construct->add_option("--weight", o.weight, "Scalar weight for derivation-induced products");
  construct->add_option("--weight-element", o.weight_element,
                        "Algebra element weight, comma separated coordinates");
  construct->add_flag("--force", o.force, "Skip precondition checks");
  construct->add_option("-o,--output", o.out, "Output file");

  auto* derivations = app.add_subcommand("derivations", "Basis of the derivation space");
  derivations->add_option("file", file, "Algebra file")->required();
  add_common(derivations, o);

  auto* cohomology = app.add_subcommand("cohomology", "Pre-Lie cohomology dimensions");
  cohomology->add_option("file", file, "Algebra file")->required();
  add_common(cohomology, o);
  cohomology->add_option("--degree", o.degree, "Cohomology degree n >= 1")->default_val(2);
  cohomology->add_option("--rep", o.rep, "regular or a representation file");

  auto* deform = app.add_subcommand("deform", "Pre-Lie deformations of commutative algebras");
  deform->add_option("sub", sub, "verify, extend, limit or equivalent")->required();
  deform->add_option("files", files, "Deformation family file(s)")->required();
  deform->add_flag("--json", o.json, "Machine-readable output");
  deform->add_option("-o,--output", o.out, "Output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (check->parsed()) return cmd_check(what, file, o);
    if (construct->parsed()) return cmd_construct(kind, files, o);
    if (derivations->parsed()) return cmd_derivations(file, o);
    if (cohomology->parsed()) return cmd_cohomology(file, o);
    if (deform->parsed()) return cmd_deform(sub, files, o);
  } catch (const PreconditionFailed& e) {
    std::cerr << "error: " << e.what() << "\n";
    report(e.report(), {}, Options{});
    return kFalse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
