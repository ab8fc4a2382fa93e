#include "vnspec/description.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace vnspec {

using Json = nlohmann::ordered_json;

namespace {

[[noreturn]] void invalid(const std::string& path, const std::string& message) {
  throw DescriptionError(ErrorCode::ValidationError, path, message);
}

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string index(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

// Reads a document tree with field paths for every diagnostic.
class Reader {
 public:
  Reader(const Json& node, std::string path) : node_(node), path_(std::move(path)) {}

  const std::string& path() const { return path_; }
  const Json& node() const { return node_; }

  bool has(const std::string& key) const { return node_.contains(key) && !node_.at(key).is_null(); }

  Reader at(const std::string& key) const {
    if (!node_.contains(key)) invalid(join(path_, key), "missing field");
    return Reader(node_.at(key), join(path_, key));
  }

  void expect_object() const {
    if (!node_.is_object()) invalid(path_, "expected an object");
  }

  void allow_only(std::initializer_list<const char*> keys) const {
    for (const auto& item : node_.items()) {
      bool known = false;
      for (const char* k : keys) known = known || item.key() == k;
      if (!known) invalid(join(path_, item.key()), "unknown field");
    }
  }

  double number() const {
    if (!node_.is_number()) invalid(path_, "expected a number");
    const double v = node_.get<double>();
    if (!std::isfinite(v)) invalid(path_, "not finite");
    return v;
  }

  int integer() const {
    if (!node_.is_number_integer()) invalid(path_, "expected an integer");
    return node_.get<int>();
  }

  std::string string() const {
    if (!node_.is_string()) invalid(path_, "expected a string");
    return node_.get<std::string>();
  }

  std::vector<Reader> array() const {
    if (!node_.is_array()) invalid(path_, "expected an array");
    std::vector<Reader> out;
    for (std::size_t i = 0; i < node_.size(); ++i) out.emplace_back(node_.at(i), index(path_, i));
    return out;
  }

  std::vector<double> numbers() const {
    std::vector<double> out;
    for (const auto& r : array()) out.push_back(r.number());
    return out;
  }

  std::vector<int> integers() const {
    std::vector<int> out;
    for (const auto& r : array()) out.push_back(r.integer());
    return out;
  }

  Complex complex() const {
    if (node_.is_number()) return {number(), 0.0};
    const auto parts = array();
    if (parts.size() != 2) invalid(path_, "complex entries are [re, im] pairs");
    return {parts[0].number(), parts[1].number()};
  }

  CMatrix matrix() const {
    const auto rows = array();
    const auto n = static_cast<Eigen::Index>(rows.size());
    CMatrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto cols = rows[static_cast<std::size_t>(i)].array();
      if (static_cast<Eigen::Index>(cols.size()) != n)
        invalid(rows[static_cast<std::size_t>(i)].path(), "matrix must be square, row has " +
                                                               std::to_string(cols.size()) + " entries for " +
                                                               std::to_string(n) + " rows");
      for (Eigen::Index j = 0; j < n; ++j) m(i, j) = cols[static_cast<std::size_t>(j)].complex();
    }
    return m;
  }

  CMatrix matrix_of(Eigen::Index n) const {
    CMatrix m = matrix();
    if (m.rows() != n) invalid(path_, "expected a " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
    return m;
  }

  std::vector<CMatrix> matrices_of(Eigen::Index n) const {
    std::vector<CMatrix> out;
    for (const auto& r : array()) out.push_back(r.matrix_of(n));
    return out;
  }

 private:
  const Json& node_;
  std::string path_;
};

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json matrix_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json matrices_json(const std::vector<CMatrix>& ms) {
  Json out = Json::array();
  for (const auto& m : ms) out.push_back(matrix_json(m));
  return out;
}

SubsystemDoc read_subsystem(const Reader& parent, Eigen::Index n) {
  SubsystemDoc doc;
  if (!parent.has("subsystem")) return doc;
  const Reader r = parent.at("subsystem");
  if (r.node().is_string()) {
    const std::string s = r.string();
    if (s == "trivial") doc.kind = SubsystemDoc::Kind::Trivial;
    else if (s == "full") doc.kind = SubsystemDoc::Kind::Full;
    else invalid(r.path(), "expected \"trivial\", \"full\" or {\"generators\": [...]}");
    return doc;
  }
  r.expect_object();
  r.allow_only({"generators"});
  doc.kind = SubsystemDoc::Kind::Generated;
  doc.generators = r.at("generators").matrices_of(n);
  return doc;
}

Json subsystem_json(const SubsystemDoc& doc) {
  switch (doc.kind) {
    case SubsystemDoc::Kind::Trivial: return "trivial";
    case SubsystemDoc::Kind::Full: return "full";
    case SubsystemDoc::Kind::Generated: return Json{{"generators", matrices_json(doc.generators)}};
  }
  return "trivial";
}

GroupDoc read_group(const Reader& r) {
  r.expect_object();
  r.allow_only({"cyclic", "table"});
  GroupDoc doc;
  if (r.has("cyclic") == r.has("table")) invalid(r.path(), "give exactly one of \"cyclic\" or \"table\"");
  if (r.has("cyclic")) {
    const int n = r.at("cyclic").integer();
    if (n < 1) invalid(join(r.path(), "cyclic"), "group order must be positive");
    doc.cyclic = n;
    doc.table = GroupTable::cyclic(n);
  } else {
    for (const auto& row : r.at("table").array()) doc.table.mult.push_back(row.integers());
    try {
      doc.table.validate();
    } catch (const Error& e) {
      invalid(join(r.path(), "table"), e.what());
    }
  }
  return doc;
}

Json group_json(const GroupDoc& doc) {
  if (doc.cyclic) return Json{{"cyclic", *doc.cyclic}};
  return Json{{"table", doc.table.mult}};
}

Eigen::Index read_dim(const Reader& r) {
  const int n = r.integer();
  if (n < 1) invalid(r.path(), "must be positive");
  return n;
}

ExplicitDoc read_explicit(const Reader& r, bool with_subsystem, double unit_tol) {
  ExplicitDoc doc;
  doc.ambient_dim = read_dim(r.at("ambient_dim"));
  doc.generators = r.at("generators").matrices_of(doc.ambient_dim);
  doc.density = r.at("density").matrix_of(doc.ambient_dim);
  if (r.has("dynamics")) {
    const Reader d = r.at("dynamics");
    d.expect_object();
    d.allow_only({"W"});
    doc.W = d.at("W").matrix_of(doc.ambient_dim);
    const CMatrix gap = doc.W->adjoint() * *doc.W - CMatrix::Identity(doc.ambient_dim, doc.ambient_dim);
    if (gap.norm() > unit_tol) invalid(join(d.path(), "W"), "W is not unitary");
  }
  if (with_subsystem) doc.subsystem = read_subsystem(r, doc.ambient_dim);
  return doc;
}

void write_explicit(Json& j, const ExplicitDoc& doc, bool with_subsystem) {
  j["ambient_dim"] = doc.ambient_dim;
  j["generators"] = matrices_json(doc.generators);
  j["density"] = matrix_json(doc.density);
  if (doc.W) j["dynamics"] = Json{{"W", matrix_json(*doc.W)}};
  if (with_subsystem) j["subsystem"] = subsystem_json(doc.subsystem);
}

ClassicalDoc read_classical(const Reader& r, bool with_subsystem) {
  ClassicalDoc doc;
  doc.weights = r.at("weights").numbers();
  doc.permutation = r.at("permutation").integers();
  if (with_subsystem) doc.subsystem = read_subsystem(r, static_cast<Eigen::Index>(doc.weights.size()));
  return doc;
}

void write_classical(Json& j, const ClassicalDoc& doc, bool with_subsystem) {
  j["weights"] = doc.weights;
  j["permutation"] = doc.permutation;
  if (with_subsystem) j["subsystem"] = subsystem_json(doc.subsystem);
}

GroupVnDoc read_group_vn(const Reader& r, bool with_subsystem) {
  GroupVnDoc doc;
  doc.group = read_group(r.at("group"));
  doc.automorphism = r.at("automorphism").integers();
  if (with_subsystem) doc.subsystem = read_subsystem(r, doc.group.table.order());
  return doc;
}

void write_group_vn(Json& j, const GroupVnDoc& doc, bool with_subsystem) {
  j["group"] = group_json(doc.group);
  j["automorphism"] = doc.automorphism;
  if (with_subsystem) j["subsystem"] = subsystem_json(doc.subsystem);
}

FactorDoc read_factor(const Reader& r, double unit_tol) {
  r.expect_object();
  FactorDoc doc;
  doc.kind = r.at("kind").string();
  if (doc.kind == "explicit") {
    r.allow_only({"kind", "ambient_dim", "generators", "density", "dynamics"});
    doc.params = read_explicit(r, false, unit_tol);
  } else if (doc.kind == "classical") {
    r.allow_only({"kind", "weights", "permutation"});
    doc.params = read_classical(r, false);
  } else if (doc.kind == "group_vn") {
    r.allow_only({"kind", "group", "automorphism"});
    doc.params = read_group_vn(r, false);
  } else {
    invalid(join(r.path(), "kind"), "tensor factors are explicit, classical or group_vn");
  }
  return doc;
}

Json factor_json(const FactorDoc& doc) {
  Json j;
  j["kind"] = doc.kind;
  if (const auto* e = std::get_if<ExplicitDoc>(&doc.params)) write_explicit(j, *e, false);
  if (const auto* c = std::get_if<ClassicalDoc>(&doc.params)) write_classical(j, *c, false);
  if (const auto* g = std::get_if<GroupVnDoc>(&doc.params)) write_group_vn(j, *g, false);
  return j;
}

std::optional<ExtensionBlockDoc> read_block(const Reader& parent, const std::string& key) {
  if (!parent.has(key)) return std::nullopt;
  const Reader r = parent.at(key);
  r.expect_object();
  r.allow_only({"ambient_dim", "generators", "density"});
  ExtensionBlockDoc doc;
  doc.ambient_dim = read_dim(r.at("ambient_dim"));
  doc.generators = r.at("generators").matrices_of(doc.ambient_dim);
  doc.density = r.at("density").matrix_of(doc.ambient_dim);
  return doc;
}

Json block_json(const std::optional<ExtensionBlockDoc>& doc) {
  if (!doc) return nullptr;
  return Json{{"ambient_dim", doc->ambient_dim},
              {"generators", matrices_json(doc->generators)},
              {"density", matrix_json(doc->density)}};
}

std::size_t line_of(const std::string& text, std::size_t byte, std::size_t* column) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  *column = col;
  return line;
}

Subsystem build_subsystem(const SubsystemDoc& doc, const WStarSystem& sys, const ToleranceConfig& tol) {
  switch (doc.kind) {
    case SubsystemDoc::Kind::Full: return full_subsystem(sys);
    case SubsystemDoc::Kind::Generated: return make_subsystem(sys, doc.generators, tol);
    case SubsystemDoc::Kind::Trivial: break;
  }
  return trivial_subsystem(sys, tol);
}

WStarSystem build_explicit(const ExplicitDoc& doc, const ToleranceConfig& tol) {
  const MatrixStarAlgebra alg = generate_algebra(doc.generators, doc.ambient_dim, tol);
  const bool normalized = std::abs(doc.density.trace() - Complex(1.0)) <= tol.eps_assert;
  TraceFunctional trace(doc.density, normalized);
  StarAutomorphism dyn = doc.W ? StarAutomorphism::conjugation(alg, *doc.W) : StarAutomorphism::identity(alg);
  return WStarSystem{alg, trace, dyn};
}

WStarSystem build_factor(const FactorDoc& doc, const ToleranceConfig& tol) {
  WStarSystem sys;
  if (const auto* e = std::get_if<ExplicitDoc>(&doc.params)) sys = build_explicit(*e, tol);
  if (const auto* c = std::get_if<ClassicalDoc>(&doc.params)) sys = build_classical_system(c->weights, c->permutation, tol);
  if (const auto* g = std::get_if<GroupVnDoc>(&doc.params)) sys = build_group_vn_system(g->group.table, g->automorphism, tol);
  sys.validate(tol);
  return sys;
}

ConstructedSystem build_unchecked(const SystemDescription& desc, const ToleranceConfig& tol, std::string& where) {
  ConstructedSystem out;
  const auto finish = [&](WStarSystem sys, const SubsystemDoc& sub) {
    where = "";
    sys.validate(tol);
    out.sub = build_subsystem(sub, sys, tol);
    out.sub.validate(sys, tol);
    out.system = std::move(sys);
  };
  if (const auto* e = std::get_if<ExplicitDoc>(&desc.params)) {
    where = "generators";
    WStarSystem sys = build_explicit(*e, tol);
    finish(std::move(sys), e->subsystem);
  } else if (const auto* c = std::get_if<ClassicalDoc>(&desc.params)) {
    where = "weights";
    finish(build_classical_system(c->weights, c->permutation, tol), c->subsystem);
  } else if (const auto* g = std::get_if<GroupVnDoc>(&desc.params)) {
    where = "automorphism";
    finish(build_group_vn_system(g->group.table, g->automorphism, tol), g->subsystem);
  } else if (const auto* t = std::get_if<TensorDoc>(&desc.params)) {
    where = "B";
    const WStarSystem b = build_factor(t->B, tol);
    where = "C";
    const WStarSystem c = build_factor(t->C, tol);
    where = "";
    out = build_tensor_system(b, c, tol);
  } else if (const auto* s = std::get_if<SkewProductDoc>(&desc.params)) {
    where = "";
    out = build_skew_product(SkewProductSpec{s->weights, s->S, s->group.table, s->T, s->k}, tol);
  } else if (const auto* f = std::get_if<FiniteExtensionDoc>(&desc.params)) {
    FiniteExtensionSpec spec;
    const auto block = [&](const std::optional<ExtensionBlockDoc>& b, MatrixStarAlgebra& alg, TraceFunctional& nu,
                           const char* name) {
      if (!b) return;
      where = name;
      alg = generate_algebra(b->generators, b->ambient_dim, tol);
      nu = TraceFunctional(b->density, true);
      nu.validate_on(alg, tol);
    };
    block(f->B1, spec.B1, spec.nu1, "B1");
    block(f->B2, spec.B2, spec.nu2, "B2");
    spec.s = f->s;
    spec.v1 = f->v1;
    spec.v2 = f->v2;
    spec.v3 = f->v3;
    spec.v4 = f->v4;
    where = "";
    out = build_finite_extension(spec, tol);
  }
  where = "";
  out.system.validate(tol);
  out.sub.validate(out.system, tol);
  where = "elements";
  for (const auto& [name, x] : desc.elements) {
    where = "elements." + name;
    if (x.rows() != out.system.ambient_dim())
      throw Error(ErrorCode::DimensionMismatch, "element must be " + std::to_string(out.system.ambient_dim()) + "x" +
                                                    std::to_string(out.system.ambient_dim()));
    if (!out.system.algebra.contains(x, tol.eps_assert * std::max(1.0, x.norm())))
      throw Error(ErrorCode::SpecInvalid, "element is not in the algebra");
  }
  return out;
}

// Field named by a constructor message ("v3 is not unitary" -> "v3").
std::string refine(const SystemDescription& desc, const std::string& where, const Error& e) {
  if (!where.empty()) return where;
  const std::string msg = e.what();
  const bool own_dynamics = desc.kind == "explicit" || desc.kind == "classical" || desc.kind == "group_vn";
  if (own_dynamics && e.code() == ErrorCode::AutomorphismInvalid)
    return desc.kind == "explicit" ? "dynamics.W" : desc.kind == "classical" ? "permutation" : "automorphism";
  if (desc.kind == "explicit" && (e.code() == ErrorCode::TraceInvalid || e.code() == ErrorCode::TraceNotFaithful))
    return "density";
  if (e.code() == ErrorCode::SubsystemInvalid) return own_dynamics ? "subsystem" : desc.kind;
  if (desc.kind == "finite_extension") {
    for (const char* f : {"v1", "v2", "v3", "v4"})
      if (msg.find(std::string(" ") + f + " ") != std::string::npos) return f;
    if (msg.find("W is not") != std::string::npos) return "v1";
    if (msg.find("s must") != std::string::npos) return "s";
    if (msg.find("B1") != std::string::npos) return "B1";
    if (msg.find("B2") != std::string::npos) return "B2";
  }
  if (desc.kind == "skew_product") {
    if (msg.find("S ") != std::string::npos) return "S";
    if (msg.find("weights") != std::string::npos) return "weights";
    if (msg.find("k ") != std::string::npos) return "k";
    if (msg.find("T(") != std::string::npos || e.code() == ErrorCode::NotAutomorphism) return "T";
    if (msg.find("group") != std::string::npos) return "group";
  }
  return desc.kind;
}

}  // namespace

ToleranceConfig ToleranceOverrides::apply(ToleranceConfig base) const {
  if (eps_rank) base.eps_rank = *eps_rank;
  if (eps_assert) {
    base.eps_assert = *eps_assert;
    base.extension_residual = *eps_assert;
    base.eigen_cluster = *eps_assert;
  }
  if (cesaro_n_max) base.cesaro_n_max = *cesaro_n_max;
  return base;
}

ToleranceConfig effective_tolerances(const SystemDescription& desc) { return desc.tolerances.apply(ToleranceConfig{}); }

ConstructedSystem build_system(const SystemDescription& desc, const ToleranceConfig& tol) {
  std::string where;
  try {
    return build_unchecked(desc, tol, where);
  } catch (const DescriptionError&) {
    throw;
  } catch (const Error& e) {
    if (is_numerical_breakdown(e.code())) throw;
    throw DescriptionError(ErrorCode::ValidationError, refine(desc, where, e), e.what());
  }
}

SystemDescription parse_system(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t column = 0;
    const std::size_t line = line_of(text, e.byte == 0 ? 0 : e.byte - 1, &column);
    std::string what = e.what();
    const auto colon = what.find("syntax error");
    if (colon != std::string::npos) what = what.substr(colon);
    throw DescriptionError(ErrorCode::ParseError,
                           "line " + std::to_string(line) + ", column " + std::to_string(column), what);
  }

  const Reader root(doc, "");
  if (!doc.is_object()) invalid("(root)", "expected an object");
  SystemDescription desc;
  desc.format_version = root.at("format_version").integer();
  if (desc.format_version != 1)
    invalid("format_version", "unsupported version " + std::to_string(desc.format_version));
  desc.kind = root.at("kind").string();
  if (root.has("name")) desc.name = root.at("name").string();
  if (root.has("note")) desc.note = root.at("note").string();

  if (root.has("tolerances")) {
    const Reader t = root.at("tolerances");
    t.expect_object();
    t.allow_only({"eps_rank", "eps_assert", "cesaro_n_max"});
    if (t.has("eps_rank")) desc.tolerances.eps_rank = t.at("eps_rank").number();
    if (t.has("eps_assert")) desc.tolerances.eps_assert = t.at("eps_assert").number();
    if (t.has("cesaro_n_max")) desc.tolerances.cesaro_n_max = t.at("cesaro_n_max").integer();
    try {
      effective_tolerances(desc).validate();
    } catch (const Error& e) {
      invalid("tolerances", e.what());
    }
  }
  const double unit_tol = effective_tolerances(desc).eps_assert;

  const std::initializer_list<const char*> common = {"format_version", "kind", "name", "note", "tolerances",
                                                    "elements"};
  const auto allow = [&](std::initializer_list<const char*> extra) {
    for (const auto& item : doc.items()) {
      bool known = false;
      for (const char* k : common) known = known || item.key() == k;
      for (const char* k : extra) known = known || item.key() == k;
      if (!known) invalid(item.key(), "unknown field for kind " + desc.kind);
    }
  };

  if (desc.kind == "explicit") {
    allow({"ambient_dim", "generators", "density", "dynamics", "subsystem"});
    desc.params = read_explicit(root, true, unit_tol);
  } else if (desc.kind == "classical") {
    allow({"weights", "permutation", "subsystem"});
    desc.params = read_classical(root, true);
  } else if (desc.kind == "group_vn") {
    allow({"group", "automorphism", "subsystem"});
    desc.params = read_group_vn(root, true);
  } else if (desc.kind == "tensor") {
    allow({"B", "C"});
    desc.params = TensorDoc{read_factor(root.at("B"), unit_tol), read_factor(root.at("C"), unit_tol)};
  } else if (desc.kind == "skew_product") {
    allow({"weights", "S", "group", "T", "k"});
    SkewProductDoc s;
    s.weights = root.at("weights").numbers();
    s.S = root.at("S").integers();
    s.group = read_group(root.at("group"));
    s.T = root.at("T").integers();
    s.k = root.at("k").integers();
    desc.params = std::move(s);
  } else if (desc.kind == "finite_extension") {
    allow({"B1", "B2", "s", "v1", "v2", "v3", "v4"});
    FiniteExtensionDoc f;
    f.B1 = read_block(root, "B1");
    f.B2 = read_block(root, "B2");
    const Eigen::Index n1 = f.B1 ? f.B1->ambient_dim : 0, n2 = f.B2 ? f.B2->ambient_dim : 0;
    f.s = root.has("s") ? root.at("s").number() : 0.5;
    const auto unitary = [&](const char* key, Eigen::Index n) {
      if (n == 0) {
        if (root.has(key) && !root.at(key).array().empty()) invalid(key, "must be empty when its block is zero");
        return CMatrix(0, 0);
      }
      CMatrix v = root.at(key).matrix_of(n);
      if ((v.adjoint() * v - CMatrix::Identity(n, n)).norm() > unit_tol) invalid(key, "not unitary");
      return v;
    };
    f.v1 = unitary("v1", n1);
    f.v2 = unitary("v2", n2);
    f.v3 = unitary("v3", n2);
    f.v4 = unitary("v4", n1);
    desc.params = std::move(f);
  } else {
    invalid("kind", "unknown kind \"" + desc.kind + "\"");
  }

  if (root.has("elements")) {
    const Reader els = root.at("elements");
    els.expect_object();
    for (const auto& item : doc.at("elements").items())
      desc.elements[item.key()] = Reader(item.value(), "elements." + item.key()).matrix();
  }

  build_system(desc, effective_tolerances(desc));
  return desc;
}

SystemDescription parse_system_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DescriptionError(ErrorCode::ParseError, path, "cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_system(buf.str());
}

std::string to_json(const SystemDescription& desc) {
  Json j;
  j["format_version"] = desc.format_version;
  if (!desc.name.empty()) j["name"] = desc.name;
  j["kind"] = desc.kind;
  if (!desc.note.empty()) j["note"] = desc.note;
  if (!desc.tolerances.empty()) {
    Json t = Json::object();
    if (desc.tolerances.eps_rank) t["eps_rank"] = *desc.tolerances.eps_rank;
    if (desc.tolerances.eps_assert) t["eps_assert"] = *desc.tolerances.eps_assert;
    if (desc.tolerances.cesaro_n_max) t["cesaro_n_max"] = *desc.tolerances.cesaro_n_max;
    j["tolerances"] = t;
  }
  if (const auto* e = std::get_if<ExplicitDoc>(&desc.params)) write_explicit(j, *e, true);
  if (const auto* c = std::get_if<ClassicalDoc>(&desc.params)) write_classical(j, *c, true);
  if (const auto* g = std::get_if<GroupVnDoc>(&desc.params)) write_group_vn(j, *g, true);
  if (const auto* t = std::get_if<TensorDoc>(&desc.params)) {
    j["B"] = factor_json(t->B);
    j["C"] = factor_json(t->C);
  }
  if (const auto* s = std::get_if<SkewProductDoc>(&desc.params)) {
    j["weights"] = s->weights;
    j["S"] = s->S;
    j["group"] = group_json(s->group);
    j["T"] = s->T;
    j["k"] = s->k;
  }
  if (const auto* f = std::get_if<FiniteExtensionDoc>(&desc.params)) {
    j["B1"] = block_json(f->B1);
    j["B2"] = block_json(f->B2);
    j["s"] = f->s;
    j["v1"] = matrix_json(f->v1);
    j["v2"] = matrix_json(f->v2);
    j["v3"] = matrix_json(f->v3);
    j["v4"] = matrix_json(f->v4);
  }
  if (!desc.elements.empty()) {
    Json els = Json::object();
    for (const auto& [name, x] : desc.elements) els[name] = matrix_json(x);
    j["elements"] = els;
  }
  return j.dump(2) + "\n";
}

}  // namespace vnspec
