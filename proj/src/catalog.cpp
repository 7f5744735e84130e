#include "g2hom/catalog.hpp"

#include <fnmatch.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <mutex>
#include <regex>
#include <set>
#include <sstream>
#include <thread>

namespace g2hom {

std::string source_name(CaseSource s) {
  switch (s) {
    case CaseSource::MatrixBasis: return "matrix-basis";
    case CaseSource::StructureConstants: return "structure-constants";
    case CaseSource::PartialHomogeneous: return "partial-homogeneous";
  }
  return "?";
}

std::string status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::Match: return "match";
    case CheckStatus::SpanMatch: return "span-match";
    case CheckStatus::Mismatch: return "mismatch";
    case CheckStatus::Skipped: return "skipped";
  }
  return "?";
}

int CaseRecord::form_dimension() const {
  int m = source == CaseSource::PartialHomogeneous ? dimension : static_cast<int>(m_indices.size());
  return m + (adjoin_central_line ? 1 : 0);
}

const ReferenceForm* CaseRecord::reference_form(const std::string& name) const {
  for (const auto& f : reference_forms)
    if (f.name == name) return &f;
  return nullptr;
}

// ---------------------------------------------------------------- canonical JSON

namespace {

bool is_scalar(const Json& j) { return !j.is_array() && !j.is_object(); }

bool inline_array(const Json& a) {
  for (const auto& x : a) {
    if (is_scalar(x)) continue;
    if (x.is_array() && x.size() == 2 && is_scalar(x[0]) && is_scalar(x[1])) continue;
    return false;
  }
  return true;
}

void write(std::string& out, const Json& j, int indent) {
  const std::string pad(2 * (indent + 1), ' ');
  const std::string close(2 * indent, ' ');
  if (j.is_object()) {
    if (j.empty()) {
      out += "{}";
      return;
    }
    out += "{\n";
    bool first = true;
    for (const auto& [k, v] : j.items()) {
      if (!first) out += ",\n";
      first = false;
      out += pad + Json(k).dump() + ": ";
      write(out, v, indent + 1);
    }
    out += "\n" + close + "}";
  } else if (j.is_array()) {
    if (j.empty()) {
      out += "[]";
      return;
    }
    if (inline_array(j)) {
      out += "[";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ", ";
        write(out, j[i], indent + 1);
      }
      out += "]";
      return;
    }
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) out += ",\n";
      out += pad;
      write(out, j[i], indent + 1);
    }
    out += "\n" + close + "]";
  } else {
    out += j.dump();
  }
}

}  // namespace

std::string write_canonical(const Json& j) {
  std::string out;
  write(out, j, 0);
  return out + "\n";
}

// ---------------------------------------------------------------- loading

namespace {

const std::regex kIdentifier("^[A-Za-z_][A-Za-z0-9_]*$");
const std::regex kCaseId("^[A-Za-z0-9_.+-]+$");

class Reader {
 public:
  Reader(std::string origin) : origin_(std::move(origin)) {}

  [[noreturn]] void fail(const std::string& path, const std::string& what) const {
    throw ValidationError(origin_ + ": field '" + path + "': " + what);
  }
  [[noreturn]] void parse_fail(const std::string& path, const std::string& what) const {
    throw ParseError(origin_ + ": field '" + path + "': " + what);
  }

  const Json& object(const Json& j, const std::string& path) const {
    if (!j.is_object()) fail(path, "expected an object");
    return j;
  }
  const Json& array(const Json& j, const std::string& path) const {
    if (!j.is_array()) fail(path, "expected an array");
    return j;
  }
  std::string string(const Json& j, const std::string& path) const {
    if (!j.is_string()) fail(path, "expected a string");
    return j.get<std::string>();
  }
  int integer(const Json& j, const std::string& path, int lo, int hi) const {
    if (!j.is_number_integer()) fail(path, "expected an integer");
    auto v = j.get<long long>();
    if (v < lo || v > hi) fail(path, "value " + std::to_string(v) + " outside [" + std::to_string(lo) + ", " +
                                         std::to_string(hi) + "]");
    return static_cast<int>(v);
  }
  bool boolean(const Json& j, const std::string& path) const {
    if (!j.is_boolean()) fail(path, "expected true or false");
    return j.get<bool>();
  }
  std::string identifier(const Json& j, const std::string& path) const {
    std::string s = string(j, path);
    if (!std::regex_match(s, kIdentifier)) fail(path, "'" + s + "' is not an identifier");
    return s;
  }
  Rational rational(const Json& j, const std::string& path) const {
    std::string s = string(j, path);
    try {
      return Rational::parse(s);
    } catch (const Error& e) {
      parse_fail(path, e.what());
    }
  }
  Poly poly(const Json& j, const std::string& path, const ContextPtr& ctx) const {
    std::string s = string(j, path);
    try {
      return Poly::parse(s, ctx);
    } catch (const Error& e) {
      parse_fail(path, e.what());
    }
  }
  void only(const Json& obj, std::initializer_list<const char*> keys, const std::string& path) const {
    for (const auto& [k, v] : obj.items()) {
      (void)v;
      if (std::none_of(keys.begin(), keys.end(), [&](const char* x) { return k == x; }))
        fail(path.empty() ? k : path + "." + k, "unknown field");
    }
  }
  const Json& required(const Json& obj, const char* key, const std::string& path) const {
    auto it = obj.find(key);
    if (it == obj.end()) fail(path.empty() ? key : path + "." + key, "missing");
    return *it;
  }

 private:
  std::string origin_;
};

std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

PolyMatrix read_matrix(const Reader& rd, const Json& j, const std::string& path, int size, const ContextPtr& ctx,
                       bool complex_ok, PolyMatrix* imag) {
  rd.array(j, path);
  if (static_cast<int>(j.size()) != size && size >= 0)
    rd.fail(path, "expected " + std::to_string(size) + " rows, found " + std::to_string(j.size()));
  const std::size_t n = j.size();
  PolyMatrix re(n, n, Poly(ctx));
  if (imag) *imag = PolyMatrix(n, n, Poly(ctx));
  for (std::size_t r = 0; r < n; ++r) {
    const auto& row = rd.array(j[r], at(path, r));
    if (row.size() != n) rd.fail(at(path, r), "matrix is not square");
    for (std::size_t c = 0; c < n; ++c) {
      std::string p = at(at(path, r), c);
      const auto& e = row[c];
      if (e.is_array()) {
        if (!complex_ok) rd.fail(p, "complex entry in a real matrix");
        if (e.size() != 2) rd.fail(p, "complex entries are [re, im] pairs");
        re(r, c) = rd.poly(e[0], p + "[0]", ctx);
        (*imag)(r, c) = rd.poly(e[1], p + "[1]", ctx);
      } else {
        re(r, c) = rd.poly(e, p, ctx);
      }
    }
  }
  return re;
}

std::vector<StructureConstant> read_triples(const Reader& rd, const Json& j, const std::string& path, int dim,
                                            const ContextPtr& ctx) {
  rd.array(j, path);
  std::vector<StructureConstant> out;
  std::map<std::tuple<int, int, int>, Poly> seen;
  for (std::size_t t = 0; t < j.size(); ++t) {
    std::string p = at(path, t);
    const auto& e = rd.array(j[t], p);
    if (e.size() != 4) rd.fail(p, "expected [i, j, k, \"value\"]");
    int i = rd.integer(e[0], p + "[0]", 1, dim);
    int jj = rd.integer(e[1], p + "[1]", 1, dim);
    int k = rd.integer(e[2], p + "[2]", 1, dim);
    if (i == jj) rd.fail(p, "bracket of a basis element with itself");
    Poly c = rd.poly(e[3], p + "[3]", ctx);
    Poly oriented = i < jj ? c : -c;
    auto key = std::make_tuple(std::min(i, jj), std::max(i, jj), k);
    auto it = seen.find(key);
    if (it != seen.end()) {
      if (!(it->second == oriented)) rd.fail(p, "conflicts with an earlier entry for the same bracket (not antisymmetric)");
      continue;
    }
    seen.emplace(key, oriented);
    out.push_back({std::get<0>(key), std::get<1>(key), k, oriented});
  }
  return out;
}

std::vector<int> read_indices(const Reader& rd, const Json& j, const std::string& path, int dim) {
  rd.array(j, path);
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(rd.integer(j[i], at(path, i), 1, dim));
  return out;
}

ExpectedCheck read_check(const Reader& rd, const Json& j, const std::string& path) {
  static const std::set<std::string> kinds = {
      "jacobi",   "bracket",     "invariant_dim", "invariant_span", "closed_dim", "closed_span",
      "closed_within", "closed_forces_zero", "d_eval", "b_entry", "b_matrix", "d_squared",
      "verdict",  "g2_torsion",  "contract",      "product",        "hitchin",    "su3"};
  rd.object(j, path);
  rd.only(j, {"check", "args", "value", "cite"}, path);
  ExpectedCheck c;
  c.check = rd.string(rd.required(j, "check", path), path + ".check");
  if (!kinds.count(c.check)) rd.fail(path + ".check", "unknown check '" + c.check + "'");
  c.args = rd.object(rd.required(j, "args", path), path + ".args");
  c.value = rd.required(j, "value", path);
  c.cite = rd.string(rd.required(j, "cite", path), path + ".cite");
  if (c.cite.empty()) rd.fail(path + ".cite", "every expected value needs a citation");
  return c;
}

std::set<std::string> used_symbols(const Poly& p) {
  std::set<std::string> out;
  for (const auto& [e, c] : p.terms()) {
    (void)c;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i]) out.insert(p.context()->name(i));
  }
  return out;
}

}  // namespace

CaseRecord parse_case(const std::string& text, const std::string& origin) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(origin + ": " + e.what());
  }
  Reader rd(origin);
  rd.object(doc, "<root>");
  rd.only(doc,
          {"id", "description", "source", "dimension", "basis_names", "parameters", "quotients", "matrix_field",
           "matrices", "structure_constants", "homogeneous", "h_indices", "m_indices", "adjoin_central_line",
           "reference", "cross_checks", "expected"},
          "");
  CaseRecord rec;
  rec.document = doc;
  rec.id = rd.string(rd.required(doc, "id", ""), "id");
  if (!std::regex_match(rec.id, kCaseId)) rd.fail("id", "'" + rec.id + "' is not a valid case id");
  Reader r(origin + " (" + rec.id + ")");
  rec.description = r.string(r.required(doc, "description", ""), "description");
  std::string src = r.string(r.required(doc, "source", ""), "source");
  if (src == "matrix-basis")
    rec.source = CaseSource::MatrixBasis;
  else if (src == "structure-constants")
    rec.source = CaseSource::StructureConstants;
  else if (src == "partial-homogeneous")
    rec.source = CaseSource::PartialHomogeneous;
  else
    r.fail("source", "unknown source '" + src + "'");
  rec.dimension = r.integer(r.required(doc, "dimension", ""), "dimension", 0, 64);
  const auto& names = r.array(r.required(doc, "basis_names", ""), "basis_names");
  std::set<std::string> name_set;
  for (std::size_t i = 0; i < names.size(); ++i) {
    rec.basis_names.push_back(r.identifier(names[i], at("basis_names", i)));
    if (!name_set.insert(rec.basis_names.back()).second) r.fail(at("basis_names", i), "duplicate name");
  }
  if (static_cast<int>(rec.basis_names.size()) != rec.dimension)
    r.fail("basis_names", std::to_string(rec.basis_names.size()) + " names for dimension " +
                              std::to_string(rec.dimension));

  // Symbols: parameters, then quotients.
  std::vector<std::string> symbols;
  if (doc.contains("parameters")) {
    const auto& ps = r.object(doc["parameters"], "parameters");
    for (const auto& [k, v] : ps.items()) {
      if (!std::regex_match(k, kIdentifier)) r.fail("parameters." + k, "not an identifier");
      rec.parameters.emplace_back(k, r.rational(v, "parameters." + k));
      symbols.push_back(k);
    }
  }
  std::vector<std::pair<std::string, const Json*>> quotient_docs;
  if (doc.contains("quotients")) {
    const auto& qs = r.object(doc["quotients"], "quotients");
    for (const auto& [k, v] : qs.items()) {
      if (!std::regex_match(k, kIdentifier)) r.fail("quotients." + k, "not an identifier");
      if (std::find(symbols.begin(), symbols.end(), k) != symbols.end())
        r.fail("quotients." + k, "name already used by a parameter");
      symbols.push_back(k);
      quotient_docs.emplace_back(k, &v);
    }
  }
  rec.context = make_context(symbols);
  for (const auto& [k, v] : quotient_docs) {
    std::string p = "quotients." + k;
    r.object(*v, p);
    r.only(*v, {"numerator", "denominator"}, p);
    Quotient q{k, r.poly(r.required(*v, "numerator", p), p + ".numerator", rec.context),
               r.poly(r.required(*v, "denominator", p), p + ".denominator", rec.context)};
    if (q.denominator.is_zero()) r.fail(p + ".denominator", "identically zero");
    for (const auto& s : used_symbols(q.numerator + q.denominator))
      if (std::none_of(rec.parameters.begin(), rec.parameters.end(), [&](const auto& x) { return x.first == s; }))
        r.fail(p, "quotients may only use parameters, found '" + s + "'");
    rec.quotients.push_back(std::move(q));
  }

  // Payload.
  auto forbid = [&](const char* key) {
    if (doc.contains(key)) r.fail(key, "not allowed for source '" + src + "'");
  };
  if (rec.source == CaseSource::MatrixBasis) {
    forbid("homogeneous");
    std::string field = r.string(r.required(doc, "matrix_field", ""), "matrix_field");
    if (field != "real" && field != "complex") r.fail("matrix_field", "expected 'real' or 'complex'");
    rec.complex_field = field == "complex";
    const auto& ms = r.array(r.required(doc, "matrices", ""), "matrices");
    if (static_cast<int>(ms.size()) != rec.dimension)
      r.fail("matrices", std::to_string(ms.size()) + " matrices for dimension " + std::to_string(rec.dimension));
    int size = -1;
    for (std::size_t i = 0; i < ms.size(); ++i) {
      PolyMatrix im;
      PolyMatrix re = read_matrix(r, ms[i], at("matrices", i), size, rec.context, rec.complex_field, &im);
      size = static_cast<int>(re.rows());
      rec.matrices.emplace_back(std::move(re), std::move(im));
    }
    if (doc.contains("structure_constants"))
      rec.structure_constants = read_triples(r, doc["structure_constants"], "structure_constants", rec.dimension,
                                             rec.context);
  } else if (rec.source == CaseSource::StructureConstants) {
    forbid("homogeneous");
    forbid("matrices");
    forbid("matrix_field");
    rec.structure_constants = read_triples(r, r.required(doc, "structure_constants", ""), "structure_constants",
                                           rec.dimension, rec.context);
  } else {
    forbid("matrices");
    forbid("matrix_field");
    forbid("structure_constants");
    forbid("h_indices");
    forbid("m_indices");
    const auto& h = r.object(r.required(doc, "homogeneous", ""), "homogeneous");
    r.only(h, {"isotropy_action", "projected_bracket"}, "homogeneous");
    const auto& iso = r.array(r.required(h, "isotropy_action", "homogeneous"), "homogeneous.isotropy_action");
    for (std::size_t i = 0; i < iso.size(); ++i)
      rec.isotropy.push_back(
          read_matrix(r, iso[i], at("homogeneous.isotropy_action", i), rec.dimension, rec.context, false, nullptr));
    rec.projected_bracket = read_triples(r, r.required(h, "projected_bracket", "homogeneous"),
                                         "homogeneous.projected_bracket", rec.dimension, rec.context);
  }
  if (rec.source != CaseSource::PartialHomogeneous) {
    rec.h_indices = read_indices(r, r.required(doc, "h_indices", ""), "h_indices", rec.dimension);
    rec.m_indices = read_indices(r, r.required(doc, "m_indices", ""), "m_indices", rec.dimension);
  }
  if (doc.contains("adjoin_central_line"))
    rec.adjoin_central_line = r.boolean(doc["adjoin_central_line"], "adjoin_central_line");

  // Reference forms.
  if (doc.contains("reference")) {
    const auto& ref = r.object(doc["reference"], "reference");
    r.only(ref, {"symbols", "forms"}, "reference");
    const auto& syms = r.array(r.required(ref, "symbols", "reference"), "reference.symbols");
    for (std::size_t i = 0; i < syms.size(); ++i) {
      std::string s = r.identifier(syms[i], at("reference.symbols", i));
      if (std::find(symbols.begin(), symbols.end(), s) != symbols.end())
        r.fail(at("reference.symbols", i), "'" + s + "' clashes with a parameter or quotient");
      if (std::find(rec.reference_symbols.begin(), rec.reference_symbols.end(), s) != rec.reference_symbols.end())
        r.fail(at("reference.symbols", i), "duplicate symbol");
      rec.reference_symbols.push_back(s);
    }
    ContextPtr ref_ctx = make_context(rec.reference_symbols);
    const auto& forms = r.object(r.required(ref, "forms", "reference"), "reference.forms");
    for (const auto& [name, f] : forms.items()) {
      std::string p = "reference.forms." + name;
      r.object(f, p);
      r.only(f, {"dimension", "degree", "value"}, p);
      ReferenceForm rf;
      rf.name = name;
      rf.dimension = f.contains("dimension") ? r.integer(f["dimension"], p + ".dimension", 0, 64) : rec.form_dimension();
      rf.degree = r.integer(r.required(f, "degree", p), p + ".degree", 0, rf.dimension);
      rf.value = r.string(r.required(f, "value", p), p + ".value");
      try {
        AltForm::parse(rf.value, rf.dimension, rf.degree, ref_ctx);
      } catch (const Error& e) {
        r.parse_fail(p + ".value", e.what());
      }
      rec.reference_forms.push_back(std::move(rf));
    }
  }

  const auto& exp = r.array(r.required(doc, "expected", ""), "expected");
  for (std::size_t i = 0; i < exp.size(); ++i) rec.expected.push_back(read_check(r, exp[i], at("expected", i)));
  if (doc.contains("cross_checks")) {
    const auto& cc = r.array(doc["cross_checks"], "cross_checks");
    for (std::size_t i = 0; i < cc.size(); ++i) {
      std::string p = at("cross_checks", i);
      r.object(cc[i], p);
      r.only(cc[i], {"label", "parameters", "checks"}, p);
      CrossCheck x;
      x.label = r.string(r.required(cc[i], "label", p), p + ".label");
      const auto& ps = r.object(r.required(cc[i], "parameters", p), p + ".parameters");
      for (const auto& [k, v] : ps.items()) {
        if (std::none_of(rec.parameters.begin(), rec.parameters.end(), [&](const auto& y) { return y.first == k; }))
          r.fail(p + ".parameters." + k, "not a declared parameter");
        x.parameters.emplace(k, r.rational(v, p + ".parameters." + k));
      }
      const auto& checks = r.array(r.required(cc[i], "checks", p), p + ".checks");
      for (std::size_t c = 0; c < checks.size(); ++c) x.checks.push_back(read_check(r, checks[c], at(p + ".checks", c)));
      rec.cross_checks.push_back(std::move(x));
    }
  }

  // Mathematical validation at the default instantiation.
  CaseInstance inst = instantiate(rec);
  if (inst.algebra) {
    auto bad = jacobi_check(*inst.algebra);
    if (!bad.empty()) {
      const auto& v = bad.front();
      std::string sum;
      for (std::size_t k = 0; k < v.cyclic_sum.dim(); ++k)
        if (!v.cyclic_sum[k].is_zero()) sum += (sum.empty() ? "" : ", ") + rec.basis_names[k] + ": " + v.cyclic_sum[k].str();
      throw ValidationError(origin + " (" + rec.id + "): Jacobi identity fails for (" + rec.basis_names[v.i - 1] + ", " +
                            rec.basis_names[v.j - 1] + ", " + rec.basis_names[v.k - 1] + "), cyclic sum " + sum +
                            (bad.size() > 1 ? " (and " + std::to_string(bad.size() - 1) + " more)" : ""));
    }
  }
  if (rec.source == CaseSource::MatrixBasis && !rec.structure_constants.empty()) {
    // Frozen constants must agree with the matrices at the default instantiation.
    std::map<std::string, Rational> assign;
    for (const auto& [k, v] : rec.parameters) assign[k] = v;
    LieAlgebra frozen(rec.dimension, rec.basis_names);
    for (const auto& c : rec.structure_constants)
      frozen.add_constant(c.i, c.j, c.k, Poly(empty_context(), c.value.evaluate(assign).constant_value()));
    for (int i = 1; i <= rec.dimension; ++i)
      for (int j = i + 1; j <= rec.dimension; ++j)
        if (!(frozen.bracket_basis(i, j) == inst.algebra->bracket_basis(i, j)))
          throw ValidationError(origin + " (" + rec.id + "): stored structure constants disagree with the matrices at [" +
                                rec.basis_names[i - 1] + "," + rec.basis_names[j - 1] + "]");
  }
  return rec;
}

CaseRecord load_case(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_case(ss.str(), path.string());
}

namespace {

struct Bundle {
  std::vector<CaseRecord> records;
  std::string error;
};

const Bundle& bundle() {
  static const Bundle b = [] {
    Bundle out;
    try {
      for (const auto& e : detail::embedded_cases()) out.records.push_back(parse_case(e.text, e.name));
      std::sort(out.records.begin(), out.records.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    } catch (const Error& e) {
      out.error = e.what();
    }
    return out;
  }();
  if (!b.error.empty()) throw ValidationError("bundled catalog is invalid: " + b.error);
  return b;
}

}  // namespace

std::vector<std::string> bundled_case_ids() {
  std::vector<std::string> ids;
  for (const auto& r : bundle().records) ids.push_back(r.id);
  return ids;
}

const CaseRecord& bundled_case(const std::string& id) {
  for (const auto& r : bundle().records)
    if (r.id == id) return r;
  throw UnknownCase("unknown case id '" + id + "'");
}

const char* case_schema() { return detail::kCaseSchema; }

// ---------------------------------------------------------------- instantiation

CaseInstance instantiate(const CaseRecord& rec, const std::map<std::string, Rational>& overrides,
                         const std::vector<std::string>& keep) {
  auto declared = [&](const std::string& s) {
    return std::any_of(rec.parameters.begin(), rec.parameters.end(), [&](const auto& p) { return p.first == s; });
  };
  for (const auto& [k, v] : overrides) {
    (void)v;
    if (!declared(k)) throw ValidationError(rec.id + ": '" + k + "' is not a parameter of this case");
  }
  for (const auto& k : keep)
    if (!declared(k)) throw ValidationError(rec.id + ": cannot keep '" + k + "' symbolic, it is not a parameter");
  std::set<std::string> kept(keep.begin(), keep.end());
  std::map<std::string, Rational> assign;
  for (const auto& [k, v] : rec.parameters) {
    if (kept.count(k)) continue;
    auto it = overrides.find(k);
    assign[k] = it == overrides.end() ? v : it->second;
  }
  std::vector<std::string> remaining;
  for (const auto& [k, v] : rec.parameters) {
    (void)v;
    if (kept.count(k)) remaining.push_back(k);
  }
  for (const auto& q : rec.quotients) {
    auto uses = used_symbols(q.numerator + q.denominator);
    if (std::any_of(uses.begin(), uses.end(), [&](const auto& s) { return kept.count(s) > 0; })) {
      remaining.push_back(q.name);
      continue;
    }
    Rational den = q.denominator.evaluate(assign).constant_value();
    if (den.is_zero()) throw ValidationError(rec.id + ": denominator of '" + q.name + "' vanishes at this instantiation");
    assign[q.name] = q.numerator.evaluate(assign).constant_value() / den;
  }
  ContextPtr ctx = make_context(remaining);
  auto eval = [&](const Poly& p) { return p.evaluate(assign).lift(ctx); };

  CaseInstance out{std::nullopt, HomogeneousSpaceData(0, {}), HomogeneousSpaceData(0, {})};
  if (rec.source == CaseSource::MatrixBasis) {
    if (!remaining.empty())
      throw ValidationError(rec.id + ": matrix bases need every parameter instantiated (" + ctx->describe() + " left)");
    std::vector<QMatrix> mats;
    for (const auto& [re, im] : rec.matrices) {
      QMatrix qr(re.rows(), re.cols()), qi(re.rows(), re.cols());
      for (std::size_t i = 0; i < re.rows(); ++i)
        for (std::size_t j = 0; j < re.cols(); ++j) {
          qr(i, j) = re(i, j).evaluate(assign).constant_value();
          if (rec.complex_field) qi(i, j) = im(i, j).evaluate(assign).constant_value();
        }
      mats.push_back(rec.complex_field ? realify(ComplexMatrix{qr, qi}) : qr);
    }
    out.algebra = LieAlgebra::from_matrices(mats, rec.basis_names);
  } else if (rec.source == CaseSource::StructureConstants) {
    LieAlgebra l(rec.dimension, rec.basis_names, ctx);
    for (const auto& c : rec.structure_constants) l.add_constant(c.i, c.j, c.k, eval(c.value));
    out.algebra = std::move(l);
  }
  if (out.algebra) {
    out.base = reductive_split(*out.algebra, rec.h_indices, rec.m_indices);
  } else {
    std::vector<PolyMatrix> iso;
    for (const auto& a : rec.isotropy) {
      PolyMatrix m(a.rows(), a.cols(), Poly(ctx));
      for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = eval(a(i, j));
      iso.push_back(std::move(m));
    }
    std::map<std::pair<int, int>, Vector> br;
    for (const auto& c : rec.projected_bracket) {
      auto it = br.try_emplace({c.i, c.j}, Vector(rec.dimension, ctx)).first;
      it->second.set(c.k - 1, it->second[c.k - 1] + eval(c.value));
    }
    std::vector<PartialBracket> pb;
    for (auto& [ij, v] : br) pb.push_back({ij.first, ij.second, v});
    out.base = homogeneous_from_partial(rec.dimension, rec.basis_names, std::move(iso), pb, ctx);
  }
  if (rec.adjoin_central_line) {
    std::string name = "e" + std::to_string(out.base.dim() + 1);
    const auto& ns = out.base.names();
    if (std::find(ns.begin(), ns.end(), name) != ns.end()) name = "t";
    out.space = with_central_line(out.base, name);
  } else {
    out.space = out.base;
  }
  return out;
}

// ---------------------------------------------------------------- checks

namespace {

std::string vector_str(const Vector& v, const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t k = 0; k < v.dim(); ++k) {
    const Poly& c = v[k];
    if (c.is_zero()) continue;
    std::string cs = c.str();
    bool multi = c.terms().size() > 1;
    bool neg = !multi && cs[0] == '-';
    std::string body = multi ? "(" + cs + ")" : (neg ? cs.substr(1) : cs);
    std::string term = body == "1" ? names[k] : body + "*" + names[k];
    if (out.empty())
      out = (neg ? "-" : "") + term;
    else
      out += (neg ? " - " : " + ") + term;
  }
  return out.empty() ? "0" : out;
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

std::string forms_str(const std::vector<AltForm>& fs) {
  std::vector<std::string> s;
  for (const auto& f : fs) s.push_back(f.str());
  return "{" + join(s, "; ") + "}";
}

bool all_rational(const AltForm& f) {
  return std::all_of(f.terms().begin(), f.terms().end(), [](const auto& t) { return t.second.is_constant(); });
}

Json su3_json(const SU3Report& r) {
  auto opt = [](const std::optional<bool>& b) { return b ? Json(*b) : Json(nullptr); };
  Json j = Json::object();
  j["nondegenerate"] = r.nondegenerate;
  j["stable"] = r.stable;
  j["compatible"] = opt(r.compatible);
  j["tamed"] = opt(r.tamed);
  j["d_omega_zero"] = opt(r.d_omega_zero);
  j["d_psi_zero"] = opt(r.d_psi_zero);
  j["d_star_psi_zero"] = opt(r.d_star_psi_zero);
  j["symplectic_half_flat"] = r.symplectic_half_flat();
  j["strict"] = r.strict();
  return j;
}

class Env {
 public:
  Env(const CaseRecord& rec, std::map<std::string, Rational> overrides)
      : rec_(rec), overrides_(std::move(overrides)), inst_(instantiate(rec, overrides_)),
        ref_ctx_(make_context(rec.reference_symbols)) {}

  const CaseRecord& rec() const { return rec_; }
  const CaseInstance& inst() const { return inst_; }
  const ContextPtr& ref_ctx() const { return ref_ctx_; }

  const HomogeneousSpaceData& space_for(int dim) const {
    if (inst_.space.dim() == dim) return inst_.space;
    if (inst_.base.dim() == dim) return inst_.base;
    throw DimensionMismatch("no homogeneous data of dimension " + std::to_string(dim) + " in case " + rec_.id);
  }

  const InvariantFormSpace& invariants(int k) {
    auto it = inv_.find(k);
    if (it == inv_.end()) it = inv_.emplace(k, invariant_forms(inst_.space, k)).first;
    return it->second;
  }
  const ClosedFamily& closed(int k) {
    auto it = closed_.find(k);
    if (it == closed_.end()) it = closed_.emplace(k, closed_forms(inst_.space, k)).first;
    return it->second;
  }
  const DefinitenessReport& family_certificate() {
    if (!cert_) {
      if (inst_.space.dim() != 7) throw DimensionMismatch("definiteness needs a 7-dimensional m");
      cert_ = obstruction_certificate(closed(3));
    }
    return *cert_;
  }

  AltForm form(const std::string& name) const {
    const ReferenceForm* f = rec_.reference_form(name);
    if (!f) throw ValidationError("case " + rec_.id + " has no reference form '" + name + "'");
    return AltForm::parse(f->value, f->dimension, f->degree, ref_ctx_);
  }

 private:
  const CaseRecord& rec_;
  std::map<std::string, Rational> overrides_;
  CaseInstance inst_;
  ContextPtr ref_ctx_;
  std::map<int, InvariantFormSpace> inv_;
  std::map<int, ClosedFamily> closed_;
  std::optional<DefinitenessReport> cert_;
};

int arg_int(const Json& args, const char* key, int fallback) {
  auto it = args.find(key);
  if (it == args.end()) return fallback;
  if (!it->is_number_integer()) throw ValidationError(std::string("argument '") + key + "' must be an integer");
  return it->get<int>();
}

std::string arg_str(const Json& args, const char* key) {
  auto it = args.find(key);
  if (it == args.end() || !it->is_string()) throw ValidationError(std::string("argument '") + key + "' must be a string");
  return it->get<std::string>();
}

std::string value_str(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void compare_json(CheckResult& r, const Json& computed, const Json& expected) {
  r.computed = value_str(computed);
  r.expected = value_str(expected);
  r.status = computed == expected ? CheckStatus::Match : CheckStatus::Mismatch;
}

void compare_poly(CheckResult& r, const Poly& computed, const Json& expected) {
  r.computed = computed.str();
  r.expected = value_str(expected);
  Poly e = Poly::parse(expected.get<std::string>(), computed.context());
  r.expected = e.str();
  r.status = e == computed ? CheckStatus::Match : CheckStatus::Mismatch;
}

void compare_form(CheckResult& r, const AltForm& computed, const Json& expected) {
  r.computed = computed.str();
  AltForm e = AltForm::parse(expected.get<std::string>(), computed.dim(), computed.degree(), computed.context());
  r.expected = e.str();
  r.status = e == computed ? CheckStatus::Match : CheckStatus::Mismatch;
}

std::vector<AltForm> parse_forms(const Json& v, int dim, int degree) {
  if (!v.is_array()) throw ValidationError("expected a list of forms");
  std::vector<AltForm> out;
  for (const auto& s : v) out.push_back(AltForm::parse(s.get<std::string>(), dim, degree, empty_context()));
  return out;
}

std::string index_label(const HomogeneousSpaceData& h, const std::vector<int>& idx) {
  std::vector<std::string> s;
  for (int i : idx) s.push_back(i >= 1 && i <= h.dim() ? h.names()[i - 1] : "?");
  return join(s, ",");
}

/// Symbols of the reference context forced to vanish by d(phi) = 0.
std::vector<std::string> forced_zero(const AltForm& dphi, const ContextPtr& ref) {
  const std::size_t r = ref->size();
  QMatrix m(0, r);
  for (const auto& [idx, c] : dphi.terms()) {
    (void)idx;
    QVector row(r);
    Poly lifted = c.lift(merge_contexts(ref, c.context()));
    for (const auto& [e, coef] : lifted.terms()) {
      std::size_t hot = r, deg = 0;
      for (std::size_t s = 0; s < e.size(); ++s) {
        deg += e[s];
        if (e[s]) hot = s;
      }
      if (deg != 1 || hot >= r) throw ValidationError("d of the reference form is not linear in its symbols: " + c.str());
      row[hot] += coef;
    }
    m.append_row(row);
  }
  auto kernel = nullspace(m);
  std::vector<std::string> out;
  for (std::size_t s = 0; s < r; ++s)
    if (std::all_of(kernel.begin(), kernel.end(), [&](const QVector& v) { return v[s].is_zero(); }))
      out.push_back(ref->name(s));
  return out;
}

void require_invariant(const HomogeneousSpaceData& h, const AltForm& f) {
  auto iso = h.rational_isotropy();
  for (const auto& comp : linear_components(f))
    for (const auto& a : iso) {
      PolyMatrix pa(a.rows(), a.cols());
      for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) pa(i, j) = Poly(empty_context(), a(i, j));
      if (!isotropy_action(pa, comp).is_zero())
        throw ValidationError("reference form is not invariant (component " + comp.str() + ")");
    }
}

void run(Env& env, const ExpectedCheck& x, CheckResult& r) {
  const Json& args = x.args;
  const Json& val = x.value;
  const auto& inst = env.inst();
  const std::string& c = x.check;

  if (c == "jacobi") {
    r.label = "Jacobi identity";
    if (!inst.algebra) {
      r.status = CheckStatus::Skipped;
      r.note = "partial data carries no full bracket";
      r.expected = value_str(val);
      return;
    }
    compare_json(r, Json(jacobi_check(*inst.algebra).empty()), val);
  } else if (c == "bracket") {
    int i = arg_int(args, "i", 0), j = arg_int(args, "j", 0);
    if (!inst.algebra) throw ValidationError("bracket checks need a full algebra");
    const auto& l = *inst.algebra;
    if (i < 1 || j < 1 || i > l.dim() || j > l.dim()) throw ValidationError("bracket index out of range");
    r.label = "[" + l.names()[i - 1] + "," + l.names()[j - 1] + "]";
    Vector got = l.bracket_basis(i, j);
    Vector want(l.dim(), l.context());
    for (const auto& e : val) {
      int k = e.at(0).get<int>();
      if (k < 1 || k > l.dim()) throw ValidationError("bracket component out of range");
      want.set(k - 1, want[k - 1] + Poly::parse(e.at(1).get<std::string>(), l.context()));
    }
    r.computed = vector_str(got, l.names());
    r.expected = vector_str(want, l.names());
    r.status = got == want ? CheckStatus::Match : CheckStatus::Mismatch;
  } else if (c == "invariant_dim") {
    int k = arg_int(args, "degree", 3);
    r.label = "dim invariant " + std::to_string(k) + "-forms";
    compare_json(r, Json(env.invariants(k).basis.size()), val);
  } else if (c == "invariant_span") {
    int k = arg_int(args, "degree", 3);
    r.label = "invariant " + std::to_string(k) + "-forms";
    const auto& basis = env.invariants(k).basis;
    auto want = parse_forms(val, inst.space.dim(), k);
    r.computed = forms_str(basis);
    r.expected = forms_str(want);
    r.status = same_span(basis, want, inst.space.dim(), k) ? CheckStatus::SpanMatch : CheckStatus::Mismatch;
  } else if (c == "closed_dim") {
    int k = arg_int(args, "degree", 3);
    r.label = "dim closed invariant " + std::to_string(k) + "-forms";
    compare_json(r, Json(env.closed(k).basis.size()), val);
  } else if (c == "closed_span" || c == "closed_within") {
    int k = arg_int(args, "degree", 3);
    const auto& fam = env.closed(k);
    r.computed = fam.generic.str();
    std::vector<AltForm> want;
    if (c == "closed_span") {
      r.label = "closed invariant " + std::to_string(k) + "-forms";
      std::vector<std::string> syms = args.value("symbols", std::vector<std::string>{});
      AltForm f = AltForm::parse(val.get<std::string>(), inst.space.dim(), k, make_context(syms));
      r.expected = f.str();
      want = linear_components(f);
      r.status = same_span(fam.basis, want, inst.space.dim(), k) ? CheckStatus::SpanMatch : CheckStatus::Mismatch;
    } else {
      r.label = "closed invariant " + std::to_string(k) + "-forms lie in";
      want = parse_forms(val, inst.space.dim(), k);
      r.expected = "span" + forms_str(want);
      r.status = within_span(fam.basis, want, inst.space.dim(), k) ? CheckStatus::SpanMatch : CheckStatus::Mismatch;
    }
  } else if (c == "closed_forces_zero") {
    std::string name = arg_str(args, "form");
    AltForm phi = env.form(name);
    const auto& h = env.space_for(phi.dim());
    r.label = "d" + name + " = 0 forces";
    require_invariant(h, phi);
    auto forced = forced_zero(ce_differential(h, phi), env.ref_ctx());
    std::vector<std::string> want = val.get<std::vector<std::string>>();
    r.computed = forced.empty() ? "nothing" : join(forced, " = ") + " = 0";
    r.expected = want.empty() ? "nothing" : join(want, " = ") + " = 0";
    bool all = std::all_of(want.begin(), want.end(),
                           [&](const auto& s) { return std::find(forced.begin(), forced.end(), s) != forced.end(); });
    r.status = all ? CheckStatus::Match : CheckStatus::Mismatch;
    if (all && forced.size() > want.size()) r.note = "closedness forces further symbols to vanish";
  } else if (c == "d_eval") {
    std::string name = arg_str(args, "form");
    std::vector<int> idx = args.at("indices").get<std::vector<int>>();
    std::vector<std::string> keep = args.value("keep_symbolic", std::vector<std::string>{});
    AltForm phi = env.form(name);
    std::optional<CaseInstance> symbolic;
    if (!keep.empty()) symbolic = instantiate(env.rec(), {}, keep);
    const HomogeneousSpaceData& h =
        symbolic ? (symbolic->space.dim() == phi.dim() ? symbolic->space : symbolic->base) : env.space_for(phi.dim());
    if (h.dim() != phi.dim()) throw DimensionMismatch("form and homogeneous data differ in dimension");
    r.label = "d" + name + "(" + index_label(h, idx) + ")" + (keep.empty() ? "" : " with " + join(keep, ", ") + " symbolic");
    if (!symbolic) require_invariant(h, phi);
    AltForm d = ce_differential(h, phi);
    compare_poly(r, d.coefficient(MultiIndex(idx.begin(), idx.end())), val);
  } else if (c == "b_entry") {
    std::string name = arg_str(args, "form");
    int i = arg_int(args, "i", 0), j = arg_int(args, "j", 0);
    AltForm phi = env.form(name);
    if (phi.dim() != 7 || phi.degree() != 3) throw DimensionMismatch("B needs a 3-form on a 7-space");
    if (i < 1 || j < 1 || i > 7 || j > 7) throw ValidationError("index out of range");
    const auto& names = env.space_for(7).names();
    r.label = "B_" + name + "(" + names[i - 1] + "," + names[j - 1] + ")";
    compare_poly(r, top_coefficient(wedge(wedge(contract_basis(i, phi), contract_basis(j, phi)), phi)), val);
  } else if (c == "b_matrix") {
    std::string name = arg_str(args, "form");
    AltForm phi = env.form(name);
    r.label = "B_" + name;
    GramMatrix b = b_matrix(phi);
    Json got = Json::array(), want = Json::array();
    for (std::size_t i = 0; i < b.rows(); ++i) {
      Json row = Json::array(), wrow = Json::array();
      for (std::size_t j = 0; j < b.cols(); ++j) {
        row.push_back(b(i, j).str());
        wrow.push_back(Poly::parse(val.at(i).at(j).get<std::string>(), b(i, j).context()).str());
      }
      got.push_back(row);
      want.push_back(wrow);
    }
    compare_json(r, got, want);
  } else if (c == "d_squared") {
    int k = arg_int(args, "degree", 3);
    r.label = "d(d gamma) = 0 on invariant " + std::to_string(k) + "-forms";
    Json got;
    if (inst.space.partial()) {
      got = "refused";
      try {
        d_squared_check(inst.space, k);
      } catch (const ValidationError& e) {
        r.note = e.what();
      }
    } else {
      auto rep = d_squared_check(inst.space, k);
      got = rep.passed;
      if (!rep.passed) r.note = "witness " + rep.witnesses.front().str();
    }
    compare_json(r, got, val);
  } else if (c == "verdict") {
    DefinitenessReport rep;
    if (!args.contains("form")) {
      r.label = "closed invariant 3-forms";
      rep = env.family_certificate();
    } else {
      std::string name = arg_str(args, "form");
      AltForm phi = name == "closed" ? env.closed(3).generic : env.form(name);
      std::map<std::string, Rational> assign;
      if (args.contains("parameters"))
        for (const auto& [k, v] : args["parameters"].items()) assign[k] = Rational::parse(v.get<std::string>());
      if (!assign.empty()) phi = phi.evaluate(assign);
      r.label = name + (assign.empty() ? "" : " at given parameters");
      rep = all_rational(phi) ? definiteness(phi.lift(phi.context())) : obstruction_certificate(phi);
    }
    r.note = rep.certificate;
    compare_json(r, Json(verdict_name(rep.verdict)), val);
  } else if (c == "g2_torsion") {
    std::string name = arg_str(args, "form");
    AltForm phi = env.form(name);
    r.label = "G2 torsion of " + name;
    auto rep = g2_torsion_report(env.space_for(phi.dim()), phi);
    Json got = Json::object();
    got["definite"] = is_definite(rep.definiteness.verdict);
    got["closed"] = rep.closed;
    got["coclosed"] = rep.coclosed ? Json(*rep.coclosed) : Json(nullptr);
    compare_json(r, got, val);
  } else if (c == "contract") {
    std::string name = arg_str(args, "form");
    int i = arg_int(args, "index", 0);
    AltForm phi = env.form(name);
    if (i < 1 || i > phi.dim()) throw ValidationError("index out of range");
    r.label = "i_e" + std::to_string(i) + " " + name;
    compare_form(r, contract_basis(i, phi), val);
  } else if (c == "product") {
    AltForm omega = env.form(arg_str(args, "omega")), psi = env.form(arg_str(args, "psi"));
    r.label = "omega ^ e^7 + psi";
    compare_form(r, product_g2(omega, psi), val);
  } else if (c == "hitchin") {
    std::string name = arg_str(args, "psi");
    AltForm psi = env.form(name);
    r.label = "Hitchin invariant of " + name;
    auto h = hitchin_stability(psi);
    bool scalar = true;
    for (std::size_t i = 0; i < h.k.rows(); ++i)
      for (std::size_t j = 0; j < h.k.cols(); ++j) {
        Poly s(h.lambda.context());
        for (std::size_t l = 0; l < h.k.cols(); ++l) s += h.k(i, l) * h.k(l, j);
        scalar = scalar && s == (i == j ? h.lambda : Poly(h.lambda.context()));
      }
    Json got = Json::object();
    got["lambda"] = h.lambda.str();
    got["k_squared_scalar"] = scalar;
    Json want = val;
    if (want.contains("lambda"))
      want["lambda"] = Poly::parse(want["lambda"].get<std::string>(), h.lambda.context()).str();
    compare_json(r, got, want);
  } else if (c == "su3") {
    AltForm omega = env.form(arg_str(args, "omega")), psi = env.form(arg_str(args, "psi"));
    r.label = "SU(3) conditions";
    auto rep = su3_check(env.space_for(omega.dim()), omega, psi);
    compare_json(r, su3_json(rep), val);
  } else {
    throw ValidationError("unknown check '" + c + "'");
  }
}

CheckResult run_check(Env& env, const ExpectedCheck& x, const std::string& scope) {
  CheckResult r;
  r.scope = scope;
  r.check = x.check;
  r.args = x.args;
  r.cite = x.cite;
  r.expected = value_str(x.value);
  try {
    run(env, x, r);
  } catch (const std::exception& e) {
    r.status = CheckStatus::Mismatch;
    r.computed = "error";
    r.note = e.what();
    if (r.label.empty()) r.label = x.check;
  }
  return r;
}

}  // namespace

bool CaseReport::ok() const {
  if (!error.empty()) return false;
  return std::none_of(checks.begin(), checks.end(), [](const auto& c) { return c.status == CheckStatus::Mismatch; });
}

CaseReport verify_record(const CaseRecord& rec) {
  auto start = std::chrono::steady_clock::now();
  CaseReport rep;
  rep.id = rec.id;
  rep.description = rec.description;
  rep.source = source_name(rec.source);
  rep.partial = rec.source == CaseSource::PartialHomogeneous;
  try {
    Env env(rec, {});
    // Pipeline: invariant 3-forms, closed family, certificate.
    rep.pipeline.invariant_dim = env.invariants(3).basis.size();
    rep.pipeline.closed_dim = env.closed(3).basis.size();
    if (env.inst().space.dim() == 7) {
      const auto& cert = env.family_certificate();
      rep.pipeline.verdict = verdict_name(cert.verdict);
      rep.pipeline.certificate = cert.certificate;
    }
    for (const auto& x : rec.expected) rep.checks.push_back(run_check(env, x, ""));
    for (const auto& cc : rec.cross_checks) {
      try {
        Env other(rec, cc.parameters);
        for (const auto& x : cc.checks) rep.checks.push_back(run_check(other, x, cc.label));
      } catch (const Error& e) {
        for (const auto& x : cc.checks) {
          CheckResult r;
          r.scope = cc.label;
          r.check = r.label = x.check;
          r.args = x.args;
          r.cite = x.cite;
          r.expected = value_str(x.value);
          r.status = CheckStatus::Mismatch;
          r.computed = "error";
          r.note = e.what();
          rep.checks.push_back(std::move(r));
        }
      }
    }
  } catch (const Error& e) {
    rep.error = e.what();
  }
  rep.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

CaseReport verify_case(const std::string& id) { return verify_record(bundled_case(id)); }

std::vector<CaseReport> verify_all(const std::string& filter, unsigned threads) {
  std::vector<const CaseRecord*> todo;
  for (const auto& r : bundle().records)
    if (fnmatch(filter.c_str(), r.id.c_str(), 0) == 0) todo.push_back(&r);
  std::vector<CaseReport> out(todo.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(todo.size()));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < todo.size();) out[i] = verify_record(*todo[i]);
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;  // todo is already in id order
}

// ---------------------------------------------------------------- rendering

Json report_to_json(const CaseReport& r, bool with_timing) {
  Json j = Json::object();
  j["id"] = r.id;
  j["description"] = r.description;
  j["source"] = r.source;
  j["partial"] = r.partial;
  if (r.partial) j["partial_note"] = "partial: d∘d=0 not guaranteed by construction";
  j["status"] = !r.error.empty() ? "error" : r.ok() ? "match" : "mismatch";
  if (!r.error.empty()) j["error"] = r.error;
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json x = Json::object();
    if (!c.scope.empty()) x["scope"] = c.scope;
    x["check"] = c.check;
    x["args"] = c.args;
    x["label"] = c.label;
    x["status"] = status_name(c.status);
    x["expected"] = c.expected;
    x["computed"] = c.computed;
    x["cite"] = c.cite;
    if (!c.note.empty()) x["note"] = c.note;
    checks.push_back(std::move(x));
  }
  j["checks"] = std::move(checks);
  Json p = Json::object();
  p["invariant_3_forms"] = r.pipeline.invariant_dim ? Json(*r.pipeline.invariant_dim) : Json(nullptr);
  p["closed_3_forms"] = r.pipeline.closed_dim ? Json(*r.pipeline.closed_dim) : Json(nullptr);
  p["verdict"] = r.pipeline.verdict.empty() ? Json(nullptr) : Json(r.pipeline.verdict);
  p["certificate"] = r.pipeline.certificate.empty() ? Json(nullptr) : Json(r.pipeline.certificate);
  j["pipeline"] = std::move(p);
  if (with_timing) j["timing_ms"] = static_cast<long long>(r.timing_ms + 0.5);
  return j;
}

std::string render_text(const CaseReport& r) {
  std::ostringstream os;
  os << r.id << ": " << r.description << " [" << r.source << "]\n";
  if (r.partial) os << "  partial: d∘d=0 not guaranteed by construction\n";
  std::size_t counts[4] = {0, 0, 0, 0};
  for (const auto& c : r.checks) {
    ++counts[static_cast<int>(c.status)];
    std::string status = status_name(c.status);
    os << "  " << status << std::string(12 - status.size(), ' ');
    if (!c.scope.empty()) os << c.scope << ": ";
    bool long_value = c.check == "invariant_span" || c.check == "closed_span" || c.check == "closed_within";
    switch (c.status) {
      case CheckStatus::Match:
        os << c.label << " = " << c.computed;
        break;
      case CheckStatus::SpanMatch:
        os << c.label << (long_value && c.check != "closed_within" ? " span the reference forms"
                                                                   : " " + c.expected);
        break;
      case CheckStatus::Mismatch:
        os << c.label << ": computed " << c.computed << ", expected " << c.expected;
        break;
      case CheckStatus::Skipped:
        os << c.label << " skipped";
        break;
    }
    os << "  [ref: " << c.cite << "]\n";
    if (!c.note.empty() && (c.status != CheckStatus::Match || c.check == "verdict")) os << "              " << c.note << "\n";
  }
  if (r.pipeline.invariant_dim) {
    os << "  pipeline: " << *r.pipeline.invariant_dim << " invariant 3-forms, " << *r.pipeline.closed_dim << " closed";
    if (!r.pipeline.verdict.empty()) os << ", verdict " << r.pipeline.verdict << " (" << r.pipeline.certificate << ")";
    os << "\n";
  }
  if (!r.error.empty()) os << "  error: " << r.error << "\n";
  os << "  result: " << (r.ok() ? "OK" : "MISMATCH") << ", " << r.checks.size() << " checks (" << counts[0]
     << " match, " << counts[1] << " span-match, " << counts[2] << " mismatch, " << counts[3] << " skipped), "
     << static_cast<long long>(r.timing_ms + 0.5) << " ms\n";
  return os.str();
}

}  // namespace g2hom
