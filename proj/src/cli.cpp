#include "g2hom/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "g2hom/catalog.hpp"

namespace g2hom {

namespace {

struct Options {
  std::string case_id;
  std::string input;
  bool all = false;
  std::string filter;
  std::string format = "text";
  unsigned threads = 0;
  bool no_timing = false;
  int degree = 3;
  std::vector<std::string> sets;
  std::string form_file;
  std::string probes_file;
  std::string omega;
  std::string psi;
};

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return Json::parse(ss.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

/// Form file: {"dimension": n, "degree": k, "symbols": [...], "form": "..."}.
AltForm read_form(const std::string& path) {
  Json j = read_json_file(path);
  auto need = [&](const char* key) -> const Json& {
    if (!j.is_object() || !j.contains(key)) throw ValidationError(path + ": field '" + key + "': missing");
    return j[key];
  };
  if (!need("dimension").is_number_integer() || !need("degree").is_number_integer())
    throw ValidationError(path + ": dimension and degree must be integers");
  if (!need("form").is_string()) throw ValidationError(path + ": field 'form': expected a string");
  for (const auto& [k, v] : j.items()) {
    (void)v;
    if (k != "dimension" && k != "degree" && k != "symbols" && k != "form")
      throw ValidationError(path + ": field '" + k + "': unknown field");
  }
  std::vector<std::string> syms;
  if (j.contains("symbols")) {
    if (!j["symbols"].is_array()) throw ValidationError(path + ": field 'symbols': expected an array");
    for (const auto& s : j["symbols"]) syms.push_back(s.get<std::string>());
  }
  int n = j["dimension"].get<int>(), k = j["degree"].get<int>();
  if (n < 0 || k < 0 || k > n) throw ValidationError(path + ": degree outside [0, dimension]");
  try {
    return AltForm::parse(j["form"].get<std::string>(), n, k, make_context(syms));
  } catch (const Error& e) {
    throw ParseError(path + ": field 'form': " + e.what());
  }
}

/// Probe file: {"probes": [[c1, ..., cn], ...]} with integer or "p/q" entries.
std::vector<Vector> read_probes(const std::string& path, int dim) {
  Json j = read_json_file(path);
  if (!j.is_object() || !j.contains("probes") || !j["probes"].is_array())
    throw ValidationError(path + ": field 'probes': expected an array of vectors");
  std::vector<Vector> out;
  for (const auto& p : j["probes"]) {
    if (!p.is_array() || static_cast<int>(p.size()) != dim)
      throw ValidationError(path + ": probe vectors need " + std::to_string(dim) + " entries");
    QVector q;
    for (const auto& c : p)
      q.push_back(c.is_number_integer() ? Rational(c.get<long>()) : Rational::parse(c.get<std::string>()));
    out.push_back(Vector::from_rationals(q));
  }
  return out;
}

std::map<std::string, Rational> parse_sets(const std::vector<std::string>& sets) {
  std::map<std::string, Rational> out;
  for (const auto& s : sets) {
    auto eq = s.find('=');
    if (eq == std::string::npos) throw ValidationError("--set expects name=value, got '" + s + "'");
    out[s.substr(0, eq)] = Rational::parse(s.substr(eq + 1));
  }
  return out;
}

CaseRecord case_from(const Options& o) {
  if (!o.input.empty() && !o.case_id.empty()) throw ValidationError("give either --input or --case, not both");
  if (!o.input.empty()) return load_case(o.input);
  if (!o.case_id.empty()) return bundled_case(o.case_id);
  throw ValidationError("a case is required (--input FILE or --case ID)");
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }
std::string yes_no(const std::optional<bool>& b) { return b ? yes_no(*b) : "not checked"; }

Json forms_json(const std::vector<AltForm>& forms) {
  Json a = Json::array();
  for (const auto& f : forms) a.push_back(f.str());
  return a;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  std::vector<CaseReport> reports;
  int sources = (o.all ? 1 : 0) + (!o.case_id.empty() ? 1 : 0) + (!o.input.empty() ? 1 : 0);
  if (sources > 1) throw ValidationError("give exactly one of --case, --all, --input");
  if (!o.case_id.empty())
    reports.push_back(verify_case(o.case_id));
  else if (!o.input.empty())
    reports.push_back(verify_record(load_case(o.input)));
  else if (o.all || !o.filter.empty())
    reports = verify_all(o.filter.empty() ? "*" : o.filter, o.threads);
  else
    throw ValidationError("verify needs --case ID, --all or --input FILE");

  if (o.format == "json") {
    Json a = Json::array();
    for (const auto& r : reports) a.push_back(report_to_json(r, !o.no_timing));
    out << write_canonical(a);
  } else {
    for (std::size_t i = 0; i < reports.size(); ++i) out << (i ? "\n" : "") << render_text(reports[i]);
    if (reports.size() != 1) {
      std::size_t ok = std::count_if(reports.begin(), reports.end(), [](const auto& r) { return r.ok(); });
      out << (reports.empty() ? "" : "\n") << ok << " of " << reports.size() << " cases match\n";
    }
  }
  int code = kExitOk;
  for (const auto& r : reports) {
    if (!r.error.empty()) {
      err << "g2hom: " << r.id << ": " << r.error << "\n";
      code = kExitEngine;
    } else if (!r.ok() && code == kExitOk) {
      code = kExitMismatch;
    }
  }
  return code;
}

int cmd_invariants(const Options& o, std::ostream& out) {
  CaseRecord rec = case_from(o);
  CaseInstance inst = instantiate(rec, parse_sets(o.sets));
  if (o.degree < 0 || o.degree > inst.space.dim()) throw ValidationError("degree outside [0, dim m]");
  InvariantFormSpace inv = invariant_forms(inst.space, o.degree);
  if (o.format == "json") {
    Json j = Json::object();
    j["case"] = rec.id;
    j["degree"] = o.degree;
    j["dimension"] = inv.basis.size();
    j["basis"] = forms_json(inv.basis);
    out << write_canonical(j);
    return kExitOk;
  }
  out << "case: " << rec.id << "\ndegree: " << o.degree << "\ndimension: " << inv.basis.size() << "\nbasis:\n";
  for (const auto& f : inv.basis) out << "  " << f.str() << "\n";
  return kExitOk;
}

int cmd_closed(const Options& o, std::ostream& out) {
  CaseRecord rec = case_from(o);
  CaseInstance inst = instantiate(rec, parse_sets(o.sets));
  if (o.degree < 0 || o.degree > inst.space.dim()) throw ValidationError("degree outside [0, dim m]");
  ClosedFamily fam = closed_forms(inst.space, o.degree);
  std::optional<DefinitenessReport> cert;
  if (o.degree == 3 && inst.space.dim() == 7) cert = obstruction_certificate(fam);
  if (o.format == "json") {
    Json j = Json::object();
    j["case"] = rec.id;
    j["degree"] = o.degree;
    j["partial"] = inst.space.partial();
    j["invariant_dimension"] = fam.invariant_dim;
    j["closed_dimension"] = fam.basis.size();
    j["symbols"] = fam.symbols;
    j["family"] = fam.generic.str();
    j["basis"] = forms_json(fam.basis);
    j["verdict"] = cert ? Json(verdict_name(cert->verdict)) : Json(nullptr);
    j["certificate"] = cert ? Json(cert->certificate) : Json(nullptr);
    out << write_canonical(j);
    return kExitOk;
  }
  out << "case: " << rec.id << "\ndegree: " << o.degree << "\n";
  if (inst.space.partial()) out << "partial: d∘d=0 not guaranteed by construction\n";
  out << "invariant dimension: " << fam.invariant_dim << "\nclosed dimension: " << fam.basis.size() << "\n";
  out << "family: " << fam.generic.str() << "\n";
  if (!fam.basis.empty()) {
    out << "basis:\n";
    for (const auto& f : fam.basis) out << "  " << f.str() << "\n";
  }
  if (cert) out << "verdict: " << verdict_name(cert->verdict) << ", certificate: " << cert->certificate << "\n";
  return kExitOk;
}

int cmd_definite(const Options& o, std::ostream& out) {
  AltForm phi = read_form(o.form_file);
  if (phi.dim() != 7 || phi.degree() != 3) throw DimensionMismatch("definite needs a 3-form on a 7-space");
  std::vector<Vector> probes;
  if (!o.probes_file.empty()) probes = read_probes(o.probes_file, 7);
  bool rational = std::all_of(phi.terms().begin(), phi.terms().end(), [](const auto& t) { return t.second.is_constant(); });
  DefinitenessReport rep = rational && probes.empty() ? definiteness(phi) : obstruction_certificate(phi, probes);
  GramMatrix b = b_matrix(phi);
  if (o.format == "json") {
    Json j = Json::object();
    j["form"] = phi.str();
    j["verdict"] = verdict_name(rep.verdict);
    j["certificate"] = rep.certificate;
    Json minors = Json::array();
    for (const auto& m : rep.minors) minors.push_back(m.str());
    j["minors"] = minors;
    Json rows = Json::array();
    for (std::size_t i = 0; i < b.rows(); ++i) {
      Json row = Json::array();
      for (std::size_t c = 0; c < b.cols(); ++c) row.push_back(b(i, c).str());
      rows.push_back(row);
    }
    j["b_matrix"] = rows;
    out << write_canonical(j);
    return kExitOk;
  }
  out << verdict_name(rep.verdict) << ", certificate: " << rep.certificate << "\nB:\n";
  for (std::size_t i = 0; i < b.rows(); ++i) {
    out << " ";
    for (std::size_t c = 0; c < b.cols(); ++c) out << " " << b(i, c).str();
    out << "\n";
  }
  return kExitOk;
}

/// --omega/--psi take a form file, or the name of a reference form of the case.
AltForm form_arg(const CaseRecord& rec, const std::string& arg, int degree, int dim) {
  if (!arg.empty()) {
    if (const ReferenceForm* f = rec.reference_form(arg))
      return AltForm::parse(f->value, f->dimension, f->degree, make_context(rec.reference_symbols));
    return read_form(arg);
  }
  const ReferenceForm* pick = nullptr;
  for (const auto& f : rec.reference_forms)
    if (f.degree == degree && f.dimension == dim) {
      if (pick) throw ValidationError("case " + rec.id + " has several reference " + std::to_string(degree) +
                                      "-forms; choose one with --omega/--psi");
      pick = &f;
    }
  if (!pick) throw ValidationError("case " + rec.id + " has no reference " + std::to_string(degree) + "-form on m");
  return AltForm::parse(pick->value, pick->dimension, pick->degree, make_context(rec.reference_symbols));
}

int cmd_su3(const Options& o, std::ostream& out) {
  CaseRecord rec = case_from(o);
  CaseInstance inst = instantiate(rec, parse_sets(o.sets));
  const HomogeneousSpaceData& h = inst.base;
  if (h.dim() != 6) throw DimensionMismatch("su3 needs a 6-dimensional m");
  AltForm omega = form_arg(rec, o.omega, 2, 6), psi = form_arg(rec, o.psi, 3, 6);
  SU3Report r = su3_check(h, omega, psi);
  if (o.format == "json") {
    auto opt = [](const std::optional<bool>& b) { return b ? Json(*b) : Json(nullptr); };
    Json j = Json::object();
    j["case"] = rec.id;
    j["omega"] = omega.str();
    j["psi"] = psi.str();
    j["nondegenerate"] = r.nondegenerate;
    j["stable"] = r.stable;
    j["lambda"] = r.lambda.str();
    j["compatible"] = opt(r.compatible);
    j["tamed"] = opt(r.tamed);
    j["d_omega_zero"] = opt(r.d_omega_zero);
    j["d_psi_zero"] = opt(r.d_psi_zero);
    j["d_star_psi_zero"] = opt(r.d_star_psi_zero);
    j["su3_structure"] = r.su3_structure();
    j["symplectic_half_flat"] = r.symplectic_half_flat();
    j["strict"] = r.strict();
    out << write_canonical(j);
    return kExitOk;
  }
  out << "case: " << rec.id << "\n";
  if (inst.base.partial()) out << "partial: d∘d=0 not guaranteed by construction\n";
  out << "omega: " << omega.str() << "\npsi: " << psi.str() << "\n";
  out << "nondegenerate: " << yes_no(r.nondegenerate) << "\n";
  out << "stable: " << yes_no(r.stable) << " (lambda = " << r.lambda.str() << ")\n";
  out << "compatible: " << yes_no(r.compatible) << "\ntamed: " << yes_no(r.tamed) << "\n";
  out << "d omega = 0: " << yes_no(r.d_omega_zero) << "\nd psi = 0: " << yes_no(r.d_psi_zero) << "\n";
  out << "d*psi = 0: " << yes_no(r.d_star_psi_zero) << "\n";
  out << "SU(3)-structure: " << yes_no(r.su3_structure()) << "\n";
  out << "symplectic half-flat: " << yes_no(r.symplectic_half_flat()) << "; strict: " << yes_no(r.strict()) << "\n";
  return kExitOk;
}

int cmd_list(const Options& o, std::ostream& out) {
  if (o.format == "json") {
    Json a = Json::array();
    for (const auto& id : bundled_case_ids()) {
      Json j = Json::object();
      j["id"] = id;
      j["description"] = bundled_case(id).description;
      a.push_back(j);
    }
    out << write_canonical(a);
    return kExitOk;
  }
  for (const auto& id : bundled_case_ids()) out << id << "  " << bundled_case(id).description << "\n";
  return kExitOk;
}

int cmd_canonical(const Options& o, std::ostream& out) {
  CaseRecord rec = case_from(o);
  out << write_canonical(rec.document);
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Invariant 3-forms and G2-structures on reductive homogeneous spaces", "g2hom"};
  app.require_subcommand(1, 1);
  Options o;

  auto add_format = [&](CLI::App* c) {
    c->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  };
  auto add_case = [&](CLI::App* c) {
    c->add_option("--input", o.input, "Case file (JSON)");
    c->add_option("--case", o.case_id, "Bundled case id");
    c->add_option("--set", o.sets, "Override a parameter, name=value");
  };

  auto* verify = app.add_subcommand("verify", "Compare engine output with the expected values of cases");
  verify->add_option("--case", o.case_id, "Bundled case id");
  verify->add_flag("--all", o.all, "All bundled cases");
  verify->add_option("--input", o.input, "Case file (JSON)");
  verify->add_option("--filter", o.filter, "Glob on case ids (implies --all)");
  verify->add_option("--threads", o.threads, "Worker threads, 0 = hardware concurrency");
  verify->add_flag("--no-timing", o.no_timing, "Omit timings from JSON output");
  add_format(verify);

  auto* invariants = app.add_subcommand("invariants", "Basis of the h-invariant k-forms on m");
  add_case(invariants);
  invariants->add_option("--degree", o.degree, "Form degree")->required();
  add_format(invariants);

  auto* closed = app.add_subcommand("closed", "Closed invariant forms and the definiteness certificate");
  add_case(closed);
  closed->add_option("--degree", o.degree, "Form degree");
  add_format(closed);

  auto* definite = app.add_subcommand("definite", "Definiteness of a 3-form on R^7");
  definite->add_option("--form", o.form_file, "Form file (JSON)")->required();
  definite->add_option("--probes", o.probes_file, "Probe vectors for the obstruction search (JSON)");
  add_format(definite);

  auto* su3 = app.add_subcommand("su3", "SU(3) and symplectic half-flat conditions");
  add_case(su3);
  su3->add_option("--omega", o.omega, "Form file, or the name of a reference 2-form of the case");
  su3->add_option("--psi", o.psi, "Form file, or the name of a reference 3-form of the case");
  add_format(su3);

  auto* schema = app.add_subcommand("schema", "Print the case-file schema");
  auto* list = app.add_subcommand("list", "List bundled cases");
  add_format(list);
  auto* canonical = app.add_subcommand("canonical", "Print a case file in canonical layout");
  add_case(canonical);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    // Subcommand help arrives as CallForHelp raised inside the subcommand.
    err << "g2hom: " << e.what() << "\n";
    return kExitInput;
  }

  try {
    if (*verify) return cmd_verify(o, out, err);
    if (*invariants) return cmd_invariants(o, out);
    if (*closed) return cmd_closed(o, out);
    if (*definite) return cmd_definite(o, out);
    if (*su3) return cmd_su3(o, out);
    if (*list) return cmd_list(o, out);
    if (*canonical) return cmd_canonical(o, out);
    if (*schema) {
      out << case_schema();
      return kExitOk;
    }
  } catch (const UnknownCase& e) {
    err << "g2hom: " << e.what() << "\n";
    return kExitInput;
  } catch (const ParseError& e) {
    err << "g2hom: " << e.what() << "\n";
    return kExitInput;
  } catch (const ValidationError& e) {
    err << "g2hom: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    err << "g2hom: engine error: " << e.what() << "\n";
    return kExitEngine;
  }
  return kExitInput;
}

}  // namespace g2hom
