#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "g2hom/catalog.hpp"
#include "g2hom/cli.hpp"

namespace py = pybind11;
using namespace g2hom;

namespace {

AltForm form(const std::string& text, int dim, int degree, const std::vector<std::string>& symbols) {
  return AltForm::parse(text, dim, degree, make_context(symbols));
}

std::vector<std::string> render(const std::vector<AltForm>& forms) {
  std::vector<std::string> out;
  for (const auto& f : forms) out.push_back(f.str());
  return out;
}

std::map<std::string, Rational> assignment(const std::map<std::string, std::string>& overrides) {
  std::map<std::string, Rational> out;
  for (const auto& [k, v] : overrides) out.emplace(k, Rational::parse(v));
  return out;
}

}  // namespace

PYBIND11_MODULE(_g2hom, m) {
  // Translators run newest first, so the base class goes in first.
  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", py::make_tuple(base, py::handle(PyExc_ValueError)));
  py::register_exception<UnknownCase>(m, "UnknownCase", py::make_tuple(base, py::handle(PyExc_KeyError)));

  m.def("case_ids", &bundled_case_ids);
  m.def("case_schema", [] { return std::string(case_schema()); });

  m.def(
      "verify_json",
      [](const std::string& filter, unsigned threads) {
        std::vector<std::string> out;
        for (const auto& r : verify_all(filter, threads)) out.push_back(report_to_json(r).dump());
        return out;
      },
      py::arg("filter") = "*", py::arg("threads") = 0, py::call_guard<py::gil_scoped_release>());
  m.def(
      "verify_file_json", [](const std::string& path) { return report_to_json(verify_record(load_case(path))).dump(); },
      py::call_guard<py::gil_scoped_release>());

  m.def(
      "invariant_forms",
      [](const std::string& id, int degree, const std::map<std::string, std::string>& overrides) {
        return render(invariant_forms(instantiate(bundled_case(id), assignment(overrides)).space, degree).basis);
      },
      py::arg("case_id"), py::arg("degree"), py::arg("parameters") = std::map<std::string, std::string>{});
  m.def(
      "closed_forms",
      [](const std::string& id, int degree, const std::map<std::string, std::string>& overrides) {
        ClosedFamily f = closed_forms(instantiate(bundled_case(id), assignment(overrides)).space, degree);
        py::dict d;
        d["invariant_dim"] = f.invariant_dim;
        d["basis"] = render(f.basis);
        d["family"] = f.generic.str();
        d["symbols"] = f.symbols;
        DefinitenessReport r = obstruction_certificate(f);
        d["verdict"] = verdict_name(r.verdict);
        d["certificate"] = r.certificate;
        return d;
      },
      py::arg("case_id"), py::arg("degree") = 3, py::arg("parameters") = std::map<std::string, std::string>{});

  m.def(
      "wedge",
      [](const std::string& a, int p, const std::string& b, int q, int dim, const std::vector<std::string>& symbols) {
        return wedge(form(a, dim, p, symbols), form(b, dim, q, symbols)).str();
      },
      py::arg("a"), py::arg("p"), py::arg("b"), py::arg("q"), py::arg("dim"),
      py::arg("symbols") = std::vector<std::string>{});
  m.def(
      "b_matrix",
      [](const std::string& phi, const std::vector<std::string>& symbols) {
        GramMatrix b = b_matrix(form(phi, 7, 3, symbols));
        std::vector<std::vector<std::string>> out(b.rows());
        for (std::size_t i = 0; i < b.rows(); ++i)
          for (std::size_t j = 0; j < b.cols(); ++j) out[i].push_back(b(i, j).str());
        return out;
      },
      py::arg("phi"), py::arg("symbols") = std::vector<std::string>{});
  m.def(
      "definiteness",
      [](const std::string& phi, const std::vector<std::string>& symbols) {
        AltForm f = form(phi, 7, 3, symbols);
        DefinitenessReport r = symbols.empty() ? definiteness(f) : obstruction_certificate(f);
        return py::make_tuple(verdict_name(r.verdict), r.certificate);
      },
      py::arg("phi"), py::arg("symbols") = std::vector<std::string>{});
  m.def("hitchin_lambda", [](const std::string& psi) { return hitchin_stability(form(psi, 6, 3, {})).lambda.str(); });

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::vector<std::string> full{"g2hom"};
        full.insert(full.end(), args.begin(), args.end());
        std::vector<const char*> argv;
        for (const auto& a : full) argv.push_back(a.c_str());
        std::ostringstream out, err;
        int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
