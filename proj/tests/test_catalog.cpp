#include <doctest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "g2hom/catalog.hpp"

using namespace g2hom;

namespace {

const std::filesystem::path kData = std::filesystem::path(G2HOM_SOURCE_DIR) / "data";

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json so3_doc() {
  return Json::parse(R"j({
    "id": "so3.test",
    "description": "so(3) from structure constants",
    "source": "structure-constants",
    "dimension": 3,
    "basis_names": ["x", "y", "z"],
    "structure_constants": [[1, 2, 3, "1"], [2, 3, 1, "1"], [3, 1, 2, "1"]],
    "h_indices": [],
    "m_indices": [1, 2, 3],
    "expected": [{"check": "jacobi", "args": {}, "value": true, "cite": "so(3)"}]
  })j");
}

std::string error_of(const Json& doc) {
  try {
    parse_case(doc.dump(), "test");
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_SUITE("catalog") {
  TEST_CASE("every bundled case verifies") {
    auto reports = verify_all();
    CHECK(reports.size() == 12);
    for (const auto& r : reports) {
      CAPTURE(r.id);
      CHECK(r.ok());
      CHECK(r.error.empty());
      for (const auto& c : r.checks) {
        CAPTURE(c.label);
        CHECK((c.status == CheckStatus::Match || c.status == CheckStatus::SpanMatch ||
               (c.status == CheckStatus::Skipped && r.partial)));
        CHECK_FALSE(c.cite.empty());
      }
    }
    CHECK(verify_all("T1.*").size() == 7);
    CHECK(verify_all("none-such").empty());
  }

  TEST_CASE("reports come back in id order regardless of thread count") {
    auto a = verify_all("*", 1), b = verify_all("*", 4);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].id == b[i].id);
      CHECK(report_to_json(a[i], false) == report_to_json(b[i], false));
    }
    CHECK(std::is_sorted(a.begin(), a.end(), [](const auto& x, const auto& y) { return x.id < y.id; }));
  }

  TEST_CASE("data files are in canonical form") {
    for (const auto& dir : {"cases", "exploratory"})
      for (const auto& entry : std::filesystem::directory_iterator(kData / dir)) {
        CAPTURE(entry.path().string());
        std::string text = slurp(entry.path());
        CHECK(write_canonical(Json::parse(text)) == text);
      }
    std::string su21 = slurp(kData / "examples/su21_t2.json");
    CHECK(write_canonical(Json::parse(su21)) == su21);
  }

  TEST_CASE("bundled catalog mirrors the data directory") {
    std::set<std::string> on_disk;
    for (const auto& entry : std::filesystem::directory_iterator(kData / "cases"))
      on_disk.insert(load_case(entry.path()).id);
    auto ids = bundled_case_ids();
    CHECK(std::set<std::string>(ids.begin(), ids.end()) == on_disk);
    CHECK_THROWS_AS(bundled_case("nope"), UnknownCase);
  }

  TEST_CASE("a structure-constant case loads and verifies") {
    CaseRecord rec = parse_case(so3_doc().dump());
    CHECK(rec.source == CaseSource::StructureConstants);
    CHECK(verify_record(rec).ok());
  }

  TEST_CASE("load errors name the offending field") {
    Json d = so3_doc();
    d["dimension"] = 4;
    CHECK(error_of(d).find("basis_names") != std::string::npos);

    d = so3_doc();
    d["colour"] = "red";
    CHECK(error_of(d).find("colour") != std::string::npos);

    d = so3_doc();
    d["matrices"] = Json::array();
    CHECK(error_of(d).find("not allowed") != std::string::npos);

    d = so3_doc();
    d["structure_constants"][0][3] = "x +";
    CHECK_THROWS_AS(parse_case(d.dump()), ParseError);

    d = so3_doc();
    d["structure_constants"][0][2] = 9;
    CHECK(error_of(d).find("structure_constants") != std::string::npos);

    d = so3_doc();
    d["id"] = "has space";
    CHECK(error_of(d).find("id") != std::string::npos);

    CHECK_THROWS_AS(parse_case("{ not json"), ParseError);
  }

  TEST_CASE("load rejects a Jacobi failure and names the triple") {
    // [x,y] = y, [x,z] = z, [y,z] = x violates Jacobi.
    Json d = so3_doc();
    d["structure_constants"] = Json::parse(R"j([[1, 2, 2, "1"], [1, 3, 3, "1"], [2, 3, 1, "1"]])j");
    std::string msg = error_of(d);
    CHECK(msg.find("Jacobi") != std::string::npos);
    CHECK(msg.find("(x, y, z)") != std::string::npos);
  }

  TEST_CASE("load rejects a non-reductive split") {
    Json d = Json::parse(R"j({
      "id": "sl2.bad",
      "description": "sl(2) split along e",
      "source": "structure-constants",
      "dimension": 3,
      "basis_names": ["h", "e", "f"],
      "structure_constants": [[1, 2, 2, "2"], [1, 3, 3, "-2"], [2, 3, 1, "1"]],
      "h_indices": [2],
      "m_indices": [1, 3],
      "expected": []
    })j");
    CHECK(error_of(d).find("not reductive") != std::string::npos);
    d["h_indices"] = {1};
    d["m_indices"] = {2, 3};
    CHECK(error_of(d).empty());
  }

  TEST_CASE("an antisymmetric partner may be omitted, a conflicting one may not") {
    Json d = so3_doc();
    CHECK(error_of(d).empty());
    d["structure_constants"].push_back({2, 1, 3, "-1"});
    CHECK(error_of(d).empty());
    d["structure_constants"].back()[3] = "1";
    CHECK_FALSE(error_of(d).empty());
  }

  TEST_CASE("instantiation") {
    const CaseRecord& rec = bundled_case("T2.n3.a13");
    CHECK_THROWS_AS(instantiate(rec, {{"zz", Rational(1)}}), ValidationError);
    CHECK_THROWS_AS(instantiate(bundled_case("T1.n2a"), {}, {"p"}), ValidationError);
    CaseInstance product = instantiate(bundled_case("product.flat"));
    CHECK(product.base.dim() == 6);
    CHECK(product.space.dim() == 7);
    CHECK(product.space.names().back() == "e7");
  }

  TEST_CASE("report JSON round trip") {
    CaseReport r = verify_case("T1.n1");
    Json j = report_to_json(r);
    Json again = Json::parse(j.dump());
    CHECK(again == j);
    CHECK(j["id"] == "T1.n1");
    CHECK(j["status"] == "match");
    CHECK(j["timing_ms"].is_number_integer());
    CHECK_FALSE(report_to_json(r, false).contains("timing_ms"));
    bool found = false;
    for (const auto& c : j["checks"])
      if (c["label"] == "dphi(e3,e5,e6,e7)") {
        found = true;
        CHECK(c["computed"] == "-a3");
        CHECK(c["status"] == "match");
      }
    CHECK(found);
    std::string text = render_text(r);
    CHECK(text.find("dphi(e3,e5,e6,e7) = -a3") != std::string::npos);
  }

  TEST_CASE("partial cases are flagged") {
    CaseReport r = verify_case("T2.n1");
    CHECK(r.partial);
    CHECK(render_text(r).find("partial: d") != std::string::npos);
    for (const auto& c : r.checks)
      if (c.check == "jacobi") CHECK(c.status == CheckStatus::Skipped);
  }

  TEST_CASE("the worked su(2,1) example is strictly symplectic half-flat") {
    CaseRecord rec = load_case(kData / "examples/su21_t2.json");
    CaseReport r = verify_record(rec);
    CHECK(r.ok());
    CaseInstance inst = instantiate(rec);
    AltForm omega = AltForm::parse(rec.reference_form("omega")->value, 6, 2, empty_context());
    AltForm psi = AltForm::parse(rec.reference_form("psi")->value, 6, 3, empty_context());
    CHECK(su3_check(inst.base, omega, psi).strict());
  }

  TEST_CASE("exploratory cases verify") {
    for (const auto& entry : std::filesystem::directory_iterator(kData / "exploratory")) {
      CAPTURE(entry.path().string());
      CHECK(verify_record(load_case(entry.path())).ok());
    }
  }

  TEST_CASE("schema is valid JSON and names the three sources") {
    Json s = Json::parse(case_schema());
    std::string dumped = s.dump();
    for (const char* src : {"matrix-basis", "structure-constants", "partial-homogeneous"})
      CHECK(dumped.find(src) != std::string::npos);
  }
}
