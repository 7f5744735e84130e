#include <doctest.h>

#include <fstream>
#include <sstream>

#include "g2hom/catalog.hpp"
#include "g2hom/cli.hpp"

using namespace g2hom;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "g2hom");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& rel) { return std::string(G2HOM_SOURCE_DIR) + "/data/" + rel; }

bool has(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("verify one case") {
    Run r = run({"verify", "--case", "T1.n1", "--no-timing"});
    CHECK(r.code == kExitOk);
    CHECK(has(r.out, "dphi(e3,e5,e6,e7) = -a3"));
    CHECK(has(r.out, "result: OK"));
  }

  TEST_CASE("verify all, json") {
    Run r = run({"verify", "--all", "--format", "json", "--no-timing"});
    CHECK(r.code == kExitOk);
    Json j = Json::parse(r.out);
    REQUIRE(j.is_array());
    CHECK(j.size() == 12);
    for (const auto& c : j) CHECK(c["status"] == "match");
  }

  TEST_CASE("verify with filters and threads") {
    Run t1 = run({"verify", "--all", "--filter", "T1.*", "--threads", "2", "--no-timing"});
    CHECK(t1.code == kExitOk);
    CHECK(has(t1.out, "7 of 7 cases match"));
    Run none = run({"verify", "--all", "--filter", "none-such"});
    CHECK(none.code == kExitOk);
    CHECK(has(none.out, "0 of 0 cases match"));
  }

  TEST_CASE("verify an input file") {
    Run r = run({"verify", "--input", data("examples/su21_t2.json"), "--format", "json"});
    CHECK(r.code == kExitOk);
    CHECK(Json::parse(r.out)[0]["id"] == "su21_t2");
  }

  TEST_CASE("exit codes") {
    CHECK(run({"verify", "--case", "nope"}).code == kExitInput);
    CHECK(run({}).code == kExitInput);
    CHECK(run({"verify", "--case", "T1.n1", "--format", "yaml"}).code == kExitInput);
    CHECK(run({"verify", "--input", data("no/such/file.json")}).code == kExitInput);
    CHECK(run({"definite", "--form", data("cases/T1.n1.json")}).code == kExitInput);
  }

  TEST_CASE("a mismatching case exits 1") {
    Json doc = bundled_case("T1.n1").document;
    for (auto& c : doc["expected"])
      if (c["check"] == "invariant_dim") c["value"] = 8;
    auto path = std::filesystem::temp_directory_path() / "g2hom_cli_mismatch.json";
    {
      std::ofstream(path) << doc.dump();
    }
    Run r = run({"verify", "--input", path.string(), "--no-timing"});
    CHECK(r.code == kExitMismatch);
    CHECK(has(r.out, "mismatch"));
    std::filesystem::remove(path);
  }

  TEST_CASE("invariants and closed") {
    Run inv = run({"invariants", "--case", "T1.n1", "--degree", "3"});
    CHECK(inv.code == kExitOk);
    CHECK(has(inv.out, "dimension: 7"));
    Run cl = run({"closed", "--case", "T1.n2a"});
    CHECK(cl.code == kExitOk);
    CHECK(has(cl.out, "closed dimension: 3"));
    CHECK(has(cl.out, "verdict: not definite"));
    Run set = run({"invariants", "--case", "T2.n3.a13", "--set", "b=2", "--degree", "3"});
    CHECK(set.code == kExitOk);
    CHECK(run({"invariants", "--case", "T2.n3.a13", "--set", "b", "--degree", "3"}).code == kExitInput);
  }

  TEST_CASE("definite") {
    Run r = run({"definite", "--form", data("examples/phi0.form")});
    CHECK(r.code == kExitOk);
    CHECK(has(r.out, "definite (positive), certificate: leading minors of B: 6, 36, 216"));
    Run fam = run({"definite", "--form", data("examples/family.form"), "--probes", data("examples/probes.json")});
    CHECK(fam.code == kExitOk);
    CHECK(has(fam.out, "certificate"));
  }

  TEST_CASE("su3") {
    Run r = run({"su3", "--input", data("examples/su21_t2.json")});
    CHECK(r.code == kExitOk);
    CHECK(has(r.out, "symplectic half-flat: yes; strict: yes"));
    Run flat = run({"su3", "--case", "product.flat", "--omega", data("examples/omega0.form"), "--psi",
                    data("examples/psi0.form")});
    CHECK(flat.code == kExitOk);
    CHECK(has(flat.out, "symplectic half-flat: yes; strict: no"));
  }

  TEST_CASE("schema, list and canonical") {
    Run s = run({"schema"});
    CHECK(s.code == kExitOk);
    CHECK(Json::parse(s.out).contains("properties"));
    Run l = run({"list"});
    CHECK(has(l.out, "T1.n1"));
    CHECK(has(l.out, "su31"));
    Run c = run({"canonical", "--input", data("cases/T1.n1.json")});
    CHECK(c.code == kExitOk);
    std::ifstream in(data("cases/T1.n1.json"));
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(c.out == ss.str());
  }
}
