import os
from pathlib import Path

import pytest

import g2hom

PHI0 = "e^{127} + e^{347} + e^{567} + e^{135} - e^{146} - e^{236} - e^{245}"
PSI0 = "e^{135} - e^{146} - e^{236} - e^{245}"
DATA = Path(os.environ.get("G2HOM_SOURCE_DIR", Path(__file__).resolve().parents[2])) / "data"


def test_catalog_verifies():
    reports = g2hom.verify()
    assert len(reports) == 12
    assert all(r["status"] == "match" for r in reports)
    assert [r["id"] for r in g2hom.verify("T1.*")] == sorted(i for i in g2hom.case_ids() if i.startswith("T1."))


def test_printed_value_in_report():
    (report,) = g2hom.verify("T1.n1")
    computed = {c["label"]: c["computed"] for c in report["checks"]}
    assert computed["dphi(e3,e5,e6,e7)"] == "-a3"


def test_invariants_and_closed():
    assert len(g2hom.invariant_forms("T1.n1", 3)) == 7
    fam = g2hom.closed_forms("T1.n2a")
    assert len(fam["basis"]) == 3
    assert fam["verdict"] == "not definite"
    assert len(g2hom.invariant_forms("T2.n3.a13", 3, {"b": "2"})) == 4


def test_forms():
    assert g2hom.wedge("e^{12}", 2, "e^{345}", 3, 5) == "e^{1 2 3 4 5}"
    b = g2hom.b_matrix(PHI0)
    assert all(b[i][j] == ("6" if i == j else "0") for i in range(7) for j in range(7))
    verdict, cert = g2hom.definiteness(PHI0)
    assert verdict == "definite (positive)"
    assert cert.startswith("leading minors of B: 6, 36")
    assert g2hom.definiteness("t*e^{123} + t*e^{456}", ["t"])[0] == "not definite"
    assert g2hom.hitchin_lambda(PSI0) == "-4"


def test_su21_example_file():
    report = g2hom.verify_file(DATA / "examples" / "su21_t2.json")
    assert report["status"] == "match"


def test_errors():
    with pytest.raises(KeyError):
        g2hom.invariant_forms("nope", 3)
    with pytest.raises(ValueError):
        g2hom.wedge("e^{1", 1, "e^{2}", 1, 3)
    with pytest.raises(g2hom.Error):
        g2hom.b_matrix("e^{12}")


def test_cli_entry():
    code, out, _ = g2hom.run_cli(["verify", "--case", "T1.n3", "--no-timing"])
    assert code == 0
    assert "B_phi(e7,e7) = -6*a4^3" in out
    assert g2hom.run_cli(["verify", "--case", "nope"])[0] == 2


def test_schema():
    schema = g2hom.case_schema()
    assert schema["type"] == "object"
