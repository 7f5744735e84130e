#!/usr/bin/env python3
"""Regenerate the bundled case files from their matrix models.

    python3 tools/casegen.py [--out DIR] [--check]

Structure constants of matrix-born cases are computed here with sympy and
frozen into the files; the C++ loader recomputes them from the matrices and
refuses the file if the two disagree. The so(3,2) adapted basis and the
partial data of the two-parameter T2.n3 family are reconstructed here and
checked against explicit matrix models before anything is written.

--check compares against the files on disk instead of writing.
"""

import argparse
import json
import re
import sys
from pathlib import Path

import sympy as sp
from sympy import I, Matrix, Rational as R

# ---------------------------------------------------------------- canonical JSON
# Layout shared with the C++ writer (catalog.cpp, write_canonical):
#  - two-space indentation, ", " never used; members separated by ",\n"
#  - an array is written on one line when each element is a scalar or a
#    two-scalar array; otherwise one element per line


def _scalar(v):
    if v is None:
        return "null"
    if v is True:
        return "true"
    if v is False:
        return "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, str):
        return json.dumps(v, ensure_ascii=False)
    raise TypeError(f"unsupported scalar {v!r}")


def _is_scalar(v):
    return v is None or isinstance(v, (bool, int, str))


def _inline(arr):
    return all(_is_scalar(x) or (isinstance(x, list) and len(x) == 2 and all(map(_is_scalar, x))) for x in arr)


def dump(v, indent=0):
    pad = "  " * (indent + 1)
    if isinstance(v, dict):
        if not v:
            return "{}"
        items = [f"{pad}{_scalar(k)}: {dump(x, indent + 1)}" for k, x in v.items()]
        return "{\n" + ",\n".join(items) + "\n" + "  " * indent + "}"
    if isinstance(v, list):
        if not v:
            return "[]"
        if _inline(v):
            return "[" + ", ".join(dump(x, indent + 1) for x in v) + "]"
        return "[\n" + ",\n".join(pad + dump(x, indent + 1) for x in v) + "\n" + "  " * indent + "]"
    return _scalar(v)


# ---------------------------------------------------------------- sympy helpers


def realify(m):
    re_, im_ = m.applyfunc(sp.re), m.applyfunc(sp.im)
    return Matrix(sp.BlockMatrix([[re_, -im_], [im_, re_]]))


def structure_constants(mats):
    """[e_i, e_j] = sum_k c^k_ij e_k for i < j, 1-based."""
    n = len(mats)
    basis = Matrix([[x for x in m] for m in mats]).T
    assert basis.rank() == n, "matrix basis is dependent"
    sc = {}
    for i in range(n):
        for j in range(i + 1, n):
            c = mats[i] * mats[j] - mats[j] * mats[i]
            sol, params = basis.gauss_jordan_solve(Matrix([x for x in c]))
            assert not params.free_symbols
            sc[(i + 1, j + 1)] = {k + 1: sp.nsimplify(sol[k]) for k in range(n) if sol[k] != 0}
    return sc


def reductive_data(sc, h_idx, m_idx):
    """Isotropy matrices (column convention) and projected bracket on m, 1-based."""
    pos = {m: p + 1 for p, m in enumerate(m_idx)}

    def br(i, j):
        if i == j:
            return {}
        if i < j:
            return sc.get((i, j), {})
        return {k: -v for k, v in sc.get((j, i), {}).items()}

    iso = []
    for h in h_idx:
        a = sp.zeros(len(m_idx))
        for m in m_idx:
            for k, v in br(h, m).items():
                assert k in pos, f"[e{h},e{m}] leaves m"
                a[pos[k] - 1, pos[m] - 1] = v
        iso.append(a)
    proj = {}
    for x in range(len(m_idx)):
        for y in range(x + 1, len(m_idx)):
            r = {pos[k]: v for k, v in br(m_idx[x], m_idx[y]).items() if k in pos}
            if r:
                proj[(x + 1, y + 1)] = r
    return iso, proj


def poly_str(e):
    return sp.sstr(sp.expand(e)).replace("**", "^")


def entry(e, complex_field):
    e = sp.expand(e)
    if not complex_field:
        return poly_str(e)
    re_, im_ = sp.expand(sp.re(e)), sp.expand(sp.im(e))
    if im_ == 0:
        return poly_str(re_)
    return [poly_str(re_), poly_str(im_)]


def matrix_json(m, complex_field=False):
    return [[entry(m[r, c], complex_field) for c in range(m.cols)] for r in range(m.rows)]


def constants_json(sc):
    return [[i, j, k, poly_str(c)] for (i, j), row in sorted(sc.items()) for k, c in sorted(row.items())]


def bracket_json(proj):
    return [[i, j, k, poly_str(c)] for (i, j), row in sorted(proj.items()) for k, c in sorted(row.items())]


def f(text):
    """'e124-e135' -> 'e^{1 2 4} - e^{1 3 5}' (single-digit indices only)."""
    out = []
    for sign, coef, idx in re.findall(r"([+-]?)\s*([0-9/]*\*?)e(\d+)", text):
        term = f"{coef}e^{{{' '.join(idx)}}}"
        out.append(("- " if sign == "-" else "+ ") + term)
    s = " ".join(out)
    return s[2:] if s.startswith("+ ") else "-" + s[2:]


def combo(pairs):
    """[(coef string, 'e124-e135'), ...] -> linear form with polynomial coefficients."""
    terms = []
    for coef, text in pairs:
        for sign, idx in re.findall(r"([+-]?)\s*e(\d+)", text):
            c = coef if sign != "-" else negate(coef)
            terms.append((c, idx))
    out = ""
    for c, idx in terms:
        neg = c.startswith("-")
        body = c[1:] if neg else c
        t = f"{body}*e^{{{' '.join(idx)}}}"
        if not out:
            out = ("-" if neg else "") + t
        else:
            out += (" - " if neg else " + ") + t
    return out


def negate(c):
    return c[1:] if c.startswith("-") else "-" + c


def E(n, i, j, c=1):
    m = sp.zeros(n)
    m[i - 1, j - 1] = c
    return m


# ---------------------------------------------------------------- case builders

def names(n, prefix="e"):
    return [f"{prefix}{i}" for i in range(1, n + 1)]


def matrix_case(cid, description, mats, h_idx, complex_field=False, params=None,
                reference=None, expected=None, cross_checks=None):
    """mats may hold parameter symbols; params instantiate them for the frozen constants."""
    params = params or {}
    inst = [m.subs({s: sp.Rational(params[s.name]) for s in m.free_symbols}) for m in mats]
    real = [realify(m) if complex_field else m for m in inst]
    sc = structure_constants(real)
    m_idx = [i for i in range(1, len(mats) + 1) if i not in h_idx]
    reductive_data(sc, h_idx, m_idx)  # asserts reductivity
    case = {
        "id": cid,
        "description": description,
        "source": "matrix-basis",
        "dimension": len(mats),
        "basis_names": names(len(mats)),
    }
    if params:
        case["parameters"] = dict(params)
    case["matrix_field"] = "complex" if complex_field else "real"
    case["matrices"] = [matrix_json(m, complex_field) for m in mats]
    case["structure_constants"] = constants_json(sc)
    case["h_indices"] = list(h_idx)
    case["m_indices"] = m_idx
    if reference:
        case["reference"] = reference
    if cross_checks:
        case["cross_checks"] = cross_checks
    case["expected"] = expected or []
    return case


def exp(check, args, value, cite):
    return {"check": check, "args": args, "value": value, "cite": cite}


def t1n1():
    M = lambda *r: Matrix(3, 3, list(r))
    mats = [M(2, 0, 0, 0, -1, 0, 0, 0, -1), M(0, 1, 0, -1, 0, 0, 0, 0, 0), M(0, 0, 1, 0, 0, 0, -1, 0, 0),
            M(0, 1, 0, 1, 0, 0, 0, 0, 0), M(0, 0, 1, 0, 0, 0, 1, 0, 0), M(0, 0, 0, 0, -1, 0, 0, 0, 1),
            M(0, 0, 0, 0, 0, 1, 0, 1, 0), M(0, 0, 0, 0, 0, 1, 0, -1, 0)]
    gam = ["e123", "e145", "e167", "e124+e135", "e125-e134", "e246-e257-e347-e356", "e247+e256+e346-e357"]
    cite = "T1 n.1 (sl(3,R), h = so(2))"
    ref = {"symbols": [f"a{i}" for i in range(1, 8)],
           "forms": {"phi": {"degree": 3, "value": combo([(f"a{i + 1}", g) for i, g in enumerate(gam)])}}}
    expected = [
        exp("jacobi", {}, True, f"{cite}: matrix basis"),
        exp("bracket", {"i": 6, "j": 7}, [[8, "-2"]], f"{cite}: commutator of the printed matrices"),
        exp("invariant_dim", {"degree": 3}, 7, f"{cite}: invariant 3-forms"),
        exp("invariant_span", {"degree": 3}, [f(g) for g in gam], f"{cite}: gamma_1..gamma_7"),
        exp("d_eval", {"form": "phi", "indices": [3, 5, 6, 7]}, "-a3", f"{cite}: dphi(e3,e5,e6,e7)"),
        exp("b_entry", {"form": "phi", "i": 7, "j": 7}, "6*a3*a6^2 + 6*a3*a7^2",
            f"{cite}: i_e7 phi ^ i_e7 phi ^ phi"),
        exp("closed_forces_zero", {"form": "phi"}, ["a3"], f"{cite}: closedness"),
        exp("d_squared", {"degree": 2}, True, "derived: d o d = 0 on invariant 2-forms"),
        exp("d_squared", {"degree": 3}, True, "derived: d o d = 0 on invariant 3-forms"),
        exp("verdict", {}, "not definite", f"{cite}: no closed definite invariant 3-form"),
    ]
    return matrix_case("T1.n1", "sl(3,R) with h = so(2) acting with weights on m0 + m1 + m2 + m3",
                       mats, [8], reference=ref, expected=expected)


def t1n2_mats():
    p, q = sp.symbols("p q", real=True)
    M = lambda *r: Matrix(3, 3, list(r))
    return [M(I * (-2 * q - p), 0, 0, 0, I * (2 * p + q), 0, 0, 0, I * (q - p)),
            M(0, 1, 0, -1, 0, 0, 0, 0, 0), M(0, I, 0, I, 0, 0, 0, 0, 0),
            M(0, 0, 1, 0, 0, 0, 1, 0, 0), M(0, 0, I, 0, 0, 0, -I, 0, 0),
            M(0, 0, 0, 0, 0, 1, 0, 1, 0), M(0, 0, 0, 0, 0, I, 0, -I, 0),
            M(I * p, 0, 0, 0, I * q, 0, 0, 0, -I * (p + q))]


def t1n2(branch):
    pq = {"a": ("0", "1"), "b": ("1", "1"), "c": ("2", "3")}[branch]
    cite = f"T1 n.2 branch {branch} (su(2,1), (p,q) = ({pq[0]},{pq[1]}))"
    syms = {"a": 3, "b": 3, "c": 1}[branch]
    dims = {"a": 7, "b": 13, "c": 5}[branch]
    family = {
        "a": combo([("a1", "e124-e135"), ("a2", "e125+e134"), ("a3", "e247-e256+e346+e357")]),
        "b": combo([("-3*a1", "e146+e157"), ("-3*a2", "e147-e156"), ("a1", "e245"), ("-a1", "e267"),
                    ("a3", "e247-e256"), ("a3", "e346+e357"), ("-a2", "e345"), ("a2", "e367")]),
        "c": combo([("a1", "-e247+e256-e346-e357")]),
    }[branch]
    symbols = [f"a{i}" for i in range(1, syms + 1)]
    checks = [
        exp("invariant_dim", {"degree": 3}, dims, f"{cite}: invariant 3-forms"),
        exp("closed_dim", {"degree": 3}, syms, f"{cite}: free parameters of the closed family"),
        exp("closed_span", {"degree": 3, "symbols": symbols}, family, f"{cite}: generic closed invariant 3-form"),
        exp("verdict", {}, "not definite", f"{cite}: none of the closed forms is definite"),
    ]
    expected = [exp("jacobi", {}, True, f"{cite}: matrix basis")] + checks + [
        exp("d_squared", {"degree": 2}, True, "derived: d o d = 0 on invariant 2-forms"),
        exp("d_squared", {"degree": 3}, True, "derived: d o d = 0 on invariant 3-forms"),
    ]
    if branch == "c":
        expected.insert(-2, exp("verdict", {"form": "family", "parameters": {"a1": "1"}}, "degenerate",
                                f"{cite}: member a1 = 1 is not definite"))
    ref = {"symbols": symbols, "forms": {"family": {"degree": 3, "value": family}}}
    cross = None
    if branch == "c":
        cite2 = "T1 n.2 branch c (su(2,1), (p,q) = (3,4))"
        cross = [{"label": "(p,q) = (3,4)", "parameters": {"p": "3", "q": "4"},
                  "checks": [exp("invariant_dim", {"degree": 3}, 5, f"{cite2}: invariant 3-forms"),
                             exp("closed_span", {"degree": 3, "symbols": ["a1"]}, family,
                                 f"{cite2}: generic closed invariant 3-form"),
                             exp("verdict", {}, "not definite", f"{cite2}: none of the closed forms is definite")]}]
    return matrix_case(f"T1.n2{branch}", f"su(2,1) with h = u(1) of weights (p,q), branch {branch}",
                       t1n2_mats(), [8], complex_field=True, params={"p": pq[0], "q": pq[1]},
                       reference=ref, expected=expected, cross_checks=cross)


def t1n2_exploratory():
    case = matrix_case("T1.n2.p1q2", "su(2,1) with h = u(1) of weights (1,2); no reference values attached",
                       t1n2_mats(), [8], complex_field=True, params={"p": "1", "q": "2"},
                       expected=[exp("jacobi", {}, True, "derived: matrix basis")])
    return case


def so32_basis():
    def P(i):
        m = sp.zeros(5)
        m[i - 1, 3] = 1
        m[3, i - 1] = 1
        return m

    def A(i, j):
        m = sp.zeros(5)
        m[i - 1, j - 1] = 1
        m[j - 1, i - 1] = -1
        return m

    e7 = sp.zeros(5)
    e7[3, 4] = -1
    e7[4, 3] = 1
    n1 = [P(i) for i in (1, 2, 3)]
    n2 = [x * e7 - e7 * x for x in n1]
    mats = n1 + n2 + [e7, A(1, 2), A(1, 3), A(2, 3)]
    J = sp.diag(1, 1, 1, -1, -1)
    for m in mats:
        assert m.T * J + J * m == sp.zeros(5), "not in so(3,2)"
    for i in range(3):
        assert mats[i] * e7 - e7 * mats[i] == mats[i + 3]
    return mats


def t1n3():
    gam = ["e123", "e126-e135+e234", "e156-e246+e345", "e147+e257+e367", "e456"]
    cite = "T1 n.3 (so(3,2), h = so(3))"
    ref = {"symbols": [f"a{i}" for i in range(1, 6)],
           "forms": {"phi": {"degree": 3, "value": combo([(f"a{i + 1}", g) for i, g in enumerate(gam)])}}}
    expected = [
        exp("jacobi", {}, True, f"{cite}: reconstructed matrix basis"),
        exp("invariant_dim", {"degree": 3}, 5, f"{cite}: invariant 3-forms"),
        exp("invariant_span", {"degree": 3}, [f(g) for g in gam], f"{cite}: gamma_1..gamma_5"),
        exp("b_entry", {"form": "phi", "i": 7, "j": 7}, "-6*a4^3", f"{cite}: i_e7 phi ^ i_e7 phi ^ phi"),
        exp("d_eval", {"form": "phi", "indices": [1, 2, 4, 5]}, "2*a4", f"{cite}: dphi(e1,e2,e4,e5)"),
        exp("closed_forces_zero", {"form": "phi"}, ["a4"], f"{cite}: closedness"),
        exp("d_squared", {"degree": 2}, True, "derived: d o d = 0 on invariant 2-forms"),
        exp("d_squared", {"degree": 3}, True, "derived: d o d = 0 on invariant 3-forms"),
        exp("verdict", {}, "not definite", f"{cite}: closed invariant 3-forms are not definite"),
    ]
    return matrix_case("T1.n3", "so(3,2) in the 5x5 model, adapted basis with e_{i+3} = [e_i, e7]",
                       so32_basis(), [8, 9, 10], reference=ref, expected=expected)


def emb4(a, v=(0, 0, 0, 0)):
    m = sp.zeros(5)
    m[1:, 1:] = a
    for i in range(4):
        m[0, i + 1] = v[i]
        m[i + 1, 0] = v[i]
    return m


def t1n4():
    hmat = lambda a, b, c: Matrix([[0, a, b, c], [-a, 0, c, -b], [-b, -c, 0, a], [-c, b, -a, 0]])
    p1 = Matrix([[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]])
    p2 = Matrix([[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]])
    p3 = Matrix([[0, 0, 0, 1], [0, 0, -1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]])
    unit = lambda i: tuple(1 if j == i else 0 for j in range(4))
    mats = [emb4(p1), emb4(p2), emb4(p3)] + [emb4(sp.zeros(4), unit(i)) for i in range(4)] + \
        [emb4(hmat(1, 0, 0)), emb4(hmat(0, 1, 0)), emb4(hmat(0, 0, 1))]
    omegas = ["e45-e67", "e46+e57", "e47-e56"]
    gam = [f("e123")] + [f(w.replace("e", f"e{i}")) for i in (1, 2, 3) for w in omegas]
    cite = "T1 n.4 (so(4,1), h = first so(3) ideal)"
    pairs = [("a1", "e123")] + [(f"a{2 + 3 * (i - 1) + j}", w.replace("e", f"e{i}"))
                                for i in (1, 2, 3) for j, w in enumerate(omegas)]
    ref = {"symbols": [f"a{i}" for i in range(1, 11)], "forms": {"phi": {"degree": 3, "value": combo(pairs)}}}
    expected = [
        exp("jacobi", {}, True, f"{cite}: matrix basis"),
        exp("bracket", {"i": 1, "j": 2}, [[3, "2"]], f"{cite}: [e_i,e_j] = 2 eps_ijk e_k on p"),
        exp("bracket", {"i": 2, "j": 3}, [[1, "2"]], f"{cite}: [e_i,e_j] = 2 eps_ijk e_k on p"),
        exp("invariant_dim", {"degree": 3}, 10, f"{cite}: e^123 and e^i ^ omega_j"),
        exp("invariant_span", {"degree": 3}, gam, f"{cite}: e^123 and e^i ^ omega_j"),
        exp("d_eval", {"form": "phi", "indices": [2, 3, 6, 7]}, "1/2*a1 + 2*a2 - 2*a6 - 2*a10",
            f"{cite}: dphi(e2,e3,e6,e7)"),
        exp("d_eval", {"form": "phi", "indices": [1, 3, 5, 7]}, "1/2*a1 - 2*a2 + 2*a6 - 2*a10",
            f"{cite}: dphi(e1,e3,e5,e7)"),
        exp("d_eval", {"form": "phi", "indices": [1, 2, 5, 6]}, "1/2*a1 - 2*a2 - 2*a6 + 2*a10",
            f"{cite}: dphi(e1,e2,e5,e6)"),
        exp("d_eval", {"form": "phi", "indices": [4, 5, 6, 7]}, "a2 + a6 + a10", f"{cite}: dphi(e4,e5,e6,e7)"),
        exp("closed_forces_zero", {"form": "phi"}, ["a1", "a2", "a6", "a10"], f"{cite}: closedness"),
        exp("b_entry", {"form": "phi", "i": 1, "j": 1}, "-6*a1*a2^2 - 6*a1*a3^2 - 6*a1*a4^2",
            f"{cite}: i_e1 phi ^ i_e1 phi ^ phi"),
        exp("d_squared", {"degree": 2}, True, "derived: d o d = 0 on invariant 2-forms"),
        exp("d_squared", {"degree": 3}, True, "derived: d o d = 0 on invariant 3-forms"),
        exp("verdict", {}, "not definite", f"{cite}: closed invariant 3-forms are not definite"),
    ]
    return matrix_case("T1.n4", "so(4,1) = p + n + h with h an so(3) ideal of so(4) and [h,p] = 0",
                       mats, [8, 9, 10], reference=ref, expected=expected)


def t1n5():
    def Es(i, j, sym):
        m = sp.zeros(5)
        m[i - 1, j - 1] = 1
        m[j - 1, i - 1] = 1 if sym else -1
        return m

    mats = [Es(2, 5, 0), Es(2, 4, 0), Es(2, 3, 0), Es(1, 5, 1), Es(1, 4, 1), Es(1, 3, 1), Es(1, 2, 1),
            Es(3, 4, 0), Es(3, 5, 0), Es(4, 5, 0)]
    gam = ["e123", "e456", "e126-e135+e234", "e156-e246+e345", "e147+e257+e367"]
    cite = "T1 n.5 (so(4,1), h = so(3) on three coordinates)"
    ref = {"symbols": [f"a{i}" for i in range(1, 6)],
           "forms": {"phi": {"degree": 3, "value": combo([(f"a{i + 1}", g) for i, g in enumerate(gam)])}}}
    expected = [
        exp("jacobi", {}, True, f"{cite}: matrix basis"),
        exp("invariant_dim", {"degree": 3}, 5, f"{cite}: invariant 3-forms"),
        exp("invariant_span", {"degree": 3}, [f(g) for g in gam], f"{cite}: gamma_1..gamma_5"),
        exp("b_entry", {"form": "phi", "i": 7, "j": 7}, "-6*a5^3", f"{cite}: i_e7 phi ^ i_e7 phi ^ phi"),
        exp("d_eval", {"form": "phi", "indices": [1, 2, 4, 5]}, "2*a5", f"{cite}: dphi(e1,e2,e4,e5)"),
        exp("d_eval", {"form": "phi", "indices": [1, 3, 4, 6]}, "2*a5", f"{cite}: dphi(e1,e3,e4,e6)"),
        exp("d_eval", {"form": "phi", "indices": [2, 3, 5, 6]}, "2*a5", f"{cite}: dphi(e2,e3,e5,e6)"),
        exp("closed_forces_zero", {"form": "phi"}, ["a5"], f"{cite}: closedness"),
        exp("d_squared", {"degree": 2}, True, "derived: d o d = 0 on invariant 2-forms"),
        exp("d_squared", {"degree": 3}, True, "derived: d o d = 0 on invariant 3-forms"),
        exp("verdict", {}, "not definite", f"{cite}: closed invariant 3-forms are not definite"),
    ]
    return matrix_case("T1.n5", "so(4,1) with h = so(3) acting on the coordinates 3, 4, 5",
                       mats, [8, 9, 10], reference=ref, expected=expected)


def su31():
    n = []
    for i in (1, 2, 3):
        n.append(E(4, i, 4) + E(4, 4, i))
        n.append(E(4, i, 4, I) + E(4, 4, i, -I))
    e7 = sp.diag(I, I, I, -3 * I) / 4
    for k in range(3):
        assert e7 * n[2 * k] - n[2 * k] * e7 == n[2 * k + 1]
    h = [E(4, 1, 2) - E(4, 2, 1), E(4, 1, 3) - E(4, 3, 1), E(4, 2, 3) - E(4, 3, 2),
         E(4, 1, 2, I) + E(4, 2, 1, I), E(4, 1, 3, I) + E(4, 3, 1, I), E(4, 2, 3, I) + E(4, 3, 2, I),
         sp.diag(I, -I, 0, 0), sp.diag(0, I, -I, 0)]
    g1, g2, w = "e135-e146-e236-e245", "e136+e145+e235-e246", "e127+e347+e567"
    cite = "su(3,1) with h = su(3)"
    ref = {"symbols": ["a1", "a2", "a3"],
           "forms": {"phi": {"degree": 3, "value": combo([("a1", g1), ("a2", g2), ("a3", w)])}}}
    expected = [
        exp("jacobi", {}, True, f"{cite}: matrix basis"),
        exp("invariant_dim", {"degree": 3}, 3, f"{cite}: invariant 3-forms"),
        exp("invariant_span", {"degree": 3}, [f(g1), f(g2), f(w)], f"{cite}: gamma_1, gamma_2, e^127+e^347+e^567"),
        exp("d_eval", {"form": "phi", "indices": [7, 1, 3, 5]}, "-3*a2", "derived: dphi(e7,e1,e3,e5)"),
        exp("closed_forces_zero", {"form": "phi"}, ["a1", "a2"], f"{cite}: no component along gamma_1, gamma_2"),
        exp("closed_within", {"degree": 3}, [f(w)], f"{cite}: closed forms lie in span(e^127+e^347+e^567)"),
        exp("d_squared", {"degree": 2}, True, "derived: d o d = 0 on invariant 2-forms"),
        exp("d_squared", {"degree": 3}, True, "derived: d o d = 0 on invariant 3-forms"),
        exp("verdict", {}, "not definite", f"{cite}: closed invariant 3-forms are not definite"),
    ]
    return matrix_case("su31", "su(3,1) = su(3) + u(1) + n, realified 4x4 complex model",
                       n + [e7] + h, list(range(8, 16)), complex_field=True, reference=ref, expected=expected)


def blockdiag7(blocks):
    m = sp.zeros(7)
    for j, b in enumerate(blocks):
        m[2 * j:2 * j + 2, 2 * j:2 * j + 2] = b
    return m


def partial_case(cid, description, dim, iso, bracket, params=None, quotients=None, reference=None,
                 expected=None, cross_checks=None, central=False):
    case = {"id": cid, "description": description, "source": "partial-homogeneous", "dimension": dim,
            "basis_names": names(dim)}
    if params:
        case["parameters"] = params
    if quotients:
        case["quotients"] = quotients
    case["homogeneous"] = {"isotropy_action": [matrix_json(a) for a in iso], "projected_bracket": bracket}
    if central:
        case["adjoin_central_line"] = True
    if reference:
        case["reference"] = reference
    if cross_checks:
        case["cross_checks"] = cross_checks
    case["expected"] = expected or []
    return case


def t2n1():
    rot = Matrix([[0, -2], [2, 0]])
    z = sp.zeros(2)
    iso = [blockdiag7([rot, -rot, z]), blockdiag7([z, rot, -rot])]
    br = {}
    for j in range(3):
        br[(2 * j + 1, 2 * j + 2)] = {7: R(-2, 3)}
        br[(2 * j + 1, 7)] = {2 * j + 2: -2}
        br[(2 * j + 2, 7)] = {2 * j + 1: 2}
    gam = ["e127", "e347", "e567", "e135-e146-e236-e245", "e145+e136+e235-e246"]
    cite = "T2 n.1 (three sl(2) factors)"
    ref = {"symbols": [f"a{i}" for i in range(1, 6)],
           "forms": {"phi": {"degree": 3, "value": combo([(f"a{i + 1}", g) for i, g in enumerate(gam)])}}}
    expected = [
        exp("invariant_dim", {"degree": 3}, 5, f"{cite}: invariant 3-forms"),
        exp("invariant_span", {"degree": 3}, [f(g) for g in gam], f"{cite}: gamma_1..gamma_5"),
        exp("d_eval", {"form": "phi", "indices": [7, 1, 3, 5]}, "-6*a5", f"{cite}: dphi(e7,e1,e3,e5)"),
        exp("d_eval", {"form": "phi", "indices": [1, 3, 6, 7]}, "-6*a4", "derived: dphi(e1,e3,e6,e7)"),
        exp("closed_forces_zero", {"form": "phi"}, ["a4", "a5"], f"{cite}: a4 = a5 = 0 for closed phi"),
        exp("closed_within", {"degree": 3}, [f(g) for g in gam[:3]], f"{cite}: closed phi in span(gamma_1..gamma_3)"),
        exp("d_squared", {"degree": 3}, "refused", "partial data: d o d = 0 is not guaranteed by construction"),
        exp("verdict", {}, "not definite", f"{cite}: closed invariant 3-forms are not definite"),
    ]
    return partial_case("T2.n1", "s1 + s2 + s3 + R with three sl(2) factors; isotropy and projected bracket only",
                        7, iso, bracket_json(br), reference=ref, expected=expected)


# T2.n3: isotropy (h_s = su(2) on n, plus Z) and projected bracket, written
# with quotient symbols qeta = eta/(b - a), qeps = 2*a*eps/(a - b).
def t2n3_formula():
    a, b = sp.symbols("a b")
    qeta, qeps = sp.symbols("qeta qeps")
    hs1 = sp.zeros(7)
    hs1[:4, :4] = Matrix([[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]])
    hs2 = sp.zeros(7)
    hs2[:4, :4] = Matrix([[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]])
    hs3 = sp.zeros(7)
    hs3[:4, :4] = Matrix([[0, 0, 0, 1], [0, 0, -1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]])
    zrot = Matrix([[0, -3 * a], [3 * a, 0]])
    z = blockdiag7([zrot, zrot, Matrix([[0, -2], [2, 0]])])
    br = {(1, 2): {7: qeta}, (3, 4): {7: qeta}, (5, 6): {7: qeps},
          (1, 7): {2: -3 * b}, (2, 7): {1: 3 * b}, (3, 7): {4: -3 * b}, (4, 7): {3: 3 * b},
          (5, 7): {6: -2}, (6, 7): {5: 2}}
    return [hs1, hs2, hs3, z], br


def t2n3_model(a, b, eps, eta):
    """su(2)+su(3) type matrix model (signs select the real forms); returns reductive data."""
    def blk(a2, a3):
        m = sp.zeros(5)
        m[:2, :2] = a2
        m[2:, 2:] = a3
        return m

    A = sp.diag(I, -I)
    if eps == 1:
        p5, p6 = Matrix([[0, 1], [-1, 0]]), Matrix([[0, I], [I, 0]])
    else:
        p5, p6 = Matrix([[0, 1], [1, 0]]), Matrix([[0, I], [-I, 0]])

    def X(w1, w2):
        m = sp.zeros(3)
        m[1, 0], m[2, 0] = w1, w2
        m[0, 1], m[0, 2] = -eta * sp.conjugate(w1), -eta * sp.conjugate(w2)
        return m

    b1 = sp.diag(2 * I, -I, -I)
    z2, z3 = sp.zeros(2), sp.zeros(3)
    n = [blk(z2, X(1, 0)), blk(z2, X(-I, 0)), blk(z2, X(0, 1)), blk(z2, X(0, -I))]
    p = [blk(p5, z3), blk(p6, z3)]
    v = blk(A, b * b1)

    def hs(m2):
        m = sp.zeros(3)
        m[1:, 1:] = m2
        return blk(z2, m)

    h = [hs(sp.diag(I, -I)), hs(Matrix([[0, 1], [-1, 0]])), hs(Matrix([[0, I], [I, 0]])), blk(A, a * b1)]
    sc = structure_constants([realify(x) for x in n + p + [v] + h])
    return reductive_data(sc, list(range(8, 12)), list(range(1, 8)))


def verify_t2n3():
    iso_f, br_f = t2n3_formula()
    a, b, eps, eta = sp.symbols("a b eps eta")
    qeta, qeps = sp.symbols("qeta qeps")
    for av, bv in [(R(1, 3), 1), (1, 2), (R(1, 2), 3)]:
        for ev in (1, -1):
            for hv in (1, -1):
                sub = {a: av, b: bv, eps: ev, eta: hv}
                sub[qeta] = (eta / (b - a)).subs(sub)
                sub[qeps] = (2 * a * eps / (a - b)).subs(sub)
                iso, br = t2n3_model(av, bv, ev, hv)
                assert [m.subs(sub) for m in iso_f] == iso, ("isotropy", av, bv, ev, hv)
                got = {k: {kk: sp.nsimplify(sp.sympify(vv).subs(sub)) for kk, vv in row.items()} for k, row in br_f.items()}
                assert got == br, ("bracket", av, bv, ev, hv, br)


def t2n3(variant):
    iso, br = t2n3_formula()
    quot = {"qeta": {"numerator": "eta", "denominator": "b - a"},
            "qeps": {"numerator": "2*a*eps", "denominator": "a - b"}}
    sign_pairs = [("1", "1"), ("1", "-1"), ("-1", "1"), ("-1", "-1")]
    if variant == "generic":
        params = {"a": "1", "b": "2", "eps": "1", "eta": "1"}
        cite = "T2 n.3 (s1 + s2, a != 1/3)"
        gens = [f("e567"), f("e127+e347")]
        core = [exp("invariant_dim", {"degree": 3}, 2, f"{cite}: invariant 3-forms"),
                exp("invariant_span", {"degree": 3}, gens, f"{cite}: e^567, e^127 + e^347"),
                exp("verdict", {}, "not definite", f"{cite}: closed invariant 3-forms are not definite")]
        ref = {"symbols": ["c1", "c2"],
               "forms": {"phi": {"degree": 3, "value": combo([("c1", "e567"), ("c2", "e127+e347")])}}}
        extra = []
    else:
        params = {"a": "1/3", "b": "1", "eps": "1", "eta": "1"}
        cite = "T2 n.3 (s1 + s2, a = 1/3)"
        g = ["e567", "e127+e347", "e135+e146+e236-e245", "e136-e145-e246-e235"]
        gens = [f(x) for x in g]
        core = [exp("invariant_dim", {"degree": 3}, 4, f"{cite}: invariant 3-forms"),
                exp("invariant_span", {"degree": 3}, gens, f"{cite}: gamma_1..gamma_4"),
                exp("verdict", {}, "not definite", f"{cite}: closed invariant 3-forms are not definite")]
        ref = {"symbols": ["c1", "c2", "c3", "c4"],
               "forms": {"phi": {"degree": 3, "value": combo([(f"c{i + 1}", x) for i, x in enumerate(g)])}}}
        extra = [
            exp("d_eval", {"form": "phi", "indices": [7, 5, 1, 3], "keep_symbolic": ["b"]}, "6*b*c4 - 2*c4",
                f"{cite}: dphi(e7,e5,e1,e3) with b symbolic"),
            exp("d_eval", {"form": "phi", "indices": [7, 5, 1, 3]}, "4*c4", f"{cite}: dphi(e7,e5,e1,e3) at b = 1"),
            exp("d_eval", {"form": "phi", "indices": [1, 3, 6, 7], "keep_symbolic": ["b"]}, "6*b*c3 - 2*c3",
                "derived: dphi(e1,e3,e6,e7) with b symbolic"),
            exp("closed_forces_zero", {"form": "phi"}, ["c3", "c4"], f"{cite}: c3 = c4 = 0 for closed phi"),
        ]
    cross = []
    for e_, h_ in sign_pairs:
        if (e_, h_) == ("1", "1"):
            continue
        cross.append({"label": f"(eps,eta) = ({e_},{h_})", "parameters": {"eps": e_, "eta": h_},
                      "checks": [dict(c, cite=c["cite"] + f", (eps,eta) = ({e_},{h_})") for c in core]})
    expected = core[:2] + extra + [exp("d_squared", {"degree": 3}, "refused", "partial data: d o d = 0 is not guaranteed by construction"), core[2]]
    desc = ("s1 + s2 with parameters a, b and signs eps, eta; isotropy and projected bracket only" +
            ("" if variant == "generic" else ", branch a = 1/3"))
    return partial_case(f"T2.n3.{variant}", desc, 7, iso, bracket_json(br), params=params, quotients=quot,
                        reference=ref, expected=expected, cross_checks=cross)


def product_flat():
    omega0 = "e^{1 2} + e^{3 4} + e^{5 6}"
    psi0 = f("e135-e146-e236-e245")
    phi0 = f("e127+e347+e567+e135-e146-e236-e245")
    ref = {"symbols": [], "forms": {
        "omega0": {"dimension": 6, "degree": 2, "value": omega0},
        "psi0": {"dimension": 6, "degree": 3, "value": psi0},
        "phi0": {"dimension": 7, "degree": 3, "value": phi0},
    }}
    cite = "flat control R^6 x R"
    six = [["6" if r == c else "0" for c in range(7)] for r in range(7)]
    expected = [
        exp("invariant_dim", {"degree": 3}, 35, "derived: every 3-form on R^7 is invariant"),
        exp("product", {"omega": "omega0", "psi": "psi0"}, f("e127+e135-e146-e236-e245+e347+e567"),
            f"{cite}: phi = omega ^ e^7 + psi"),
        exp("b_matrix", {"form": "phi0"}, six, "derived: B = 6 Id for phi0"),
        exp("verdict", {"form": "phi0"}, "definite (positive)", f"{cite}: phi0 is definite"),
        exp("g2_torsion", {"form": "phi0"}, {"definite": True, "closed": True, "coclosed": True},
            f"{cite}: flat, hence parallel"),
        exp("contract", {"form": "phi0", "index": 7}, omega0, f"{cite}: i_e7 phi0 = omega0"),
        exp("hitchin", {"psi": "psi0"}, {"lambda": "-4", "k_squared_scalar": True},
            "derived: lambda(psi0) < 0 with K^2 = lambda Id"),
        exp("su3", {"omega": "omega0", "psi": "psi0"},
            {"nondegenerate": True, "stable": True, "compatible": True, "tamed": True, "d_omega_zero": True,
             "d_psi_zero": True, "d_star_psi_zero": True, "symplectic_half_flat": True, "strict": False},
            f"{cite}: symplectic half-flat, not strict"),
        exp("d_squared", {"degree": 3}, "refused", "partial data: d o d = 0 is not guaranteed by construction"),
    ]
    return partial_case("product.flat", "abelian R^6 with the standard SU(3) pair, times a central line",
                        6, [], [], reference=ref, expected=expected, central=True)


def su21_t2():
    m = [E(3, 1, 2) - E(3, 2, 1), E(3, 1, 2, I) + E(3, 2, 1, I), E(3, 1, 3) + E(3, 3, 1),
         E(3, 1, 3, I) + E(3, 3, 1, -I), E(3, 2, 3) + E(3, 3, 2), E(3, 2, 3, I) + E(3, 3, 2, -I)]
    h = [sp.diag(I, -I, 0), sp.diag(0, I, -I)]
    ref = {"symbols": [], "forms": {
        "omega": {"degree": 2, "value": f("-2*e12+e34-e56")},
        "psi": {"degree": 3, "value": f("e136-e145+e235+e246")},
    }}
    cite = "SU(2,1)/T^2 example"
    expected = [
        exp("jacobi", {}, True, f"{cite}: matrix basis"),
        exp("su3", {"omega": "omega", "psi": "psi"},
            {"nondegenerate": True, "stable": True, "compatible": True, "tamed": True, "d_omega_zero": True,
             "d_psi_zero": True, "d_star_psi_zero": False, "symplectic_half_flat": True, "strict": True},
            f"{cite}: strictly symplectic half-flat"),
    ]
    return matrix_case("su21_t2", "su(2,1) over the diagonal torus; a strictly symplectic half-flat pair",
                       m + h, [7, 8], complex_field=True, reference=ref, expected=expected)


# ---------------------------------------------------------------- main


def build():
    verify_t2n3()
    bundled = [t1n1(), t1n2("a"), t1n2("b"), t1n2("c"), t1n3(), t1n4(), t1n5(), su31(), t2n1(),
               t2n3("generic"), t2n3("a13"), product_flat()]
    return {
        "cases": {c["id"] + ".json": c for c in bundled},
        "exploratory": {"T1.n2.p1q2.json": t1n2_exploratory()},
        "examples": {"su21_t2.json": su21_t2()},
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    root = Path(__file__).resolve().parent.parent
    ap.add_argument("--out", type=Path, default=root / "data")
    ap.add_argument("--check", action="store_true")
    args = ap.parse_args()
    stale = []
    for sub, files in build().items():
        d = args.out / sub
        d.mkdir(parents=True, exist_ok=True)
        for name, case in files.items():
            text = dump(case) + "\n"
            path = d / name
            if args.check:
                if not path.exists() or path.read_text() != text:
                    stale.append(str(path))
            else:
                path.write_text(text)
    if stale:
        print("out of date:", *stale, sep="\n  ")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
