"""Acceptance gate: one pass/fail line per criterion, with its time limit.

Run directly (python tests/test_acceptance.py) or through pytest; the lines
are repeated in the terminal summary under "acceptance criteria".
"""

import json
import sys
import time

import pytest

from planecomp.cli import main as cli_main
from planecomp.constructions import (
    costa_curve,
    costa_kappa,
    degree7_pair,
    family_char0,
    family_charp,
    line_complement_aut,
    line_aut_certificate,
    prop_negativity3,
    psi_bm,
    scale_x,
    sl2_pair,
)
from planecomp.equivalence import costa_equiv_test, equiv_section_curves, spec_iso_test
from planecomp.fields import GF, QQ
from planecomp.points import complement_bijection, count_points
from planecomp.poly import irreducible_over_Fq, parse_poly
from planecomp.ratmap import BirationalMap, RationalFunction, contracted_curves, parse_rational, unit_form

import property_suites

XY = ("x", "y")
XYZ = ("x", "y", "z")


class Gate:
    def __init__(self, record, number, title, limit=None):
        self.record = record
        self.number = number
        self.title = title
        self.limit = limit
        self.checks = []

    def check(self, desc, ok):
        self.checks.append((desc, bool(ok)))
        return bool(ok)

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        dt = time.perf_counter() - self.t0
        if exc_type is not None:
            self.checks.append((f"raised {exc_type.__name__}: {exc}", False))
        if self.limit is not None:
            self.checks.append((f"runtime {dt:.2f}s < {self.limit}s", dt < self.limit))
        ok = all(p for _, p in self.checks)
        limit = f" (limit {self.limit}s)" if self.limit is not None else ""
        self.record(f"[{'PASS' if ok else 'FAIL'}] {self.number}. {self.title}: {dt:.2f}s{limit}")
        for desc, p in self.checks:
            if not p:
                self.record(f"       failed: {desc}")
        assert ok, [d for d, p in self.checks if not p]
        return False


def P(s, F=QQ, vars=XY):
    return parse_poly(s, F, vars)


def _cli(capsys, *argv):
    code = cli_main(["--jobs", "1", *argv])
    out, _ = capsys.readouterr()
    return code, json.loads(out)


def _expand_mod(factors, p):
    """Product of integer coefficient lists (low degree first) mod p."""
    out = [1]
    for f in factors:
        new = [0] * (len(out) + len(f) - 1)
        for i, a in enumerate(out):
            for j, b in enumerate(f):
                new[i + j] += a * b
        out = new
    return [c % p for c in out]


def test_criterion_1_degree7_over_f5(acceptance, capsys):
    with Gate(acceptance, 1, "degree-7 counterexample over F5", 5) as g:
        # (t-1)((t-1)^2 - 2) = (t-1)(t^2 - 2t - 1), expanded independently
        coeffs = _expand_mod([[-1, 1], [-1, -2, 1]], 5)
        g.check("P expands to t^3 + 2t^2 + t + 1", coeffs == [1, 1, 2, 1])
        a = ",".join(map(str, coeffs))
        code, doc = _cli(capsys, "construct", "degree7", "--field", "F5", "--a", a)
        g.check("construct degree7 exits 0", code == 0)
        g.check("certificate passes", doc["certificate"]["pass"] is True)
        F5 = GF(5)
        f = parse_poly(doc["C_text"], F5, XY)
        gg = parse_poly(doc["D_text"], F5, XY)
        g.check("deg f = 7", f.total_degree() == 7)
        g.check("deg g = 7", gg.total_degree() == 7)
        pair = degree7_pair(*coeffs, F5)
        Pt, Qt = pair.data["P"].to_text(), pair.data["Q"].to_text()
        code, res = _cli(capsys, "test", "spec-iso", "--field", "F5", "--p", Pt, "--q", Qt)
        g.check("spec-iso exits 1 (not isomorphic)", code == 1 and res["equivalent"] is False)
        g.check("all 120 elements of PGL2(F5) tested", res["candidates_tested"] == 120)


def test_criterion_2_f2_witness(acceptance):
    with Gate(acceptance, 2, "F2 witness t^4+t+1 vs t^4+t^3+1", 1) as g:
        F2 = GF(2)
        p, q = P("t^4+t+1", F2, ("t",)), P("t^4+t^3+1", F2, ("t",))
        d = spec_iso_test(p, q, F2)
        g.check("not isomorphic", d.equivalent is False)
        g.check("candidates_tested = 6", d.candidates_tested == 6)
        g.check("t^4+t+1 irreducible", irreducible_over_Fq(p))
        g.check("t^4+t^3+1 irreducible", irreducible_over_Fq(q))


def test_criterion_3_unit_identity(acceptance):
    with Gate(acceptance, 3, "unit form of psi*(g) for (1,0,0,1)") as g:
        pair = degree7_pair(1, 0, 0, 1)
        u = unit_form(pair.iso.pullback(pair.D), pair.C)
        g.check("unit_form returns a value", u is not None)
        g.check("(lambda, n) = (1, -1)", u is not None and (u[0].value, u[1]) == (1, -1))
        g.check("psi*(g) = 1/f exactly", pair.iso.pullback(pair.D) == RationalFunction(P("1"), pair.C))


def test_criterion_4_psi_bm(acceptance):
    with Gate(acceptance, 4, "psi_{b,m} structure for b = mu y^2 + y + 1, d = 3, m = 1") as g:
        for mu in (0, 1, 2):
            b = P(f"{mu}*y^2+y+1")
            pair = psi_bm(b, 3, 1)
            g.check(f"mu={mu}: c = (mu-1)y^2+y+1", pair.data["c"] == P(f"({mu}-1)*y^2+y+1"))
            g.check(f"mu={mu}: second component = y(xy^3+b)",
                    pair.iso.components[1] == RationalFunction(P("y") * (P("x*y^3") + b)))
            g.check(f"mu={mu}: certificate passes", pair.passed)


def test_criterion_5_charp_family(acceptance):
    with Gate(acceptance, 5, "char-p family p = 2, n = 2") as g:
        F2 = GF(2)
        pairs = family_charp(2, 2)
        g.check("two pairs", len(pairs) == 2)
        g.check("both certificates pass", all(p.passed for p in pairs))
        c1, c2 = (p.data["c"] for p in pairs)
        g.check("c1 = 1 + y + y^3 mod y^4", c1.truncate("y", 4) == P("1+y+y^3", F2))
        a = P("y^6", F2)
        d = equiv_section_curves(a, c1, a, c2)
        g.check("c1-curve and c2-curve not equivalent", d.equivalent is False)
        g.check("2 candidates (alpha, beta) tested", d.candidates_tested == 2)


def test_criterion_6_costa(acceptance):
    with Gate(acceptance, 6, "unicuspidal curves on the cone", 60) as g:
        for d, Ptext in ((1, "x"), (2, "x^2+x*y")):
            Pf = P(Ptext)
            fP = costa_curve(Pf)
            g.check(f"d={d}: deg f_P = {4 * d + 1}", fP.total_degree() == 4 * d + 1)
            for lam in (2, 3):
                pair = costa_kappa(Pf, lam)
                named = {c.name: c.passed for c in pair.certificate.checks}
                g.check(f"d={d} lam={lam}: (psi_P)*(z) = f_P w^(-2d)", named.get("(psi_P)*(z) = f_P w^(-2d)"))
                g.check(f"d={d} lam={lam}: cone certificate passes", pair.passed)
        Pf = P("x^2+x*y")
        for lam, lt in ((2, 3), (3, 2)):
            r = costa_equiv_test(scale_x(Pf, lam), scale_x(Pf, lt))
            g.check(f"P({lam}x,y) vs P({lt}x,y) not equivalent", r.equivalent is False)


def _affine_pairs(q):
    F = GF(q)
    T = ("t",)
    yield "sl2 identity", sl2_pair(1, 0, 0, 1, field=F)
    yield "sl2 ((y,-1),(1,0))", sl2_pair("y", -1, 1, 0, field=F)
    yield "negativity3 t, t+1, 3", prop_negativity3(P("t", F, T), P("t+1", F, T), 3)
    yield "psi-bm y+1, 3, 1", psi_bm(P("y+1", F), 3, 1)
    yield "psi-bm y+1, 3, 2", psi_bm(P("y+1", F), 3, 2)
    for mu in (0, 1, 2):
        yield f"family-char0 mu={mu}", family_char0(mu, F)
    for i, pair in enumerate(family_charp(q, 1), 1):
        yield f"family-charp p={q} i={i}", pair
    yield "degree7 (1,1,2,1)", degree7_pair(1, 1, 2, 1, F)
    yield "degree7 (1,0,0,1)", degree7_pair(1, 0, 0, 1, F)
    line = line_complement_aut(2, 1, 3, parse_rational("1/x+x", F, XY), 3, F)
    cert = line_aut_certificate(line)
    yield "line-aut", type("Pair", (), {"iso": line, "C": P("x", F), "D": P("x", F), "passed": cert.passed})()


@pytest.mark.parametrize("q", [5, 7, 11])
def test_criterion_7_point_counts(acceptance, q):
    with Gate(acceptance, 7, f"point-count oracle over F{q}") as g:
        for name, pair in _affine_pairs(q):
            if not pair.passed:
                continue
            t0 = time.perf_counter()
            cc = count_points(pair.C)["complement_points"]
            cd = count_points(pair.D)["complement_points"]
            rep = complement_bijection(pair.iso, pair.C, pair.D)
            dt = time.perf_counter() - t0
            g.check(f"{name}: complement counts agree ({cc} vs {cd})", cc == cd)
            g.check(f"{name}: map is a bijection on rational points", rep.bijective)
            g.check(f"{name}: {dt:.2f}s < 10s", dt < 10)


def test_criterion_8_property_suites(acceptance):
    with Gate(acceptance, 8, "property suites") as g:
        for name, (fn, n) in property_suites.SUITES.items():
            done, failures = fn(n)
            g.check(f"{name}: {done} of {n} cases run", done == n)
            g.check(f"{name}: zero failures ({len(failures)})", not failures)


def test_criterion_9_contracted_curves(acceptance):
    with Gate(acceptance, 9, "contracted curves of the quadratic involution") as g:
        comps = [parse_rational(s, QQ, XYZ) for s in ("y*z", "x*z", "x*y")]
        s = BirationalMap(comps, comps, XYZ, homogeneous=True, field=QQ)
        f = contracted_curves(s)
        xyz = P("x*y*z", vars=XYZ)
        g.check("f = xyz up to a nonzero scalar", f.terms and f.monic() == xyz)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
