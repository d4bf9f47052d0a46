import itertools
import random
from fractions import Fraction

import pytest

from planecomp.equivalence import (
    UNDECIDED,
    MobiusTransform,
    ProjPoint,
    costa_equiv_test,
    equiv_section_curves,
    mobius_from_triples,
    pgl2_orbit_test,
    pgl2_size,
    spec_iso_test,
)
from planecomp.errors import (
    DegenerateTriple,
    DegreeMismatch,
    FieldTooLarge,
    NotSquarefree,
    PreconditionViolated,
    TooFewPoints,
    YDividesP,
)
from planecomp.constructions import family_charp, scale_x
from planecomp.fields import GF, QQ
from planecomp.poly import MultiPoly, parse_poly

INF = "inf"


def T(s, F=QQ):
    return parse_poly(s, F, ("t",))


def Y(s, F=QQ):
    return parse_poly(s, F, ("y",))


def B(s, F=QQ):
    return parse_poly(s, F, ("x", "y"))


def pts(F, *vals):
    return [ProjPoint.parse(F, v) for v in vals]


# Mobius transforms -----------------------------------------------------------------
def test_mobius_from_triples_examples():
    s = pts(QQ, 0, 1, INF)
    assert mobius_from_triples(s, s) == MobiusTransform.identity(QQ)
    swap = mobius_from_triples(s, pts(QQ, INF, 1, 0))
    assert swap == MobiusTransform(QQ, 0, 1, 1, 0)
    dbl = mobius_from_triples(pts(QQ, 0, 1, 2), pts(QQ, 0, 2, 4))
    assert dbl == MobiusTransform(QQ, 2, 0, 0, 1)
    for a, b in zip(pts(QQ, 0, 1, 2), pts(QQ, 0, 2, 4)):
        assert dbl(a) == b
    assert dbl(ProjPoint(QQ, Fraction(7, 3))) == ProjPoint(QQ, Fraction(14, 3))


def test_mobius_degenerate():
    with pytest.raises(DegenerateTriple):
        mobius_from_triples(pts(QQ, 0, 0, 1), pts(QQ, 0, 1, 2))
    with pytest.raises(PreconditionViolated):
        MobiusTransform(QQ, 1, 2, 2, 4)


def test_mobius_projective_equality_and_inverse():
    m = MobiusTransform(GF(7), 2, 3, 1, 4)
    assert m == MobiusTransform(GF(7), 4, 6, 2, 8)
    assert m.compose(m.inverse()) == MobiusTransform.identity(GF(7))


# orbit test ------------------------------------------------------------------------
def _j(points):
    """j-invariant of four points of P^1 over Q, an orbit invariant (independent oracle)."""
    def cr(a, b, c, d):
        def diff(p, q):
            return None if p is None or q is None else p - q
        num = [diff(a, c), diff(b, d)]
        den = [diff(a, d), diff(b, c)]
        # drop factors containing infinity, which cancel in the ratio
        n = 1
        for v in num:
            if v is not None:
                n *= v
        dd = 1
        for v in den:
            if v is not None:
                dd *= v
        return Fraction(n) / Fraction(dd)

    vals = [None if p == INF else Fraction(p) for p in points]
    l = cr(*vals)
    return 256 * (l * l - l + 1) ** 3 / (l * l * (l - 1) ** 2)


def test_pgl2_orbit_examples():
    s = pts(QQ, 0, 1, INF)
    d = pgl2_orbit_test(s, s)
    assert d.equivalent is True and d.witness == MobiusTransform.identity(QQ)
    A, Bs = [0, 1, 2, INF], [0, 1, 2, 3]
    assert _j(A) == 1728 and _j(Bs) == Fraction(35152, 9)
    d = pgl2_orbit_test(pts(QQ, *A), pts(QQ, *Bs))
    assert d.equivalent is False and d.candidates_tested == 24
    with pytest.raises(TooFewPoints):
        pgl2_orbit_test(pts(QQ, 0, 1), pts(QQ, 0, 1))


def test_pgl2_orbit_agrees_with_j_invariant():
    rng = random.Random(7)
    for _ in range(25):
        A = rng.sample(range(-6, 7), 4)
        Bs = rng.sample(range(-6, 7), 4)
        d = pgl2_orbit_test(pts(QQ, *A), pts(QQ, *Bs))
        assert (d.equivalent is True) == (_j(A) == _j(Bs))
        if d.equivalent:
            assert {d.witness(p) for p in pts(QQ, *A)} == set(pts(QQ, *Bs))


def test_pgl2_general_lambda_search():
    # roots {0, 1, zeta} plus infinity against {0, 1, zeta, lam}; most lam break the orbit
    zeta = 3
    S = pts(QQ, 0, 1, zeta, INF)
    found = [lam for lam in range(4, 20) if pgl2_orbit_test(S, pts(QQ, 0, 1, zeta, lam)).equivalent is False]
    assert len(found) >= 10


# spec_iso ---------------------------------------------------------------------------
def test_spec_iso_identity_and_f2():
    d = spec_iso_test(T("t^3-1"), T("t^3-1"))
    assert d.equivalent is True
    F2 = GF(2)
    d = spec_iso_test(T("t^4+t+1", F2), T("t^4+t^3+1", F2))
    assert d.equivalent is False and d.candidates_tested == 6 == pgl2_size(2)


def test_spec_iso_undecided_and_errors():
    d = spec_iso_test(T("t*(t^2-2)"), T("t^3-1"))
    assert d.equivalent == UNDECIDED
    assert spec_iso_test(T("t^2-2"), T("t^2-3")).equivalent == UNDECIDED
    with pytest.raises(NotSquarefree):
        spec_iso_test(T("(t-1)^2"), T("t"))
    with pytest.raises(FieldTooLarge):
        spec_iso_test(T("t^2+1", GF(37)), T("t^2+2", GF(37)))


def test_spec_iso_degree7_f5():
    F5 = GF(5)
    P = T("t^3+2*t^2+t+1", F5)
    Q = T("t^3+t^2+2*t+1", F5)
    d = spec_iso_test(P, Q)
    assert d.equivalent is False and d.candidates_tested == 120


def test_spec_iso_split_over_q():
    # t(t-1)(t-2) and t(t-2)(t-4) differ by t -> 2t
    d = spec_iso_test(T("t*(t-1)*(t-2)"), T("t*(t-2)*(t-4)"))
    assert d.equivalent is True
    d = spec_iso_test(T("t*(t-1)*(t-2)"), T("t*(t-1)*(t-3)"))
    assert d.equivalent is False


def _form(P, F):
    # v * P_h as coefficients of u^i v^(n-i)
    return P.to_coeff_list("t") + [F.zero]


def _invert_check(d1, d2, P, Q, F):
    assert d1.equivalent == d2.equivalent
    if d1.equivalent is True:
        # sigma carries the boundary of Q onto that of P, so its inverse goes back
        n = P.total_degree() + 1
        fwd = d1.witness.act_on_form(_form(P, F), n)
        back = d1.witness.inverse().act_on_form(_form(Q, F), n)
        fp, fq = _form(P, F), _form(Q, F)
        lam = next(F.div(x, y) for x, y in zip(fwd, fq) if y)
        assert [F.mul(lam, y) for y in fq] == fwd
        mu = next(F.div(x, y) for x, y in zip(back, fp) if y)
        assert [F.mul(mu, y) for y in fp] == back


@pytest.mark.parametrize("q", [3, 5, 7])
def test_spec_iso_symmetric_and_matches_orbit(q):
    F = GF(q)
    rng = random.Random(q)
    for _ in range(12):
        r1 = rng.sample(range(q), 3)
        r2 = rng.sample(range(q), 3)
        P = MultiPoly.one(F, ("t",))
        Q = MultiPoly.one(F, ("t",))
        for a in r1:
            P = P * T(f"t-{a}", F)
        for a in r2:
            Q = Q * T(f"t-{a}", F)
        d1, d2 = spec_iso_test(P, Q), spec_iso_test(Q, P)
        _invert_check(d1, d2, P, Q, F)
        orb = pgl2_orbit_test(pts(F, *r1, INF), pts(F, *r2, INF))
        assert d1.equivalent == orb.equivalent


# section curves ------------------------------------------------------------------------
@pytest.mark.parametrize("mu,nu", [(0, 0), (1, 0), (2, 5), (3, 3)])
def test_equiv_section_family(mu, nu):
    a = Y("y^3")
    d = equiv_section_curves(a, Y(f"{mu}*y^2+y+1"), a, Y(f"{nu}*y^2+y+1"))
    assert (d.equivalent is True) == (mu == nu)


def test_equiv_section_identity_witness():
    a, b = Y("y^3+2*y+1"), Y("y^2-1")
    d = equiv_section_curves(a, b, a, b)
    assert d.equivalent is True
    w = d.witness
    assert (w["alpha"].value, w["beta"].value, w["lambda"].value, w["mu"].value) == (1, 0, 1, 1)


def test_equiv_section_finds_affine_change():
    # a2(y) = 3 a1(2y + 2), b2(y) = 5 b1(2y + 2)
    a1, b1 = Y("y^3-y+4"), Y("y^2+1")
    a2 = Y("3*((2*y+2)^3-(2*y+2)+4)")
    b2 = Y("5*((2*y+2)^2+1)")
    d = equiv_section_curves(a1, b1, a2, b2)
    assert d.equivalent is True
    assert d.witness["alpha"].value == 2 and d.witness["beta"].value == 2


def test_equiv_section_charp_family():
    p1, p2 = family_charp(2, 2)
    a = Y("y^6", GF(2))

    c1 = p1.data["c"]
    c2 = p2.data["c"]
    dec = equiv_section_curves(a, c1, a, c2)
    assert dec.equivalent is False and dec.candidates_tested == 2


def test_equiv_section_precondition():
    with pytest.raises(PreconditionViolated):
        equiv_section_curves(Y("y"), Y("y^2+1"), Y("y"), Y("y^2+1"))


# Costa ----------------------------------------------------------------------------------
def test_costa_equiv_examples():
    P = B("x^2+x*y+y^2")
    d = costa_equiv_test(P, P)
    assert d.equivalent is True
    assert (d.witness["rho"].value, d.witness["mu"].value) == (1, 0)
    d = costa_equiv_test(P, B("32*x^2+8*x*y+5*y^2"))
    assert d.equivalent is True
    assert (d.witness["rho"].value, d.witness["mu"].value) == (2, 3)
    assert costa_equiv_test(B("x^2"), B("4*x^2")).equivalent is False


@pytest.mark.parametrize("lam,lt", [(2, 3), (3, 2), (1, 5)])
def test_costa_equiv_scalings(lam, lt):
    P = B("x^2+x*y")
    assert costa_equiv_test(scale_x(P, lam), scale_x(P, lt)).equivalent is False
    assert costa_equiv_test(scale_x(P, lam), scale_x(P, lam)).equivalent is True


def test_costa_equiv_finite_field():
    F7 = GF(7)
    P = B("x^3+x*y^2+y^3", F7)
    # rho = 3, mu = 2
    Pt = B("3*(729*x^3+9*x*y^2+y^3)+2*y^3", F7)
    d = costa_equiv_test(P, Pt)
    assert d.equivalent is True and d.witness["rho"].value == 3


def test_costa_equiv_errors():
    with pytest.raises(DegreeMismatch):
        costa_equiv_test(B("x^2"), B("x^3"))
    with pytest.raises(YDividesP):
        costa_equiv_test(B("x*y"), B("x*y"))
