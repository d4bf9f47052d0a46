import warnings

import pytest

from planecomp.constructions import (
    c_from_b,
    costa_curve,
    costa_kappa,
    costa_psi,
    degree7_pair,
    degree7_polys,
    family_char0,
    family_charp,
    line_aut_certificate,
    line_complement_aut,
    negativity_coefficients,
    phi_b,
    prop_negativity3,
    psi_bm,
    sl2_pair,
)
from planecomp.errors import (
    DegreeBoundExceeded,
    DegreeTooLarge,
    DeterminantNotOne,
    NotCoprime,
    RootAtZero,
    YDividesP,
    ZeroCornerCoefficient,
    ZeroScalar,
)
from planecomp.fields import GF, QQ
from planecomp.poly import parse_poly
from planecomp.ratmap import RationalFunction, parse_rational, verify_inverse

XY = ("x", "y")
XYZ = ("x", "y", "z")


def P(s, F=QQ, vars=XY):
    return parse_poly(s, F, vars)


def T(s, F=QQ):
    return parse_poly(s, F, ("t",))


def test_sl2_identity_matrix():
    pair = sl2_pair(1, 0, 0, 1, field=QQ)
    assert pair.C == P("x") and pair.D == P("x")
    assert pair.iso.components[0] == parse_rational("1/x", QQ, XY)
    assert pair.passed


def test_sl2_y_matrix():
    pair = sl2_pair("y", -1, 1, 0, field=QQ)
    assert pair.C == P("y*x-1") and pair.D == P("y*x-1")
    assert pair.iso.components[0] == parse_rational("x/(y*x-1)", QQ, XY)


def test_sl2_rejects_bad_determinant():
    with pytest.raises(DeterminantNotOne):
        sl2_pair(1, 1, 1, 1, field=QQ)
    with pytest.raises(DeterminantNotOne):
        sl2_pair(0, 1, -1, 0, field=QQ)


def test_negativity_coefficients():
    # frozen from an independent Bezout computation
    c, d = negativity_coefficients(T("t"), T("t+1"), 3)
    assert c == T("-t^2+t-1") and d == T("-1")
    assert T("t^3") * d - T("t+1") * c == T("1")
    c, d = negativity_coefficients(T("t"), T("1"), 1)
    assert c == T("-1") and d.is_zero()


def test_prop_negativity3():
    pair = prop_negativity3(T("t"), T("t+1"), 3)
    assert pair.passed
    assert pair.C == P("y^3*x+y+1")
    assert pair.D == P("y^3*x+y^2-y+1")
    with pytest.warns(UserWarning):
        pair = prop_negativity3(T("t"), T("t+1"), 2)
    assert pair.passed
    with pytest.raises(NotCoprime):
        prop_negativity3(T("t"), T("t"), 1)


def test_prop_negativity3_warns_on_small_degree():
    with pytest.warns(UserWarning):
        prop_negativity3(T("t"), T("t+1"), 1)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        prop_negativity3(T("t"), T("t+1"), 3)


def test_phi_b():
    assert list(phi_b(P("1"), 1).components) == [parse_rational("x*y+1", QQ, XY), parse_rational("y", QQ, XY)]
    m = phi_b(P("y+1"), 3)
    assert m.components[0] == parse_rational("x*y^3+y+1", QQ, XY)
    assert verify_inverse(m).passed
    with pytest.raises(RootAtZero):
        phi_b(P("y"), 1)


def test_c_from_b():
    for mu in (0, 1, 5, "1/2"):
        b = P(f"{mu}*y^2+y+1")
        assert c_from_b(b, 3, 1) == P(f"({mu}-1)*y^2+y+1")
    assert c_from_b(P("1"), 4, 3) == P("1")
    F2 = GF(2)
    c = c_from_b(P("1+y", F2), 4, 2)
    assert c.truncate("y", 4) == P("1+y+y^3", F2)
    with pytest.raises(DegreeTooLarge):
        c_from_b(P("1+y^3"), 3, 1)
    with pytest.raises(RootAtZero):
        c_from_b(P("y"), 3, 1)


def test_psi_bm_examples():
    pair = psi_bm(P("y+1"), 3, 1)
    assert pair.passed
    assert pair.D == P("x*y^3-y^2+y+1")
    assert pair.iso.components[1] == RationalFunction(P("y*(x*y^3+y+1)"))
    line = psi_bm(P("1"), 1, 1)
    assert line.passed and line.C == line.D == P("x*y+1")


def test_psi_bm_theta_not_polynomial():
    b = P("y+1")
    p1, p2 = psi_bm(b, 3, 1), psi_bm(b, 3, 2)
    from planecomp.ratmap import compose

    theta = compose(p1.iso, p2.iso.inverse_map())
    second = theta.components[1].reduce()
    assert not second.is_polynomial()


@pytest.mark.parametrize("mu", [0, 1, 5])
def test_family_char0(mu):
    pair = family_char0(mu)
    assert pair.passed
    assert pair.C == P(f"x*y^3+{mu}*y^2+y+1")
    assert pair.D == P(f"x*y^3+({mu}-1)*y^2+y+1")


def test_family_charp():
    pairs = family_charp(2, 2)
    F2 = GF(2)
    assert len(pairs) == 2 and all(p.passed for p in pairs)
    assert pairs[0].D == pairs[1].D == P("x*y^6+1+y", F2)
    c1, c2 = (p.data["c"] for p in pairs)
    assert c1.truncate("y", 4) == P("1+y+y^3", F2)
    assert c2.truncate("y", 6) == P("1+y+y^5", F2)
    (p3,) = family_charp(3, 1)
    assert p3.data["c"].truncate("y", 5) == P("1+y-y^4", GF(3))
    with pytest.raises(DegreeBoundExceeded):
        family_charp(2, 5)


def test_degree7_identity_parameters():
    pair = degree7_pair(1, 0, 0, 1)
    f = P("y*(1-x^2*y)^2-x")
    assert pair.C == f and pair.D == f
    assert pair.C == P("x^4*y^3-2*x^2*y^2-x+y")
    assert pair.iso.components[0] == RationalFunction(P("x^2*y-1"), f)
    assert pair.iso.components[1] == RationalFunction(P("y") * f)
    u = pair.certificate.extras["unit"]
    assert (u[0].value, u[1]) == (1, -1)


def test_degree7_f5_and_errors():
    F5 = GF(5)
    pair = degree7_pair(1, 1, 2, 1, F5)
    assert pair.passed and pair.C.total_degree() == 7 == pair.D.total_degree()
    assert pair.data["P"] == T("t^3+2*t^2+t+1", F5)
    pair = degree7_pair(1, 1, -3, 1, F5)  # (1, 3-alpha, -3, 1) with alpha = 2
    assert pair.passed
    with pytest.raises(ZeroCornerCoefficient):
        degree7_pair(0, 1, 1, 1)


def test_degree7_swap_twice():
    f, g, psi, psi_inv = degree7_polys(2, 3, 5, 7, QQ)
    g2, f2, inv2, psi2 = degree7_polys(7, 5, 3, 2, QQ)
    assert (f, g) == (f2, g2)
    assert list(psi) == list(psi2) and list(psi_inv) == list(inv2)


def test_line_complement_aut():
    ident = line_complement_aut(1, 1, 0, 0, 1)
    assert list(ident.components) == [parse_rational("x", QQ, XY), parse_rational("y", QQ, XY)]
    inv = line_complement_aut(1, -1, 0, 0, 1)
    assert inv.components[0] == parse_rational("1/x", QQ, XY)
    m = line_complement_aut(2, 1, 3, parse_rational("1/x+x", QQ, XY), 5)
    assert m.components[1] == parse_rational("5*x^3*y+1/x+x", QQ, XY)
    assert line_aut_certificate(m).passed
    assert line_aut_certificate(line_complement_aut(3, -1, -2, parse_rational("x^2-7/x^3", QQ, XY), -1)).passed
    with pytest.raises(ZeroScalar):
        line_complement_aut(0, 1, 0, 0, 1)


def test_costa_curve():
    x = P("x")
    f = costa_curve(x)
    w = "(x*z-y^2)"
    assert f == P(f"z*{w}^2+2*x^2*y*{w}+x^5", vars=XYZ)
    assert f.total_degree() == 5 and f.is_homogeneous()
    assert costa_curve(P("x^2+x*y")).total_degree() == 9
    with pytest.raises(YDividesP):
        costa_curve(P("y"))


def test_costa_psi_fixes_x_and_w():
    psi = costa_psi(P("x^2+x*y"))
    w = P("x*z-y^2", vars=XYZ)
    assert psi.pullback(w) == RationalFunction(w)
    assert psi.pullback(P("x", vars=XYZ)) == RationalFunction(P("x", vars=XYZ))


def test_costa_kappa_d1():
    pair = costa_kappa(P("x"), 2)
    assert pair.passed
    names = [c.name for c in pair.certificate.checks]
    assert "(psi_P)*(z) = f_P w^(-2d)" in names
    assert pair.D == costa_curve(P("2*x"))


def test_costa_kappa_lambda_one():
    pair = costa_kappa(P("x"), 1)
    assert pair.passed and pair.C == pair.D
    for c, v in zip(pair.iso.components, XYZ):
        assert c == RationalFunction(P(v, vars=XYZ))
    with pytest.raises(ZeroScalar):
        costa_kappa(P("x"), 0)
