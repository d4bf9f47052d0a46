"""Generators for the curve pairs with isomorphic complements.

Every constructor builds the curves and the map, runs the certifier, and
refuses to return a pair whose certificate fails.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field as dc_field
from typing import Any

from .errors import (
    DegreeBoundExceeded,
    DegreeTooLarge,
    DeterminantNotOne,
    NotCoprime,
    NotHomogeneous,
    PlanecompError,
    RootAtZero,
    YDividesP,
    ZeroCornerCoefficient,
    ZeroScalar,
)
from .fields import QQ, FieldDescriptor, GF, Scalar
from .poly import MultiPoly, degree_bound, divexact, parse_poly, poly_gcd, uni_divmod, uni_ext_gcd
from .ratmap import (
    BirationalMap,
    Certificate,
    RationalFunction,
    compose,
    substitute_poly,
    verify_complement_iso,
    verify_cone_complement_iso,
)

XY = ("x", "y")
XYZ = ("x", "y", "z")


class ConstructionFailed(PlanecompError, RuntimeError):
    """Raised when a construction's own certificate does not pass (a bug, not bad input)."""

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


@dataclass
class CurvePair:
    C: MultiPoly
    D: MultiPoly
    iso: BirationalMap
    certificate: Certificate
    provenance: dict = dc_field(default_factory=dict)
    data: dict = dc_field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.certificate.passed

    def to_json(self) -> dict:
        out = {
            "construction": self.certificate.construction,
            "provenance": {k: str(v) for k, v in self.provenance.items()},
            "field": str(self.C.field),
            "C": self.C.to_json(),
            "D": self.D.to_json(),
            "C_text": self.C.to_text(),
            "D_text": self.D.to_text(),
            "map": self.iso.to_json(),
            "certificate": self.certificate.to_json(),
        }
        if self.data:
            out["data"] = {k: (v.to_text() if hasattr(v, "to_text") else str(v)) for k, v in self.data.items()}
        return out


def _finish(pair: CurvePair) -> CurvePair:
    if not pair.certificate.passed:
        raise ConstructionFailed(f"{pair.certificate.construction}: failed checks {pair.certificate.failed()}", pair)
    return pair


def _in_y(p, field: FieldDescriptor | None = None, vars=XY) -> MultiPoly:
    """A univariate input (in any one variable) re-expressed in y inside ``vars``."""
    if not isinstance(p, MultiPoly):
        if field is None:
            raise TypeError("a field is needed for scalar or text input")
        if not isinstance(p, str):
            return MultiPoly.constant(field, vars, p)
        p = parse_poly(p, field)
    v = p.univariate_var()
    if v is None:
        return MultiPoly(p.field, vars, dict(p.terms) if not p.terms or 0 in p.terms else {0: p.constant_value()})
    return MultiPoly.univariate(p.field, p.to_coeff_list(v), "y", vars)


def _var(F, name, vars=XY):
    return MultiPoly.var(F, vars, name)


# SL2 ---------------------------------------------------------------------------
def sl2_pair(a, b, c, d, field: FieldDescriptor | None = None) -> CurvePair:
    """C: a x + b = 0, D: a x - c = 0 and phi = ((c x + d)/(a x + b), y)."""
    field = field or next(p.field for p in (a, b, c, d) if isinstance(p, MultiPoly))
    a, b, c, d = (_in_y(p, field) for p in (a, b, c, d))
    if not a.terms:
        raise DeterminantNotOne("a must be nonzero")
    if a * d - b * c != MultiPoly.one(field, XY):
        raise DeterminantNotOne(f"ad - bc = {a * d - b * c}")
    x, y = _var(field, "x"), _var(field, "y")
    C = a * x + b
    D = a * x - c
    phi = BirationalMap(
        [RationalFunction(c * x + d, C), y],
        [RationalFunction(-b * x + d, D), y],
        XY, name="phi", field=field,
    )
    cert = verify_complement_iso(phi, C, D, "sl2", {"a": a, "b": b, "c": c, "d": d})
    cert.add("gcd(a, b) = 1 (C irreducible)", poly_gcd(a, b).is_one())
    cert.add("gcd(a, c) = 1 (D irreducible)", poly_gcd(a, c).is_one())
    return _finish(CurvePair(C, D, phi, cert, {"a": a, "b": b, "c": c, "d": d}))


def negativity_coefficients(f: MultiPoly, b: MultiPoly, n: int) -> tuple[MultiPoly, MultiPoly]:
    """(c, d) with f^n d - b c = 1 and deg c < deg f^n."""
    var = f.univariate_var() or b.univariate_var() or "t"
    F = f.field
    fn = f**n
    g, s, u = uni_ext_gcd(fn, b, var)
    if not g.is_one():
        raise NotCoprime(f"gcd(f^n, b) = {g}")
    d, c = s, -u
    q, c = uni_divmod(c, fn, var)
    d = d - q * b
    vs = (var,)
    assert fn.embed(vs) * d - b.embed(vs) * c == MultiPoly.one(F, vs)
    return c, d


def prop_negativity3(f: MultiPoly, b: MultiPoly, n: int) -> CurvePair:
    """C: f(y)^n x + b(y) = 0 and D: f(y)^n x - c(y) = 0."""
    if n < 1:
        raise ValueError("n must be positive")
    if f.total_degree() < 1:
        raise ValueError("f must have degree at least 1")
    if not b.terms:
        raise NotCoprime("b = 0 shares every factor with f^n")
    c, d = negativity_coefficients(f, b, n)
    if not (f.total_degree() * n > 2 * max(b.total_degree(), 0)):
        warnings.warn("deg f^n <= 2 deg b: the pair need not be non-equivalent", stacklevel=2)
    pair = sl2_pair(f**n, b, c, d, field=f.field)
    pair.certificate.construction = "negativity3"
    pair.provenance.update(f=f, b=b, n=n)
    pair.data.update(c=c, d=d)
    return pair


# x y^d + b(y) curves ----------------------------------------------------------------
def phi_b(b: MultiPoly, d: int) -> BirationalMap:
    """(x y^d + b(y), y) with inverse ((x - b(y))/y^d, y)."""
    F = b.field
    b = _in_y(b, F)
    if not b.constant_value():
        raise RootAtZero("b(0) = 0")
    x, y = _var(F, "x"), _var(F, "y")
    yd = y**d
    return BirationalMap([x * yd + b, y], [RationalFunction(x - b, yd), y], XY, name="phi_b", field=F)


def tau_power(F: FieldDescriptor, m: int) -> BirationalMap:
    x, y = _var(F, "x"), _var(F, "y")
    return BirationalMap([x, x**m * y], [x, RationalFunction(y, x**m)], XY, name=f"tau^{m}", field=F)


def c_from_b(b: MultiPoly, d: int, m: int) -> MultiPoly:
    """The unique c of degree <= d-1 with b(y) = c(y b(y)^m) mod y^d."""
    F = b.field
    b = _in_y(b, F)
    bl = b.to_coeff_list("y")
    if not bl or not bl[0]:
        raise RootAtZero("b(0) = 0")
    if len(bl) - 1 > d - 1:
        raise DegreeTooLarge(f"deg b = {len(bl) - 1} exceeds d - 1 = {d - 1}")
    y = _var(F, "y")
    u = (y * b**m).truncate("y", d)
    # coefficient lists of u^j mod y^d
    powers = [MultiPoly.one(F, XY)]
    for _ in range(1, d):
        powers.append((powers[-1] * u).truncate("y", d))
    plist = [p.to_coeff_list("y") + [F.zero] * d for p in powers]
    b0m = F.pow(bl[0], m)
    coeffs = []
    for k in range(d):
        acc = bl[k] if k < len(bl) else F.zero
        for j in range(k):
            acc = F.sub(acc, F.mul(coeffs[j], plist[j][k]))
        coeffs.append(F.div(acc, F.pow(b0m, k)))
    c = MultiPoly.univariate(F, coeffs, "y", XY)
    # replay the congruence
    lhs = substitute_poly(c, {"x": _var(F, "x"), "y": y * b**m}).truncate("y", d)
    if lhs != b.truncate("y", d):
        raise ConstructionFailed("congruence b = c(y b^m) mod y^d failed to replay")
    return c


def psi_bm(b: MultiPoly, d: int, m: int) -> CurvePair:
    """psi_{b,m} = (phi_c)^-1 o tau^m o phi_b from {x y^d + b = 0} to {x y^d + c = 0}."""
    F = b.field
    b = _in_y(b, F)
    c = c_from_b(b, d, m)
    x, y = _var(F, "x"), _var(F, "y")
    fb = phi_b(b, d)
    fc_inv = phi_b(c, d).inverse_map()
    psi = compose(fc_inv, compose(tau_power(F, m), fb))
    psi.name = "psi_bm"
    C = x * y**d + b
    D = x * y**d + c
    cert = verify_complement_iso(psi, C, D, "psi-bm", {"b": b, "d": d, "m": m, "c": c})
    first, second = psi.components
    delta = C**m
    cert.add("second component = y (x y^d + b)^m", second == RationalFunction(y * delta))
    lam = None
    ok = False
    try:
        N = (first * RationalFunction(y**d * delta**d)).reduce(deep=False)
        if N.is_polynomial():
            rest = divexact(N.num, y**d) - x
            at0 = rest.partial_eval({"y": 0})
            if at0.is_constant():
                lam = Scalar(F, at0.constant_value())
                ok = divexact(rest - at0, y) is not None
    except PlanecompError:
        ok = False
    cert.add("first component = (x + lambda + y f)/(x y^d + b)^(md)", ok, lam=lam)
    cert.add("c(0) = b(0)", c.constant_value() == b.constant_value())
    return _finish(CurvePair(C, D, psi, cert, {"b": b, "d": d, "m": m}, {"c": c, "lambda": lam}))


def family_char0(mu, field: FieldDescriptor = QQ) -> CurvePair:
    """(x y^3 + mu y^2 + y + 1 = 0, x y^3 + (mu - 1) y^2 + y + 1 = 0)."""
    b = MultiPoly.univariate(field, [1, 1, mu], "y", XY)
    pair = psi_bm(b, 3, 1)
    pair.certificate.construction = "family-char0"
    pair.provenance["mu"] = Scalar(field, mu)
    return pair


def family_charp(p: int, n: int) -> list[CurvePair]:
    """Curves x y^d + c_i(y) = 0 (m = p^i, i = 1..n) against the common x y^d + 1 + y = 0.

    In each returned pair D is the common curve and C the i-th member; the map
    is psi_{b,m} inverted.
    """
    F = GF(p)
    d = p**n + 2
    if d > degree_bound():
        raise DegreeBoundExceeded(f"d = {d} exceeds the degree bound {degree_bound()}")
    b = MultiPoly.univariate(F, [1, 1], "y", XY)
    out = []
    for i in range(1, n + 1):
        fwd = psi_bm(b, d, p**i)
        inv = fwd.iso.inverse_map()
        cert = verify_complement_iso(inv, fwd.D, fwd.C, "family-charp", {"p": p, "n": n, "i": i, "d": d})
        cert.absorb(fwd.certificate, prefix="forward: ")
        pair = _finish(CurvePair(fwd.D, fwd.C, inv, cert, {"p": p, "n": n, "i": i, "d": d, "m": p**i},
                                 {"c": fwd.data["c"]}))
        out.append(pair)
    return out


# degree 7 ------------------------------------------------------------------------------
def degree7_polys(a0, a1, a2, a3, field: FieldDescriptor):
    F = field
    a0, a1, a2, a3 = (F.coerce(v) for v in (a0, a1, a2, a3))
    x, y = _var(F, "x"), _var(F, "y")
    one = MultiPoly.one(F, XY)

    def curve(b0, b1, b2, b3):
        u = one - x * (x * y + b1)
        return u * (y * u - F.mul(b0, b2)) - x * F.mul(F.mul(b0, b0), b3)

    f = curve(a0, a1, a2, a3)
    g = curve(a3, a2, a1, a0)

    def comps(b0, b1, h):
        return [RationalFunction((x * (x * y + b1) - one).scale(b0), h),
                RationalFunction((y * h).scale(F.inv(F.mul(b0, b0))))]

    return f, g, comps(a0, a1, f), comps(a3, a2, g)


def degree7_pair(a0, a1, a2, a3, field: FieldDescriptor = QQ) -> CurvePair:
    F = field
    if not F.mul(F.coerce(a0), F.coerce(a3)):
        raise ZeroCornerCoefficient("a0 * a3 = 0")
    f, g, psi, psi_inv = degree7_polys(a0, a1, a2, a3, F)
    iso = BirationalMap(psi, psi_inv, XY, name="psi", field=F)
    params = {"a0": a0, "a1": a1, "a2": a2, "a3": a3}
    cert = verify_complement_iso(iso, f, g, "degree7", params)
    u = cert.extras.get("unit")
    a0a3 = F.mul(F.coerce(a0), F.coerce(a3))
    expected = (Scalar(F, F.mul(a0a3, a0a3)), -1)
    cert.add("psi*(g) = (a0 a3)^2 / f", u is not None and (u[0], u[1]) == expected,
             n=None if u is None else u[1], lam=None if u is None else u[0])
    cert.add("deg f = deg g = 7", f.total_degree() == 7 and g.total_degree() == 7, n=f.total_degree())
    P = MultiPoly.univariate(F, [a0, a1, a2, a3], "t")
    Q = MultiPoly.univariate(F, [a3, a2, a1, a0], "t")
    return _finish(CurvePair(f, g, iso, cert, params, {"P": P, "Q": Q}))


# automorphisms of the complement of a line ------------------------------------------------
def line_complement_aut(lam, sign: int, n: int, s, mu, field: FieldDescriptor = QQ) -> BirationalMap:
    """(lam x^(+-1), mu x^n y + s(x, 1/x)); s is a Laurent polynomial given as a rational function."""
    F = field
    lam, mu = F.coerce(lam), F.coerce(mu)
    if not lam or not mu:
        raise ZeroScalar("lambda and mu must be nonzero")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    x, y = _var(F, "x"), _var(F, "y")
    X = RationalFunction(x)
    s = RationalFunction.coerce(s if s is not None else 0, F)
    for B in s.factors:
        if B.used_vars() != ("x",) or len(B.terms) != 1:
            raise ValueError("s must be a Laurent polynomial in x")
    if s.num.used_vars() not in ((), ("x",)):
        raise ValueError("s must only involve x")
    first = X * lam if sign == 1 else X.inverse() * lam
    second = X**n * mu * y + s
    # inverse: x = u(X), y = (Y - s(u)) / (mu u^n)
    u = X / lam if sign == 1 else X.inverse() * lam
    s_u = s if not s.num.terms else _laurent_at(s, u)
    inv_second = (RationalFunction(y) - s_u) / (u**n * mu)
    return BirationalMap([first, second], [u, inv_second], XY, name="line-aut", field=F)


def _laurent_at(s: RationalFunction, u: RationalFunction) -> RationalFunction:
    from .ratmap import substitute_rf

    return substitute_rf(s, {"x": u, "y": RationalFunction(_var(s.field, "y"))})


def line_aut_certificate(phi: BirationalMap) -> Certificate:
    x = _var(phi.field, "x")
    return verify_complement_iso(phi, x, x, "line-aut")


# unicuspidal curves on the cone ---------------------------------------------------------
def _p_at(P: MultiPoly, X: MultiPoly, W: MultiPoly) -> MultiPoly:
    return substitute_poly(P.embed(XY) if P.vars != XY else P, {"x": X, "y": W})


def _costa_check(P: MultiPoly) -> int:
    if not P.is_homogeneous() or not P.terms:
        raise NotHomogeneous("P must be a nonzero form in x, y")
    if set(P.used_vars()) - {"x", "y"}:
        raise ValueError("P must be a form in x and y")
    d = P.total_degree()
    if d < 1:
        raise ValueError("P must have degree at least 1")
    if not P.embed(XY).partial_eval({"x": 1, "y": 0}).constant_value():
        raise YDividesP("y divides P")
    return d


def costa_curve(P: MultiPoly, lam=None) -> MultiPoly:
    """f_P = z w^(2d) + 2 y w^d P(x^2, w) + x P(x^2, w)^2 with w = x z - y^2."""
    d = _costa_check(P)
    F = P.field
    x, y, z = (MultiPoly.var(F, XYZ, v) for v in XYZ)
    w = x * z - y * y
    Pw = _p_at(P, x * x, w)
    wd = w**d
    return z * wd * wd + (y * wd * Pw).scale(F.coerce(2)) + x * Pw * Pw


def costa_psi(P: MultiPoly) -> BirationalMap:
    """psi_P; its claimed inverse is psi_{-P}."""
    d = _costa_check(P)
    F = P.field
    x, y, z = (MultiPoly.var(F, XYZ, v) for v in XYZ)
    w = x * z - y * y
    Pw = _p_at(P, x * x, w)
    wd = w**d

    def comps(sign):
        Q = Pw.scale(F.coerce(sign))
        return [RationalFunction(x),
                RationalFunction(y * wd + x * Q, factors={w: d}),
                RationalFunction(z * wd * wd + (y * Q * wd).scale(F.coerce(2)) + x * Q * Q, factors={w: 2 * d})]

    return BirationalMap(comps(1), comps(-1), XYZ, homogeneous=True, name="psi_P", field=F)


def costa_phi_lambda(lam, field: FieldDescriptor) -> BirationalMap:
    F = field
    lam = F.coerce(lam)
    if not lam:
        raise ZeroScalar("lambda must be nonzero")
    x, y, z = (MultiPoly.var(F, XYZ, v) for v in XYZ)
    w = x * z - y * y

    def comps(l):
        # x + (l - 1) w / z over the common denominator z
        return [RationalFunction(x * z + w.scale(F.sub(l, F.one)), z), RationalFunction(y), RationalFunction(z)]

    return BirationalMap(comps(lam), comps(F.inv(lam)), XYZ, homogeneous=True, name="phi_lambda", field=F)


def scale_x(P: MultiPoly, lam) -> MultiPoly:
    """P(lam x, y)."""
    F = P.field
    P = P.embed(XY)
    return substitute_poly(P, {"x": MultiPoly.var(F, XY, "x").scale(F.coerce(lam)), "y": MultiPoly.var(F, XY, "y")})


def costa_kappa(P: MultiPoly, lam) -> CurvePair:
    """kappa = psi_{P~}^-1 o phi_lambda o psi_P with P~ = P(lam x, y), certified on the cone."""
    d = _costa_check(P)
    F = P.field
    lam_raw = F.coerce(lam)
    if not lam_raw:
        raise ZeroScalar("lambda must be nonzero")
    Pt = scale_x(P, lam_raw)
    fP = costa_curve(P)
    fPt = costa_curve(Pt)
    psiP = costa_psi(P)
    kappa = compose(costa_psi(Pt).inverse_map(), compose(costa_phi_lambda(lam_raw, F), psiP))
    kappa.name = "kappa"
    cert = verify_cone_complement_iso(kappa, fP, fPt, "costa", {"P": P, "lambda": Scalar(F, lam_raw)})
    x, y, z = (MultiPoly.var(F, XYZ, v) for v in XYZ)
    w = x * z - y * y
    cert.add("(psi_P)*(z) = f_P w^(-2d)", psiP.pullback(z) == RationalFunction(fP, w ** (2 * d)), n=-2 * d)
    cert.add("(psi_P)*(w) = w", psiP.pullback(w) == RationalFunction(w))
    cert.add("deg f_P = 4d + 1", fP.total_degree() == 4 * d + 1 and fP.is_homogeneous(), n=fP.total_degree())
    p10 = P.embed(XY).partial_eval({"x": 1, "y": 0}).constant_value()
    val = fP.eval_raw([F.one, F.zero, F.zero])
    cert.add("f_P(1,0,0) = P(1,0)^2 != 0 (f_P, w coprime)", val == F.mul(p10, p10) and bool(val),
             lam=Scalar(F, val))
    return _finish(CurvePair(fP, fPt, kappa, cert, {"P": P, "lambda": Scalar(F, lam_raw), "d": d}, {"P_tilde": Pt}))
