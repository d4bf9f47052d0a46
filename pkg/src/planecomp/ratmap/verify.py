"""Certificates for inverse pairs, localisation membership, units and complement isomorphisms."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Any

from ..errors import (
    ConstantDivisor,
    InconsistentQuotients,
    MissingInverse,
    NotCoprime,
    NotDivisible,
    NotHomogeneous,
)
from ..fields import Scalar
from ..poly import MultiPoly, divexact, poly_gcd
from .maps import BirationalMap
from .rational import RationalFunction, as_rf, substitute_poly


@dataclass
class Check:
    name: str
    passed: bool
    n: int | None = None
    lam: Any = None
    residual: MultiPoly | None = None
    note: str | None = None

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "pass": bool(self.passed),
            "witness": {
                "n": self.n,
                "lambda": None if self.lam is None else str(self.lam),
                "residual": None if self.residual is None else self.residual.to_json(),
            },
        }


@dataclass
class Certificate:
    construction: str
    field: Any
    inputs: dict = dc_field(default_factory=dict)
    checks: list = dc_field(default_factory=list)
    extras: dict = dc_field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(c.passed for c in self.checks)

    def add(self, name, passed, n=None, lam=None, residual=None, note=None) -> Check:
        c = Check(name, bool(passed), n, lam, residual, note)
        self.checks.append(c)
        return c

    def absorb(self, other: "Certificate", prefix: str = ""):
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.passed, c.n, c.lam, c.residual, c.note))
        for k, v in other.extras.items():
            self.extras.setdefault(k, v)

    def failed(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]

    def to_json(self) -> dict:
        out = {"construction": self.construction, "field": str(self.field)}
        if self.inputs:
            out["inputs"] = {k: str(v) for k, v in self.inputs.items()}
        out["checks"] = [c.to_json() for c in self.checks]
        out["pass"] = self.passed
        return out


# inverse -------------------------------------------------------------------------
def _identity_residuals(phi: BirationalMap, psi: BirationalMap) -> list[MultiPoly]:
    """num - x_i*den for each component of phi o psi."""
    out = []
    for v, c in zip(phi.vars, phi.components):
        comp = psi.pullback(c, reduce=False)
        xv = MultiPoly.var(phi.field, phi.vars, v)
        out.append(comp.num - xv * comp.den)
    return out


def verify_inverse(phi: BirationalMap, name: str = "inverse") -> Certificate:
    """Check phi o phi^-1 = id and phi^-1 o phi = id by cross-multiplication.

    A chain is checked factor by factor: if every factor is inverted by its
    claimed inverse, the reversed chain of inverses inverts the chain.
    """
    if not phi.has_inverse:
        raise MissingInverse("no claimed inverse to verify")
    cert = Certificate(name, phi.field)
    factors = phi.factors
    for i, f in enumerate(factors):
        tag = f"{name}[{i}]" if len(factors) > 1 else name
        finv = f.inverse_map()
        for label, a, b in ((f"{tag}: phi o phi^-1 = id", f, finv), (f"{tag}: phi^-1 o phi = id", finv, f)):
            res = _identity_residuals(a, b)
            bad = next((r for r in res if r.terms), None)
            cert.add(label, bad is None, residual=bad if bad is not None else res[0])
    return cert


# membership and units ---------------------------------------------------------------
def _membership(h, f: MultiPoly):
    """(n, q) with h = q / f**n and n least, or None."""
    if f.is_constant():
        raise ConstantDivisor("localising at a constant")
    h = as_rf(h, f.field).reduce(deep=False)
    if not h.factors:
        return 0, h.num
    bound = h.den_degree()
    cur = h.num
    left = dict(h.factors)
    n = 0
    while True:
        # divide greedily; a quotient of num*f^n by part of the denominator
        # stays divisible by the rest exactly when the whole denominator divides
        for B in list(left):
            while left[B]:
                try:
                    cur = divexact(cur, B)
                except NotDivisible:
                    break
                left[B] -= 1
            if not left[B]:
                del left[B]
        if not left:
            return n, cur
        if n == 0:
            # a leftover base coprime to f can never be cleared by powers of f
            for B in left:
                if poly_gcd(B, f).is_constant():
                    return None
        if n >= bound:
            return None
        cur = cur * f
        n += 1


def localization_member(h, f: MultiPoly) -> int | None:
    """Least n <= deg(den h) with den(h) | num(h)*f**n, or None when h is not in k[x,y,1/f]."""
    r = _membership(h, f)
    return None if r is None else r[0]


def membership_witness(h, f: MultiPoly):
    return _membership(h, f)


def _strip(p: MultiPoly, f: MultiPoly) -> tuple[MultiPoly, int]:
    k = 0
    while p.total_degree() >= f.total_degree():
        try:
            p = divexact(p, f)
        except NotDivisible:
            break
        k += 1
    return p, k


def unit_form(h, f: MultiPoly) -> tuple[Scalar, int] | None:
    """(lam, n) with h = lam * f**n exactly, or None."""
    if f.is_constant():
        raise ConstantDivisor("unit form relative to a constant")
    F = f.field
    h0 = as_rf(h, F)
    h = h0.reduce(deep=False)
    if h.is_zero():
        return None
    fhat = f.monic()
    lcf = f.lc()
    num = h.num
    b = 0
    rest = MultiPoly.one(F)
    for B, e in h.factors.items():
        if B == fhat:
            b += e
            num = num.scale(F.pow(lcf, e))
        else:
            rest = rest * B**e
    num, a = _strip(num, f)
    rest, b2 = _strip(rest, f)
    b += b2
    try:
        c = divexact(num, rest)
    except NotDivisible:
        return None
    if not c.is_constant():
        return None
    lam = c.constant_value()
    n = a - b
    # replay
    lhs = RationalFunction(MultiPoly.constant(F, f.vars, lam) * f ** max(n, 0))
    if n < 0:
        lhs = lhs / f ** (-n)
    if lhs != h0:
        return None
    return Scalar(F, lam), n


# complement isomorphisms ----------------------------------------------------------------
def _members(cert, phi: BirationalMap, f: MultiPoly, label: str, fname: str):
    out = []
    for v, c in zip(phi.vars, phi.components):
        r = _membership(c, f)
        cert.add(f"{label}({v}) in k[{','.join(phi.vars)},1/{fname}]", r is not None,
                 n=None if r is None else r[0])
        out.append(r)
    return out


def _unit_check(cert, name, h, f, allowed=(-1, 1)):
    u = unit_form(h, f)
    ok = u is not None and u[1] in allowed
    cert.add(name, ok, n=None if u is None else u[1], lam=None if u is None else u[0])
    return u


def _complement_checks(cert: Certificate, phi: BirationalMap, f: MultiPoly, g: MultiPoly):
    cert.absorb(verify_inverse(phi))
    inv = phi.inverse_map()
    fwd = _members(cert, phi, f, "phi*", "f")
    back = _members(cert, inv, g, "phi^-1*", "g")
    cert.extras["forward_members"] = fwd
    cert.extras["backward_members"] = back
    u = _unit_check(cert, "phi*(g) = lambda*f^n, n = +-1", phi.pullback(g), f)
    _unit_check(cert, "phi^-1*(f) = lambda*g^n, n = +-1", inv.pullback(f), g)
    cert.extras["unit"] = u


def verify_complement_iso(phi: BirationalMap, f: MultiPoly, g: MultiPoly,
                          construction: str = "complement-iso", inputs: dict | None = None) -> Certificate:
    """Certify that phi restricts to an isomorphism A^2 minus {f=0} -> A^2 minus {g=0}."""
    if phi.dim != 2:
        from ..errors import DimensionMismatch

        raise DimensionMismatch("affine verification expects a map of the plane")
    cert = Certificate(construction, phi.field, inputs or {"f": f, "g": g})
    cert.extras.update(map=phi, f=f, g=g)
    _complement_checks(cert, phi, f, g)
    return cert


def verify_cone_complement_iso(kappa: BirationalMap, f: MultiPoly, g: MultiPoly,
                               construction: str = "cone-complement-iso", inputs: dict | None = None) -> Certificate:
    """Same checks on A^3 for a homogeneous map of degree 1 and homogeneous f, g."""
    if not f.is_homogeneous() or not g.is_homogeneous():
        raise NotHomogeneous("cone verification needs homogeneous f and g")
    cert = Certificate(construction, kappa.field, inputs or {"f": f, "g": g})
    cert.extras.update(map=kappa, f=f, g=g)
    for label, m in (("kappa", kappa), ("kappa^-1", kappa.inverse_map())):
        for v, c in zip(m.vars, m.components):
            c = c.reduce(deep=False)
            if not c.num.is_homogeneous() or not c.den.is_homogeneous():
                raise NotHomogeneous(f"{label} component {v} is not a ratio of forms")
            diff = c.num.total_degree() - c.den.total_degree()
            cert.add(f"{label}({v}) homogeneous of degree 1", diff == 1, n=diff)
    _complement_checks(cert, kappa, f, g)
    return cert


# contracted curves ----------------------------------------------------------------------
def _forms(m) -> list[MultiPoly]:
    """Polynomial triple representing a homogeneous map of P^2."""
    if isinstance(m, BirationalMap):
        comps = [c.reduce(deep=False) for c in m.components]
    else:
        comps = [as_rf(c) for c in m]
    den = MultiPoly.one(comps[0].field)
    for c in comps:
        den = den * c.den
    return [divexact(c.num * den, c.den) for c in comps]


def contracted_curves(s, q=None, vars=("x", "y", "z")) -> MultiPoly:
    """f with q_i(s) = x_i * f for all i; f cuts out the curves contracted by s.

    ``s`` is a homogeneous BirationalMap with inverse, or a triple of forms
    together with the inverse triple ``q``.
    """
    if q is None:
        if not isinstance(s, BirationalMap):
            raise MissingInverse("contracted_curves needs the inverse triple")
        q = _forms(s.inverse_map())
        vars = s.vars
    else:
        q = _forms(q)
    s = _forms(s)
    if len(s) != 3 or len(q) != 3:
        from ..errors import DimensionMismatch

        raise DimensionMismatch("maps of the plane need three forms")
    for triple in (s, q):
        degs = {p.total_degree() for p in triple if p.terms}
        if not all(p.is_homogeneous() for p in triple) or len(degs) != 1:
            raise NotHomogeneous("components must be forms of one common degree")
    g = poly_gcd(poly_gcd(s[0], s[1]), s[2])
    if not g.is_constant():
        raise NotCoprime(f"components share the factor {g}")
    assign = dict(zip(vars, s))
    quotients = []
    for v, qi in zip(vars, q):
        comp = substitute_poly(qi, assign)
        xv = MultiPoly.var(comp.field, vars, v)
        try:
            quotients.append(divexact(comp, xv))
        except NotDivisible as exc:
            raise InconsistentQuotients(f"q({v}) o s is not divisible by {v}") from exc
    if not (quotients[0] == quotients[1] == quotients[2]):
        raise InconsistentQuotients("the three quotients differ")
    return quotients[0]
