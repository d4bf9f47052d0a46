"""Rational functions with a factored denominator.

The denominator is kept as ``{monic base polynomial: exponent}``; scalars
are pushed into the numerator.  Keeping the factorisation that arises
naturally from substitution makes cancellation a matter of exact division,
which is far cheaper than a gcd.
"""

from __future__ import annotations

from typing import Sequence

from ..errors import DenominatorIdenticallyZero, DivisionByZero, NotDivisible, ParseError
from ..fields import FieldDescriptor, Scalar
from ..poly import (
    MultiPoly,
    _Parser,
    _tokenize,
    divexact,
    order_vars,
    pack,
    poly_gcd,
)


def _merge(a: dict, b: dict, sign: int = 1) -> dict:
    out = dict(a)
    for B, e in b.items():
        v = out.get(B, 0) + sign * e
        if v:
            out[B] = v
        else:
            out.pop(B, None)
    return out


def _expand(F, factors: dict) -> MultiPoly:
    out = MultiPoly.one(F)
    for B, e in factors.items():
        out = out * B**e
    return out


class RationalFunction:
    """num / prod(B**e); equality is decided by cross-multiplication."""

    __slots__ = ("num", "factors", "_den")

    def __init__(self, num: MultiPoly, den: MultiPoly | None = None, *, factors: dict | None = None):
        self._den = None
        if factors is not None:
            self.num = num
            self.factors = factors
            return
        if den is None or den.is_constant():
            if den is not None:
                if not den.terms:
                    raise DivisionByZero("zero denominator")
                num = num.scale(num.field.inv(den.terms[0]))
            self.num = num
            self.factors = {}
            return
        if num.field != den.field:
            from ..errors import FieldMismatch

            raise FieldMismatch(f"{num.field} vs {den.field}")
        inv = den.field.inv(den.lc())
        self.num = num.scale(inv)
        self.factors = {den.scale(inv): 1}

    # construction ----------------------------------------------------------
    @classmethod
    def coerce(cls, value, field: FieldDescriptor | None = None) -> "RationalFunction":
        if isinstance(value, RationalFunction):
            return value
        if isinstance(value, MultiPoly):
            return cls(value)
        if field is None:
            raise TypeError(f"cannot coerce {value!r} without a field")
        return cls(MultiPoly.constant(field, (), value))

    @classmethod
    def parse(cls, text: str, field: FieldDescriptor, vars: Sequence[str] | None = None) -> "RationalFunction":
        return parse_rational(text, field, vars)

    # queries ---------------------------------------------------------------
    @property
    def field(self) -> FieldDescriptor:
        return self.num.field

    @property
    def vars(self) -> tuple[str, ...]:
        vs = list(self.num.vars)
        for B in self.factors:
            vs.extend(v for v in B.vars if v not in vs)
        return tuple(vs)

    @property
    def den(self) -> MultiPoly:
        if self._den is None:
            self._den = _expand(self.field, self.factors)
        return self._den

    def is_zero(self) -> bool:
        return not self.num.terms

    def is_polynomial(self) -> bool:
        return not self.factors

    def den_degree(self) -> int:
        return sum(e * B.total_degree() for B, e in self.factors.items())

    def __bool__(self):
        return not self.is_zero()

    # arithmetic ------------------------------------------------------------
    def _other(self, other) -> "RationalFunction":
        return RationalFunction.coerce(other, self.field)

    def _lift(self, E: dict) -> MultiPoly:
        """Numerator over the larger factor set E (which contains self.factors)."""
        num = self.num
        for B, e in E.items():
            k = e - self.factors.get(B, 0)
            if k:
                num = num * B**k
        return num

    def __add__(self, other):
        other = self._other(other)
        if not other.factors:
            if not self.factors:
                return RationalFunction(self.num + other.num)
            return RationalFunction(self.num + other.num * self.den, factors=self.factors)
        if not self.factors:
            return other + self
        E = dict(self.factors)
        for B, e in other.factors.items():
            if E.get(B, 0) < e:
                E[B] = e
        return RationalFunction(self._lift(E) + other._lift(E), factors=E)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, factors=self.factors)

    def __sub__(self, other):
        return self + (-self._other(other))

    def __rsub__(self, other):
        return self._other(other) - self

    def __mul__(self, other):
        other = self._other(other)
        if not self.num.terms or not other.num.terms:
            return RationalFunction(MultiPoly.zero(self.field, self.num.vars))
        return RationalFunction(self.num * other.num, factors=_merge(self.factors, other.factors))

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if not self.num.terms:
            raise DivisionByZero("inverse of the zero function")
        F = self.field
        den = self.num
        num = _expand(F, self.factors) if self.factors else MultiPoly.one(F, den.vars)
        if den.is_constant():
            return RationalFunction(num.scale(F.inv(den.terms[0])))
        inv = F.inv(den.lc())
        return RationalFunction(num.scale(inv), factors={den.scale(inv): 1})

    def __truediv__(self, other):
        other = self._other(other)
        if not other.num.terms:
            raise DivisionByZero("division by the zero function")
        F = self.field
        num = self.num
        for B, e in other.factors.items():
            num = num * B**e
        d = other.num
        if d.is_constant():
            return RationalFunction(num.scale(F.inv(d.terms[0])), factors=self.factors)
        inv = F.inv(d.lc())
        return RationalFunction(num.scale(inv), factors=_merge(self.factors, {d.scale(inv): 1}))

    def div_pow(self, other: "RationalFunction", e: int) -> "RationalFunction":
        """self / other**e, keeping other's numerator as a single base with exponent e."""
        if not other.num.terms:
            raise DivisionByZero("division by the zero function")
        F = self.field
        num = self.num
        for B, k in other.factors.items():
            num = num * B ** (k * e)
        d = other.num
        if d.is_constant():
            return RationalFunction(num.scale(F.inv(F.pow(d.terms[0], e))), factors=self.factors)
        inv = F.inv(d.lc())
        return RationalFunction(num.scale(F.pow(inv, e)), factors=_merge(self.factors, {d.scale(inv): e}))

    def __rtruediv__(self, other):
        return self._other(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return RationalFunction(MultiPoly.one(self.field, self.num.vars))
        return RationalFunction(self.num**n, factors={B: e * n for B, e in self.factors.items()})

    def __eq__(self, other):
        if not isinstance(other, (RationalFunction, MultiPoly, int, Scalar)):
            return NotImplemented
        other = self._other(other)
        E = dict(self.factors)
        for B, e in other.factors.items():
            if E.get(B, 0) < e:
                E[B] = e
        return self._lift(E) == other._lift(E)

    __hash__ = None

    # simplification -------------------------------------------------------
    def reduce(self, deep: bool = True) -> "RationalFunction":
        """Cancel common factors; the result is equal to self.

        Each base is first removed from the numerator by exact division.  With
        ``deep`` the remaining bases are split on monomial factors and on
        gcds with the numerator, which catches factors the bases share with it.
        """
        F = self.field
        num = self.num
        if not num.terms:
            return RationalFunction(MultiPoly.zero(F, num.vars))
        factors = {}
        for B, e in self.factors.items():
            num, left = _cancel(num, B, e)
            if left:
                factors[B] = factors.get(B, 0) + left
        if not deep or not factors:
            return RationalFunction(num, factors=factors)
        # split off monomial parts of the bases
        split: dict = {}
        for B, e in factors.items():
            mono = B.monomial_content()
            if any(mono) and len(B.terms) > 1:
                B = divexact(B, MultiPoly(F, B.vars, {pack(mono): F.one}))
                for v, k in zip(B.vars, mono):
                    if k:
                        xv = MultiPoly.var(F, (v,), v)
                        split[xv] = split.get(xv, 0) + k * e
            split[B] = split.get(B, 0) + e
        factors = {}
        for B, e in split.items():
            num, left = _cancel(num, B, e)
            if left:
                factors[B] = factors.get(B, 0) + left
        # gcd splitting of what is left
        changed = True
        while changed:
            changed = False
            for B, e in list(factors.items()):
                if len(B.terms) == 1:
                    continue
                g = poly_gcd(num, B)
                if g.is_constant():
                    continue
                rest = divexact(B, g).monic()
                del factors[B]
                num, left = _cancel(num, g, e)
                if left:
                    factors[g] = factors.get(g, 0) + left
                if not rest.is_constant():
                    factors[rest] = factors.get(rest, 0) + e
                changed = True
                break
        return RationalFunction(num, factors=factors)

    def as_poly(self) -> MultiPoly:
        """The numerator when the reduced function is a polynomial."""
        r = self.reduce()
        if r.factors:
            raise NotDivisible(f"{self} is not a polynomial")
        return r.num

    # evaluation -----------------------------------------------------------
    def eval_raw(self, point: dict):
        """Evaluate at ``{var: raw value}``; raises DivisionByZero on a pole."""
        F = self.field
        d = F.one
        for B, e in self.factors.items():
            v = B.eval_raw([point[x] for x in B.vars])
            if not v:
                raise DivisionByZero("denominator vanishes")
            d = F.mul(d, F.pow(v, e))
        n = self.num.eval_raw([point[x] for x in self.num.vars])
        return F.div(n, d)

    # formatting -------------------------------------------------------------
    def to_text(self) -> str:
        if not self.factors:
            return self.num.to_text()
        return f"({self.num.to_text()})/({self.den.to_text()})"

    __str__ = to_text

    def __repr__(self):
        return f"RationalFunction({self.to_text()!r})"

    def to_json(self) -> dict:
        vs = order_vars(self.vars) if not self.num.vars else self.vars
        return {"num": self.num.embed(vs).to_json(), "den": self.den.embed(vs).to_json()}

    @classmethod
    def from_json(cls, obj) -> "RationalFunction":
        if isinstance(obj, dict) and "num" in obj:
            num = MultiPoly.from_json(obj["num"])
            den = MultiPoly.from_json(obj["den"]) if obj.get("den") is not None else None
            if den is not None and not den.terms:
                raise ParseError("zero denominator")
            return cls(num, den)
        if isinstance(obj, dict):
            return cls(MultiPoly.from_json(obj))
        raise ParseError(f"malformed rational function JSON: {obj!r}")


def _cancel(num: MultiPoly, B: MultiPoly, e: int) -> tuple[MultiPoly, int]:
    """Divide num by B up to e times; returns (quotient, exponent left over)."""
    while e:
        try:
            num = divexact(num, B)
        except NotDivisible:
            break
        e -= 1
    return num, e


def as_rf(h, field=None) -> RationalFunction:
    return RationalFunction.coerce(h, field)


# substitution -----------------------------------------------------------------
def substitute(f: MultiPoly, assignment: dict) -> RationalFunction:
    """f with each variable replaced by a rational function.

    Horner evaluation variable by variable, carrying factored denominators:
    sums are lifted to the larger exponent of each base only, so the result
    has exactly the denominator prod_B B**(max over monomials) and no gcds
    are taken.
    """
    used = f.used_vars()
    F = f.field
    missing = [v for v in used if v not in assignment]
    if missing:
        raise ValueError(f"no value assigned to {missing}")
    # the result lives in the variables of the assigned values, even when
    # f uses none of them
    target: list = []
    for a in assignment.values():
        for v in RationalFunction.coerce(a, F).vars:
            if v not in target:
                target.append(v)
    target = tuple(target)
    if not f.terms:
        return RationalFunction(MultiPoly.zero(F, target))
    vals = {}
    for v in used:
        r = RationalFunction.coerce(assignment[v], F)
        if r.field != F:
            from ..errors import FieldMismatch

            raise FieldMismatch(f"{r.field} vs {F}")
        vals[v] = (r.num, r.factors)
    powers: dict = {}

    def bpow(B, k):
        pw = powers.setdefault(B, [MultiPoly.one(F)])
        while len(pw) <= k:
            pw.append(pw[-1] * B)
        return pw[k]

    def lift(num, E, target):
        for B, e in target.items():
            k = e - E.get(B, 0)
            if k:
                num = num * bpow(B, k)
        return num

    def rec(p: MultiPoly, idx: int):
        if idx == len(used):
            return MultiPoly.constant(F, (), p.terms.get(0, F.zero)), {}
        v = used[idx]
        n, fac = vals[v]
        coeffs = p.coeffs_in(v) if v in p.vars else {0: p}
        acc = None
        for i in range(max(coeffs), -1, -1):
            if acc is not None:
                acc = (acc[0] * n, _merge(acc[1], fac))
            c = coeffs.get(i)
            if c is not None and c.terms:
                t = rec(c, idx + 1)
                if acc is None:
                    acc = t
                else:
                    E = dict(acc[1])
                    for B, e in t[1].items():
                        if E.get(B, 0) < e:
                            E[B] = e
                    acc = (lift(acc[0], acc[1], E) + lift(t[0], t[1], E), E)
        return acc if acc is not None else (MultiPoly.zero(F, ()), {})

    num, E = rec(f, 0)
    if num.vars != target and set(num.vars) <= set(target):
        num = num.embed(target)
    return RationalFunction(num, factors=E)


def substitute_poly(f: MultiPoly, assignment: dict[str, MultiPoly]) -> MultiPoly:
    """Polynomial substitution; every assigned value must be a polynomial."""
    r = substitute(f, {v: RationalFunction(p) for v, p in assignment.items()})
    return r.num


def substitute_rf(h, assignment: dict) -> RationalFunction:
    """Substitute into a rational function, keeping the denominator factored."""
    h = as_rf(h)
    res = substitute(h.num, assignment)
    for B, e in h.factors.items():
        sB = substitute(B, assignment).reduce(deep=False)
        if sB.is_zero():
            raise DenominatorIdenticallyZero(f"denominator factor {B} becomes 0")
        res = res.div_pow(sB, e)
    return res


# text grammar -----------------------------------------------------------------
class _RationalRing:
    def __init__(self, field, vars):
        self.field = field
        self.vars = tuple(vars)

    def number(self, n):
        return RationalFunction(MultiPoly.constant(self.field, self.vars, n))

    def variable(self, name):
        if name not in self.vars:
            raise ParseError(f"unknown variable {name!r} (expected one of {self.vars})")
        return RationalFunction(MultiPoly.var(self.field, self.vars, name))

    def divide(self, a, b):
        if b.is_zero():
            raise ParseError("division by zero in expression")
        return a / b

    def power(self, base, e):
        if e < 0 and base.is_zero():
            raise ParseError("negative power of zero")
        return base**e


def parse_rational(text: str, field: FieldDescriptor, vars: Sequence[str] | None = None) -> RationalFunction:
    tokens = _tokenize(text)
    if vars is None:
        vars = order_vars(v for k, v in tokens if k == "id")
    return _Parser(tokens, _RationalRing(field, vars)).parse()
