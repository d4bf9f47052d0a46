"""Sparse multivariate polynomials over Q and F_p.

Monomials are packed into a single integer, 16 bits per variable with the
first variable in the most significant slot, so that integer comparison is
the lexicographic order on the variable list and monomial multiplication is
integer addition.  The top bit of every slot is a guard bit used for the
divisibility test, which caps individual exponents at 2**15 - 1.
"""

from __future__ import annotations

import heapq
import itertools
import os
import re
from typing import Iterable, Sequence

from .errors import (
    DegreeBoundExceeded,
    FieldMismatch,
    InfiniteField,
    NotDivisible,
    NotUnivariate,
    ParseError,
    RootAtLambda,
    ZeroDivisor,
)
from .fields import FieldDescriptor, Scalar

BITS = 16
SLOT = (1 << BITS) - 1
MAX_EXP = (1 << (BITS - 1)) - 1
PREFERRED_ORDER = ("x", "y", "z", "t", "u", "v", "w")
DEFAULT_DEGREE_BOUND = 13

_GUARDS: dict[int, int] = {}


def degree_bound() -> int:
    """Degree bound for exhaustive searches; ``PLANECOMP_DEGREE_BOUND`` overrides it."""
    raw = os.environ.get("PLANECOMP_DEGREE_BOUND")
    return int(raw) if raw else DEFAULT_DEGREE_BOUND


def _guard(n: int) -> int:
    g = _GUARDS.get(n)
    if g is None:
        g = 0
        for _ in range(n):
            g = (g << BITS) | (1 << (BITS - 1))
        _GUARDS[n] = g
    return g


def pack(exps: Sequence[int]) -> int:
    key = 0
    for e in exps:
        if e < 0 or e > MAX_EXP:
            raise OverflowError(f"exponent {e} out of range")
        key = (key << BITS) | e
    return key


def unpack(key: int, n: int) -> tuple[int, ...]:
    out = [0] * n
    for i in range(n - 1, -1, -1):
        out[i] = key & SLOT
        key >>= BITS
    return tuple(out)


def order_vars(names: Iterable[str]) -> tuple[str, ...]:
    names = set(names)
    head = [v for v in PREFERRED_ORDER if v in names]
    return tuple(head + sorted(names - set(head)))


class MultiPoly:
    """Immutable sparse polynomial; ``terms`` maps packed monomials to raw coefficients."""

    __slots__ = ("field", "vars", "terms", "_hash")

    def __init__(self, field: FieldDescriptor, vars: Sequence[str], terms: dict | None = None):
        vars = tuple(vars)
        if len(set(vars)) != len(vars):
            raise ValueError(f"duplicate variables in {vars}")
        self.field = field
        self.vars = vars
        self.terms = terms if terms is not None else {}
        self._hash = None

    # construction ----------------------------------------------------------
    @classmethod
    def from_dict(cls, field, vars, data: dict) -> "MultiPoly":
        """Build from ``{exponent tuple: coefficient}``; zero coefficients are dropped."""
        terms = {}
        for exps, c in data.items():
            c = field.coerce(c)
            if c:
                k = pack(exps)
                v = field.add(terms.get(k, field.zero), c)
                if v:
                    terms[k] = v
                else:
                    terms.pop(k, None)
        return cls(field, vars, terms)

    @classmethod
    def constant(cls, field, vars, c) -> "MultiPoly":
        c = field.coerce(c)
        return cls(field, vars, {0: c} if c else {})

    @classmethod
    def zero(cls, field, vars=()) -> "MultiPoly":
        return cls(field, vars, {})

    @classmethod
    def one(cls, field, vars=()) -> "MultiPoly":
        return cls(field, vars, {0: field.one})

    @classmethod
    def var(cls, field, vars, name: str) -> "MultiPoly":
        vars = tuple(vars)
        exps = [0] * len(vars)
        exps[vars.index(name)] = 1
        return cls(field, vars, {pack(exps): field.one})

    @classmethod
    def univariate(cls, field, coeffs: Sequence, var: str = "t", vars=None) -> "MultiPoly":
        """Build from coefficients listed lowest degree first."""
        vars = tuple(vars) if vars is not None else (var,)
        shift = BITS * (len(vars) - 1 - vars.index(var))
        terms = {}
        for i, c in enumerate(coeffs):
            c = field.coerce(c)
            if c:
                terms[i << shift] = c
        return cls(field, vars, terms)

    @classmethod
    def parse(cls, text: str, field: FieldDescriptor, vars: Sequence[str] | None = None) -> "MultiPoly":
        return parse_poly(text, field, vars)

    # basic queries ---------------------------------------------------------
    @property
    def nvars(self) -> int:
        return len(self.vars)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def is_one(self) -> bool:
        return len(self.terms) == 1 and self.terms.get(0) == self.field.one

    def constant_value(self):
        """Raw constant term."""
        return self.terms.get(0, self.field.zero)

    def items(self):
        """(exponent tuple, Scalar) pairs in descending lex order."""
        n = self.nvars
        for k in sorted(self.terms, reverse=True):
            yield unpack(k, n), Scalar(self.field, self.terms[k])

    def exponents(self):
        n = self.nvars
        return [unpack(k, n) for k in self.terms]

    def coefficient(self, exps: Sequence[int]) -> Scalar:
        return Scalar(self.field, self.terms.get(pack(exps), self.field.zero))

    def _shift(self, var: str) -> int:
        return BITS * (self.nvars - 1 - self.vars.index(var))

    def degree(self, var: str | None = None) -> int:
        """Degree in ``var`` (total degree if omitted); -1 for the zero polynomial."""
        if not self.terms:
            return -1
        if var is None:
            return self.total_degree()
        if var not in self.vars:
            return 0
        s = self._shift(var)
        return max((k >> s) & SLOT for k in self.terms)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(_tdeg(k) for k in self.terms)

    def min_total_degree(self) -> int:
        return min(_tdeg(k) for k in self.terms)

    def is_homogeneous(self) -> bool:
        if not self.terms:
            return True
        it = iter(self.terms)
        d = _tdeg(next(it))
        return all(_tdeg(k) == d for k in it)

    def used_vars(self) -> tuple[str, ...]:
        acc = 0
        for k in self.terms:
            acc |= k
        n = self.nvars
        return tuple(v for i, v in enumerate(self.vars) if (acc >> (BITS * (n - 1 - i))) & SLOT)

    def leading_key(self) -> int:
        return max(self.terms)

    def lc(self):
        """Raw leading coefficient in lex order."""
        return self.terms[max(self.terms)]

    def leading_coefficient(self) -> Scalar:
        return Scalar(self.field, self.lc())

    def monic(self) -> "MultiPoly":
        if not self.terms:
            return self
        return self.scale(self.field.inv(self.lc()))

    # hashing / equality ----------------------------------------------------
    def __hash__(self):
        # invariant under reordering/embedding of variables
        if self._hash is None:
            s = self.field.zero
            for c in self.terms.values():
                s += c
            self._hash = hash((self.field, len(self.terms), self.field.normalize(s)))
        return self._hash

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            if self.field != other.field:
                return False
            if self.vars == other.vars:
                return self.terms == other.terms
            if len(self.terms) != len(other.terms):
                return False
            a, b = align(self, other)
            return a.terms == b.terms
        if isinstance(other, (int, Scalar)):
            return self == MultiPoly.constant(self.field, self.vars, other)
        return NotImplemented

    # variable sets ---------------------------------------------------------
    def embed(self, new_vars: Sequence[str]) -> "MultiPoly":
        """Re-express in ``new_vars``, which must contain every variable in use."""
        new_vars = tuple(new_vars)
        if new_vars == self.vars:
            return self
        missing = set(self.used_vars()) - set(new_vars)
        if missing:
            raise ValueError(f"variables {sorted(missing)} not in {new_vars}")
        n = self.nvars
        pos = [new_vars.index(v) if v in new_vars else None for v in self.vars]
        m = len(new_vars)
        terms = {}
        for k, c in self.terms.items():
            exps = unpack(k, n)
            out = [0] * m
            for i, e in enumerate(exps):
                if e:
                    out[pos[i]] = e
            terms[pack(out)] = c
        return MultiPoly(self.field, new_vars, terms)

    def rename(self, mapping: dict[str, str]) -> "MultiPoly":
        new_vars = tuple(mapping.get(v, v) for v in self.vars)
        return MultiPoly(self.field, new_vars, dict(self.terms))

    # arithmetic ------------------------------------------------------------
    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other
        return MultiPoly.constant(self.field, self.vars, other)

    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            other = self._coerce(other)
        a, b = align(self, other)
        F = a.field
        terms = dict(a.terms)
        for k, c in b.terms.items():
            v = terms.get(k)
            if v is None:
                terms[k] = c
            else:
                v = F.add(v, c)
                if v:
                    terms[k] = v
                else:
                    del terms[k]
        return MultiPoly(F, a.vars, terms)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return MultiPoly(F, self.vars, {k: F.neg(c) for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def scale(self, c) -> "MultiPoly":
        """Multiply by a raw scalar (or anything coercible)."""
        F = self.field
        if not isinstance(c, (int,)) or F.kind == "Q":
            c = F.coerce(c) if not _is_raw(F, c) else c
        else:
            c = c % F.modulus
        if not c:
            return MultiPoly(F, self.vars, {})
        if c == F.one:
            return self
        if F.is_finite:
            p = F.modulus
            return MultiPoly(F, self.vars, {k: v * c % p for k, v in self.terms.items()})
        return MultiPoly(F, self.vars, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            if isinstance(other, Scalar):
                return self.scale(self.field.coerce(other))
            return self.scale(other)
        a, b = align(self, other)
        return MultiPoly(a.field, a.vars, _mul_terms(a.terms, b.terms, a.field))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPoly.one(self.field, self.vars)
        if n == 0:
            return result
        if len(self.terms) == 1:
            (k, c), = self.terms.items()
            if _maxslot(k, self.nvars) * n > MAX_EXP:
                raise OverflowError("exponent overflow")
            return MultiPoly(self.field, self.vars, {k * n: self.field.pow(c, n)})
        base = self
        while True:
            if n & 1:
                result = result * base
            n >>= 1
            if not n:
                return result
            base = base * base

    def __truediv__(self, other):
        """Division by a nonzero constant, or exact division by a polynomial."""
        if isinstance(other, MultiPoly):
            if other.is_constant():
                if not other.terms:
                    raise ZeroDivisor("division by the zero polynomial")
                return self.scale(self.field.inv(other.terms[0]))
            return divexact(self, other)
        c = self.field.coerce(other)
        return self.scale(self.field.inv(c))

    # evaluation ------------------------------------------------------------
    def evaluate(self, point: Sequence) -> Scalar:
        return Scalar(self.field, self.eval_raw([self.field.coerce(v) for v in point]))

    def eval_raw(self, point: Sequence):
        """Evaluate at a point given as raw field values, one per variable."""
        F = self.field
        n = self.nvars
        powcache = [dict() for _ in range(n)]
        total = F.zero
        for k, c in self.terms.items():
            val = c
            for i in range(n - 1, -1, -1):
                e = k & SLOT
                k >>= BITS
                if e:
                    pc = powcache[i]
                    pv = pc.get(e)
                    if pv is None:
                        pv = F.pow(point[i], e)
                        pc[e] = pv
                    val = val * pv
            total = total + val
        return F.normalize(total)

    def partial_eval(self, assignment: dict[str, object]) -> "MultiPoly":
        """Substitute scalars for some variables, keeping the variable list."""
        F = self.field
        idx = {self.vars.index(v): F.coerce(c) for v, c in assignment.items() if v in self.vars}
        n = self.nvars
        terms: dict = {}
        for k, c in self.terms.items():
            exps = list(unpack(k, n))
            val = c
            for i, a in idx.items():
                if exps[i]:
                    val = F.mul(val, F.pow(a, exps[i]))
                    exps[i] = 0
            if val:
                kk = pack(exps)
                terms[kk] = F.add(terms.get(kk, F.zero), val)
        return MultiPoly(F, self.vars, {k: v for k, v in terms.items() if v})

    def derivative(self, var: str) -> "MultiPoly":
        F = self.field
        s = self._shift(var)
        unit = 1 << s
        terms = {}
        for k, c in self.terms.items():
            e = (k >> s) & SLOT
            if e:
                v = F.mul(c, F.coerce(e))
                if v:
                    terms[k - unit] = v
        return MultiPoly(F, self.vars, terms)

    def coeffs_in(self, var: str) -> dict[int, "MultiPoly"]:
        """Coefficients as polynomials in the remaining variables, keyed by degree in ``var``."""
        s = self._shift(var)
        mask = SLOT << s
        parts: dict[int, dict] = {}
        for k, c in self.terms.items():
            e = (k >> s) & SLOT
            parts.setdefault(e, {})[k & ~mask] = c
        return {e: MultiPoly(self.field, self.vars, t) for e, t in parts.items()}

    def homogeneous_component(self, d: int) -> "MultiPoly":
        return MultiPoly(self.field, self.vars, {k: c for k, c in self.terms.items() if _tdeg(k) == d})

    def truncate(self, var: str, below: int) -> "MultiPoly":
        """Drop every term whose degree in ``var`` is at least ``below``."""
        s = self._shift(var)
        return MultiPoly(self.field, self.vars, {k: c for k, c in self.terms.items() if ((k >> s) & SLOT) < below})

    def monomial_content(self) -> tuple[int, ...]:
        """Exponent-wise minimum over all terms (the largest monomial dividing self)."""
        n = self.nvars
        if not self.terms:
            return (0,) * n
        mins = None
        for k in self.terms:
            e = unpack(k, n)
            mins = list(e) if mins is None else [min(a, b) for a, b in zip(mins, e)]
        return tuple(mins)

    # univariate view -------------------------------------------------------
    def univariate_var(self) -> str | None:
        used = self.used_vars()
        if len(used) > 1:
            raise NotUnivariate(f"{self} involves {used}")
        return used[0] if used else None

    def to_coeff_list(self, var: str) -> list:
        """Raw coefficients lowest degree first; raises unless univariate in ``var``."""
        used = self.used_vars()
        if any(v != var for v in used):
            raise NotUnivariate(f"{self} is not univariate in {var}")
        if not self.terms:
            return []
        if var not in self.vars:
            return [self.terms[0]]
        s = self._shift(var)
        out = [self.field.zero] * (self.degree(var) + 1)
        for k, c in self.terms.items():
            out[k >> s] = c
        return out

    # formatting ------------------------------------------------------------
    def to_text(self) -> str:
        return format_poly(self)

    __str__ = to_text

    def __repr__(self):
        return f"MultiPoly({self.field}, {list(self.vars)}, {self.to_text()!r})"

    def to_json(self) -> dict:
        n = self.nvars
        return {
            "field": str(self.field),
            "vars": list(self.vars),
            "terms": [
                {"coeff": self.field.to_str(self.terms[k]), "exps": list(unpack(k, n))}
                for k in sorted(self.terms, reverse=True)
            ],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "MultiPoly":
        try:
            field = FieldDescriptor.parse(obj["field"])
            vars = tuple(obj["vars"])
            data: dict = {}
            for t in obj["terms"]:
                exps = tuple(int(e) for e in t["exps"])
                if len(exps) != len(vars):
                    raise ParseError(f"exponent vector {exps} does not match {vars}")
                data[exps] = field.coerce(str(t["coeff"]))
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed polynomial JSON: {exc}") from exc
        return cls.from_dict(field, vars, data)


def _is_raw(F, c) -> bool:
    if F.kind == "Q":
        return type(c) is type(F.zero)
    return isinstance(c, int) and 0 <= c < F.modulus


def _tdeg(k: int) -> int:
    d = 0
    while k:
        d += k & SLOT
        k >>= BITS
    return d


def _maxslot(k: int, n: int) -> int:
    m = 0
    for _ in range(n):
        m = max(m, k & SLOT)
        k >>= BITS
    return m


def _mul_terms(ft: dict, gt: dict, F: FieldDescriptor) -> dict:
    if not ft or not gt:
        return {}
    if len(ft) > len(gt):
        ft, gt = gt, ft
    res: dict = {}
    get = res.get
    gitems = list(gt.items())
    if len(ft) == 1:
        (m1, c1), = ft.items()
        if F.is_finite:
            p = F.modulus
            return {m1 + m2: c1 * c2 % p for m2, c2 in gitems}
        return {m1 + m2: c1 * c2 for m2, c2 in gitems}
    for m1, c1 in ft.items():
        for m2, c2 in gitems:
            m = m1 + m2
            res[m] = get(m, 0) + c1 * c2
    if F.is_finite:
        p = F.modulus
        return {k: v % p for k, v in res.items() if v % p}
    return {k: v for k, v in res.items() if v}


def align(f: MultiPoly, g: MultiPoly) -> tuple[MultiPoly, MultiPoly]:
    """Embed both polynomials into the union of their variable lists."""
    if f.field != g.field:
        raise FieldMismatch(f"{f.field} vs {g.field}")
    if f.vars == g.vars:
        return f, g
    if not g.terms or (len(g.terms) == 1 and 0 in g.terms):
        return f, MultiPoly(g.field, f.vars, dict(g.terms))
    if not f.terms or (len(f.terms) == 1 and 0 in f.terms):
        return MultiPoly(f.field, g.vars, dict(f.terms)), g
    if set(g.vars) <= set(f.vars):
        return f, g.embed(f.vars)
    if set(f.vars) <= set(g.vars):
        return f.embed(g.vars), g
    union = f.vars + tuple(v for v in g.vars if v not in f.vars)
    return f.embed(union), g.embed(union)


def poly_arith(op: str, f: MultiPoly, g) -> MultiPoly:
    """add/sub/mul with a polynomial, or pow with an integer exponent."""
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "pow":
        return f ** int(g)
    raise ValueError(f"unknown op {op!r}")


# exact division ------------------------------------------------------------
def divexact(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """Return q with f = q*g, or raise NotDivisible.

    Plain division by the single divisor g in lex order; {g} is a Groebner
    basis of (g), so a leading monomial not divisible by lm(g) proves that the
    remainder is nonzero.
    """
    if not g.terms:
        raise ZeroDivisor("division by the zero polynomial")
    f, g = align(f, g)
    F = f.field
    if not f.terms:
        return MultiPoly(F, f.vars, {})
    if len(g.terms) == 1:
        (mg, cg), = g.terms.items()
        G = _guard(f.nvars)
        inv = F.inv(cg)
        out = {}
        for m, c in f.terms.items():
            if ((m | G) - mg) & G != G:
                raise NotDivisible("monomial divisor does not divide")
            out[m - mg] = F.mul(c, inv)
        return MultiPoly(F, f.vars, out)
    G = _guard(f.nvars)
    lm = max(g.terms)
    inv = F.inv(g.terms[lm])
    rest = [(m, c) for m, c in g.terms.items() if m != lm]
    if F.is_finite:
        p = F.modulus
        rest = [(m, (-c) % p) for m, c in rest]
    else:
        rest = [(m, -c) for m, c in rest]
    rem = dict(f.terms)
    heap = [-k for k in rem]
    heapq.heapify(heap)
    q = {}
    finite = F.is_finite
    p = F.modulus
    lmf = max(f.terms)
    # cheap rejections
    if ((lmf | G) - lm) & G != G:
        raise NotDivisible("leading monomial not divisible")
    while heap:
        m = -heapq.heappop(heap)
        c = rem.pop(m, 0)
        if finite:
            c %= p
        if not c:
            continue
        if ((m | G) - lm) & G != G:
            raise NotDivisible("remainder is nonzero")
        qm = m - lm
        qc = c * inv
        if finite:
            qc %= p
        q[qm] = qc
        for mg, cg in rest:
            mm = qm + mg
            v = rem.get(mm)
            if v is None:
                rem[mm] = qc * cg
                heapq.heappush(heap, -mm)
            else:
                rem[mm] = v + qc * cg
    return MultiPoly(F, f.vars, q)


def divides(g: MultiPoly, f: MultiPoly) -> bool:
    try:
        divexact(f, g)
        return True
    except NotDivisible:
        return False


def div_by_monomial_power(f: MultiPoly, var: str) -> tuple[MultiPoly, int]:
    """Strip the largest power of ``var`` dividing f; returns (quotient, exponent)."""
    if not f.terms or var not in f.vars:
        return f, 0
    s = f._shift(var)
    e = min((k >> s) & SLOT for k in f.terms)
    if not e:
        return f, 0
    sub = e << s
    return MultiPoly(f.field, f.vars, {k - sub: c for k, c in f.terms.items()}), e


# univariate coefficient-list helpers (lowest degree first) -----------------
def _trim(a: list, F) -> list:
    while a and not a[-1]:
        a.pop()
    return a


def ul_add(a, b, F):
    n = max(len(a), len(b))
    out = [F.add(a[i] if i < len(a) else F.zero, b[i] if i < len(b) else F.zero) for i in range(n)]
    return _trim(out, F)


def ul_sub(a, b, F):
    return ul_add(a, [F.neg(c) for c in b], F)


def ul_mul(a, b, F):
    if not a or not b:
        return []
    out = [F.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return _trim([F.normalize(c) for c in out], F)


def ul_scale(a, c, F):
    return _trim([F.mul(x, c) for x in a], F)


def ul_divmod(a, b, F):
    if not b:
        raise ZeroDivisor("division by the zero polynomial")
    a = list(a)
    db = len(b) - 1
    inv = F.inv(b[-1])
    if len(a) - 1 < db:
        return [], _trim(a, F)
    q = [F.zero] * (len(a) - db)
    for i in range(len(a) - 1 - db, -1, -1):
        c = F.mul(a[i + db], inv)
        q[i] = c
        if c:
            for j in range(db + 1):
                a[i + j] = F.sub(a[i + j], F.mul(c, b[j]))
    return _trim(q, F), _trim(a[:db], F)


def ul_monic(a, F):
    if not a:
        return []
    return ul_scale(a, F.inv(a[-1]), F)


def ul_xgcd(a, b, F):
    """Return (d, s, t) with s*a + t*b = d and d monic (or zero if both are zero)."""
    r0, r1 = _trim(list(a), F), _trim(list(b), F)
    s0, s1 = [F.one], []
    t0, t1 = [], [F.one]
    while r1:
        q, r = ul_divmod(r0, r1, F)
        r0, r1 = r1, r
        s0, s1 = s1, ul_sub(s0, ul_mul(q, s1, F), F)
        t0, t1 = t1, ul_sub(t0, ul_mul(q, t1, F), F)
    if not r0:
        return [], [], []
    inv = F.inv(r0[-1])
    return ul_scale(r0, inv, F), ul_scale(s0, inv, F), ul_scale(t0, inv, F)


def ul_gcd(a, b, F):
    r0, r1 = _trim(list(a), F), _trim(list(b), F)
    while r1:
        r0, r1 = r1, ul_divmod(r0, r1, F)[1]
    return ul_monic(r0, F)


def ul_eval(a, x, F):
    acc = F.zero
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


def ul_deriv(a, F):
    return _trim([F.mul(a[i], F.coerce(i)) for i in range(1, len(a))], F)


def ul_taylor_shift(a, lam, F):
    """Coefficients of a(lam + s) in s."""
    out = list(a)
    n = len(out)
    for i in range(n):
        for j in range(n - 2, i - 1, -1):
            out[j] = F.add(out[j], F.mul(lam, out[j + 1]))
    return _trim(out, F)


def _univariate_pair(f: MultiPoly, g: MultiPoly, var: str):
    if f.field != g.field:
        raise FieldMismatch(f"{f.field} vs {g.field}")
    return f.to_coeff_list(var), g.to_coeff_list(var)


def _from_list(F, coeffs, var, vars=None) -> MultiPoly:
    return MultiPoly.univariate(F, coeffs, var, vars)


def uni_divmod(f: MultiPoly, g: MultiPoly, var: str) -> tuple[MultiPoly, MultiPoly]:
    a, b = _univariate_pair(f, g, var)
    if not b:
        raise ZeroDivisor("division by the zero polynomial")
    q, r = ul_divmod(a, b, f.field)
    vars = f.vars if var in f.vars else (var,)
    return _from_list(f.field, q, var, vars), _from_list(f.field, r, var, vars)


def uni_ext_gcd(f: MultiPoly, g: MultiPoly, var: str) -> tuple[MultiPoly, MultiPoly, MultiPoly]:
    """(d, s, u) with s*f + u*g = d, d the monic gcd."""
    a, b = _univariate_pair(f, g, var)
    if not a and not b:
        raise ValueError("gcd of two zero polynomials")
    F = f.field
    d, s, u = ul_xgcd(a, b, F)
    vars = (var,)
    out = tuple(_from_list(F, c, var, vars) for c in (d, s, u))
    if os.environ.get("PLANECOMP_CHECK"):
        fd, gd = f.embed(vars) if f.used_vars() else f, g.embed(vars) if g.used_vars() else g
        assert out[1] * fd + out[2] * gd == out[0], "Bezout identity failed"
    return out


def uni_gcd(f: MultiPoly, g: MultiPoly, var: str) -> MultiPoly:
    a, b = _univariate_pair(f, g, var)
    return _from_list(f.field, ul_gcd(a, b, f.field), var, (var,))


# point at lambda moved to infinity --------------------------------------------------
def q_from_p(P: MultiPoly, lam, var: str | None = None) -> MultiPoly:
    """Q(t) = P(lam + 1/t) * t^deg(P)."""
    F = P.field
    var = var or P.univariate_var() or "t"
    a = P.to_coeff_list(var)
    d = len(a) - 1
    if d < 1:
        raise ValueError("P must have degree at least 1")
    lam = F.coerce(lam)
    if not ul_eval(a, lam, F):
        raise RootAtLambda(f"P vanishes at {lam}")
    shifted = ul_taylor_shift(a, lam, F)
    shifted += [F.zero] * (d + 1 - len(shifted))
    return _from_list(F, list(reversed(shifted)), var, (var,))


class _NotSquarefreeDecidable:
    """Third outcome of :func:`is_squarefree`: the derivative vanishes identically."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "NotSquarefreeDecidable"

    def __bool__(self):
        raise TypeError("NotSquarefreeDecidable has no truth value")


NotSquarefreeDecidable = _NotSquarefreeDecidable()


def is_squarefree(P: MultiPoly, var: str | None = None):
    """True iff gcd(P, P') = 1; ``NotSquarefreeDecidable`` when P' = 0 for nonconstant P."""
    if not P.terms:
        raise ValueError("zero polynomial")
    var = var or P.univariate_var()
    if var is None:
        return True
    F = P.field
    a = P.to_coeff_list(var)
    da = ul_deriv(a, F)
    if not da:
        return NotSquarefreeDecidable
    return ul_gcd(a, da, F) == [F.one]


def irreducible_over_Fq(f: MultiPoly, F: FieldDescriptor | None = None, bound: int | None = None,
                        max_candidates: int = 2_000_000) -> bool:
    """Decide irreducibility by exhaustive trial division (uni- or bivariate)."""
    F = F or f.field
    if not F.is_finite:
        raise InfiniteField("exhaustive irreducibility needs a finite field")
    if F != f.field:
        raise FieldMismatch(f"{f.field} vs {F}")
    bound = degree_bound() if bound is None else bound
    used = f.used_vars()
    if len(used) > 2:
        raise ValueError("irreducible_over_Fq handles at most two variables")
    D = f.total_degree()
    if D > bound:
        raise DegreeBoundExceeded(f"degree {D} exceeds bound {bound}")
    if D < 1:
        return False
    if D == 1:
        return True
    f = f.embed(used)
    q = F.modulus
    half = D // 2
    if len(used) == 1:
        var = used[0]
        a = f.to_coeff_list(var)
        count = sum(q**k for k in range(1, half + 1))
        if count > max_candidates:
            raise DegreeBoundExceeded(f"{count} candidate factors exceed the search budget")
        for k in range(1, half + 1):
            for tail in itertools.product(range(q), repeat=k):
                cand = list(tail) + [1]
                if not ul_divmod(a, cand, F)[1]:
                    return False
        return True
    dx, dy = f.degree(used[0]), f.degree(used[1])
    monos = [(i, j) for i in range(dx + 1) for j in range(dy + 1) if 0 < i + j <= half]
    monos.sort(reverse=True)
    count = q ** (len(monos) + 1)
    if count > max_candidates:
        raise DegreeBoundExceeded(f"~{count} candidate factors exceed the search budget")
    # candidates normalised so that the lex-leading coefficient is 1
    for lead in range(len(monos)):
        rest = monos[lead + 1:]
        for coeffs in itertools.product(range(q), repeat=len(rest) + 1):
            data = {monos[lead]: 1, (0, 0): coeffs[-1]}
            for m, c in zip(rest, coeffs[:-1]):
                if c:
                    data[m] = c
            g = MultiPoly.from_dict(F, used, data)
            if divides(g, f):
                return False
    return True


# multivariate gcd -------------------------------------------------------------
def poly_gcd(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """Monic gcd via content extraction and a primitive remainder sequence."""
    f, g = align(f, g)
    F = f.field
    if not f.terms:
        return g.monic()
    if not g.terms:
        return f.monic()
    if f.is_constant() or g.is_constant():
        return MultiPoly.one(F, f.vars)
    if f == g:
        return f.monic()
    uf, ug = set(f.used_vars()), set(g.used_vars())
    only_f = uf - ug
    if only_f:
        v = sorted(only_f)[0]
        return poly_gcd(content(f, v), g)
    only_g = ug - uf
    if only_g:
        v = sorted(only_g)[0]
        return poly_gcd(f, content(g, v))
    # monomial factors first
    mf, mg = f.monomial_content(), g.monomial_content()
    mono = tuple(min(a, b) for a, b in zip(mf, mg))
    if any(mf) or any(mg):
        f = divexact(f, MultiPoly(F, f.vars, {pack(mf): F.one}))
        g = divexact(g, MultiPoly(F, g.vars, {pack(mg): F.one}))
        h = poly_gcd(f, g)
        return h * MultiPoly(F, f.vars, {pack(mono): F.one})
    common = sorted(uf, key=lambda v: (max(f.degree(v), g.degree(v)), f.vars.index(v)))
    v = common[0]
    if len(uf) == 1:
        d = ul_gcd(f.to_coeff_list(v), g.to_coeff_list(v), F)
        return MultiPoly.univariate(F, d, v, f.vars)
    cf, cg = content(f, v), content(g, v)
    c = poly_gcd(cf, cg)
    a = divexact(f, cf)
    b = divexact(g, cg)
    if a.degree(v) < b.degree(v):
        a, b = b, a
    while True:
        r = prem(a, b, v)
        if not r.terms:
            h = b
            break
        if r.degree(v) == 0:
            h = MultiPoly.one(F, f.vars)
            break
        a, b = b, divexact(r, content(r, v))
    h = divexact(h, content(h, v)) if h.degree(v) > 0 else MultiPoly.one(F, f.vars)
    return (c * h).monic()


def content(f: MultiPoly, var: str) -> MultiPoly:
    """gcd of the coefficients of f viewed as a polynomial in ``var``."""
    coeffs = sorted(f.coeffs_in(var).values(), key=lambda p: len(p.terms))
    acc = None
    for c in coeffs:
        acc = c.monic() if acc is None else poly_gcd(acc, c)
        if acc.is_constant():
            return MultiPoly.one(f.field, f.vars)
    return acc if acc is not None else MultiPoly.zero(f.field, f.vars)


def prem(a: MultiPoly, b: MultiPoly, var: str) -> MultiPoly:
    """Sparse pseudo-remainder of a by b in ``var``."""
    n = b.degree(var)
    cb = b.coeffs_in(var)
    lcb = cb[n]
    s = a._shift(var)
    while a.terms and a.degree(var) >= n:
        da = a.degree(var)
        lca = a.coeffs_in(var)[da]
        shift = MultiPoly(a.field, a.vars, {(da - n) << s: a.field.one})
        a = lcb * a - lca * shift * b
    return a


# text grammar -----------------------------------------------------------------
_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str):
    pos = 0
    out = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at {pos} in {text!r}")
        num, ident, op = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif ident is not None:
            out.append(("id", ident))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return out


class _Parser:
    """Recursive descent over the tokens; ``ring`` supplies the arithmetic."""

    def __init__(self, tokens, ring):
        self.toks = tokens
        self.i = 0
        self.ring = ring

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def parse(self):
        if not self.toks:
            raise ParseError("empty expression")
        v = self.expr()
        if self.i != len(self.toks):
            raise ParseError(f"trailing input at token {self.i}")
        return v

    def expr(self):
        v = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            _, op = self.take()
            w = self.term()
            v = v + w if op == "+" else v - w
        return v

    def term(self):
        v = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            _, op = self.take()
            w = self.unary()
            v = v * w if op == "*" else self.ring.divide(v, w)
        return v

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            sign = 1
            if self.peek() == ("op", "-"):
                self.take()
                sign = -1
            kind, val = self.take()
            if kind != "num":
                raise ParseError("exponent must be an integer literal")
            return self.ring.power(base, sign * val)
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return self.ring.number(val)
        if kind == "id":
            return self.ring.variable(val)
        if (kind, val) == ("op", "("):
            v = self.expr()
            if self.take() != ("op", ")"):
                raise ParseError("missing ')'")
            return v
        raise ParseError(f"unexpected token {val!r}")


class _PolyRing:
    def __init__(self, field, vars):
        self.field = field
        self.vars = tuple(vars)

    def number(self, n):
        return MultiPoly.constant(self.field, self.vars, n)

    def variable(self, name):
        if name not in self.vars:
            raise ParseError(f"unknown variable {name!r} (expected one of {self.vars})")
        return MultiPoly.var(self.field, self.vars, name)

    def divide(self, a, b):
        if not b.is_constant() or not b.terms:
            raise ParseError("polynomial text may only divide by nonzero constants")
        return a / b

    def power(self, base, e):
        if e < 0:
            raise ParseError("negative exponent in polynomial text")
        return base**e


def parse_poly(text: str, field: FieldDescriptor, vars: Sequence[str] | None = None) -> MultiPoly:
    tokens = _tokenize(text)
    if vars is None:
        vars = order_vars(v for k, v in tokens if k == "id")
    return _Parser(tokens, _PolyRing(field, vars)).parse()


def _format_coeff(F, c) -> tuple[str, bool]:
    """(absolute coefficient text, negative?)"""
    if F.is_finite:
        return str(c), False
    if c < 0:
        return str(-c), True
    return str(c), False


def format_poly(f: MultiPoly) -> str:
    if not f.terms:
        return "0"
    n = f.nvars
    parts = []
    for k in sorted(f.terms, reverse=True):
        c = f.terms[k]
        exps = unpack(k, n)
        mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in zip(f.vars, exps) if e)
        ctext, neg = _format_coeff(f.field, c)
        if mono:
            body = mono if ctext == "1" else f"{ctext}*{mono}"
        else:
            body = ctext
        parts.append((neg, body))
    out = ("-" if parts[0][0] else "") + parts[0][1]
    for neg, body in parts[1:]:
        out += (" - " if neg else " + ") + body
    return out
