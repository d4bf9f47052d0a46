"""Exact scalar fields: the rationals and prime fields F_p.

A :class:`FieldDescriptor` knows how to do arithmetic on *raw* values
(``gmpy2.mpq`` for Q, plain ``int`` residues for F_p).  Polynomials store raw
values for speed; :class:`Scalar` wraps a raw value together with its field
for the public API.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from gmpy2 import mpq, mpz

from .errors import DivisionByZero, FieldMismatch, InfiniteField, NotPrime, ParseError

RATIONALS = "Q"
PRIME = "F"


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


@dataclass(frozen=True)
class FieldDescriptor:
    kind: str
    modulus: int = 0

    def __post_init__(self):
        if self.kind == RATIONALS:
            if self.modulus != 0:
                raise ValueError("the rationals carry no modulus")
        elif self.kind == PRIME:
            if not is_prime(self.modulus):
                raise NotPrime(f"modulus {self.modulus} is not prime")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @classmethod
    def parse(cls, text: str) -> "FieldDescriptor":
        """Parse ``"Q"`` or ``"F<p>"``."""
        s = text.strip()
        if s == "Q":
            return QQ
        m = re.fullmatch(r"F(\d+)", s)
        if not m:
            raise ParseError(f"bad field {text!r}")
        return cls(PRIME, int(m.group(1)))

    def __str__(self):
        return "Q" if self.kind == RATIONALS else f"F{self.modulus}"

    def __repr__(self):
        return f"FieldDescriptor({str(self)!r})"

    @property
    def characteristic(self) -> int:
        return self.modulus

    @property
    def is_finite(self) -> bool:
        return self.kind == PRIME

    @property
    def order(self) -> int:
        if not self.is_finite:
            raise InfiniteField("the rationals are infinite")
        return self.modulus

    # raw-value arithmetic -------------------------------------------------
    @property
    def zero(self):
        return mpq(0) if self.kind == RATIONALS else 0

    @property
    def one(self):
        return mpq(1) if self.kind == RATIONALS else 1

    def coerce(self, value):
        """Convert ints, fractions, strings, mpq or Scalars into a raw value."""
        if isinstance(value, Scalar):
            if value.field != self:
                raise FieldMismatch(f"{value.field} element used in {self}")
            return value.value
        if isinstance(value, str):
            value = _parse_number(value)
        if self.kind == RATIONALS:
            if isinstance(value, Fraction):
                return mpq(value.numerator, value.denominator)
            return mpq(value)
        p = self.modulus
        if isinstance(value, (int, type(mpz(0)))):
            return int(value) % p
        if isinstance(value, (Fraction, type(mpq(0)))):
            num, den = int(value.numerator), int(value.denominator)
            if den % p == 0:
                raise DivisionByZero(f"denominator {den} vanishes in F{p}")
            return num * pow(den, -1, p) % p
        raise TypeError(f"cannot coerce {type(value).__name__} into {self}")

    def add(self, a, b):
        return a + b if self.kind == RATIONALS else (a + b) % self.modulus

    def sub(self, a, b):
        return a - b if self.kind == RATIONALS else (a - b) % self.modulus

    def mul(self, a, b):
        return a * b if self.kind == RATIONALS else a * b % self.modulus

    def neg(self, a):
        return -a if self.kind == RATIONALS else -a % self.modulus

    def inv(self, a):
        if not a:
            raise DivisionByZero("inverse of zero")
        if self.kind == RATIONALS:
            return 1 / a
        return pow(a, -1, self.modulus)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n: int):
        if n < 0:
            return self.pow(self.inv(a), -n)
        if self.kind == RATIONALS:
            return a**n
        return pow(a, n, self.modulus)

    def normalize(self, a):
        """Canonical form of an accumulated raw value."""
        return a if self.kind == RATIONALS else a % self.modulus

    def to_str(self, a) -> str:
        return str(a)

    def elements(self):
        return enumerate_field(self)

    def __call__(self, value) -> "Scalar":
        return Scalar(self, value)


QQ = FieldDescriptor(RATIONALS)


def GF(p: int) -> FieldDescriptor:
    return FieldDescriptor(PRIME, p)


def _parse_number(s: str):
    s = s.strip().replace(" ", "")
    m = re.fullmatch(r"([+-]?\d+)(?:/(\d+))?", s)
    if not m:
        raise ParseError(f"bad number {s!r}")
    num = int(m.group(1))
    if m.group(2) is None:
        return num
    den = int(m.group(2))
    if den == 0:
        raise DivisionByZero(f"zero denominator in {s!r}")
    return Fraction(num, den)


class Scalar:
    """An element of Q or F_p. Immutable; equal iff field and value agree."""

    __slots__ = ("field", "value")

    def __init__(self, field: FieldDescriptor, value=0):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", field.coerce(value))

    def __setattr__(self, key, value):
        raise AttributeError("Scalar is immutable")

    def _other(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other.value
        return self.field.coerce(other)

    def __add__(self, other):
        return Scalar(self.field, self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return Scalar(self.field, self.field.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return Scalar(self.field, self.field.sub(self._other(other), self.value))

    def __mul__(self, other):
        return Scalar(self.field, self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return Scalar(self.field, self.field.div(self.value, self._other(other)))

    def __rtruediv__(self, other):
        return Scalar(self.field, self.field.div(self._other(other), self.value))

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.value))

    def __pow__(self, n: int):
        return Scalar(self.field, self.field.pow(self.value, n))

    def inv(self):
        return Scalar(self.field, self.field.inv(self.value))

    def __bool__(self):
        return bool(self.value)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, Fraction)):
            try:
                return self.value == self.field.coerce(other)
            except DivisionByZero:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __repr__(self):
        return f"Scalar({self.field}, {self.value})"

    def __str__(self):
        return str(self.value)


def field_arith(op: str, a: Scalar, b: Scalar | None = None) -> Scalar:
    """Dispatch one of add/sub/mul/div/inv/neg on Scalars."""
    if op in ("inv", "neg"):
        return a.inv() if op == "inv" else -a
    if b is None:
        raise TypeError(f"{op} needs two operands")
    if a.field != b.field:
        raise FieldMismatch(f"{a.field} vs {b.field}")
    return {"add": a.__add__, "sub": a.__sub__, "mul": a.__mul__, "div": a.__truediv__}[op](b)


def enumerate_field(F: FieldDescriptor) -> list[Scalar]:
    if not F.is_finite:
        raise InfiniteField("cannot enumerate the rationals")
    return [Scalar(F, i) for i in range(F.modulus)]
