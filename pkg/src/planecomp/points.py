"""Rational points over F_q: complement counts and a pointwise bijection check."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .errors import DimensionMismatch, FieldMismatch, FieldTooLarge, InfiniteField
from .fields import FieldDescriptor
from .parallel import pmap
from .poly import MultiPoly
from .ratmap import BirationalMap, membership_witness

MAX_Q = 101
PLANE = ("x", "y")


def _check_field(F: FieldDescriptor):
    if not F.is_finite:
        raise InfiniteField("point counts need a finite field")
    if F.modulus > MAX_Q:
        raise FieldTooLarge(f"q = {F.modulus} exceeds {MAX_Q}")


def _plane(f: MultiPoly) -> MultiPoly:
    extra = [v for v in f.used_vars() if v not in PLANE]
    if extra:
        raise DimensionMismatch(f"plane curves use x and y only (found {extra})")
    return f if f.vars == PLANE else f.embed(PLANE)


def _row_zeros(args):
    f, x = args
    q = f.field.modulus
    return sum(1 for y in range(q) if not f.eval_raw((x, y)))


def count_points(f: MultiPoly, F: FieldDescriptor | None = None, jobs: int = 1) -> dict:
    """Exact counts {curve_points, complement_points} over A^2(F_q)."""
    F = F or f.field
    _check_field(F)
    if f.field != F:
        raise FieldMismatch(f"{f.field} vs {F}")
    f = _plane(f)
    q = F.modulus
    on = sum(pmap(_row_zeros, [(f, x) for x in range(q)], jobs))
    return {"curve_points": on, "complement_points": q * q - on}


@dataclass
class BijectionReport:
    field: FieldDescriptor
    complement_C: int = 0
    complement_D: int = 0
    forward_ok: bool = False
    backward_ok: bool = False
    failures: list = dc_field(default_factory=list)

    @property
    def bijective(self) -> bool:
        return self.forward_ok and self.backward_ok and self.complement_C == self.complement_D

    def to_json(self) -> dict:
        return {
            "field": str(self.field),
            "complement_C": self.complement_C,
            "complement_D": self.complement_D,
            "bijective": self.bijective,
            "failures": [str(x) for x in self.failures[:10]],
        }


def _witnesses(m: BirationalMap, f: MultiPoly):
    out = []
    for c in m.components:
        r = membership_witness(c, f)
        if r is None:
            return None
        n, q = r
        out.append((n, _plane(q)))
    return out


def _apply(wit, fval, point, F):
    """Evaluate the components q_i / f^n_i at a point with f(point) = fval != 0."""
    return tuple(F.div(q.eval_raw(point), F.pow(fval, n)) for n, q in wit)


def complement_bijection(phi: BirationalMap, f: MultiPoly, g: MultiPoly) -> BijectionReport:
    """Check that phi maps {f != 0}(F_q) bijectively onto {g != 0}(F_q) with inverse phi^-1.

    Components are evaluated through their membership witnesses q / f^n, so
    no point of the complement ever meets a vanishing denominator.
    """
    F = phi.field
    _check_field(F)
    if phi.dim != 2:
        raise DimensionMismatch("pointwise checks are for maps of the plane")
    f, g = _plane(f), _plane(g)
    rep = BijectionReport(F)
    fw = _witnesses(phi, f)
    bw = _witnesses(phi.inverse_map(), g)
    if fw is None or bw is None:
        rep.failures.append("a component is not regular on the complement")
        return rep
    q = F.modulus
    pts = [(x, y) for x in range(q) for y in range(q)]
    src = [(p, v) for p in pts if (v := f.eval_raw(p))]
    dst = [(p, v) for p in pts if (v := g.eval_raw(p))]
    rep.complement_C, rep.complement_D = len(src), len(dst)
    rep.forward_ok = _round_trip(src, fw, g, bw, F, rep.failures)
    rep.backward_ok = _round_trip(dst, bw, f, fw, F, rep.failures)
    return rep


def _round_trip(points, there, target, back, F, failures) -> bool:
    ok = True
    images = set()
    for p, v in points:
        img = _apply(there, v, p, F)
        tv = target.eval_raw(img)
        if not tv:
            failures.append(f"{p} lands on the other curve")
            ok = False
            continue
        if _apply(back, tv, img, F) != p:
            failures.append(f"{p} is not recovered by the inverse")
            ok = False
        images.add(img)
    return ok and len(images) == len(points)
