"""Birational maps of affine 2- and 3-space, given by component tuples."""

from __future__ import annotations

from typing import Sequence

from ..errors import DimensionMismatch, FieldMismatch, MissingInverse, ParseError
from ..fields import FieldDescriptor
from ..poly import MultiPoly
from .rational import RationalFunction, as_rf, parse_rational, substitute_rf

COORDS = {2: ("x", "y"), 3: ("x", "y", "z")}


class BirationalMap:
    """phi = (phi_1, ..., phi_n), acting on functions by pullback h -> h(phi).

    A map built by :func:`compose` is kept as a chain of factors (in the order
    they are applied) and its components are only expanded on request.
    """

    def __init__(self, components=None, inverse=None, vars: Sequence[str] | None = None,
                 homogeneous: bool = False, name: str | None = None, field: FieldDescriptor | None = None,
                 _chain: list | None = None):
        self.name = name
        self.homogeneous = homogeneous
        self._chain = _chain
        if _chain is not None:
            first = _chain[0]
            self.vars = first.vars
            self.field = first.field
            self._components = None
            self._inverse = None
            self._inv_chain = None
            return
        comps = [as_rf(c, field) for c in components]
        if vars is None:
            if len(comps) not in COORDS:
                raise DimensionMismatch(f"no default coordinates for dimension {len(comps)}")
            vars = COORDS[len(comps)]
        self.vars = tuple(vars)
        if len(comps) != len(self.vars):
            raise DimensionMismatch(f"{len(comps)} components for {len(self.vars)} coordinates")
        self.field = field or comps[0].field
        for c in comps:
            if c.field != self.field:
                raise FieldMismatch(f"{c.field} vs {self.field}")
        self._components = tuple(comps)
        if inverse is not None:
            inv = tuple(as_rf(c, self.field) for c in inverse)
            if len(inv) != len(comps):
                raise DimensionMismatch("inverse has the wrong number of components")
            self._inverse = inv
        else:
            self._inverse = None

    # structure ---------------------------------------------------------------
    @property
    def dim(self) -> int:
        return len(self.vars)

    @property
    def is_chain(self) -> bool:
        return self._chain is not None

    @property
    def factors(self) -> list["BirationalMap"]:
        """Elementary factors in the order they are applied."""
        return list(self._chain) if self._chain is not None else [self]

    @property
    def has_inverse(self) -> bool:
        return all(f._inverse is not None for f in self.factors)

    @property
    def components(self) -> tuple[RationalFunction, ...]:
        if self._components is None:
            self._components = tuple(self.pullback(self.coordinate(v)) for v in self.vars)
        return self._components

    def coordinate(self, v: str) -> RationalFunction:
        return RationalFunction(MultiPoly.var(self.field, self.vars, v))

    def inverse_map(self) -> "BirationalMap":
        if self._chain is not None:
            # cached both ways so expanded components are shared
            if self._inv_chain is None:
                inv = BirationalMap(_chain=[f.inverse_map() for f in reversed(self._chain)],
                                    homogeneous=self.homogeneous,
                                    name=f"{self.name}^-1" if self.name else None)
                inv._inv_chain = self
                self._inv_chain = inv
            return self._inv_chain
        if self._inverse is None:
            raise MissingInverse(f"map {self.name or ''} has no claimed inverse")
        return BirationalMap(self._inverse, self._components, self.vars, self.homogeneous,
                             name=f"{self.name}^-1" if self.name else None, field=self.field)

    # action ------------------------------------------------------------------
    def assignment(self) -> dict:
        return dict(zip(self.vars, self.components))

    def pullback(self, h, reduce: bool = True) -> RationalFunction:
        """h composed with this map; intermediate results are cancelled by exact division."""
        h = as_rf(h, self.field)
        extra = set(h.vars) - set(self.vars)
        for v in extra:
            if any(v in p.used_vars() for p in [h.num, *h.factors]):
                raise DimensionMismatch(f"function uses {v}, which the map does not act on")
        if self._chain is None:
            out = substitute_rf(h, self.assignment())
            return out.reduce(deep=False) if reduce else out
        for f in reversed(self._chain):
            h = f.pullback(h, reduce=reduce)
        return h

    def __call__(self, h):
        return self.pullback(h)

    def eval_raw(self, point: Sequence):
        """Image of a point given as raw field values."""
        env = dict(zip(self.vars, point))
        if self._chain is not None:
            for f in self._chain:
                env = dict(zip(f.vars, f.eval_raw([env[v] for v in f.vars])))
            return tuple(env[v] for v in self.vars)
        return tuple(c.eval_raw(env) for c in self._components)

    # serialisation -------------------------------------------------------------
    def to_json(self) -> dict:
        inv = None
        if self.has_inverse:
            inv = [c.to_json() for c in self.inverse_map().components]
        return {
            "field": str(self.field),
            "vars": list(self.vars),
            "homogeneous": self.homogeneous,
            "components": [c.to_json() for c in self.components],
            "inverse": inv,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "BirationalMap":
        try:
            comps = [RationalFunction.from_json(c) for c in obj["components"]]
            inv = obj.get("inverse")
            inv = [RationalFunction.from_json(c) for c in inv] if inv is not None else None
            field = FieldDescriptor.parse(obj["field"]) if "field" in obj else comps[0].field
            vars = obj.get("vars")
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed map JSON: {exc}") from exc
        return cls(comps, inv, vars, bool(obj.get("homogeneous", False)), field=field)

    @classmethod
    def from_text(cls, text: str, field: FieldDescriptor, vars=None, homogeneous=False) -> "BirationalMap":
        """One component per line; a line ``---`` separates the claimed inverse."""
        lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
        if "---" in lines:
            k = lines.index("---")
            fwd, back = lines[:k], lines[k + 1:]
        else:
            fwd, back = lines, None
        if vars is None:
            vars = COORDS.get(len(fwd))
            if vars is None:
                raise ParseError(f"cannot infer coordinates for {len(fwd)} components")
        comps = [parse_rational(s, field, vars) for s in fwd]
        inv = [parse_rational(s, field, vars) for s in back] if back is not None else None
        return cls(comps, inv, vars, homogeneous, field=field)

    def __repr__(self):
        if self._chain is not None and self._components is None:
            return f"BirationalMap(chain of {len(self._chain)})"
        return "BirationalMap(" + ", ".join(str(c) for c in self.components) + ")"


def identity(dim: int, field: FieldDescriptor, vars=None) -> BirationalMap:
    vars = tuple(vars) if vars else COORDS[dim]
    comps = [MultiPoly.var(field, vars, v) for v in vars]
    return BirationalMap(comps, comps, vars, homogeneous=True, name="id", field=field)


def compose(outer: BirationalMap, inner: BirationalMap) -> BirationalMap:
    """outer o inner (apply inner first), so (outer o inner)^* = inner^* outer^*."""
    if outer.dim != inner.dim or outer.vars != inner.vars:
        raise DimensionMismatch(f"cannot compose maps on {outer.vars} and {inner.vars}")
    if outer.field != inner.field:
        raise FieldMismatch(f"{outer.field} vs {inner.field}")
    return BirationalMap(_chain=inner.factors + outer.factors,
                         homogeneous=outer.homogeneous and inner.homogeneous)
