"""planecomp command line.

Exit codes: 0 pass or equivalent, 1 fail or not equivalent, 2 usage or
parse error (with a JSON error document on stderr), 3 undecided.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import constructions as cons
from .equivalence import (
    UNDECIDED,
    ProjPoint,
    costa_equiv_test,
    equiv_section_curves,
    pgl2_orbit_test,
    spec_iso_test,
)
from .errors import ParseError, PlanecompError
from .fields import QQ, FieldDescriptor
from .parallel import default_jobs
from .points import count_points
from .poly import MultiPoly, parse_poly
from .ratmap import BirationalMap, RationalFunction, parse_rational, verify_complement_iso, verify_cone_complement_iso

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_UNDECIDED = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# input helpers --------------------------------------------------------------------
def _read_source(arg: str) -> str:
    """Contents of a file when ``arg`` names one, otherwise ``arg`` itself."""
    if os.path.isfile(arg):
        with open(arg, encoding="utf-8") as fh:
            return fh.read()
    return arg


def _is_json(text: str) -> bool:
    return text.lstrip().startswith("{")


def _load_json(text: str) -> dict:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc


def load_poly(arg: str, field: FieldDescriptor | None, vars=None) -> MultiPoly:
    text = _read_source(arg)
    if _is_json(text):
        obj = _load_json(text)
        p = MultiPoly.from_json(obj)
        if field is not None and p.field != field:
            raise ParseError(f"file is over {p.field}, expected {field}")
        return p
    return parse_poly(text.strip(), field or QQ, vars)


def load_map(arg: str, field: FieldDescriptor | None, homogeneous: bool = False) -> BirationalMap:
    text = _read_source(arg)
    if _is_json(text):
        obj = _load_json(text)
        if "map" in obj and "components" not in obj:
            obj = obj["map"]
        m = BirationalMap.from_json(obj)
        if homogeneous:
            m.homogeneous = True
        return m
    return BirationalMap.from_text(text, field or QQ, homogeneous=homogeneous)


def _field(args) -> FieldDescriptor:
    return FieldDescriptor.parse(args.field)


def _scalars(text: str) -> list[str]:
    return [s.strip() for s in text.split(",") if s.strip()]


# output -----------------------------------------------------------------------------
def _emit(args, doc: dict, text: str | None = None):
    if args.format == "text" and text is not None:
        out = text
    else:
        out = json.dumps(doc, indent=2)
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out + "\n")
    else:
        sys.stdout.write(out + "\n")


def _cert_text(cert) -> str:
    lines = [f"{cert.construction} over {cert.field}: {'PASS' if cert.passed else 'FAIL'}"]
    for c in cert.checks:
        extra = []
        if c.n is not None:
            extra.append(f"n={c.n}")
        if c.lam is not None:
            extra.append(f"lambda={c.lam}")
        lines.append(f"  [{'ok' if c.passed else 'FAIL'}] {c.name}" + (f" ({', '.join(extra)})" if extra else ""))
    return "\n".join(lines)


def _pair_text(pair) -> str:
    return f"C: {pair.C} = 0\nD: {pair.D} = 0\n" + _cert_text(pair.certificate)


# construct ------------------------------------------------------------------------------
def _construct(args):
    F = _field(args)
    kind = args.kind
    if kind == "sl2":
        pair = cons.sl2_pair(args.a, args.b, args.c, args.d, F)
    elif kind == "negativity3":
        pair = cons.prop_negativity3(parse_poly(args.f, F), parse_poly(args.b, F), args.n)
    elif kind == "psi-bm":
        pair = cons.psi_bm(parse_poly(args.b, F), args.d, args.m)
    elif kind == "family-char0":
        pair = cons.family_char0(args.mu, F)
    elif kind == "family-charp":
        pairs = cons.family_charp(args.p, args.n)
        ok = all(p.passed for p in pairs)
        doc = {"construction": "family-charp", "pairs": [p.to_json() for p in pairs], "pass": ok}
        _emit(args, doc, "\n\n".join(_pair_text(p) for p in pairs))
        return EXIT_PASS if ok else EXIT_FAIL
    elif kind == "degree7":
        a = _scalars(args.a)
        if len(a) != 4:
            raise UsageError("--a needs four comma separated scalars")
        pair = cons.degree7_pair(*a, field=F)
    elif kind == "costa":
        pair = cons.costa_kappa(parse_poly(args.P, F, ("x", "y")), args.lam)
    elif kind == "line-aut":
        s = parse_rational(args.s, F, ("x",))
        phi = cons.line_complement_aut(args.lam, args.sign, args.n, s, args.mu, F)
        cert = cons.line_aut_certificate(phi)
        doc = {"construction": "line-aut", "map": phi.to_json(), "certificate": cert.to_json(), "pass": cert.passed}
        _emit(args, doc, _cert_text(cert))
        return EXIT_PASS if cert.passed else EXIT_FAIL
    else:  # pragma: no cover - argparse restricts the choices
        raise UsageError(f"unknown construction {kind}")
    doc = pair.to_json()
    doc["pass"] = pair.passed
    _emit(args, doc, _pair_text(pair))
    return EXIT_PASS if pair.passed else EXIT_FAIL


def _run_construct(args):
    try:
        return _construct(args)
    except cons.ConstructionFailed as exc:
        pair = exc.pair
        if pair is not None:
            doc = pair.to_json()
            doc["pass"] = False
            _emit(args, doc, _pair_text(pair))
        return EXIT_FAIL


# verify ------------------------------------------------------------------------------------
def _run_verify(args):
    F = FieldDescriptor.parse(args.field) if args.field else None
    cone = args.mode == "cone"
    phi = load_map(args.map, F, homogeneous=cone)
    F = phi.field
    vars = phi.vars
    f = load_poly(args.f, F, vars)
    g = load_poly(args.g, F, vars)
    f = f.embed(vars) if f.vars != vars else f
    g = g.embed(vars) if g.vars != vars else g
    if cone:
        cert = verify_cone_complement_iso(phi, f, g, "verify-cone")
    else:
        cert = verify_complement_iso(phi, f, g, "verify-affine")
    _emit(args, cert.to_json(), _cert_text(cert))
    return EXIT_PASS if cert.passed else EXIT_FAIL


# test -----------------------------------------------------------------------------------------
def _decision_exit(d) -> int:
    if d.equivalent == UNDECIDED:
        return EXIT_UNDECIDED
    return EXIT_PASS if d.equivalent else EXIT_FAIL


def _decision_text(d) -> str:
    w = d.witness
    wt = "" if w is None else f"\nwitness: {w.to_text() if hasattr(w, 'to_text') else w}"
    return f"equivalent: {d.equivalent} (candidates tested: {d.candidates_tested}){wt}"


def _run_test(args):
    F = _field(args)
    kind = args.kind
    if kind == "equiv-section":
        polys = [parse_poly(getattr(args, k), F, ("y",)) for k in ("a1", "b1", "a2", "b2")]
        d = equiv_section_curves(*polys, jobs=args.jobs)
    elif kind == "spec-iso":
        d = spec_iso_test(parse_poly(args.p, F), parse_poly(args.q, F), F, jobs=args.jobs)
    elif kind == "pgl2-orbit":
        S = [ProjPoint.parse(F, s) for s in _scalars(args.s)]
        T = [ProjPoint.parse(F, s) for s in _scalars(args.t)]
        d = pgl2_orbit_test(S, T)
    elif kind == "costa-equiv":
        d = costa_equiv_test(parse_poly(args.P, F, ("x", "y")), parse_poly(args.Pt, F, ("x", "y")))
    else:  # pragma: no cover
        raise UsageError(f"unknown test {kind}")
    _emit(args, d.to_json(), _decision_text(d))
    return _decision_exit(d)


# points / convert ---------------------------------------------------------------------------
def _run_points(args):
    F = _field(args)
    f = load_poly(args.curve, F, ("x", "y"))
    counts = count_points(f, F, jobs=args.jobs)
    doc = {"field": str(F), "curve": f.to_text(), **counts}
    _emit(args, doc, f"{counts['curve_points']} points on the curve, {counts['complement_points']} off it")
    return EXIT_PASS


def _run_convert(args):
    F = FieldDescriptor.parse(args.field) if args.field else None
    text = _read_source(args.source)
    if args.kind == "poly":
        obj = load_poly(args.source, F)
        out_json, out_text = obj.to_json(), obj.to_text()
    elif args.kind == "rational":
        if _is_json(text):
            obj = RationalFunction.from_json(_load_json(text))
        else:
            obj = parse_rational(text.strip(), F or QQ)
        out_json, out_text = obj.to_json(), obj.to_text()
    else:
        obj = load_map(args.source, F)
        out_json = obj.to_json()
        lines = [c.to_text() for c in obj.components]
        if obj.has_inverse:
            lines += ["---"] + [c.to_text() for c in obj.inverse_map().components]
        out_text = "\n".join(lines)
    if args.to == "json":
        out = json.dumps(out_json, indent=2)
    else:
        out = out_text
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out + "\n")
    else:
        sys.stdout.write(out + "\n")
    return EXIT_PASS


# parser ------------------------------------------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="planecomp", description="Certified curve pairs with isomorphic complements.")
    p.add_argument("--jobs", type=int, default=default_jobs(), help="worker processes for enumerations")
    p.add_argument("--seed", type=int, default=0, help="seed for randomised checks (the CLI itself is deterministic)")
    p.add_argument("--format", choices=("json", "text"), default="json")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("construct", help="build a certified curve pair")
    csub = c.add_subparsers(dest="kind", required=True, parser_class=_Parser)

    def common(sp, field="Q"):
        sp.add_argument("--field", default=field)
        sp.add_argument("--out", help="write the document here instead of stdout")
        return sp

    sp = common(csub.add_parser("sl2"))
    for k in "abcd":
        sp.add_argument(f"--{k}", required=True, help="polynomial in one variable")
    sp = common(csub.add_parser("negativity3"))
    sp.add_argument("--f", required=True)
    sp.add_argument("--b", required=True)
    sp.add_argument("--n", type=int, required=True)
    sp = common(csub.add_parser("psi-bm"))
    sp.add_argument("--b", required=True)
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp = common(csub.add_parser("family-char0"))
    sp.add_argument("--mu", required=True)
    sp = common(csub.add_parser("family-charp"))
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp = common(csub.add_parser("degree7"))
    sp.add_argument("--a", required=True, help="a0,a1,a2,a3")
    sp = common(csub.add_parser("costa"))
    sp.add_argument("--P", required=True, help="binary form in x, y")
    sp.add_argument("--lam", required=True)
    sp = common(csub.add_parser("line-aut"))
    sp.add_argument("--lam", required=True)
    sp.add_argument("--sign", type=int, choices=(1, -1), default=1)
    sp.add_argument("--n", type=int, default=0)
    sp.add_argument("--s", default="0", help="Laurent polynomial in x, e.g. x^-1+x")
    sp.add_argument("--mu", required=True)

    v = sub.add_parser("verify", help="certify a map between complements")
    v.add_argument("--map", required=True, help="map file (JSON or one component per line, '---', inverse)")
    v.add_argument("--f", required=True, help="curve file or text")
    v.add_argument("--g", required=True, help="curve file or text")
    v.add_argument("--mode", choices=("affine", "cone"), default="affine")
    v.add_argument("--field", default=None)
    v.add_argument("--out")

    t = sub.add_parser("test", help="equivalence and isomorphism tests")
    tsub = t.add_subparsers(dest="kind", required=True, parser_class=_Parser)
    sp = common(tsub.add_parser("equiv-section"))
    for k in ("a1", "b1", "a2", "b2"):
        sp.add_argument(f"--{k}", required=True, help="polynomial in y")
    sp = common(tsub.add_parser("spec-iso"))
    sp.add_argument("--p", required=True)
    sp.add_argument("--q", required=True)
    sp = common(tsub.add_parser("pgl2-orbit"))
    sp.add_argument("--s", required=True, help="comma separated points, 'inf' for infinity")
    sp.add_argument("--t", required=True)
    sp = common(tsub.add_parser("costa-equiv"))
    sp.add_argument("--P", required=True)
    sp.add_argument("--Pt", required=True)

    pt = sub.add_parser("points", help="count rational points of a plane curve")
    pt.add_argument("curve", help="curve file or text")
    pt.add_argument("--field", required=True)
    pt.add_argument("--out")

    cv = sub.add_parser("convert", help="convert between the text and JSON formats")
    cv.add_argument("source", help="file or text")
    cv.add_argument("--kind", choices=("poly", "rational", "map"), default="poly")
    cv.add_argument("--to", choices=("json", "text"), default="json")
    cv.add_argument("--field", default=None)
    cv.add_argument("--out")
    return p


RUNNERS = {
    "construct": _run_construct,
    "verify": _run_verify,
    "test": _run_test,
    "points": _run_points,
    "convert": _run_convert,
}


def _fail(kind: str, message: str) -> int:
    sys.stderr.write(json.dumps({"error": kind, "message": message}) + "\n")
    return EXIT_USAGE


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        return _fail("UsageError", str(exc))
    if args.jobs < 1:
        return _fail("UsageError", "--jobs must be positive")
    try:
        return RUNNERS[args.command](args)
    except UsageError as exc:
        return _fail("UsageError", str(exc))
    except (PlanecompError, ValueError, ZeroDivisionError, OSError) as exc:
        return _fail(type(exc).__name__, str(exc))


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
