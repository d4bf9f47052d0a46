"""Rational functions, birational maps and the complement-isomorphism certifier."""

from .maps import BirationalMap, compose, identity
from .rational import RationalFunction, as_rf, parse_rational, substitute, substitute_poly, substitute_rf
from .verify import (
    Certificate,
    Check,
    contracted_curves,
    localization_member,
    membership_witness,
    unit_form,
    verify_complement_iso,
    verify_cone_complement_iso,
    verify_inverse,
)


def reduce(h):
    return as_rf(h).reduce()


__all__ = [
    "BirationalMap",
    "Certificate",
    "Check",
    "RationalFunction",
    "as_rf",
    "compose",
    "contracted_curves",
    "identity",
    "localization_member",
    "membership_witness",
    "parse_rational",
    "reduce",
    "substitute",
    "substitute_poly",
    "substitute_rf",
    "unit_form",
    "verify_complement_iso",
    "verify_cone_complement_iso",
    "verify_inverse",
]
