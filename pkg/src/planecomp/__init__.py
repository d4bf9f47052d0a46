"""Certified curve pairs in the plane with isomorphic complements.

Exact polynomial and rational-function arithmetic over Q and F_p, birational
maps with replayable certificates, the explicit families of non-equivalent
curves with isomorphic complements, and decision procedures for their
equivalence.
"""

from .fields import GF, QQ, FieldDescriptor, Scalar
from .poly import MultiPoly, parse_poly

__all__ = ["GF", "QQ", "FieldDescriptor", "MultiPoly", "Scalar", "parse_poly"]
__version__ = "0.1.0"
