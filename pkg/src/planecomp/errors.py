"""Exception hierarchy.

Only malformed input raises. Mathematical failures (a map that is not an
isomorphism, two curves that are not equivalent) are reported as data in
certificates and results.
"""


class PlanecompError(Exception):
    """Base class for every error raised by the package."""


class ParseError(PlanecompError, ValueError):
    pass


# fields
class FieldMismatch(PlanecompError, ValueError):
    pass


class DivisionByZero(PlanecompError, ZeroDivisionError):
    pass


class InfiniteField(PlanecompError, ValueError):
    pass


class NotPrime(PlanecompError, ValueError):
    pass


# poly
class NotDivisible(PlanecompError, ArithmeticError):
    pass


class ZeroDivisor(PlanecompError, ZeroDivisionError):
    pass


class NotUnivariate(PlanecompError, ValueError):
    pass


class RootAtLambda(PlanecompError, ValueError):
    pass


class DegreeBoundExceeded(PlanecompError, ValueError):
    pass


# ratmap
class MissingInverse(PlanecompError, ValueError):
    pass


class DimensionMismatch(PlanecompError, ValueError):
    pass


class DenominatorIdenticallyZero(PlanecompError, ZeroDivisionError):
    pass


class ConstantDivisor(PlanecompError, ValueError):
    pass


class InconsistentQuotients(PlanecompError, ValueError):
    pass


class NotHomogeneous(PlanecompError, ValueError):
    pass


class NotCoprime(PlanecompError, ValueError):
    pass


# constructions
class DeterminantNotOne(PlanecompError, ValueError):
    pass


class RootAtZero(PlanecompError, ValueError):
    pass


class DegreeTooLarge(PlanecompError, ValueError):
    pass


class ZeroCornerCoefficient(PlanecompError, ValueError):
    pass


class ZeroScalar(PlanecompError, ValueError):
    pass


class YDividesP(PlanecompError, ValueError):
    pass


# equivalence
class PreconditionViolated(PlanecompError, ValueError):
    pass


class DegenerateTriple(PlanecompError, ValueError):
    pass


class TooFewPoints(PlanecompError, ValueError):
    pass


class NotSquarefree(PlanecompError, ValueError):
    pass


class DegreeMismatch(PlanecompError, ValueError):
    pass


# cli / points
class FieldTooLarge(PlanecompError, ValueError):
    pass
