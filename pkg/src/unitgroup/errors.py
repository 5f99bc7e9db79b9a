"""Exception hierarchy.

Three branches matter to the CLI exit-code contract: parse/usage problems
(exit 1), mathematical failures such as non-rational boundary points
(exit 2), and precision failures in the height machinery (exit 3).
"""


class UnitGroupError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(UnitGroupError):
    """Malformed problem file or unparsable polynomial/field-element text."""


class MathematicalError(UnitGroupError):
    """The input is well-formed but the requested computation is impossible."""


class PrecisionError(UnitGroupError):
    """A floating-point/height computation could not certify its answer."""


# -- arithmetic ---------------------------------------------------------------

class DescriptorMismatch(MathematicalError):
    """Operands belong to different coefficient fields or rings."""


class DivisionByZero(MathematicalError, ZeroDivisionError):
    """Division or inversion by zero (or by a zero divisor in Q[t]/(m))."""


class InvalidInput(MathematicalError):
    """An argument is outside the documented domain of the operation."""


class ZeroPolynomial(MathematicalError):
    """The zero polynomial was supplied where a nonzero one is required."""


class UnknownVariable(MathematicalError):
    """A variable name does not belong to the polynomial ring at hand."""


# -- lattices and divisors ----------------------------------------------------

class NotASublattice(MathematicalError):
    """Index was requested for a pair of lattices without containment."""


class NotASpanningTree(MathematicalError):
    """The supplied edge list is not a spanning tree on the given labels."""


class UnsupportedPoint(MathematicalError):
    """A divisor mentions a point outside the declared boundary list."""


# -- curve pipelines ----------------------------------------------------------

class BoundaryNotInField(MathematicalError):
    """A boundary point is not rational over the working field."""


class DegenerateConic(MathematicalError):
    """The quadric is singular (the symmetric 3x3 matrix has determinant 0)."""


class AuxiliaryPointNotFound(MathematicalError):
    """No usable auxiliary point for the chord construction on a conic."""


class InvalidParametrization(MathematicalError):
    """Parametrizing forms fail the homogeneity/independence requirements."""


class NotAUnit(MathematicalError):
    """The requested rational function does not restrict to a unit."""


class PointNotOnCurve(MathematicalError):
    """An affine point does not satisfy the curve equation."""


class IrrationalIntersection(MathematicalError):
    """A line meets the curve in points that are not rational."""


class InternalError(UnitGroupError):
    """An invariant that the theory guarantees was violated at runtime."""


class GNotClosed(InternalError):
    """The finite torsion subgroup enumeration failed to close."""


# -- precision ----------------------------------------------------------------

class PrecisionExhausted(PrecisionError):
    """The height iteration hit its doubling cap before reaching tolerance."""


class RankUndecidable(PrecisionError):
    """The height Gram matrix has no spectral gap above the error radius."""
