"""Exception hierarchy.

Errors are grouped by how the CLI reports them:

* exit 2 -- input / validation problems (bad expressions, wrong shapes,
  vectors off the complex sphere, ...);
* exit 3 -- a point of the singular set was hit (determinants vanishing,
  products leaving the Gaussian class, paths through singularities);
* exit 4 -- numerical failures (overflow, branch ties, step underflow).
"""


class WeylStarError(Exception):
    """Base class for all package errors."""

    exit_code = 4


class ValidationError(WeylStarError):
    exit_code = 2


class SingularSetError(WeylStarError):
    exit_code = 3


class NumericalError(WeylStarError):
    exit_code = 4


# -- validation ------------------------------------------------------------

class DimensionMismatch(ValidationError):
    pass


class NotSymmetric(ValidationError):
    pass


class NotOnSphere(ValidationError):
    pass


class ParseError(ValidationError):
    def __init__(self, message, position):
        super().__init__(f"{message} (at offset {position})")
        self.position = position


class IndexOutOfRange(ValidationError):
    pass


class NonQuadraticExponent(ValidationError):
    pass


class EvalError(ValidationError):
    """Expression is grammatical but cannot be evaluated (e.g. sum of a
    polynomial and a Gaussian)."""


# -- singular set ----------------------------------------------------------

class Singular(SingularSetError):
    pass


class SingularCos(SingularSetError):
    pass


class SingularPoint(SingularSetError):
    pass


class SingularEncountered(SingularSetError):
    pass


class ProductSingular(SingularSetError):
    pass


class NonInvertibleTransform(SingularSetError):
    pass


class NoInverseInClass(SingularSetError):
    pass


class PathThroughSingularity(SingularSetError):
    pass


# -- numerics --------------------------------------------------------------

class NonFinite(NumericalError):
    pass


class AmbiguousBranch(NumericalError):
    pass


class StepUnderflow(NumericalError):
    pass
