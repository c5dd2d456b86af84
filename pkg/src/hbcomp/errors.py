"""Exception hierarchy.

Decisions are never raised: verdict-like outcomes (not in H^2, not a self
map, ...) are returned as values. Exceptions are reserved for inputs the
pipeline cannot process and for numeric failures.
"""


class HbcompError(Exception):
    """Base class for all toolkit errors."""


class DivideByZeroPoly(HbcompError, ZeroDivisionError):
    pass


class ZeroFunction(HbcompError):
    pass


class NotInHardy(HbcompError):
    pass


class NotASelfMap(HbcompError):
    pass


class IsInner(HbcompError):
    pass


class OddCircleMultiplicity(HbcompError):
    pass


class NotOuter(HbcompError):
    pass


class NormExceeded(HbcompError):
    pass


class IllConditioned(HbcompError):
    pass


class PoleAtBoundaryZero(HbcompError):
    def __init__(self, pole, message=None):
        self.pole = pole
        super().__init__(message or f"function has a pole at boundary zero {pole}")


class MateMismatch(HbcompError):
    pass


class NotBoundedBelow(HbcompError):
    pass


class NotInHb(HbcompError):
    def __init__(self, witness, message=None):
        self.witness = witness
        super().__init__(message or f"function is not in H(b); witness pole {witness}")


class AmbiguousBoundaryValue(HbcompError):
    def __init__(self, index, value, nearest):
        self.index = index
        self.value = value
        self.nearest = nearest
        super().__init__(
            f"phi(xi_{index}) = {value} lies on the circle but is {nearest:.3g} away "
            "from the nearest boundary zero of a; refusing to guess"
        )


class NotContactPoint(HbcompError):
    pass


class QuadratureNotConverged(HbcompError):
    pass


class WrongSpace(HbcompError):
    pass


class PoleOnSamplingCircle(HbcompError):
    pass


class SchemaError(HbcompError, ValueError):
    pass
