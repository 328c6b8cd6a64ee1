"""Exception types shared across the package."""


class PhmapsError(Exception):
    """Base class for all package errors."""


class InvalidMapError(PhmapsError):
    """Coefficient table violates the basic normalization (a_{1,1}=1, |b_{1,1}|<1)."""


class MapSyntaxError(PhmapsError):
    """Malformed .phm input. Carries the 1-based line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class WeightError(PhmapsError):
    """Convex-combination weights are invalid (negative, or do not sum to 1)."""


class NotMemberError(PhmapsError):
    """Operation requires class membership that the map does not have."""


class ParamError(PhmapsError):
    """Parameter outside the documented domain."""


class GridTooLargeError(PhmapsError):
    """Grid exceeds the enforced rings*rays budget."""


class ZeroValueError(PhmapsError):
    """Map value vanished where a nonzero denominator is required."""


class ZeroDerivativeError(PhmapsError):
    """Angular derivative vanished where a nonzero denominator is required."""
