"""Built-in constructors for the named mappings used throughout the test deck.

Everything here is exact-rational, so the boundary-tight membership margins
come out as exact zeros.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .classes import weight
from .errors import ParamError
from .exact import Scalar, as_scalar
from .series import Coefficient, PolyharmonicMap, identity_map, make_map

__all__ = [
    "identity_map",
    "example_F1",
    "example_F2",
    "ExtremalSpec",
    "extremal_point",
    "half_plane_map",
    "phase_coefficient",
]


def example_F1() -> PolyharmonicMap:
    """z + (1/10) z^2 + (1/5) conj(z^2): starlike, convex on radii <= 2/3."""
    return make_map(1, a={(2, 1): Fraction(1, 10)}, b={(2, 1): Fraction(1, 5)})


def example_F2() -> PolyharmonicMap:
    """z + (1/101) z^2 + (49/101) conj(z^2): starlike, convex on radii <= 1/2."""
    return make_map(1, a={(2, 1): Fraction(1, 101)}, b={(2, 1): Fraction(49, 101)})


def phase_coefficient(magnitude: Scalar, phase: float) -> Coefficient:
    """magnitude * e^{i*phase}, kept exact for phases that are multiples of pi/2."""
    magnitude = as_scalar(magnitude)
    quarter = phase / (math.pi / 2)
    if quarter == round(quarter):
        q = round(quarter) % 4
        if q == 0:
            return Coefficient(magnitude, 0)
        if q == 1:
            return Coefficient(0, magnitude)
        if q == 2:
            return Coefficient(-magnitude, 0)
        return Coefficient(0, -magnitude)
    return Coefficient(float(magnitude) * math.cos(phase), float(magnitude) * math.sin(phase))


@dataclass(frozen=True)
class ExtremalSpec:
    """One boundary-tight single-slot map: z + |z|^(2(k-1)) * c * z^n (or conjugate kind).

    The slot magnitude is pinned to 1/weight(n, k, lambda), which is what makes
    the map an extremal point of the normalized class.
    """

    n: int
    k: int
    lam: Scalar
    kind: str = "analytic"  # "analytic" (z^n) or "antianalytic" (conj(z^n))
    phase: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "lam", as_scalar(self.lam))
        if self.n < 2:
            raise ParamError(f"extremal slot needs n >= 2, got n={self.n}")
        if self.k < 1:
            raise ParamError(f"layer must be >= 1, got k={self.k}")
        if self.kind not in ("analytic", "antianalytic"):
            raise ParamError(f"kind must be analytic|antianalytic, got {self.kind!r}")
        if not 0 <= self.lam <= 1:
            raise ParamError("lambda must lie in [0,1]")


def extremal_point(spec: ExtremalSpec, p: int | None = None) -> PolyharmonicMap:
    """Construct the extremal map for the spec; membership margin is exactly 0."""
    p = spec.k if p is None else p
    if p < spec.k:
        raise ParamError(f"p={p} cannot hold layer k={spec.k}")
    magnitude = 1 / weight(spec.n, spec.k, spec.lam)
    c = phase_coefficient(magnitude, spec.phase)
    if spec.kind == "analytic":
        return make_map(p, a={(spec.n, spec.k): c})
    # Series stores b[n,k]; the displayed factor on conj(z^n) is conj(b[n,k]).
    return make_map(p, b={(spec.n, spec.k): c.conjugate()})


def half_plane_map(N: int = 64) -> PolyharmonicMap:
    """Truncation of the convex half-plane map Re(z/(1-z)) + i Im(z/(1-z)^2).

    Coefficients A_n = (n+1)/2 and B_n = -(n-1)/2 meet the certificate bounds
    2|A_n| <= n+1, 2|B_n| <= n-1 with equality. The full map is an infinite
    series; any convolution against a finitely supported map only sees the
    finitely many matching entries, so the truncation is exact there. The
    (n+1)/2 growth makes rendering meaningful only strictly inside the disk.
    """
    if N < 1:
        raise ParamError(f"truncation degree must be >= 1, got {N}")
    a = {(n, 1): Fraction(n + 1, 2) for n in range(2, N + 1)}
    b = {(n, 1): Fraction(-(n - 1), 2) for n in range(2, N + 1)}
    return make_map(1, a=a, b=b)
