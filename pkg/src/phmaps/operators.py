"""Coefficientwise operators on maps.

Convolution and integral convolution multiply coefficient tables entrywise
(the latter dividing degree-n terms by n), convex combinations average them,
and rescaling r^{-1} F(r z) multiplies entry (n, k) by r^(2k+n-3). The
neighborhood distance is the weighted l1 metric used by the inclusion bound
``delta_bound``. Maps of different depth are zero-padded, matching the series
semantics. Everything here is pure and exactness-preserving.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .classes import hs_lambda, membership
from .errors import NotMemberError, ParamError, WeightError
from .exact import EPS_STRICT, Scalar, as_scalar, format_scalar, is_exact
from .series import Coefficient, Key, PolyharmonicMap, ZERO


def _padded_pair(F: PolyharmonicMap, G: PolyharmonicMap) -> tuple[PolyharmonicMap, PolyharmonicMap]:
    p = max(F.p, G.p)
    return F.padded(p), G.padded(p)


def convolve(F: PolyharmonicMap, G: PolyharmonicMap) -> PolyharmonicMap:
    """Entrywise product of coefficient tables; support is the intersection."""
    F, G = _padded_pair(F, G)
    a = {key: F.a[key] * G.a[key] for key in F.a.keys() & G.a.keys()}
    b = {key: F.b[key] * G.b[key] for key in F.b.keys() & G.b.keys()}
    return PolyharmonicMap(F.p, a, b)


def integral_convolve(F: PolyharmonicMap, G: PolyharmonicMap) -> PolyharmonicMap:
    """Entrywise product with each degree-n term divided by n."""
    F, G = _padded_pair(F, G)
    a = {(n, k): (F.a[(n, k)] * G.a[(n, k)]).scale(Fraction(1, n)) for n, k in F.a.keys() & G.a.keys()}
    b = {(n, k): (F.b[(n, k)] * G.b[(n, k)]).scale(Fraction(1, n)) for n, k in F.b.keys() & G.b.keys()}
    return PolyharmonicMap(F.p, a, b)


@dataclass(frozen=True)
class ConvexCombination:
    """Weighted terms (t_i, F_i) with nonnegative t_i summing to 1."""

    terms: tuple[tuple[Scalar, PolyharmonicMap], ...]

    def __post_init__(self):
        if not self.terms:
            raise WeightError("empty combination")
        terms = tuple((as_scalar(t), F) for t, F in self.terms)
        object.__setattr__(self, "terms", terms)
        total: Scalar = Fraction(0)
        for t, _ in terms:
            if t < 0:
                raise WeightError(f"negative weight {format_scalar(t)}")
            total = total + t
        if is_exact(total):
            if total != 1:
                raise WeightError(f"weights sum to {format_scalar(total)}, expected 1")
        elif abs(float(total) - 1.0) > EPS_STRICT:
            raise WeightError(f"weights sum to {format_scalar(total)}, expected 1")


def convex_combine(combo: ConvexCombination) -> PolyharmonicMap:
    """Coefficientwise weighted sum; the leading coefficient stays exactly 1."""
    p = max(F.p for _, F in combo.terms)
    a: dict[Key, Coefficient] = {}
    b: dict[Key, Coefficient] = {}
    for t, F in combo.terms:
        for key, c in F.a.items():
            a[key] = a.get(key, ZERO) + c.scale(t)
        for key, c in F.b.items():
            b[key] = b.get(key, ZERO) + c.scale(t)
    a[(1, 1)] = Coefficient(1, 0)  # exact by sum(t_i) = 1; normalize float residue
    return PolyharmonicMap(p, a, b)


def combine(terms: Sequence[tuple[Scalar, PolyharmonicMap]]) -> PolyharmonicMap:
    return convex_combine(ConvexCombination(tuple(terms)))


def rescale(F: PolyharmonicMap, r) -> PolyharmonicMap:
    """r^{-1} F(r z): entry (n, k) is multiplied by r^(2k+n-3). Exact for rational r."""
    r = as_scalar(r)
    if not 0 < r <= 1:
        raise ParamError(f"rescale radius must lie in (0,1], got {format_scalar(r)}")
    a = {(n, k): c.scale(r ** (2 * k + n - 3)) for (n, k), c in F.a.items()}
    b = {(n, k): c.scale(r ** (2 * k + n - 3)) for (n, k), c in F.b.items()}
    return PolyharmonicMap(F.p, a, b)


def neighborhood_distance(F: PolyharmonicMap, G: PolyharmonicMap) -> Scalar:
    """Weighted l1 distance between coefficient tables.

    Weights: (2(k-1)+n) for n >= 2; (2k-1) for the first-degree coefficients of
    layers k >= 2; plain |b11 - B11| for the k=1 antianalytic leader.
    """
    F, G = _padded_pair(F, G)
    total: Scalar = Fraction(0)
    keys = (F.a.keys() | G.a.keys() | F.b.keys() | G.b.keys()) - {(1, 1)}
    for n, k in sorted(keys, key=lambda nk: (nk[1], nk[0])):
        da = (F.coeff_a(n, k) - G.coeff_a(n, k)).magnitude()
        db = (F.coeff_b(n, k) - G.coeff_b(n, k)).magnitude()
        w = (2 * (k - 1) + n) if n >= 2 else (2 * k - 1)
        total = total + w * (da + db)
    total = total + (F.coeff_b(1, 1) - G.coeff_b(1, 1)).magnitude()
    return total


def delta_bound(F: PolyharmonicMap, lam) -> Scalar:
    """Neighborhood radius lambda/(p+lambda) * (2 - sum_k (2k-1)(|a[1,k]|+|b[1,k]|)).

    The bound only applies to maps in the hs-lambda class, so non-members raise.
    """
    lam = as_scalar(lam)
    if not 0 < lam <= 1:
        raise ParamError(f"lambda must lie in (0,1], got {format_scalar(lam)}")
    report = membership(F, hs_lambda(lam))
    if not report.member:
        raise NotMemberError(f"map is not in hs-lambda({format_scalar(lam)})")
    return lam / (F.p + lam) * report.row1_rhs


@dataclass(frozen=True)
class NeighborhoodReport:
    distance: Scalar
    delta_bound: Scalar
    inside: bool

    @property
    def exact(self) -> bool:
        return is_exact(self.distance) and is_exact(self.delta_bound)

    def to_kv(self) -> str:
        return "\n".join(
            [
                f"distance={format_scalar(self.distance)}",
                f"delta_bound={format_scalar(self.delta_bound)}",
                f"inside={'true' if self.inside else 'false'}",
                f"exact={'true' if self.exact else 'false'}",
            ]
        )


def neighborhood_report(F: PolyharmonicMap, G: PolyharmonicMap, lam) -> NeighborhoodReport:
    d = neighborhood_distance(F, G)
    bound = delta_bound(F, lam)
    return NeighborhoodReport(distance=d, delta_bound=bound, inside=bool(d <= bound))


def ch0_certificate(H: PolyharmonicMap) -> bool:
    """Necessary coefficient bounds for normalized convex harmonic maps.

    True iff H is effectively single-layer with b11 = 0 and every coefficient
    satisfies 2|A_n| <= n+1 and 2|B_n| <= n-1 (checked exactly via squares for
    exact coefficients). This certifies the coefficient hypothesis the
    convolution-closure properties need; it is not a convexity proof.
    """
    if any(k >= 2 for _, k in list(H.a) + list(H.b)):
        return False
    if not H.coeff_b(1, 1).is_zero:
        return False
    for (n, _), c in H.a.items():
        if n >= 2 and not 4 * c.magnitude_squared() <= (n + 1) ** 2:
            return False
    for (n, _), c in H.b.items():
        if n >= 2 and not 4 * c.magnitude_squared() <= (n - 1) ** 2:
            return False
    return True
