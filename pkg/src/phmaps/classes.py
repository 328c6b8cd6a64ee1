"""Coefficient-class membership.

Three families of weighted l1 conditions on the coefficient table:

  hs-lambda:  sum_{k, n>=2} (2(k-1) + n(L*n + 1 - L)) (|a|+|b|)
                  <= 2 - sum_k (2k-1)(|a[1,k]|+|b[1,k]|),
              with 1 <= sum_k (2k-1)(|a[1,k]|+|b[1,k]|) < 2,   L in [0,1];

  hs:         lambda = 0 weights (2(k-1)+n), written in its classical form
              with RHS 1 - |b11| - sum_{k>=2} (2k-1)(...) and second row
              0 <= |b11| + sum_{k>=2} (|a[1,k]|+|b[1,k]|) < 1;

  hc:         same as hs with weights (2(k-1)+n^2).

A report records both rows with signed margins, plus exactness and whether a
strict comparison consulted the epsilon guard (never for all-exact input).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .errors import InvalidMapError, ParamError
from .exact import Scalar, as_scalar, format_scalar, is_exact, strict_less
from .series import PolyharmonicMap


class Family(Enum):
    HS_LAMBDA = "hs-lambda"
    HS = "hs"
    HC = "hc"


@dataclass(frozen=True)
class ClassParams:
    """Class selector: family, lambda (hs-lambda only), and the superscript-0 flag."""

    family: Family
    lam: Scalar = Fraction(0)
    normalized: bool = False

    def __post_init__(self):
        object.__setattr__(self, "lam", as_scalar(self.lam))
        if not 0 <= self.lam <= 1:
            raise ParamError(f"lambda must lie in [0,1], got {format_scalar(self.lam)}")


def hs_lambda(lam, normalized: bool = False) -> ClassParams:
    return ClassParams(Family.HS_LAMBDA, as_scalar(lam), normalized)


def hs(normalized: bool = False) -> ClassParams:
    return ClassParams(Family.HS, Fraction(0), normalized)


def hc(normalized: bool = False) -> ClassParams:
    return ClassParams(Family.HC, Fraction(1), normalized)


def weight(n: int, k: int, lam) -> Scalar:
    """Row-1 weight 2(k-1) + n(lam*n + 1 - lam). Exact for rational lam."""
    if n < 1 or k < 1:
        raise ParamError(f"weight indices must be >= 1, got ({n}, {k})")
    lam = as_scalar(lam)
    if not 0 <= lam <= 1:
        raise ParamError(f"lambda must lie in [0,1], got {format_scalar(lam)}")
    return 2 * (k - 1) + n * (lam * n + 1 - lam)


@dataclass(frozen=True)
class MembershipReport:
    """Exact left/right sides and signed margins of the two inequality rows.

    ``row2_value`` is always the weighted first-coefficient sum
    sum_k (2k-1)(|a[1,k]|+|b[1,k]|). The hs/hc families test a different row-2
    quantity (|b11| plus the unweighted tail), carried in ``row2_condition``
    together with its [row2_lo, row2_hi) bounds; for hs-lambda the two
    coincide.
    """

    params: ClassParams
    row1_lhs: Scalar
    row1_rhs: Scalar
    row2_value: Scalar
    row2_condition: Scalar
    row2_lo: Scalar
    row2_hi: Scalar
    row2_ok: bool
    normalized_ok: bool
    member: bool
    exact: bool
    used_epsilon: bool

    @property
    def row1_margin(self) -> Scalar:
        return self.row1_rhs - self.row1_lhs

    def to_kv(self) -> str:
        lines = [
            f"family={self.params.family.value}",
            f"lambda={format_scalar(self.params.lam)}",
            f"normalized_required={'true' if self.params.normalized else 'false'}",
            f"row1_lhs={format_scalar(self.row1_lhs)}",
            f"row1_rhs={format_scalar(self.row1_rhs)}",
            f"row1_margin={format_scalar(self.row1_margin)}",
            f"row2_value={format_scalar(self.row2_value)}",
            f"row2_condition={format_scalar(self.row2_condition)}",
            f"row2_lo={format_scalar(self.row2_lo)}",
            f"row2_hi={format_scalar(self.row2_hi)}",
            f"row2_ok={'true' if self.row2_ok else 'false'}",
            f"normalized_ok={'true' if self.normalized_ok else 'false'}",
            f"member={'true' if self.member else 'false'}",
            f"exact={'true' if self.exact else 'false'}",
            f"used_epsilon={'true' if self.used_epsilon else 'false'}",
        ]
        return "\n".join(lines)


def _abs_sum_pair(F: PolyharmonicMap, n: int, k: int) -> tuple[Scalar, bool]:
    """|a[n,k]| + |b[n,k]| and whether both magnitudes are exact."""
    ma = F.coeff_a(n, k).magnitude()
    mb = F.coeff_b(n, k).magnitude()
    return ma + mb, is_exact(ma) and is_exact(mb)


def membership(F: PolyharmonicMap, params: ClassParams) -> MembershipReport:
    """Evaluate both inequality rows of the selected family over the support."""
    lead = F.coeff_a(1, 1)
    if not (lead.re == 1 and lead.im == 0):
        raise InvalidMapError("membership requires a[1,1] = 1")

    if params.family is Family.HS_LAMBDA:
        lam = params.lam
    elif params.family is Family.HS:
        lam = Fraction(0)
    else:
        lam = Fraction(1)

    exact = True
    row1_lhs: Scalar = Fraction(0)
    first_weighted: Scalar = Fraction(0)   # sum_k (2k-1)(|a[1,k]|+|b[1,k]|), includes k=1
    first_plain: Scalar = Fraction(0)      # sum_{k>=2} (|a[1,k]|+|b[1,k]|)
    b11_mag = F.coeff_b(1, 1).magnitude()
    exact &= is_exact(b11_mag)

    for n, k in F.support():
        pair, pair_exact = _abs_sum_pair(F, n, k)
        exact &= pair_exact
        if n >= 2:
            row1_lhs = row1_lhs + weight(n, k, lam) * pair
        elif k >= 2:
            first_weighted = first_weighted + (2 * k - 1) * pair
            first_plain = first_plain + pair
    first_weighted = first_weighted + 1 + b11_mag  # k=1 term: |a[1,1]| + |b[1,1]|

    row2_value = first_weighted
    if params.family is Family.HS_LAMBDA:
        row1_rhs = 2 - first_weighted
        row2_condition = first_weighted
        row2_lo: Scalar = Fraction(1)
        row2_hi: Scalar = Fraction(2)
    else:
        # Classical form: RHS = 1 - |b11| - sum_{k>=2}(2k-1)(...), row 2 unweighted.
        first_weighted_tail = first_weighted - 1 - b11_mag
        row1_rhs = 1 - b11_mag - first_weighted_tail
        row2_condition = b11_mag + first_plain
        row2_lo = Fraction(0)
        row2_hi = Fraction(1)

    upper_ok, used_epsilon = strict_less(row2_condition, row2_hi)
    row2_ok = bool(row2_condition >= row2_lo) and upper_ok

    normalized_ok = F.is_normalized
    member = bool(row1_rhs - row1_lhs >= 0) and row2_ok and (normalized_ok or not params.normalized)

    return MembershipReport(
        params=params,
        row1_lhs=row1_lhs,
        row1_rhs=row1_rhs,
        row2_value=row2_value,
        row2_condition=row2_condition,
        row2_lo=row2_lo,
        row2_hi=row2_hi,
        row2_ok=row2_ok,
        normalized_ok=normalized_ok,
        member=member,
        exact=exact,
        used_epsilon=used_epsilon and not exact,
    )


def class_reduction_check(F: PolyharmonicMap) -> bool:
    """Do the lambda=0 and lambda=1 predicates agree with the hs/hc families on F?"""
    via_lambda0 = membership(F, hs_lambda(Fraction(0))).member
    via_hs = membership(F, hs()).member
    via_lambda1 = membership(F, hs_lambda(Fraction(1))).member
    via_hc = membership(F, hc()).member
    return via_lambda0 == via_hs and via_lambda1 == via_hc
