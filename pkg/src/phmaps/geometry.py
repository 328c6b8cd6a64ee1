"""Pointwise evaluation, derivatives, and grid-based geometric verification.

The angular-derivative quantities drive the geometric checks:

    arg rate        Im(F_theta / F)            > 0 on circles  -> starlike
    convexity rate  Im(F_thetatheta / F_theta) > 0 on circles  -> convex
    Jacobian        |F_z|^2 - |F_zbar|^2       > 0             -> sense-preserving

Working with Im(F_theta/F) instead of differentiating arg avoids branch
unwrapping entirely. All grid reductions are deterministic: minima are taken
in ring-major order, so argmin ties break to the lowest ring, then lowest ray.
A passing grid report is sampled evidence, not a proof.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .catalog import phase_coefficient
from .classes import hc, hs_lambda, membership, weight
from .errors import (
    GridTooLargeError,
    NotMemberError,
    ParamError,
    ZeroDerivativeError,
    ZeroValueError,
)
from .exact import Scalar, as_scalar, format_scalar
from .operators import convolve, rescale
from .series import PolyharmonicMap, make_map

EPS_ZERO = 1e-12          # nondegeneracy threshold for denominators
SIGN_TOL = -1e-9          # sign checks pass above this (boundary-tight examples)
MAX_GRID_POINTS = 2 ** 15

# Fraction of the local image spacing below which two non-adjacent grid images
# count as a collision. Boundary-tight maps develop near-cusps whose straddling
# chords shrink like (1 - r_max) * ray spacing, so the factor must stay well
# under rays * (1 - r_max) / (2*pi); 0.1 holds a >2x margin at the documented
# grids (rays >= 128, r_max <= 0.995) while genuine folds collide at ratios
# orders of magnitude smaller.
COLLISION_FACTOR = 0.1


def _terms(F: PolyharmonicMap) -> list[tuple[int, int, complex, complex]]:
    return [(n, k, F.coeff_a(n, k).as_complex(), F.coeff_b(n, k).as_complex()) for n, k in F.support()]


def evaluate(F: PolyharmonicMap, z):
    """F(z) for complex scalars or arrays (finite sum over the support)."""
    z = np.asarray(z, dtype=complex)
    scalar = z.ndim == 0
    r2 = z.real * z.real + z.imag * z.imag
    out = np.zeros(np.broadcast(z, r2).shape, dtype=complex)
    for n, k, ca, cb in _terms(F):
        zn = z ** n
        layer = r2 ** (k - 1) if k > 1 else 1.0
        out = out + layer * (ca * zn + np.conj(cb * zn))
    return complex(out[()]) if scalar else out


def evaluate_layer(F: PolyharmonicMap, k: int, z):
    """The harmonic layer G_k alone, without its |z|^(2(k-1)) factor."""
    z = np.asarray(z, dtype=complex)
    scalar = z.ndim == 0
    out = np.zeros(z.shape, dtype=complex)
    for (n, kk), c in F.a.items():
        if kk == k:
            out = out + c.as_complex() * z ** n
    for (n, kk), c in F.b.items():
        if kk == k:
            out = out + np.conj(c.as_complex() * z ** n)
    return complex(out[()]) if scalar else out


def theta_derivative(F: PolyharmonicMap, r, theta, order: int = 1):
    """Closed-form d^order/dtheta^order of F(r e^{i theta}).

    Term rule: a[n,k] contributes r^(2(k-1)+n) (in)^order a e^{in theta} and
    b[n,k] contributes r^(2(k-1)+n) (-in)^order conj(b) e^{-in theta}.
    """
    if order not in (1, 2):
        raise ParamError(f"derivative order must be 1 or 2, got {order}")
    r = np.asarray(r, dtype=float)
    theta = np.asarray(theta, dtype=float)
    scalar = r.ndim == 0 and theta.ndim == 0
    out = np.zeros(np.broadcast(r, theta).shape, dtype=complex)
    for n, k, ca, cb in _terms(F):
        rad = r ** (2 * (k - 1) + n)
        e = np.exp(1j * n * theta)
        out = out + rad * ((1j * n) ** order * ca * e + (-1j * n) ** order * np.conj(cb) * np.conj(e))
    return complex(out[()]) if scalar else out


def _as_real(val):
    arr = np.asarray(val)
    return float(arr[()]) if arr.ndim == 0 else arr


def arg_derivative(F: PolyharmonicMap, r, theta):
    """d/dtheta of arg F(r e^{i theta}), computed as Im(F_theta / F)."""
    z = np.asarray(r, dtype=float) * np.exp(1j * np.asarray(theta, dtype=float))
    w = evaluate(F, z)
    if np.any(np.abs(w) < EPS_ZERO):
        raise ZeroValueError("map value vanishes at a sample point")
    return _as_real(np.imag(theta_derivative(F, r, theta, 1) / w))


def convexity_indicator(F: PolyharmonicMap, r, theta):
    """d/dtheta of arg F_theta, computed as Im(F_thetatheta / F_theta)."""
    d1 = theta_derivative(F, r, theta, 1)
    if np.any(np.abs(d1) < EPS_ZERO):
        raise ZeroDerivativeError("angular derivative vanishes at a sample point")
    return _as_real(np.imag(theta_derivative(F, r, theta, 2) / d1))


def wirtinger_derivatives(F: PolyharmonicMap, z):
    """(F_z, F_zbar) from the term rules; 0^0 = 1 keeps k=2 layers finite at 0."""
    z = np.asarray(z, dtype=complex)
    scalar = z.ndim == 0
    zc = np.conj(z)
    r2 = (z * zc).real
    fz = np.zeros(z.shape, dtype=complex)
    fzb = np.zeros(z.shape, dtype=complex)
    for n, k, ca, cb in _terms(F):
        cbc = np.conj(cb)
        if k == 1:
            if ca != 0:
                fz = fz + ca * n * z ** (n - 1)
            if cb != 0:
                fzb = fzb + cbc * n * zc ** (n - 1)
            continue
        inner = r2 ** (k - 2)
        outer = r2 ** (k - 1)
        if ca != 0:
            fz = fz + ca * ((k - 1) * inner * zc * z ** n + n * outer * z ** (n - 1))
            fzb = fzb + ca * (k - 1) * inner * z ** (n + 1)
        if cb != 0:
            fz = fz + cbc * (k - 1) * inner * zc ** (n + 1)
            fzb = fzb + cbc * ((k - 1) * inner * z * zc ** n + n * outer * zc ** (n - 1))
    if scalar:
        return complex(fz[()]), complex(fzb[()])
    return fz, fzb


def jacobian(F: PolyharmonicMap, z):
    """|F_z|^2 - |F_zbar|^2; positive where F is sense-preserving."""
    fz, fzb = wirtinger_derivatives(F, z)
    val = np.abs(np.asarray(fz)) ** 2 - np.abs(np.asarray(fzb)) ** 2
    return float(val[()]) if np.asarray(val).ndim == 0 else val


# --- grids and reports -------------------------------------------------------


@dataclass(frozen=True)
class DiskGrid:
    """Polar sampling grid: ``rings`` circles up to r_max, ``rays`` angles.

    Ring j sits at r_max * j / rings; with include_origin_ring=False the
    innermost ring is dropped (kept if it is the only one).
    """

    rings: int = 32
    rays: int = 256
    r_max: float = 0.995
    include_origin_ring: bool = True

    def __post_init__(self):
        if self.rings < 1:
            raise ParamError(f"rings must be >= 1, got {self.rings}")
        if self.rays < 3:
            raise ParamError(f"rays must be >= 3, got {self.rays}")
        if not 0 < self.r_max < 1:
            raise ParamError(f"r_max must lie in (0,1), got {self.r_max}")

    def radii(self) -> np.ndarray:
        j0 = 1 if (self.include_origin_ring or self.rings == 1) else 2
        return self.r_max * np.arange(j0, self.rings + 1) / self.rings

    def angles(self) -> np.ndarray:
        return 2.0 * np.pi * np.arange(self.rays) / self.rays

    def points(self) -> np.ndarray:
        """Complex sample points, shape (len(radii), rays), ring-major."""
        return self.radii()[:, None] * np.exp(1j * self.angles())[None, :]


@dataclass(frozen=True)
class Extremum:
    value: float
    ring: int   # 0-based ring index into grid.radii()
    ray: int    # 0-based ray index
    r: float
    theta: float


@dataclass(frozen=True)
class GeometryReport:
    """Grid minima (with argmin locations) and the sampled injectivity count."""

    grid: DiskGrid
    checks: tuple[str, ...]
    min_jacobian: Extremum | None = None
    min_arg_derivative: Extremum | None = None
    min_convexity_indicator: Extremum | None = None
    injectivity_collisions: int | None = None

    def passed(self) -> bool:
        """Thresholds: jacobian > 0, starlike > 0, convex >= SIGN_TOL, zero collisions."""
        ok = True
        if self.min_jacobian is not None:
            ok &= self.min_jacobian.value > 0
        if self.min_arg_derivative is not None:
            ok &= self.min_arg_derivative.value > 0
        if self.min_convexity_indicator is not None:
            ok &= self.min_convexity_indicator.value >= SIGN_TOL
        if self.injectivity_collisions is not None:
            ok &= self.injectivity_collisions == 0
        return bool(ok)

    def to_kv(self) -> str:
        lines = [
            f"rings={self.grid.rings}",
            f"rays={self.grid.rays}",
            f"r_max={self.grid.r_max!r}",
            f"checks={','.join(self.checks)}",
        ]
        named = [
            ("jacobian", self.min_jacobian),
            ("arg_derivative", self.min_arg_derivative),
            ("convexity_indicator", self.min_convexity_indicator),
        ]
        for name, ext in named:
            if ext is None:
                continue
            lines.append(f"min_{name}={ext.value!r}")
            lines.append(f"argmin_{name}_ring={ext.ring}")
            lines.append(f"argmin_{name}_ray={ext.ray}")
        if self.injectivity_collisions is not None:
            lines.append(f"injectivity_collisions={self.injectivity_collisions}")
        lines.append(f"passed={'true' if self.passed() else 'false'}")
        return "\n".join(lines)

    def to_csv(self) -> str:
        rows = ["quantity,ring,ray,r,theta,value"]
        named = [
            ("jacobian", self.min_jacobian),
            ("arg_derivative", self.min_arg_derivative),
            ("convexity_indicator", self.min_convexity_indicator),
        ]
        for name, ext in named:
            if ext is not None:
                rows.append(f"{name},{ext.ring},{ext.ray},{ext.r:.17g},{ext.theta:.17g},{ext.value:.17g}")
        return "\n".join(rows) + "\n"


def _minimum(values: np.ndarray, radii: np.ndarray, angles: np.ndarray) -> Extremum:
    flat = int(np.argmin(values))  # C order: ties break to lowest ring, then ray
    ring, ray = divmod(flat, values.shape[1])
    return Extremum(
        value=float(values[ring, ray]),
        ring=ring,
        ray=ray,
        r=float(radii[ring]),
        theta=float(angles[ray]),
    )


_NEIGHBOR_REACH = 2  # Chebyshev radius that counts as grid-adjacent


def _collision_count(w: np.ndarray, factor: float = COLLISION_FACTOR) -> int:
    """Count non-adjacent grid pairs whose images nearly coincide.

    The per-pair tolerance scales with the smaller of the two points' local
    image spacing, measured over the full Chebyshev-2 index neighborhood: on a
    strongly sheared image grid the shortest local lattice vector can be a
    (1, 2) "knight's move", not an axis step. The same neighborhood is excluded
    from collision candidates. An absolute floor of 1e-9 of the image diameter
    keeps exact overlaps countable even where the local spacing degenerates.
    """
    R, S = w.shape
    reach = _NEIGHBOR_REACH
    spacing = np.full((R, S), np.inf)
    for dr in range(0, reach + 1):
        for ds in range(-reach, reach + 1):
            if dr == 0 and ds <= 0:
                continue  # (0,0) and mirrored ray offsets
            shifted = np.roll(w, -ds, axis=1)
            if dr == 0:
                d = np.abs(w - shifted)
                spacing = np.minimum(spacing, d)
            elif dr < R:
                d = np.abs(w[dr:] - shifted[:-dr])
                spacing[dr:] = np.minimum(spacing[dr:], d)
                spacing[:-dr] = np.minimum(spacing[:-dr], d)

    wf = w.ravel()
    tol = factor * spacing.ravel()
    diam = max(np.ptp(wf.real), np.ptp(wf.imag), 1e-300)
    floor = 1e-9 * diam
    cell = max(float(np.max(tol)), floor)

    ix = np.floor(wf.real / cell).astype(np.int64)
    iy = np.floor(wf.imag / cell).astype(np.int64)
    buckets: dict[tuple[int, int], list[int]] = {}
    for i in range(wf.size):
        buckets.setdefault((int(ix[i]), int(iy[i])), []).append(i)

    def adjacent(i: int, j: int) -> bool:
        ri, si = divmod(i, S)
        rj, sj = divmod(j, S)
        dray = abs(si - sj)
        return abs(ri - rj) <= reach and min(dray, S - dray) <= reach

    collisions = 0
    for i in range(wf.size):
        ci, cj = int(ix[i]), int(iy[i])
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                for j in buckets.get((ci + dx, cj + dy), ()):
                    if j <= i or adjacent(i, j):
                        continue
                    if abs(wf[i] - wf[j]) < max(min(tol[i], tol[j]), floor):
                        collisions += 1
    return collisions


ALL_CHECKS = ("jacobian", "starlike", "convex", "injective")


def verify_geometry(F: PolyharmonicMap, grid: DiskGrid, checks: Iterable[str] = ALL_CHECKS) -> GeometryReport:
    """Fill a GeometryReport with grid minima for the requested checks.

    Degenerate sample points (vanishing F for the starlike check, vanishing
    F_theta for the convex check) record a -inf minimum instead of raising, so
    a report is always produced and simply fails its thresholds.
    """
    checks = tuple(c for c in ALL_CHECKS if c in set(checks))
    if not checks:
        raise ParamError("no recognized checks requested")
    radii = grid.radii()
    angles = grid.angles()
    if radii.size * angles.size > MAX_GRID_POINTS:
        raise GridTooLargeError(f"{radii.size}x{angles.size} grid exceeds {MAX_GRID_POINTS} points")
    z = grid.points()

    min_jac = min_arg = min_conv = None
    collisions = None

    if "jacobian" in checks:
        min_jac = _minimum(np.asarray(jacobian(F, z)), radii, angles)
    if "starlike" in checks:
        w = evaluate(F, z)
        d1 = theta_derivative(F, radii[:, None], angles[None, :], 1)
        vals = np.where(np.abs(w) < EPS_ZERO, -np.inf, np.imag(d1 / np.where(np.abs(w) < EPS_ZERO, 1.0, w)))
        min_arg = _minimum(vals, radii, angles)
    if "convex" in checks:
        d1 = theta_derivative(F, radii[:, None], angles[None, :], 1)
        d2 = theta_derivative(F, radii[:, None], angles[None, :], 2)
        bad = np.abs(d1) < EPS_ZERO
        vals = np.where(bad, -np.inf, np.imag(d2 / np.where(bad, 1.0, d1)))
        min_conv = _minimum(vals, radii, angles)
    if "injective" in checks:
        collisions = _collision_count(evaluate(F, z))

    return GeometryReport(
        grid=grid,
        checks=checks,
        min_jacobian=min_jac,
        min_arg_derivative=min_arg,
        min_convexity_indicator=min_conv,
        injectivity_collisions=collisions,
    )


# --- distortion --------------------------------------------------------------


@dataclass(frozen=True)
class DistortionEnvelope:
    """Radius-dependent |F| bounds: lower(r) <= |F(z)| <= upper(r) at |z| = r.

    Coefficient tuples are (c1, c2, c3) for c1*r + c2*r^2 + c3*r^3. The cubic
    terms appear only on the high branch (lambda > 1/2).
    """

    lam: float
    b11: float
    a12: float
    b12: float
    branch: str
    lower_coeffs: tuple[float, float, float]
    upper_coeffs: tuple[float, float, float]

    def lower(self, r):
        c1, c2, c3 = self.lower_coeffs
        r = np.asarray(r, dtype=float)
        val = r * (c1 + r * (c2 + r * c3))
        return float(val[()]) if val.ndim == 0 else val

    def upper(self, r):
        c1, c2, c3 = self.upper_coeffs
        r = np.asarray(r, dtype=float)
        val = r * (c1 + r * (c2 + r * c3))
        return float(val[()]) if val.ndim == 0 else val


def distortion_envelope(F: PolyharmonicMap, lam) -> DistortionEnvelope:
    """Two-sided |F| envelope for a class member, by branch of lambda."""
    lam = as_scalar(lam)
    if not membership(F, hs_lambda(lam)).member:
        raise NotMemberError(f"map is not in hs-lambda({format_scalar(lam)})")
    b11 = float(F.coeff_b(1, 1).magnitude())
    a12 = float(F.coeff_a(1, 2).magnitude())
    b12 = float(F.coeff_b(1, 2).magnitude())
    lamf = float(lam)
    if lam <= Fraction(1, 2):
        c2 = (1.0 - b11) / (2.0 * (1.0 + lamf))
        return DistortionEnvelope(
            lam=lamf, b11=b11, a12=a12, b12=b12, branch="low",
            lower_coeffs=(1.0 - b11, -c2, 0.0),
            upper_coeffs=(1.0 + b11, c2, 0.0),
        )
    d = a12 + b12
    c2 = (1.0 - b11 - 3.0 * d) / (2.0 * (1.0 + lamf))
    return DistortionEnvelope(
        lam=lamf, b11=b11, a12=a12, b12=b12, branch="high",
        lower_coeffs=(1.0 - b11, -c2, -d),
        upper_coeffs=(1.0 + b11, c2, d),
    )


def distortion_extremal(lam, b11, a12=0, b12=0, phases: Sequence[float] | None = None) -> PolyharmonicMap:
    """Equality-attaining map for the distortion envelope.

    Low branch (lambda <= 1/2), phases (mu, nu):
        z + b11 e^{i mu} conj(z) + (1-b11)/(2(1+lambda)) e^{i nu} z^2.
    High branch, phases (eta, phi, psi): adds the z|z|^2 slot carrying
    a12+b12 and reduces the z^2 numerator by 3(a12+b12).

    With zero phases and z = r on the positive real axis all terms align, so
    |F(r)| equals the upper envelope exactly.
    """
    lam = as_scalar(lam)
    b11 = as_scalar(b11)
    a12 = as_scalar(a12)
    b12 = as_scalar(b12)
    if not 0 <= lam <= 1:
        raise ParamError("lambda must lie in [0,1]")
    if not 0 <= b11 < 1:
        raise ParamError("need 0 <= b11 < 1")
    if a12 < 0 or b12 < 0:
        raise ParamError("slot budgets must be nonnegative")
    high = lam > Fraction(1, 2)
    if not high:
        if a12 != 0 or b12 != 0:
            raise ParamError("a12/b12 budgets apply only to the high branch (lambda > 1/2)")
        mu, nu = phases if phases is not None else (0.0, 0.0)
        c2 = (1 - b11) / (2 * (1 + lam))
        return make_map(
            1,
            a={(2, 1): phase_coefficient(c2, nu)},
            b={(1, 1): phase_coefficient(b11, -mu)},
        )
    eta, phi, psi = phases if phases is not None else (0.0, 0.0, 0.0)
    d = a12 + b12
    numerator = 1 - b11 - 3 * d
    if numerator < 0:
        raise ParamError("need b11 + 3(a12+b12) <= 1 on the high branch")
    c2 = numerator / (2 * (1 + lam))
    if d == 0:  # no z|z|^2 slot, a single layer suffices
        return make_map(
            1, a={(2, 1): phase_coefficient(c2, phi)}, b={(1, 1): phase_coefficient(b11, -eta)}
        )
    return make_map(
        2,
        a={(2, 1): phase_coefficient(c2, phi), (1, 2): phase_coefficient(d, psi)},
        b={(1, 1): phase_coefficient(b11, -eta)},
    )


def layer_bound_check(F: PolyharmonicMap, lam, samples: int = 500, seed: int = 0, tol: float = 1e-12) -> bool:
    """Sampled per-layer bound |G_k(z)| <= (|a[1,k]|+|b[1,k]|)|z| + (1-|b11|)/(2(1+lambda))|z|^2."""
    lam = as_scalar(lam)
    if not membership(F, hs_lambda(lam)).member:
        raise NotMemberError(f"map is not in hs-lambda({format_scalar(lam)})")
    rng = np.random.default_rng(seed)
    r = rng.uniform(0.0, 0.999, samples)
    theta = rng.uniform(0.0, 2.0 * np.pi, samples)
    z = r * np.exp(1j * theta)
    b11 = float(F.coeff_b(1, 1).magnitude())
    c2 = (1.0 - b11) / (2.0 * (1.0 + float(lam)))
    for k in range(1, F.p + 1):
        g = np.abs(evaluate_layer(F, k, z))
        lead = float(F.coeff_a(1, k).magnitude() + F.coeff_b(1, k).magnitude())
        if not np.all(g <= lead * r + c2 * r * r + tol):
            return False
    return True


# --- convexity radius --------------------------------------------------------


def convexity_radius(lam) -> Scalar:
    """max(1/2, lambda): members rescaled to this radius map onto convex domains."""
    lam = as_scalar(lam)
    if not 0 <= lam <= 1:
        raise ParamError("lambda must lie in [0,1]")
    return max(Fraction(1, 2), lam)


def rescale_convexity_certificate(F: PolyharmonicMap, lam, r) -> bool:
    """Exact certificate that rescale(F, r) satisfies the hc row-1 condition.

    Checks the per-term inequality (2(k-1)+n^2) r^(2k+n-3) <= weight(n,k,lambda)
    over the support, the summed form <= 1, and the hc row-1 margin of the
    rescaled map. All three are exact for rational inputs.
    """
    lam = as_scalar(lam)
    r = as_scalar(r)
    if not membership(F, hs_lambda(lam)).member:
        raise NotMemberError(f"map is not in hs-lambda({format_scalar(lam)})")
    if not 0 < r <= convexity_radius(lam):
        raise ParamError(
            f"radius {format_scalar(r)} outside (0, {format_scalar(convexity_radius(lam))}]"
        )
    total: Scalar = Fraction(0)
    for n, k in F.support():
        if n < 2:
            continue
        hc_weight = 2 * (k - 1) + n * n
        scale = r ** (2 * k + n - 3)
        if not hc_weight * scale <= weight(n, k, lam):
            return False
        pair = F.coeff_a(n, k).magnitude() + F.coeff_b(n, k).magnitude()
        total = total + hc_weight * pair * scale
    if not total <= 1:
        return False
    return bool(membership(rescale(F, r), hc()).row1_margin >= 0)


# --- experimental search (no correctness contract) ----------------------------


def convolution_starlike_search(trials: int = 20, seed: int = 0,
                                grid: DiskGrid | None = None) -> list[dict]:
    """Search for starlikeness violations of two-layer convolutions.

    Samples two-layer members for lambda in [1/2, 1) against coefficient-bound
    certified two-layer maps, convolves, and records any grid report whose
    starlike/jacobian minima fail. An empty result asserts nothing; the
    underlying question is open.
    """
    from . import sampling  # local import: sampling sits above this module

    import random

    rng = random.Random(seed)
    grid = grid or DiskGrid(rings=16, rays=128, r_max=0.99)
    findings: list[dict] = []
    for trial in range(trials):
        lam = Fraction(1, 2) + Fraction(rng.randrange(0, 50), 100)
        F = sampling.random_member(rng, p=2, lam=lam, normalized=True)
        H = sampling.random_bounded_map(rng, p=2, max_degree=6)
        FH = convolve(F, H)
        report = verify_geometry(FH, grid, checks=("jacobian", "starlike"))
        if not report.passed():
            findings.append(
                {
                    "trial": trial,
                    "lambda": lam,
                    "map": FH,
                    "min_jacobian": report.min_jacobian.value,
                    "min_arg_derivative": report.min_arg_derivative.value,
                }
            )
    return findings
