"""Independent oracles for the test suite.

These deliberately avoid the closed-form code paths they check: derivatives
come from central finite differences on plain evaluation, and the polyline
properties come from brute-force segment / ray-crossing geometry.
"""

from __future__ import annotations

import numpy as np

from phmaps import evaluate, theta_derivative


def fd_theta_derivative(F, r, theta, order, step=1e-5):
    """Central finite differences in theta on top of plain evaluation."""
    if order == 1:
        zp = r * np.exp(1j * (theta + step))
        zm = r * np.exp(1j * (theta - step))
        return (evaluate(F, zp) - evaluate(F, zm)) / (2 * step)
    # second derivative: difference the first-order closed form, which the
    # order-1 agreement test has already tied to plain evaluation
    return (theta_derivative(F, r, theta + step, 1) - theta_derivative(F, r, theta - step, 1)) / (2 * step)


def fd_wirtinger(F, z, step=1e-5):
    """(F_z, F_zbar) via 2D central differences: F_z=(F_x - i F_y)/2, F_zbar=(F_x + i F_y)/2."""
    fx = (evaluate(F, z + step) - evaluate(F, z - step)) / (2 * step)
    fy = (evaluate(F, z + 1j * step) - evaluate(F, z - 1j * step)) / (2 * step)
    return (fx - 1j * fy) / 2, (fx + 1j * fy) / 2


def polyline_self_intersections(pts: np.ndarray) -> int:
    """Count proper crossings between non-adjacent segments of a closed polyline."""
    pts = np.asarray(pts, dtype=complex)
    n = len(pts)
    p = pts
    q = np.roll(pts, -1)

    def cross(o, a, b):
        return (a.real - o.real) * (b.imag - o.imag) - (a.imag - o.imag) * (b.real - o.real)

    count = 0
    for i in range(n):
        # vectorize the partner loop
        j = np.arange(i + 2, n if i > 0 else n - 1)
        if len(j) == 0:
            continue
        p1, q1 = p[i], q[i]
        p2, q2 = p[j], q[j]
        d1 = cross(p1, q1, p2)
        d2 = cross(p1, q1, q2)
        d3 = cross(p2, q2, np.full(len(j), p1))
        d4 = cross(p2, q2, np.full(len(j), q1))
        proper = (np.sign(d1) * np.sign(d2) < 0) & (np.sign(d3) * np.sign(d4) < 0)
        count += int(np.count_nonzero(proper))
    return count


def ray_crossing_counts(pts: np.ndarray, directions: int = 4096) -> np.ndarray:
    """For each direction (offset half a step to dodge vertex alignment), the
    number of polygon edges crossed by the ray from the origin."""
    pts = np.asarray(pts, dtype=complex)
    u = pts
    v = np.roll(pts, -1)
    phis = 2.0 * np.pi * (np.arange(directions) + 0.5) / directions
    counts = np.zeros(directions, dtype=int)
    for i, phi in enumerate(phis):
        rot = np.exp(-1j * phi)
        a = u * rot
        b = v * rot
        straddle = (a.imag > 0) != (b.imag > 0)
        with np.errstate(divide="ignore", invalid="ignore"):
            x_cross = (b.imag * a.real - a.imag * b.real) / (b.imag - a.imag)
        counts[i] = int(np.count_nonzero(straddle & (x_cross > 0)))
    return counts


def polyline_is_convex(pts: np.ndarray, tol: float = -1e-9) -> bool:
    """All consecutive-edge cross products share one sign within tol."""
    pts = np.asarray(pts, dtype=complex)
    e = np.roll(pts, -1) - pts
    e2 = np.roll(e, -1)
    cr = e.real * e2.imag - e.imag * e2.real
    orientation = 1.0 if float(np.sum(cr)) >= 0 else -1.0
    return bool(np.min(orientation * cr) >= tol)
