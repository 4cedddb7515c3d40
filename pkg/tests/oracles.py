"""Independent oracles and random-instance generators for the tests.

Everything here deliberately avoids the code paths it checks: areas come
from coordinate constructions, the Lobachevsky function from quadrature
of its defining integral, determinants from numpy's LU factorization,
and hyperbolic-plane figures from an explicit Minkowski R^{2,1} model.
"""

from __future__ import annotations

import math

import numpy as np

from curvavol.gram import DihedralAngleSet, TetraKind, classify, gram_from_angles
from curvavol.specfun import Tolerance, find_root_bracketed, integrate_adaptive

TIGHT = Tolerance(abs_tol=1e-12, rel_tol=1e-12, max_evals=2 * 10 ** 6)


def lobachevsky_integral(x: float) -> float:
    """Defining integral -int_0^x log|2 sin t| dt by adaptive quadrature."""
    sign = 1.0
    if x < 0:
        sign, x = -1.0, -x
    if x == 0.0:
        return 0.0
    f = lambda t: -np.log(np.abs(2.0 * np.sin(t)))
    total = 0.0
    # split at multiples of pi where the integrand has log poles
    lo = 0.0
    while lo < x - 1e-15:
        hi = min(math.floor(lo / math.pi + 1.0) * math.pi, x)
        total += integrate_adaptive(f, lo, hi, TIGHT).value
        lo = hi
    return sign * total


# ---------------------------------------------------------------------------
# Euclidean coordinate constructions

def triangle_coords(a: float, b: float, c: float) -> np.ndarray:
    """Vertices of the Euclidean triangle with |P1P2|=c, |P1P3|=b, |P2P3|=a."""
    x = (b * b + c * c - a * a) / (2.0 * c)
    y2 = b * b - x * x
    return np.array([[0.0, 0.0], [c, 0.0], [x, math.sqrt(max(y2, 0.0))]])


def shoelace(pts: np.ndarray) -> float:
    x, y = pts[:, 0], pts[:, 1]
    return 0.5 * abs(float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1))))


def euclidean_cyclic_quad_coords(a, b, c, d):
    """Vertices of the convex cyclic quadrilateral with the given sides,
    or None when the circumcenter falls outside (skipped by callers)."""
    sides = (a, b, c, d)
    smax = max(sides)

    def gap(r):
        return sum(2.0 * math.asin(x / (2.0 * r)) for x in sides) - 2.0 * math.pi

    r_lo = smax / 2.0 * (1.0 + 1e-13)
    if gap(r_lo) < 0.0:
        return None
    r_hi = sum(sides)
    while gap(r_hi) > 0.0:
        r_hi *= 2.0
    radius = find_root_bracketed(gap, r_lo, r_hi,
                                 Tolerance(abs_tol=1e-14, rel_tol=1e-14))
    theta = 0.0
    pts = []
    for x in sides:
        pts.append([radius * math.cos(theta), radius * math.sin(theta)])
        theta += 2.0 * math.asin(x / (2.0 * radius))
    return np.array(pts)


def euclidean_trapezoid_coords(a, b, c, d):
    """Vertices with bases b (bottom, V2V3) and d (top, V4V1), legs a, c."""
    q = ((a * a - c * c) / (b - d) - d + b) / 2.0
    h2 = a * a - q * q
    if h2 <= 0.0:
        return None
    h = math.sqrt(h2)
    v2 = [0.0, 0.0]
    v3 = [b, 0.0]
    v4 = [q + d, h]
    v1 = [q, h]
    return np.array([v1, v2, v3, v4])


# ---------------------------------------------------------------------------
# hyperbolic plane (Minkowski R^{2,1})

_ETA2 = np.diag([-1.0, 1.0, 1.0])


def _mink2(u, v):
    return float(u @ _ETA2 @ v)


def h2_point(tau: float, h: float) -> np.ndarray:
    """Fermi coordinates: distance tau along the base geodesic, then
    perpendicular distance h."""
    return np.array([math.cosh(tau) * math.cosh(h),
                     math.sinh(tau) * math.cosh(h),
                     math.sinh(h)])


def h2_distance(p, q) -> float:
    return math.acosh(max(1.0, -_mink2(p, q)))


def h2_angle(at, toward1, toward2) -> float:
    t1 = toward1 + _mink2(toward1, at) * at
    t2 = toward2 + _mink2(toward2, at) * at
    cval = _mink2(t1, t2) / math.sqrt(_mink2(t1, t1) * _mink2(t2, t2))
    return math.acos(min(1.0, max(-1.0, cval)))


def symmetric_trapezoid(u0: float, u1: float, h: float):
    """Mirror-symmetric hyperbolic trapezoid; returns (sides, angles)
    with sides (a, b, c, d) in cyclic order, b and d the bases."""
    v = [h2_point(u0, 0.0), h2_point(u1, h),
         h2_point(-u1, h), h2_point(-u0, 0.0)]
    sides = (h2_distance(v[0], v[1]), h2_distance(v[1], v[2]),
             h2_distance(v[2], v[3]), h2_distance(v[3], v[0]))
    angles = (h2_angle(v[0], v[3], v[1]), h2_angle(v[1], v[0], v[2]),
              h2_angle(v[2], v[1], v[3]), h2_angle(v[3], v[2], v[0]))
    return sides, angles


# ---------------------------------------------------------------------------
# random instance generators (deterministic via caller-provided rng)

def random_compact_hyperbolic(rng, margin: float = 5e-3) -> DihedralAngleSet:
    """Compact hyperbolic angle set with comfortable margins on det and
    cofactors, sampled around the regular instance."""
    while True:
        vals = 1.2 + rng.uniform(-0.22, 0.22, size=6)
        if np.any(vals <= 0.0) or np.any(vals >= math.pi):
            continue
        ang = DihedralAngleSet(*vals)
        g = gram_from_angles(ang)
        if classify(g).kind is not TetraKind.COMPACT_HYPERBOLIC:
            continue
        cof = g.cofactors
        if (g.det < -margin and np.all(np.diag(cof) > margin)
                and np.all(cof[~np.eye(4, dtype=bool)] > margin)):
            return ang


def random_spherical(rng, margin: float = 5e-3) -> DihedralAngleSet:
    """Strictly positive-definite spherical angle set near all-right."""
    while True:
        vals = math.pi / 2 + rng.uniform(-0.35, 0.35, size=6)
        ang = DihedralAngleSet(*vals)
        g = gram_from_angles(ang)
        if classify(g).kind is not TetraKind.SPHERICAL:
            continue
        if (np.linalg.eigvalsh(g.entries).min() > margin
                and np.all(np.diag(g.cofactors) > margin)):
            return ang


def random_spherical_orthoscheme(rng, margin: float = 5e-3):
    """Essential angles (A, B, C) of a spherical orthoscheme inside the
    convergence domain of the orthoscheme series (A, C acute)."""
    while True:
        a = rng.uniform(0.35, math.pi / 2 - 0.08)
        c = rng.uniform(0.35, math.pi / 2 - 0.08)
        d2cap = (math.sin(a) * math.sin(c)) ** 2
        if d2cap <= margin:
            continue
        cos_b_max = math.sqrt(max(d2cap - margin, 0.0))
        b = rng.uniform(math.acos(cos_b_max), math.pi / 2)
        from curvavol.tetvol import orthoscheme_angle_set
        ang = orthoscheme_angle_set(a, b, c)
        g = gram_from_angles(ang)
        if (classify(g).kind is TetraKind.SPHERICAL
                and np.linalg.eigvalsh(g.entries).min() > margin):
            return a, b, c


def random_hyperbolic_triangle(rng, lo: float = 0.01, hi: float = 5.0):
    while True:
        sides = rng.uniform(lo, hi, size=3)
        if np.all(sides < sides.sum() - sides):
            return tuple(float(x) for x in sides)


def random_cyclic_quad(rng, lo: float = 0.05, hi: float = 2.5):
    while True:
        sides = rng.uniform(lo, hi, size=4)
        if np.all(sides < sides.sum() - sides):
            return tuple(float(x) for x in sides)


def random_ideal(rng, obtuse: bool, margin: float = 0.02):
    """IdealAngles with 0 < A <= B <= C and the requested class, kept
    away from the right-angle boundary by `margin`."""
    from curvavol.seidel import IdealAngles
    while True:
        a = rng.uniform(margin, math.pi / 2 - margin)
        b = rng.uniform(a, math.pi / 2 - margin)
        c = math.pi - a - b
        if not (b <= c):
            continue
        if obtuse and c > math.pi / 2 + margin:
            return IdealAngles(A=a, B=b)
        if not obtuse and c < math.pi / 2 - margin:
            return IdealAngles(A=a, B=b)
