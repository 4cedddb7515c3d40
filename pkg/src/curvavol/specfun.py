"""Special functions and reusable numerical kernels.

Lobachevsky function, Schlafli orthoscheme series, adaptive quadrature
and bracketed root finding.  Everything here is a pure function; the
quadrature accepts any numpy-vectorized integrand.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import DomainError, InvalidAngle, NonConvergence, NoSignChange


@dataclass(frozen=True)
class Tolerance:
    """Accuracy request shared by the iterative kernels."""

    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    max_evals: int = 10 ** 6

    def __post_init__(self):
        if not (self.abs_tol > 0.0):
            raise ValueError("abs_tol must be positive")
        if self.rel_tol < 0.0:
            raise ValueError("rel_tol must be nonnegative")
        if self.max_evals <= 0:
            raise ValueError("max_evals must be positive")


DEFAULT_TOL = Tolerance()


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error_estimate: float
    evaluations: int

    def __post_init__(self):
        if self.error_estimate < 0.0:
            raise ValueError("error_estimate must be nonnegative")
        if self.evaluations < 1:
            raise ValueError("evaluations must be at least 1")


def lobachevsky(x):
    """Lobachevsky function L(x) = -integral_0^x log|2 sin t| dt.

    Odd and pi-periodic; evaluated by a rapidly convergent series after
    range reduction to |y| <= pi/2, accurate to ~1e-16 absolute.
    Accepts scalars or arrays.
    """
    arr = np.asarray(x, dtype=np.float64)
    if not np.all(np.isfinite(arr)):
        raise DomainError("lobachevsky requires finite arguments")
    y = arr - np.pi * np.round(arr / np.pi)
    out = kernels.lob_series(np.atleast_1d(y))
    if arr.ndim == 0:
        return float(out[0])
    return out.reshape(arr.shape)


def schlafli_S(A: float, B: float, C: float, tol: Tolerance = DEFAULT_TOL) -> float:
    """Schlafli function S(A, B, C); the spherical orthoscheme with
    essential dihedral angles A, B, C has volume S(A, B, C) / 4.

    Evaluated through the classical series in (x, y, z) =
    (pi/2 - A, B, pi/2 - C) with ratio base
    q = (D - sin x sin z)/(D + sin x sin z), D = sqrt(cos^2 x cos^2 z - cos^2 y).

    When sin x sin z = 0 exactly (A or C a right angle) the series has
    q = 1 and is summed in closed form via its Abel limit
    S = pi * (y - |x| - |z|), which matches the geometric volume.
    """
    for name, val in (("A", A), ("B", B), ("C", C)):
        if not (0.0 < val < np.pi):
            raise InvalidAngle(f"angle {name}={val} outside (0, pi)")
    x = 0.5 * np.pi - A
    y = B
    z = 0.5 * np.pi - C

    d2 = (math.cos(x) * math.cos(z)) ** 2 - math.cos(y) ** 2
    if d2 < -1e-14:
        raise DomainError(
            f"D^2 = {d2} < 0: not a spherical orthoscheme angle set")
    d = math.sqrt(max(d2, 0.0))
    p = math.sin(x) * math.sin(z)

    if p == 0.0:
        # Abel limit of the series at q = 1
        return math.pi * (y - abs(x) - abs(z))
    q = (d - p) / (d + p)
    if abs(q) >= 1.0:
        raise NonConvergence(
            f"series ratio |q| = {abs(q)} >= 1; angle set outside the "
            "convergent orthoscheme domain")

    stop = tol.abs_tol * (1.0 - abs(q)) / max(abs(q), 1e-300)
    total = 0.0
    qm = 1.0
    for m in range(1, tol.max_evals + 1):
        qm *= q
        twom = 2.0 * m
        num = (math.cos(twom * x) - math.cos(twom * y)
               + math.cos(twom * z) - 1.0)
        term = qm * num / (m * m)
        total += term
        if 4.0 * abs(qm) / (m * m) <= stop:
            break
    else:
        raise NonConvergence(
            f"Schlafli series needs more than {tol.max_evals} terms "
            f"(q = {q})")
    return total - x * x + y * y - z * z


_G7_X, _G7_W = np.polynomial.legendre.leggauss(7)
_G15_X, _G15_W = np.polynomial.legendre.leggauss(15)
_PANEL_EVALS = _G7_X.size + _G15_X.size
_MAX_BATCH = 64


def _eval_panels(f, lo, hi):
    """Embedded G7/G15 rule on a batch of intervals; returns|value, error."""
    lo = np.asarray(lo)
    hi = np.asarray(hi)
    mid = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    nodes = np.concatenate([
        mid[:, None] + half[:, None] * _G7_X[None, :],
        mid[:, None] + half[:, None] * _G15_X[None, :],
    ], axis=1)
    vals = np.asarray(f(nodes.ravel()), dtype=np.float64).reshape(nodes.shape)
    if not np.all(np.isfinite(vals)):
        raise DomainError("integrand returned a non-finite value "
                          "inside the integration interval")
    g7 = (vals[:, :7] @ _G7_W) * half
    g15 = (vals[:, 7:] @ _G15_W) * half
    return g15, np.abs(g15 - g7)


def integrate_adaptive(f, a: float, b: float,
                       tol: Tolerance = DEFAULT_TOL) -> QuadratureResult:
    """Globally adaptive quadrature of f over [a, b].

    Bisects the worst-error subinterval using an embedded 7/15 point
    Gauss pair until sum(|G15 - G7|) <= max(abs_tol, rel_tol * |value|).
    Gauss nodes are interior, so integrable endpoint singularities
    (logarithmic zeros and the like) need no special casing.
    """
    if a > b:
        raise DomainError(f"integration bounds reversed: a={a} > b={b}")
    if a == b:
        return QuadratureResult(0.0, 0.0, 1)

    vals, errs = _eval_panels(f, np.array([a]), np.array([b]))
    evals = _PANEL_EVALS
    heap = [(-errs[0], a, b, vals[0], errs[0])]
    while True:
        total = math.fsum(item[3] for item in heap)
        err = math.fsum(item[4] for item in heap)
        target = max(tol.abs_tol, tol.rel_tol * abs(total))
        if err <= target:
            return QuadratureResult(total, err, evals)
        if evals + 2 * _PANEL_EVALS > tol.max_evals:
            raise NonConvergence(
                f"quadrature exhausted {evals} evaluations with error "
                f"estimate {err:g} > target {target:g}")

        nsplit = 1
        while (nsplit < min(_MAX_BATCH, len(heap))
               and -heap[0][0] * 0.25 < err / (nsplit + 1)
               and evals + 2 * (nsplit + 1) * _PANEL_EVALS <= tol.max_evals):
            nsplit += 1
        worst = [heapq.heappop(heap) for _ in range(nsplit)]
        lows, highs = [], []
        for _, lo, hi, _, _ in worst:
            m = 0.5 * (lo + hi)
            lows.extend((lo, m))
            highs.extend((m, hi))
        vals, errs = _eval_panels(f, np.array(lows), np.array(highs))
        evals += 2 * nsplit * _PANEL_EVALS
        for i in range(len(lows)):
            heapq.heappush(
                heap, (-errs[i], lows[i], highs[i], vals[i], errs[i]))


def find_root_bracketed(f, lo: float, hi: float,
                        tol: Tolerance = DEFAULT_TOL) -> float:
    """Brent's method on a sign-changing bracket [lo, hi]."""
    fa, fb = f(lo), f(hi)
    if fa == 0.0:
        return lo
    if fb == 0.0:
        return hi
    if fa * fb > 0.0:
        raise NoSignChange(
            f"f({lo}) = {fa} and f({hi}) = {fb} have the same sign")

    a, b = lo, hi
    c, fc = a, fa
    d = e = b - a
    for _ in range(min(tol.max_evals, 400)):
        if fb * fc > 0.0:
            c, fc = a, fa
            d = e = b - a
        if abs(fc) < abs(fb):
            a, b, c = b, c, b
            fa, fb, fc = fb, fc, fb
        xtol = 0.5 * (tol.abs_tol + tol.rel_tol * abs(b))
        m = 0.5 * (c - b)
        if abs(m) <= xtol or fb == 0.0:
            return b
        if abs(e) >= xtol and abs(fa) > abs(fb):
            s = fb / fa
            if a == c:
                p = 2.0 * m * s
                qd = 1.0 - s
            else:
                qa = fa / fc
                r = fb / fc
                p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0))
                qd = (qa - 1.0) * (r - 1.0) * (s - 1.0)
            if p > 0.0:
                qd = -qd
            p = abs(p)
            if 2.0 * p < min(3.0 * m * qd - abs(xtol * qd), abs(e * qd)):
                e = d
                d = p / qd
            else:
                d = m
                e = m
        else:
            d = m
            e = m
        a, fa = b, fb
        b = b + (d if abs(d) > xtol else math.copysign(xtol, m))
        fb = f(b)
    raise NonConvergence("Brent iteration failed to converge")
