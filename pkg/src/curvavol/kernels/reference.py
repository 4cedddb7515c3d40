"""Pure-numpy reference implementations of the hot numeric kernels.

Semantics here are the contract; the numba backend in ``fast.py`` must
reproduce the same uniform stream bit for bit and the same sums up to
reduction-order rounding.
"""

from __future__ import annotations

import numpy as np

# Chebyshev-free log series for the Lobachevsky function on |y| <= pi/2:
#   L(y) = y - y*log|2y| + y * sum_m C[m-1] * (y/pi)^(2m)
# with C[m-1] = zeta(2m) / (m*(2m+1)).  26 terms leave a tail < 3e-19 at pi/2.
LOB_SERIES_COEFFS = np.array([
    0.548311355616075479, 0.108232323371113819, 0.0484449077135451971,
    0.0278910376721651205, 0.0181999013659603288, 0.0128236677763244622,
    0.00952439283938151147, 0.00735305354602506362, 0.00584797553972669591,
    0.00476190930458111368, 0.00395257011245257995, 0.00333333353202729684,
    0.00284900289145742116, 0.0024630541963678178, 0.00215053763641145684,
    0.00189393939438036209, 0.00168067226900539113, 0.00150150150152335123,
    0.00134952766532204856, 0.00121951219512306036, 0.00110741971207112666,
    0.00101010101010106752, 0.00092506938020352841, 0.00085034013605442479,
    0.000784313725490196775, 0.000725689404934688115,
])

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_S30 = np.uint64(30)
_S27 = np.uint64(27)
_S31 = np.uint64(31)
_S11 = np.uint64(11)
_INV53 = float(2.0 ** -53)

_MC_CHUNK = 1 << 19


def uniforms(seed: int, start: int, count: int) -> np.ndarray:
    """Counter-based uniform stream: value i depends only on (seed, i)."""
    ctr = np.arange(start, start + count, dtype=np.uint64)
    z = np.uint64(seed) + (ctr + np.uint64(1)) * _GOLDEN
    z = (z ^ (z >> _S30)) * _MIX1
    z = (z ^ (z >> _S27)) * _MIX2
    z = z ^ (z >> _S31)
    return (z >> _S11).astype(np.float64) * _INV53


def lob_series(y: np.ndarray) -> np.ndarray:
    """Lobachevsky function on the reduced range |y| <= pi/2 + eps."""
    y = np.asarray(y, dtype=np.float64)
    a = np.abs(y)
    t = (a / np.pi) ** 2
    acc = np.zeros_like(a)
    for c in LOB_SERIES_COEFFS[::-1]:
        acc = acc * t + c
    # a*log(2a) -> 0 as a -> 0; guard the log at exactly 0
    safe = np.where(a > 0.0, a, 1.0)
    val = a - a * np.log(2.0 * safe) + a * (acc * t)
    return np.copysign(val, y)


def mc_sums(verts: np.ndarray, n: int, seed: int, start: int = 0):
    """Accumulate Klein-density sums over samples [start, start+n).

    verts: (4, 3) Klein coordinates of the tetrahedron vertices.
    Returns (sum_density, sum_density_sq).  Uniform sampling of the
    Euclidean simplex by sorted triples of uniforms; density is the
    hyperbolic volume element 1/(1-|x|^2)^2 of the Klein ball.
    """
    v0, v1, v2, v3 = (verts[i] for i in range(4))
    total = 0.0
    total_sq = 0.0
    done = 0
    while done < n:
        m = min(_MC_CHUNK, n - done)
        base = 3 * (start + done)
        u = uniforms(seed, base, 3 * m)
        u1, u2, u3 = u[0::3], u[1::3], u[2::3]
        lo = np.minimum(np.minimum(u1, u2), u3)
        hi = np.maximum(np.maximum(u1, u2), u3)
        mid = u1 + u2 + u3 - lo - hi
        w1 = mid - lo
        w2 = hi - mid
        w3 = 1.0 - hi
        px = lo * v0[0] + w1 * v1[0] + w2 * v2[0] + w3 * v3[0]
        py = lo * v0[1] + w1 * v1[1] + w2 * v2[1] + w3 * v3[1]
        pz = lo * v0[2] + w1 * v1[2] + w2 * v2[2] + w3 * v3[2]
        g = 1.0 - (px * px + py * py + pz * pz)
        dens = 1.0 / (g * g)
        total += float(np.sum(dens))
        total_sq += float(np.sum(dens * dens))
        done += m
    return total, total_sq
