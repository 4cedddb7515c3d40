"""Numba-compiled versions of the hot kernels.

The uniform stream matches ``reference.uniforms`` bit for bit; sums may
differ from the numpy backend in the last few ulps because the reduction
order differs (sequential here, pairwise in numpy).
"""

from __future__ import annotations

import numpy as np
from numba import njit, uint64

from .reference import LOB_SERIES_COEFFS

_COEFFS = LOB_SERIES_COEFFS.copy()


@njit(uint64(uint64, uint64), cache=False)
def _u64_at(seed, ctr):
    z = seed + (ctr + uint64(1)) * uint64(0x9E3779B97F4A7C15)
    z = (z ^ (z >> uint64(30))) * uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> uint64(27))) * uint64(0x94D049BB133111EB)
    return z ^ (z >> uint64(31))


@njit(cache=False)
def _uniform_at(seed, ctr):
    return float(_u64_at(seed, ctr) >> uint64(11)) * (2.0 ** -53)


@njit(cache=False)
def uniforms(seed, start, count):
    out = np.empty(count, dtype=np.float64)
    s = uint64(seed)
    for i in range(count):
        out[i] = _uniform_at(s, uint64(start + i))
    return out


@njit(cache=False)
def lob_series(y):
    y = np.asarray(y)
    out = np.empty(y.shape, dtype=np.float64)
    flat_in = y.ravel()
    flat_out = out.ravel()
    ncoef = _COEFFS.shape[0]
    for i in range(flat_in.shape[0]):
        a = abs(flat_in[i])
        t = (a / np.pi) ** 2
        acc = 0.0
        for k in range(ncoef - 1, -1, -1):
            acc = acc * t + _COEFFS[k]
        if a > 0.0:
            val = a - a * np.log(2.0 * a) + a * (acc * t)
        else:
            val = 0.0
        flat_out[i] = val if flat_in[i] >= 0.0 else -val
    return out


@njit(cache=False)
def mc_sums(verts, n, seed, start=0):
    v0x, v0y, v0z = verts[0, 0], verts[0, 1], verts[0, 2]
    v1x, v1y, v1z = verts[1, 0], verts[1, 1], verts[1, 2]
    v2x, v2y, v2z = verts[2, 0], verts[2, 1], verts[2, 2]
    v3x, v3y, v3z = verts[3, 0], verts[3, 1], verts[3, 2]
    s = uint64(seed)
    total = 0.0
    total_sq = 0.0
    for i in range(n):
        base = uint64(3) * uint64(start + i)
        u1 = _uniform_at(s, base)
        u2 = _uniform_at(s, base + uint64(1))
        u3 = _uniform_at(s, base + uint64(2))
        lo = min(min(u1, u2), u3)
        hi = max(max(u1, u2), u3)
        mid = u1 + u2 + u3 - lo - hi
        w1 = mid - lo
        w2 = hi - mid
        w3 = 1.0 - hi
        px = lo * v0x + w1 * v1x + w2 * v2x + w3 * v3x
        py = lo * v0y + w1 * v1y + w2 * v2y + w3 * v3y
        pz = lo * v0z + w1 * v1z + w2 * v2z + w3 * v3z
        g = 1.0 - (px * px + py * py + pz * pz)
        dens = 1.0 / (g * g)
        total += dens
        total_sq += dens * dens
    return total, total_sq
