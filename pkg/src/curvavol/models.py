"""Hyperboloid / Klein model geometry.

Vertex reconstruction from edge lengths, dihedral and planar angle
measurement, orthoscheme constructions and the seeded Monte Carlo
volume oracle.  Points live on the upper hyperboloid sheet
<x, x> = -1, x0 > 0 of Minkowski R^{1,3}; Klein coordinates are
x_i / x0, where geodesics are straight chords and the volume element
is dx / (1 - |x|^2)^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import DegenerateFace, DomainError, NotRealizable
from .gram import FACE_PAIR, DihedralAngleSet, EdgeLengthSet

ETA = np.diag([-1.0, 1.0, 1.0, 1.0])


def minkowski_inner(u, v) -> float:
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    return float(-u[..., 0] * v[..., 0] + np.sum(u[..., 1:] * v[..., 1:], axis=-1))


def lift_to_hyperboloid(x) -> np.ndarray:
    """Klein ball point -> hyperboloid point (1, x)/sqrt(1 - |x|^2)."""
    x = np.asarray(x, dtype=np.float64)
    r2 = float(x @ x)
    if r2 >= 1.0:
        raise DomainError(f"Klein point with |x|^2 = {r2} >= 1")
    s = 1.0 / math.sqrt(1.0 - r2)
    return np.array([s, s * x[0], s * x[1], s * x[2]])


def hyperbolic_distance(p, q) -> float:
    """Distance between two hyperboloid points."""
    return math.acosh(max(1.0, -minkowski_inner(p, q)))


class KleinTetrahedron:
    """Four affinely independent points in the open Klein ball."""

    def __init__(self, verts):
        v = np.array(verts, dtype=np.float64)
        if v.shape != (4, 3):
            raise ValueError("KleinTetrahedron needs a (4, 3) vertex array")
        norms = np.linalg.norm(v, axis=1)
        if np.any(norms >= 1.0):
            raise NotRealizable(
                f"vertex outside the open Klein ball (|v| up to {norms.max()})")
        self.verts = v
        if self.euclidean_volume() <= 1e-14:
            raise NotRealizable("vertices are affinely dependent "
                                "(Euclidean simplex volume <= 1e-14)")

    def euclidean_volume(self) -> float:
        d = self.verts[1:] - self.verts[0]
        return abs(float(np.linalg.det(d))) / 6.0

    def minkowski_vertices(self) -> np.ndarray:
        return np.stack([lift_to_hyperboloid(x) for x in self.verts])

    def edge_length(self, i: int, j: int) -> float:
        m = self.minkowski_vertices()
        return hyperbolic_distance(m[i], m[j])

    def permuted(self, order) -> "KleinTetrahedron":
        return KleinTetrahedron(self.verts[list(order)])


def _centering_boost(mink_verts: np.ndarray) -> np.ndarray:
    """Lorentz map sending the normalized vertex barycenter to the
    hyperboloid apex (1, 0, 0, 0)."""
    c = mink_verts.sum(axis=0)
    nc = -minkowski_inner(c, c)
    if nc <= 0.0:
        raise NotRealizable("vertex barycenter is not timelike")
    c = c / math.sqrt(nc)
    if c[0] < 0:
        c = -c
    # eta-orthonormal frame with c as the timelike axis
    basis = [c]
    for k in range(1, 4):
        e = np.zeros(4)
        e[k] = 1.0
        for b in basis:
            e = e - (minkowski_inner(e, b) / minkowski_inner(b, b)) * b
        e = e / math.sqrt(minkowski_inner(e, e))
        basis.append(e)
    frame = np.stack(basis, axis=1)        # columns: c, s1, s2, s3
    return ETA @ frame.T @ ETA             # inverse of the frame matrix


def _klein_from_minkowski(mink_verts: np.ndarray) -> KleinTetrahedron:
    boost = _centering_boost(mink_verts)
    w = mink_verts @ boost.T
    return KleinTetrahedron(w[:, 1:] / w[:, 0:1])


def embed_from_edge_lengths(lengths: EdgeLengthSet) -> KleinTetrahedron:
    """Realize a hyperbolic tetrahedron with the given edge lengths.

    Factors the vertex inner-product matrix M_ij = -cosh l_ij through
    its eigendecomposition; M must have Minkowski signature (one
    negative, three positive eigenvalues).  The result is centered at
    the origin of the Klein ball.
    """
    m = np.empty((4, 4))
    for i in range(4):
        m[i, i] = -1.0
        for j in range(i + 1, 4):
            m[i, j] = m[j, i] = -math.cosh(lengths.vertex_matrix_entry(i, j))
    lam, q = np.linalg.eigh(m)
    scale = float(np.max(np.abs(lam)))
    if not (lam[0] < 0.0 and lam[1] > 1e-12 * scale):
        raise NotRealizable(
            f"vertex matrix eigenvalues {lam} lack Minkowski signature "
            "(1 negative, 3 positive)")
    v = np.empty((4, 4))
    v[:, 0] = math.sqrt(-lam[0]) * q[:, 0]
    for k in range(1, 4):
        v[:, k] = math.sqrt(lam[k]) * q[:, k]
    if v[0, 0] < 0.0:
        v[:, 0] = -v[:, 0]
    return _klein_from_minkowski(v)


def _face_normal(mink_verts: np.ndarray, i: int) -> np.ndarray:
    """Outward unit spacelike normal of the face opposite vertex i."""
    others = [k for k in range(4) if k != i]
    _, sv, vt = np.linalg.svd(mink_verts[others])
    n = ETA @ vt[-1]
    nn = minkowski_inner(n, n)
    if nn <= 1e-12:
        raise DegenerateFace(
            f"face opposite vertex {i + 1} has no spacelike normal "
            f"(<n,n> = {nn:.3g})")
    n = n / math.sqrt(nn)
    if minkowski_inner(n, mink_verts[i]) > 0.0:
        n = -n
    return n


def dihedral_angles_from_vertices(t: KleinTetrahedron) -> DihedralAngleSet:
    """Interior dihedral angles, measured from Minkowski face normals.

    The angle between faces i and j is acos(-<n_i, n_j>), matching the
    Gram matrix layout of :mod:`curvavol.gram` (faces are numbered by
    their opposite vertices).
    """
    m = t.minkowski_vertices()
    normals = [_face_normal(m, i) for i in range(4)]
    vals = {}
    for lab, (i, j) in FACE_PAIR.items():
        c = -minkowski_inner(normals[i], normals[j])
        vals[lab] = math.acos(min(1.0, max(-1.0, c)))
    return DihedralAngleSet(**vals)


def edge_lengths_from_vertices(t: KleinTetrahedron) -> EdgeLengthSet:
    m = t.minkowski_vertices()
    vals = {}
    for i in range(4):
        for j in range(i + 1, 4):
            vals[f"l{i + 1}{j + 1}"] = hyperbolic_distance(m[i], m[j])
    return EdgeLengthSet(**vals)


def planar_angle(t: KleinTetrahedron, at: int, toward1: int, toward2: int) -> float:
    """Angle at vertex `at` between the edges to toward1 and toward2."""
    m = t.minkowski_vertices()
    y = m[at]
    t1 = m[toward1] + minkowski_inner(m[toward1], y) * y
    t2 = m[toward2] + minkowski_inner(m[toward2], y) * y
    c = minkowski_inner(t1, t2) / math.sqrt(
        minkowski_inner(t1, t1) * minkowski_inner(t2, t2))
    return math.acos(min(1.0, max(-1.0, c)))


def orthoscheme_from_chain(d1: float, d2: float, d3: float) -> KleinTetrahedron:
    """Orthoscheme with mutually orthogonal chain edges of lengths
    d1, d2, d3 (vertices P0 -> P1 -> P2 -> P3)."""
    for nm, d in (("d1", d1), ("d2", d2), ("d3", d3)):
        if not (d > 0.0 and math.isfinite(d)):
            raise DomainError(f"chain length {nm}={d} must be positive")
    p0 = np.array([1.0, 0.0, 0.0, 0.0])
    p1 = np.array([math.cosh(d1), math.sinh(d1), 0.0, 0.0])
    p2 = math.cosh(d2) * p1 + math.sinh(d2) * np.array([0.0, 0.0, 1.0, 0.0])
    p3 = math.cosh(d3) * p2 + math.sinh(d3) * np.array([0.0, 0.0, 0.0, 1.0])
    return _klein_from_minkowski(np.stack([p0, p1, p2, p3]))


def bolyai_params_from_chain(d1: float, d2: float, d3: float):
    """Planar data (alpha, beta, gamma, z) of the chain orthoscheme.

    alpha is the planar angle at P1 between P2 and P3, beta at P0
    between P1 and P2, gamma at P0 between P2 and P3, and z = |P2P3|.
    """
    alpha = math.atan2(math.tanh(d3), math.sinh(d2))
    beta = math.atan2(math.tanh(d2), math.sinh(d1))
    cosh_h = math.cosh(d1) * math.cosh(d2)
    gamma = math.atan2(math.tanh(d3), math.sqrt(cosh_h * cosh_h - 1.0))
    return alpha, beta, gamma, d3


_BOLYAI_CONSISTENCY = 1e-8


def orthoscheme_from_bolyai_params(alpha: float, beta: float, gamma: float,
                                   z: float) -> KleinTetrahedron:
    """Invert :func:`bolyai_params_from_chain`.

    The quadruple is redundant (orthoschemes form a three-parameter
    family); beta is recomputed from the (alpha, gamma, z) construction
    and must match the input to ~1e-8, otherwise the data is not
    realizable as a single orthoscheme.
    """
    for nm, v in (("alpha", alpha), ("beta", beta), ("gamma", gamma)):
        if not (0.0 < v < math.pi / 2):
            raise DomainError(f"{nm}={v} outside (0, pi/2)")
    if not (z > 0.0 and math.isfinite(z)):
        raise DomainError(f"z={z} must be positive")
    if gamma >= alpha:
        raise NotRealizable(
            f"gamma={gamma} must be smaller than alpha={alpha}")
    tz = math.tanh(z)
    d2 = math.asinh(tz / math.tan(alpha))
    sinh_h = tz / math.tan(gamma)
    cosh_h = math.sqrt(1.0 + sinh_h * sinh_h)
    ratio = cosh_h / math.cosh(d2)
    if ratio <= 1.0:
        raise NotRealizable(
            "inconsistent (alpha, gamma, z): implied base edge collapses")
    d1 = math.acosh(ratio)
    beta_implied = math.atan2(math.tanh(d2), math.sinh(d1))
    if abs(beta_implied - beta) > _BOLYAI_CONSISTENCY:
        raise NotRealizable(
            f"beta={beta} inconsistent with construction "
            f"(implied {beta_implied}); no orthoscheme carries this data")
    return orthoscheme_from_chain(d1, d2, z)


@dataclass(frozen=True)
class McEstimate:
    mean: float
    std_error: float
    samples: int
    seed: int

    def __post_init__(self):
        if self.std_error < 0.0:
            raise ValueError("std_error must be nonnegative")


def mc_volume(t: KleinTetrahedron, samples: int, seed: int) -> McEstimate:
    """Seeded Monte Carlo estimate of the hyperbolic volume.

    Uniform barycentric samples over the Euclidean simplex (Klein
    geodesics are straight, so the simplex hull is the tetrahedron)
    weighted by the Klein density 1/(1-|x|^2)^2.  The counter-based
    generator makes the estimate a pure function of (vertices, samples,
    seed).
    """
    if samples < 1000:
        raise DomainError(f"samples={samples} below the minimum of 1000")
    ve = t.euclidean_volume()
    total, total_sq = kernels.mc_sums(
        np.ascontiguousarray(t.verts), int(samples), int(seed) & (2**64 - 1))
    mean_d = total / samples
    var_d = max(total_sq - samples * mean_d * mean_d, 0.0) / (samples - 1)
    return McEstimate(mean=ve * mean_d,
                      std_error=ve * math.sqrt(var_d / samples),
                      samples=int(samples), seed=int(seed))
