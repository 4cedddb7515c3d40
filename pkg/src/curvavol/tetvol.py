"""Tetrahedron volume engines for E^3, S^3 and H^3.

Cayley-Menger (Euclidean), Milnor (ideal hyperbolic), the
Derevnin-Mednykh single-integral formula (compact hyperbolic), the
Sforza degeneration integrals in H^3 and S^3, orthoscheme volumes via
the Schlafli series resp. the hyperbolic integral, the Bolyai planar
data integral, and a finite-difference helper for the variational
identity 2K dV = sum(l dtheta).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (DegenerateIdeal, DomainError, IntegrandSignError,
                     NoDegenerationRoot, NotCompactHyperbolic, NotRealizable,
                     NotSpherical)
from .gram import (ANGLE_LABELS, DihedralAngleSet, EdgeLengthSet, GramMatrix,
                   TetraKind, classify, cofactor_matrix, detg_quadratic,
                   edge_lengths, gram_from_angles)
from .specfun import DEFAULT_TOL, Tolerance, integrate_adaptive, lobachevsky, schlafli_S

_TIGHT = Tolerance(abs_tol=1e-12, rel_tol=1e-12, max_evals=2 * 10 ** 6)


@dataclass(frozen=True)
class VolumeResult:
    value: float
    method: str
    error_estimate: float = 0.0

    def __post_init__(self):
        if self.value < -1e-12:
            raise DomainError(f"negative volume {self.value} from {self.method}")
        if self.value < 0.0:
            object.__setattr__(self, "value", 0.0)
        if self.error_estimate < 0.0:
            raise ValueError("error_estimate must be nonnegative")


def volume_euclidean_cm(d: EdgeLengthSet) -> VolumeResult:
    """Euclidean volume from edge lengths: 288 V^2 equals the bordered
    squared-distance determinant."""
    m = np.ones((5, 5))
    m[0, 0] = 0.0
    for i in range(4):
        m[i + 1, i + 1] = 0.0
        for j in range(i + 1, 4):
            dij = d.vertex_matrix_entry(i, j) ** 2
            m[i + 1, j + 1] = dij
            m[j + 1, i + 1] = dij
    det = float(np.linalg.det(m))
    scale = max(1.0, float(np.max(np.abs(m))) ** 4)
    if det < -1e-12 * scale:
        raise NotRealizable(
            f"bordered determinant {det} < 0: no Euclidean tetrahedron "
            "has these edge lengths")
    return VolumeResult(math.sqrt(max(det, 0.0) / 288.0), "cayley_menger",
                        error_estimate=1e-14 * scale)


def volume_ideal(A: float, B: float, C: float | None = None) -> VolumeResult:
    """Ideal hyperbolic tetrahedron volume L(A) + L(B) + L(C).

    The three angles meet A + B + C = pi; C may be omitted or is
    checked against pi - A - B to 1e-10 and then normalized.
    """
    if C is not None and abs(A + B + C - math.pi) > 1e-10:
        raise DomainError(f"angle sum {A + B + C} != pi beyond 1e-10")
    c_norm = math.pi - A - B
    for nm, v in (("A", A), ("B", B), ("C", c_norm)):
        if v <= 0.0:
            raise DegenerateIdeal(f"ideal angle {nm}={v} <= 0")
    val = float(lobachevsky(A) + lobachevsky(B) + lobachevsky(c_norm))
    return VolumeResult(val, "milnor", error_estimate=5e-16)


@dataclass(frozen=True)
class DMIntegrandParams:
    """Roots and coefficients of the compact-tetrahedron log integrand."""

    k1: float
    k2: float
    k3: float
    k4: float
    S: float
    z1: float
    z2: float

    def __post_init__(self):
        if not (0.0 < self.z2 - self.z1 < math.pi):
            raise DomainError(
                f"integrand roots violate 0 < z2 - z1 < pi "
                f"(z1={self.z1}, z2={self.z2})")


def dm_params(angles: DihedralAngleSet) -> DMIntegrandParams:
    A, B, C, D, E, F = (angles.A, angles.B, angles.C,
                        angles.D, angles.E, angles.F)
    S = A + B + C + D + E + F
    k1 = -(math.cos(S) + math.cos(A + D) + math.cos(B + E) + math.cos(C + F)
           + math.cos(D + E + F) + math.cos(D + B + C)
           + math.cos(A + E + C) + math.cos(A + B + F))
    k2 = (math.sin(S) + math.sin(A + D) + math.sin(B + E) + math.sin(C + F)
          + math.sin(D + E + F) + math.sin(D + B + C)
          + math.sin(A + E + C) + math.sin(A + B + F))
    k3 = 2.0 * (math.sin(A) * math.sin(D) + math.sin(B) * math.sin(E)
                + math.sin(C) * math.sin(F))
    k4sq = k1 * k1 + k2 * k2 - k3 * k3
    if k4sq < -1e-12 * max(1.0, k3 * k3):
        raise DomainError(f"k4^2 = {k4sq} < 0")
    k4 = math.sqrt(max(k4sq, 0.0))
    half_width = math.atan2(k3, k4)
    shift = math.atan2(k1, k2)
    return DMIntegrandParams(k1=k1, k2=k2, k3=k3, k4=k4, S=S,
                             z1=half_width - shift,
                             z2=math.pi - half_width - shift)


def _dm_log_argument(angles: DihedralAngleSet, z):
    A, B, C, D, E, F = (angles.A, angles.B, angles.C,
                        angles.D, angles.E, angles.F)
    num = (np.cos((A + B + C + z) / 2) * np.cos((A + E + F + z) / 2)
           * np.cos((B + D + F + z) / 2) * np.cos((C + D + E + z) / 2))
    den = (np.sin((A + B + D + E + z) / 2) * np.sin((A + C + D + F + z) / 2)
           * np.sin((B + C + E + F + z) / 2) * np.sin(z / 2))
    return num / den


def volume_dm(angles: DihedralAngleSet,
              tol: Tolerance = _TIGHT) -> VolumeResult:
    """Compact hyperbolic tetrahedron volume by the one-dimensional
    log integral between the integrand roots z1 < z2."""
    cls = classify(gram_from_angles(angles))
    if cls.kind is not TetraKind.COMPACT_HYPERBOLIC:
        raise NotCompactHyperbolic(cls.reason or "not compact hyperbolic")
    p = dm_params(angles)

    def integrand(z):
        arg = _dm_log_argument(angles, z)
        bad = arg <= -1e-10
        if np.any(bad):
            zb = np.asarray(z)[bad]
            raise IntegrandSignError(
                f"log argument {arg[bad][0]:.3g} <= -1e-10 at z={zb[0]}")
        return np.log(np.maximum(arg, 1e-300))

    r = integrate_adaptive(integrand, p.z1, p.z2, tol)
    return VolumeResult(-r.value / 4.0, "dm",
                        error_estimate=r.error_estimate / 4.0)


def _quadratic_roots(alpha, beta, gamma):
    if abs(alpha) < 1e-300:
        return [] if abs(beta) < 1e-300 else [-gamma / beta]
    disc = beta * beta - 4.0 * alpha * gamma
    if disc < 0.0:
        return []
    sq = math.sqrt(disc)
    return [(-beta - sq) / (2.0 * alpha), (-beta + sq) / (2.0 * alpha)]


def _entry_quadratic(angles: DihedralAngleSet, probe):
    """Coefficients of probe(Gram(u)) as a quadratic in u = cos A."""
    base = gram_from_angles(angles).entries.copy()

    def at(u):
        m = base.copy()
        m[0, 1] = m[1, 0] = -u
        return probe(m)

    p, z, n = at(1.0), at(0.0), at(-1.0)
    return 0.5 * (p + n) - z, 0.5 * (p - n), z


def sforza_degeneration_root(angles: DihedralAngleSet, space: str,
                             path_samples: int = 64) -> float:
    """Angle A0 with det G(A0) = 0 bounding the Sforza integration path.

    det G is quadratic in u = cos A; the admissible root is the nearest
    one below u = cos A for H3 (so A0 > A, flattening by opening the
    angle) and the nearest one above for S3 (A0 < A).  The open path
    between A and A0 is required to keep the source classification,
    checked on `path_samples` interior points.
    """
    a, b, c = detg_quadratic(angles, "A")
    u_now = math.cos(angles.A)
    roots = [u for u in _quadratic_roots(a, b, c) if abs(u) <= 1.0 + 1e-12]
    if space == "H3":
        cands = sorted((u for u in roots if u < u_now), reverse=True)
        want = TetraKind.COMPACT_HYPERBOLIC
    elif space == "S3":
        cands = sorted(u for u in roots if u > u_now)
        want = TetraKind.SPHERICAL
    else:
        raise DomainError(f"space must be H3 or S3, got {space!r}")
    if not cands:
        raise NoDegenerationRoot(
            f"no det G root on the {space} side of A={angles.A} "
            f"(roots in u: {roots})")
    a0 = math.acos(min(1.0, max(-1.0, cands[0])))
    for t in np.linspace(angles.A, a0, path_samples + 2)[1:-1]:
        k = classify(gram_from_angles(angles.with_angle("A", t))).kind
        if k is not want:
            raise NoDegenerationRoot(
                f"degeneration path leaves the {space} class at A={t}")
    return a0


def _is_flat_boundary(g: GramMatrix, spherical: bool) -> bool:
    """Gram data of a flattened tetrahedron: det ~ 0, cofactor signs OK."""
    diag_ok = bool(np.all(np.diag(g.cofactors) > 0.0))
    if spherical:
        return abs(g.det) <= 1e-12 and diag_ok
    off = g.cofactors[~np.eye(4, dtype=bool)]
    return abs(g.det) <= 1e-12 and diag_ok and bool(np.all(off > 0.0))


def volume_sforza_h3(angles: DihedralAngleSet,
                     tol: Tolerance = _TIGHT) -> VolumeResult:
    """Compact hyperbolic volume by the Sforza integral

        V = 1/4 int_{A0}^{A} log((c34 - sqrt(-det G) sin a)
                                 / (c34 + sqrt(-det G) sin a)) da,

    the integrand being -l_A/2 in terms of the length of the edge
    carrying angle A.  A0 is the flat-degeneration root of det G(A), on
    the A0 > A side (hyperbolic volume shrinks as an angle opens).
    """
    g = gram_from_angles(angles)
    cls = classify(g)
    if cls.kind is not TetraKind.COMPACT_HYPERBOLIC:
        if _is_flat_boundary(g, spherical=False):
            return VolumeResult(0.0, "sforza_h3")
        raise NotCompactHyperbolic(cls.reason or "not compact hyperbolic")
    a0 = sforza_degeneration_root(angles, "H3")
    det_q = detg_quadratic(angles, "A")
    c34_q = _entry_quadratic(angles, lambda m: cofactor_matrix(m)[2, 3])

    def integrand(t):
        u = np.cos(t)
        det = np.polyval(det_q, u)
        c34 = np.polyval(c34_q, u)
        s = np.sqrt(np.maximum(-det, 0.0)) * np.sin(t)
        lo = c34 - s
        if np.any(lo <= 0.0):
            raise IntegrandSignError("c34 - sqrt(-det G) sin A <= 0 on path")
        return np.log(lo / (c34 + s))

    r = integrate_adaptive(integrand, angles.A, a0, tol)
    # the formula integrates from A0 down to A
    return VolumeResult(-r.value / 4.0, "sforza_h3",
                        error_estimate=r.error_estimate / 4.0)


def volume_sforza_s3(angles: DihedralAngleSet,
                     tol: Tolerance = _TIGHT) -> VolumeResult:
    """Spherical volume by the Sforza integral, with the complex log
    collapsed to the real edge length l_A = atan2(sqrt(det G) sin a, c34):

        V = int_{A0}^{A} l_A / 2 da,  A0 < A the flat root of det G.
    """
    g = gram_from_angles(angles)
    cls = classify(g)
    if cls.kind is not TetraKind.SPHERICAL:
        if _is_flat_boundary(g, spherical=True):
            return VolumeResult(0.0, "sforza_s3")
        raise NotSpherical(cls.reason or "not spherical")
    a0 = sforza_degeneration_root(angles, "S3")
    det_q = detg_quadratic(angles, "A")
    c34_q = _entry_quadratic(angles, lambda m: cofactor_matrix(m)[2, 3])

    def integrand(t):
        u = np.cos(t)
        det = np.polyval(det_q, u)
        c34 = np.polyval(c34_q, u)
        return np.arctan2(np.sqrt(np.maximum(det, 0.0)) * np.sin(t), c34)

    r = integrate_adaptive(integrand, a0, angles.A, tol)
    return VolumeResult(r.value / 2.0, "sforza_s3",
                        error_estimate=r.error_estimate / 2.0)


def orthoscheme_angle_set(A: float, B: float, C: float) -> DihedralAngleSet:
    """Dihedral angle set of the orthoscheme with essential angles A, B,
    C along the edges v1v2, v2v3, v3v4 and right angles elsewhere."""
    hp = math.pi / 2
    return DihedralAngleSet(A=C, B=hp, C=hp, D=A, E=hp, F=B)


def volume_orthoscheme_spherical(A: float, B: float, C: float,
                                 tol: Tolerance = DEFAULT_TOL) -> VolumeResult:
    """Spherical orthoscheme volume S(A, B, C) / 4."""
    return VolumeResult(schlafli_S(A, B, C, tol) / 4.0, "schlafli",
                        error_estimate=tol.abs_tol / 4.0)


def volume_orthoscheme_hyperbolic(A: float, B: float, C: float,
                                  tol: Tolerance = _TIGHT) -> VolumeResult:
    """Hyperbolic orthoscheme volume, evaluated through the compact
    tetrahedron integral on the orthoscheme angle set."""
    angles = orthoscheme_angle_set(A, B, C)
    r = volume_dm(angles, tol)
    return VolumeResult(r.value, "dm_orthoscheme",
                        error_estimate=r.error_estimate)


def volume_bolyai(alpha: float, beta: float, gamma: float, z: float,
                  tol: Tolerance = _TIGHT) -> VolumeResult:
    """Hyperbolic orthoscheme volume from planar data:

        V = tan(gamma)/(2 tan(beta))
            * int_0^z u sinh u
              / ((cosh^2 u / cos^2 alpha - 1) sqrt(cosh^2 u / cos^2 gamma - 1)) du
    """
    for nm, v in (("alpha", alpha), ("beta", beta), ("gamma", gamma)):
        if not (0.0 < v < math.pi / 2):
            raise DomainError(f"{nm}={v} outside (0, pi/2)")
    if not (z > 0.0 and math.isfinite(z)):
        raise DomainError(f"z={z} must be positive")
    ca2 = math.cos(alpha) ** 2
    cg2 = math.cos(gamma) ** 2

    def integrand(u):
        ch2 = np.cosh(u) ** 2
        rad = ch2 / cg2 - 1.0
        if np.any(rad <= 0.0):
            raise DomainError("cosh^2 u / cos^2 gamma - 1 <= 0 on (0, z]")
        return u * np.sinh(u) / ((ch2 / ca2 - 1.0) * np.sqrt(rad))

    r = integrate_adaptive(integrand, 0.0, z, tol)
    pref = math.tan(gamma) / (2.0 * math.tan(beta))
    return VolumeResult(pref * r.value, "bolyai",
                        error_estimate=abs(pref) * r.error_estimate)


def schlafli_variation_residual(angles: DihedralAngleSet, which_edge: str,
                                h: float, space: str) -> float:
    """|central difference of V along one dihedral angle - K l/2|.

    The variational identity gives dV/dtheta = -l/2 in H3 and +l/2 in
    S3 for the length l of the edge carrying the varied angle; in E3 it
    collapses to 0 = 0 and the request is rejected.
    """
    if space == "E3":
        raise DomainError("the variational identity is vacuous in E3")
    if space not in ("H3", "S3"):
        raise DomainError(f"space must be H3, S3 or E3, got {space!r}")
    if which_edge not in ANGLE_LABELS:
        raise DomainError(f"which_edge must be one of {ANGLE_LABELS}")
    if not (h > 0.0):
        raise DomainError("step h must be positive")
    g = gram_from_angles(angles)
    cls = classify(g)
    if space == "H3":
        if cls.kind is not TetraKind.COMPACT_HYPERBOLIC:
            raise NotCompactHyperbolic(cls.reason or "")
        backend, sign = volume_dm, -1.0
    else:
        if cls.kind is not TetraKind.SPHERICAL:
            raise NotSpherical(cls.reason or "")
        backend, sign = volume_sforza_s3, 1.0
    ell = edge_lengths(g, cls).for_angle(which_edge)
    theta = getattr(angles, which_edge)
    vp = backend(angles.with_angle(which_edge, theta + h), _TIGHT).value
    vm = backend(angles.with_angle(which_edge, theta - h), _TIGHT).value
    fd = (vp - vm) / (2.0 * h)
    return abs(fd - sign * ell / 2.0)
