"""Determinant/permanent machinery for the Seidel problem.

Ideal-tetrahedron Gram signatures, the constant-determinant families
witnessing that det G alone cannot determine the volume, and recovery
of ideal angles from (det G, per G) within an acute or obtuse class.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NoSolution, NotCompactHyperbolic
from .gram import (DihedralAngleSet, TetraKind, classify, edge_lengths,
                   gram_from_angles)


@dataclass(frozen=True)
class IdealAngles:
    """Ideal tetrahedron angles with 0 < A <= B <= C = pi - A - B."""

    A: float
    B: float

    def __post_init__(self):
        if not (0.0 < self.A <= self.B <= self.C):
            raise DomainError(
                f"need 0 < A <= B <= C = pi - A - B, got A={self.A}, "
                f"B={self.B}, C={self.C}")

    @property
    def C(self) -> float:
        return math.pi - self.A - self.B

    @property
    def is_obtuse(self) -> bool:
        return self.C > math.pi / 2

    def angle_set(self) -> DihedralAngleSet:
        """Six-angle form: opposite dihedral angles of an ideal
        tetrahedron are pairwise equal."""
        return DihedralAngleSet(A=self.A, B=self.B, C=self.C,
                                D=self.A, E=self.B, F=self.C)


@dataclass(frozen=True)
class GramSignature:
    det: float
    per: float

    def __post_init__(self):
        if self.det > 1e-12:
            raise DomainError(f"ideal Gram determinant {self.det} > 0")
        if self.per < 4.0 - 1e-12:
            raise DomainError(f"ideal Gram permanent {self.per} < 4")


def permanent4(m) -> float:
    """Permanent of a 4x4 matrix by full recursive expansion along the
    first row (24 terms, exact apart from rounding)."""
    m = np.asarray(m, dtype=np.float64)
    if m.shape != (4, 4):
        raise ValueError("permanent4 expects a 4x4 matrix")

    def per(rows, cols):
        if len(cols) == 1:
            return m[rows[0], cols[0]]
        r = rows[0]
        return sum(m[r, c] * per(rows[1:], tuple(x for x in cols if x != c))
                   for c in cols)

    return float(per((0, 1, 2, 3), (0, 1, 2, 3)))


def ideal_gram(a: IdealAngles) -> np.ndarray:
    return gram_from_angles(a.angle_set()).entries


def ideal_signature(a: IdealAngles) -> GramSignature:
    """Closed forms det G = -4 sin^2 A sin^2 B sin^2(A+B) and
    per G = 4 + 4 cos^2 A cos^2 B cos^2(A+B)."""
    sa, sb, sab = math.sin(a.A), math.sin(a.B), math.sin(a.A + a.B)
    ca, cb, cab = math.cos(a.A), math.cos(a.B), math.cos(a.A + a.B)
    return GramSignature(det=-4.0 * (sa * sb * sab) ** 2,
                         per=4.0 + 4.0 * (ca * cb * cab) ** 2)


def spherical_family_member(A: float, c: float):
    """Member T_c(A) of the constant-determinant spherical family.

    Two opposite dihedral angles A and D = asin(c / sin A), all others
    right; det G = c^2 for every member while the volume A*D/2 moves
    with the free parameter A.  Returns (angle set, volume).
    """
    if not (0.0 < A < math.pi):
        raise DomainError(f"A={A} outside (0, pi)")
    if not (0.0 < c < min(math.sin(A), 1.0)):
        raise DomainError(f"need 0 < c < min(sin A, 1) = "
                          f"{min(math.sin(A), 1.0)}, got c={c}")
    d = math.asin(c / math.sin(A))
    hp = math.pi / 2
    angles = DihedralAngleSet(A=A, B=hp, C=hp, D=d, E=hp, F=hp)
    return angles, A * d / 2.0


def hyperbolic_family_dDdA(angles: DihedralAngleSet) -> float:
    """Slope dD/dA = -c12 sin A / (c34 sin D) of the constant-det
    constraint d(det G) = 0 with only A and D varying."""
    g = gram_from_angles(angles)
    if classify(g).kind is not TetraKind.COMPACT_HYPERBOLIC:
        raise NotCompactHyperbolic("constant-determinant family needs a "
                                   "compact hyperbolic instance")
    c12 = g.cofactors[0, 1]
    c34 = g.cofactors[2, 3]
    return -c12 * math.sin(angles.A) / (c34 * math.sin(angles.D))


def hyperbolic_family_dVdA(angles: DihedralAngleSet) -> float:
    """Volume derivative along the constant-determinant path:

        dV/dA = -(tanh l_A / 2) (l_A / tanh l_A - l_D / tanh l_D),

    zero exactly when l_A = l_D (the symmetric members).
    """
    g = gram_from_angles(angles)
    cls = classify(g)
    if cls.kind is not TetraKind.COMPACT_HYPERBOLIC:
        raise NotCompactHyperbolic(cls.reason or "not compact hyperbolic")
    els = edge_lengths(g, cls)
    la, ld = els.l_A, els.l_D
    return -(math.tanh(la) / 2.0) * (la / math.tanh(la) - ld / math.tanh(ld))


_RESIDUAL_TOL = 1e-9


def recover_ideal_angles(sig: GramSignature, obtuse: bool) -> IdealAngles:
    """Invert (det G, per G) to ideal angles within one class.

    With x = sin A sin B, y = cos A cos B and w = y - x = -cos C the
    system -det/4 = x^2 (1 - w^2), per/4 - 1 = y^2 w^2 closes to a
    cubic in X = x^2 once the class fixes the signs of w and of
    y w = +-sqrt(per/4 - 1).  Candidates are filtered by
    back-substitution and collapse, up to reordering of the angle
    triple, to the single tetrahedron the class admits.
    """
    p = -sig.det / 4.0
    q = sig.per / 4.0 - 1.0
    if p <= 0.0:
        raise NoSolution("det G = 0: boundary of the ideal family")
    sgn = 1.0 if obtuse else -1.0
    sq = sgn * math.sqrt(max(q, 0.0))
    coeffs = [1.0,
              -(p + (sq - 1.0) ** 2),
              -2.0 * (sq - 1.0) * p,
              -p * p]
    seen: list[tuple[float, float, float]] = []
    best = None
    for root in np.roots(coeffs):
        if abs(root.imag) > 1e-9 or root.real <= 0.0:
            continue
        bigx = float(root.real)
        x = math.sqrt(bigx)
        w2 = 1.0 - p / bigx
        if w2 < -1e-12:
            continue
        w = sgn * math.sqrt(max(w2, 0.0))
        y = x + w
        res = abs(x * x * (1.0 - w * w) - p) + abs(y * y * w * w - q)
        if res > _RESIDUAL_TOL:
            continue
        u = math.acos(min(1.0, max(-1.0, w)))        # A + B
        v = math.acos(min(1.0, max(-1.0, x + y)))    # |A - B|
        a, b = (u - v) / 2.0, (u + v) / 2.0
        cc = math.pi - u
        if a <= 1e-12:
            continue
        if obtuse != (max(a, b, cc) > math.pi / 2):
            continue
        triple = tuple(sorted((a, b, cc)))
        if any(max(abs(t1 - t2) for t1, t2 in zip(triple, s)) < 1e-8
               for s in seen):
            continue
        seen.append(triple)
        if best is None or res < best[0]:
            best = (res, triple)
    if best is None:
        raise NoSolution(
            f"no ideal tetrahedron in the {'obtuse' if obtuse else 'acute'} "
            f"class has det={sig.det}, per={sig.per}")
    return IdealAngles(A=best[1][0], B=best[1][1])


def seidel_example_pair():
    """The obtuse/acute pair sharing determinant and permanent.

    Angles are recomputed from the defining nested radicals:
    obtuse T1 = (s, s, pi - 2s), acute T2 = (t, (pi-t)/2, (pi-t)/2).
    """
    s = math.acos(math.sqrt(2.0 + math.sqrt(4.0 + math.sqrt(
        170.0 * math.sqrt(17.0) - 698.0))) / (2.0 * math.sqrt(2.0)))
    t = math.acos((-1.0 + math.sqrt(17.0)
                   + math.sqrt(-26.0 + 10.0 * math.sqrt(17.0))) / 8.0)
    t1 = IdealAngles(A=s, B=s)
    t2 = IdealAngles(A=t, B=(math.pi - t) / 2.0)
    return t1, t2
