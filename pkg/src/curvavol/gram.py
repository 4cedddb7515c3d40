"""Gram matrices of tetrahedra: construction, cofactors, classification,
edge lengths and the determinant-as-quadratic helper.

Index conventions (fixed once, inherited by every other module):

* Gram rows/columns number the four faces; vertex i is opposite face i.
* The dihedral angle stored at Gram entry (i, j) sits on the edge shared
  by faces i and j, which joins the two remaining vertices.
* Labels: A at entry (1,2), B at (1,3), F at (1,4), C at (2,3),
  E at (2,4), D at (3,4) (1-based), so A/D, B/E, C/F are opposite pairs
  and the edge carrying angle A joins vertices 3 and 4.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import DomainError, InvalidAngle

ANGLE_LABELS = ("A", "B", "C", "D", "E", "F")

# 0-based Gram entry (face pair) for each angle label
FACE_PAIR = {"A": (0, 1), "B": (0, 2), "F": (0, 3),
             "C": (1, 2), "E": (1, 3), "D": (2, 3)}
# 0-based vertex pair of the edge carrying each angle
EDGE_OF_ANGLE = {"A": (2, 3), "B": (1, 3), "F": (1, 2),
                 "C": (0, 3), "E": (0, 2), "D": (0, 1)}
_PAIR_TO_LABEL = {pair: lab for lab, pair in FACE_PAIR.items()}


@dataclass(frozen=True)
class DihedralAngleSet:
    """Six dihedral angles of a tetrahedron, each in (0, pi).

    A, B, C sit at the edges meeting one vertex; D, E, F are opposite
    to them respectively.
    """

    A: float
    B: float
    C: float
    D: float
    E: float
    F: float

    def __post_init__(self):
        for lab in ANGLE_LABELS:
            v = getattr(self, lab)
            if not (isinstance(v, (int, float)) and math.isfinite(v)
                    and 0.0 < v < math.pi):
                raise InvalidAngle(f"angle {lab}={v!r} outside (0, pi)")

    def as_dict(self):
        return {lab: getattr(self, lab) for lab in ANGLE_LABELS}

    def with_angle(self, label: str, value: float) -> "DihedralAngleSet":
        return replace(self, **{label: value})

    def permuted(self, sigma) -> "DihedralAngleSet":
        """Relabel under a permutation of the four faces/vertices.

        sigma is a sequence of length 4: new face i carries old face
        sigma[i].  The angle at new entry (i, j) is the old angle at
        (sigma[i], sigma[j]).
        """
        new = {}
        for (i, j), lab in _PAIR_TO_LABEL.items():
            oi, oj = sigma[i], sigma[j]
            old_lab = _PAIR_TO_LABEL[(min(oi, oj), max(oi, oj))]
            new[lab] = getattr(self, old_lab)
        return DihedralAngleSet(**new)


def _det3(m) -> float:
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def cofactor_matrix(entries: np.ndarray) -> np.ndarray:
    """Signed cofactors c_ij = (-1)^(i+j) det(minor_ij) of a 4x4 matrix.

    Uses explicit 3x3 minors so the result stays meaningful at det = 0.
    """
    m = np.asarray(entries, dtype=np.float64)
    if m.shape != (4, 4):
        raise ValueError("cofactor_matrix expects a 4x4 matrix")
    cof = np.empty((4, 4))
    idx = (0, 1, 2, 3)
    for i in range(4):
        rows = [r for r in idx if r != i]
        for j in range(4):
            cols = [c for c in idx if c != j]
            minor = [[m[r, c] for c in cols] for r in rows]
            cof[i, j] = (-1.0) ** (i + j) * _det3(minor)
    return cof


class GramMatrix:
    """4x4 symmetric Gram matrix with unit diagonal, determinant and
    cofactor matrix cached."""

    def __init__(self, entries: np.ndarray):
        m = np.array(entries, dtype=np.float64)
        if m.shape != (4, 4):
            raise ValueError("Gram matrix must be 4x4")
        if not np.allclose(m, m.T, rtol=0.0, atol=0.0):
            raise ValueError("Gram matrix must be exactly symmetric")
        if not np.allclose(np.diag(m), 1.0, rtol=0.0, atol=0.0):
            raise ValueError("Gram matrix must have unit diagonal")
        if np.any(np.abs(m) > 1.0 + 1e-12):
            raise ValueError("Gram entries must lie in [-1, 1]")
        self.entries = m
        self.cofactors = cofactor_matrix(m)
        # expansion along the first row; consistent with the cofactors
        self.det = float(m[0] @ self.cofactors[0])

    def entry_for(self, label: str) -> float:
        i, j = FACE_PAIR[label]
        return self.entries[i, j]

    def cofactor_for_edge_of(self, label: str) -> float:
        """Cofactor c_kl of the vertex pair (k, l) joined by the edge
        carrying the given dihedral angle.  For angle A this is c_34."""
        k, l = EDGE_OF_ANGLE[label]
        return self.cofactors[k, l]

    def __repr__(self):
        return f"GramMatrix(det={self.det:.6g})"


def gram_from_angles(angles: DihedralAngleSet) -> GramMatrix:
    """Gram matrix <-cos angle> with unit diagonal, following the fixed
    face-pair layout."""
    m = np.eye(4)
    for lab, (i, j) in FACE_PAIR.items():
        v = -math.cos(getattr(angles, lab))
        m[i, j] = v
        m[j, i] = v
    return GramMatrix(m)


def cofactors(g: GramMatrix) -> np.ndarray:
    return g.cofactors


class TetraKind(enum.Enum):
    COMPACT_HYPERBOLIC = "compact_hyperbolic"
    SPHERICAL = "spherical"
    INVALID = "invalid"


@dataclass(frozen=True)
class TetraClass:
    kind: TetraKind
    reason: str | None = None

    @property
    def is_compact_hyperbolic(self) -> bool:
        return self.kind is TetraKind.COMPACT_HYPERBOLIC

    @property
    def is_spherical(self) -> bool:
        return self.kind is TetraKind.SPHERICAL


def classify(g: GramMatrix) -> TetraClass:
    """Classify by the sign conditions on det G and the cofactors.

    Compact hyperbolic: det < 0, all c_ii > 0, all off-diagonal c_ij > 0.
    Spherical: det > 0 and all c_ii > 0.  Anything else is invalid and
    carries the first failed condition as the reason.
    """
    det = g.det
    cof = g.cofactors
    diag = np.diag(cof)
    off = cof[~np.eye(4, dtype=bool)]
    if det < 0.0:
        if np.all(diag > 0.0) and np.all(off > 0.0):
            return TetraClass(TetraKind.COMPACT_HYPERBOLIC)
        if not np.all(diag > 0.0):
            k = int(np.argmin(diag))
            return TetraClass(
                TetraKind.INVALID,
                f"det G < 0 but c_{k + 1}{k + 1} = {diag[k]:.3g} <= 0 "
                "(vertex not inside hyperbolic space)")
        return TetraClass(
            TetraKind.INVALID,
            "det G < 0 but some off-diagonal cofactor <= 0")
    if det > 0.0:
        if np.all(diag > 0.0):
            return TetraClass(TetraKind.SPHERICAL)
        k = int(np.argmin(diag))
        return TetraClass(
            TetraKind.INVALID,
            f"det G > 0 but c_{k + 1}{k + 1} = {diag[k]:.3g} <= 0")
    return TetraClass(TetraKind.INVALID, "det G = 0 (degenerate)")


@dataclass(frozen=True)
class EdgeLengthSet:
    """Six edge lengths keyed by vertex pairs (1-based names).

    The length of the edge carrying dihedral angle A is l34, and so on
    following EDGE_OF_ANGLE; the l_A .. l_F properties spell that out.
    """

    l12: float
    l13: float
    l14: float
    l23: float
    l24: float
    l34: float

    def __post_init__(self):
        for name, v in self.as_dict().items():
            if not (math.isfinite(v) and v > 0.0):
                raise DomainError(f"edge length {name}={v!r} must be > 0")

    def as_dict(self):
        return {"l12": self.l12, "l13": self.l13, "l14": self.l14,
                "l23": self.l23, "l24": self.l24, "l34": self.l34}

    def vertex_matrix_entry(self, i: int, j: int) -> float:
        """Length between 0-based vertices i != j."""
        key = f"l{min(i, j) + 1}{max(i, j) + 1}"
        return getattr(self, key)

    def for_angle(self, label: str) -> float:
        k, l = EDGE_OF_ANGLE[label]
        return self.vertex_matrix_entry(k, l)

    l_A = property(lambda self: self.l34)
    l_B = property(lambda self: self.l24)
    l_C = property(lambda self: self.l14)
    l_D = property(lambda self: self.l12)
    l_E = property(lambda self: self.l13)
    l_F = property(lambda self: self.l23)


_COS_RULE_SLACK = 1e-9


def edge_lengths(g: GramMatrix, cls: TetraClass) -> EdgeLengthSet:
    """Edge lengths from the cosine rules on cofactors.

    Hyperbolic: cosh l_ij = c_ij / sqrt(c_ii c_jj);
    spherical:  cos  l_ij = c_ij / sqrt(c_ii c_jj).
    Arguments slightly (<= 1e-9) outside the legal range are clamped;
    beyond that the Gram data is inconsistent and DomainError is raised.
    """
    if cls.kind is TetraKind.INVALID:
        raise DomainError(f"cannot take edge lengths of an invalid "
                          f"tetrahedron ({cls.reason})")
    cof = g.cofactors
    vals = {}
    for i in range(4):
        for j in range(i + 1, 4):
            arg = cof[i, j] / math.sqrt(cof[i, i] * cof[j, j])
            if cls.is_compact_hyperbolic:
                if arg < 1.0 - _COS_RULE_SLACK:
                    raise DomainError(
                        f"cosh l_{i + 1}{j + 1} argument {arg} < 1")
                vals[f"l{i + 1}{j + 1}"] = math.acosh(max(arg, 1.0))
            else:
                if abs(arg) > 1.0 + _COS_RULE_SLACK:
                    raise DomainError(
                        f"cos l_{i + 1}{j + 1} argument {arg} outside [-1, 1]")
                vals[f"l{i + 1}{j + 1}"] = math.acos(min(1.0, max(-1.0, arg)))
    return EdgeLengthSet(**vals)


def detg_quadratic(angles: DihedralAngleSet, label: str = "A"):
    """Coefficients (alpha, beta, gamma) of det G = alpha u^2 + beta u
    + gamma in u = cos(angle at `label`), all other angles held fixed.

    Recovered exactly (to rounding) from det evaluations at
    u in {-1, 0, 1}.
    """
    i, j = FACE_PAIR[label]
    base = gram_from_angles(angles).entries.copy()

    def det_at(u):
        m = base.copy()
        m[i, j] = -u
        m[j, i] = -u
        c = cofactor_matrix(m)
        return float(m[0] @ c[0])

    d_plus, d_zero, d_minus = det_at(1.0), det_at(0.0), det_at(-1.0)
    alpha = 0.5 * (d_plus + d_minus) - d_zero
    beta = 0.5 * (d_plus - d_minus)
    gamma = d_zero
    return alpha, beta, gamma
