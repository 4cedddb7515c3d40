"""Areas of hyperbolic triangles, cyclic quadrilaterals and trapezoids,
plus their Euclidean counterparts.

Every hyperbolic area formula here is a closed form in side lengths;
interior angles computed from the side lengths provide the independent
Gauss-Bonnet route (S = pi - sum for triangles, 2 pi - sum for
quadrilaterals) used in cross-checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (DomainError, NotAQuadrilateral, NotATriangle,
                     NotBicentric, NotRealizable, ParallelSides)

TRIANGLE_FORMULAS = ("sin_half", "tan_quarter", "sin_quarter", "bilinski",
                     "gauss_bonnet")
QUAD_FORMULAS = TRIANGLE_FORMULAS


@dataclass(frozen=True)
class TriSides:
    a: float
    b: float
    c: float

    def __post_init__(self):
        sides = (self.a, self.b, self.c)
        if any(not (x > 0.0 and math.isfinite(x)) for x in sides):
            raise NotATriangle(f"sides must be positive, got {sides}")
        tot = sum(sides)
        if any(x >= tot - x for x in sides):
            raise NotATriangle(f"triangle inequality fails for {sides}")

    @property
    def s(self) -> float:
        return 0.5 * (self.a + self.b + self.c)


@dataclass(frozen=True)
class QuadSides:
    """Sides of a cyclic quadrilateral in cyclic order; one side may be
    zero (the quadrilateral degenerates to a triangle)."""

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        sides = self.sides()
        if any(not (x >= 0.0 and math.isfinite(x)) for x in sides):
            raise NotAQuadrilateral(f"sides must be >= 0, got {sides}")
        if sum(1 for x in sides if x == 0.0) > 1:
            raise NotAQuadrilateral("more than one zero side")
        tot = sum(sides)
        if any(x >= tot - x for x in sides):
            raise NotAQuadrilateral(
                f"quadrilateral inequality fails for {sides}")

    def sides(self):
        return (self.a, self.b, self.c, self.d)

    @property
    def s(self) -> float:
        return 0.5 * sum(self.sides())

    def sh(self, x: float) -> float:
        """Half-side chord function sinh(x/2)."""
        return math.sinh(0.5 * x)

    def rotated(self) -> "QuadSides":
        return QuadSides(self.b, self.c, self.d, self.a)


@dataclass(frozen=True)
class QuadAngles:
    A: float
    B: float
    C: float
    D: float

    def __post_init__(self):
        angles = (self.A, self.B, self.C, self.D)
        if any(not (0.0 < x < math.pi) for x in angles):
            raise DomainError(f"interior angles must be in (0, pi): {angles}")
        if sum(angles) >= 2.0 * math.pi:
            raise DomainError("hyperbolic quadrilateral angle sum >= 2 pi")

    def total(self) -> float:
        return self.A + self.B + self.C + self.D


@dataclass(frozen=True)
class AreaResult:
    value: float
    formula: str

    def __post_init__(self):
        if not (self.value > 0.0):
            raise DomainError(f"area must be positive, got {self.value}")


def _clamped_sqrt(v: float, what: str) -> float:
    if v < -1e-12:
        raise DomainError(f"negative radicand {v} in {what}")
    return math.sqrt(max(v, 0.0))


# ---------------------------------------------------------------------------
# triangles

def heron_euclidean(a: float, b: float, c: float) -> float:
    """Euclidean triangle area, S^2 = (s-a)(s-b)(s-c)s.

    Degenerate (collinear) triples are allowed and give area 0.
    """
    sides = (a, b, c)
    if any(x < 0.0 for x in sides):
        raise NotATriangle(f"sides must be nonnegative: {sides}")
    tot = sum(sides)
    if any(x > tot - x + 1e-12 * max(tot, 1.0) for x in sides):
        raise NotATriangle(f"triangle inequality fails for {sides}")
    s = 0.5 * tot
    return _clamped_sqrt((s - a) * (s - b) * (s - c) * s, "Heron")


def triangle_angles(t: TriSides):
    """Interior angles by the hyperbolic law of cosines."""
    out = []
    for opp, adj1, adj2 in ((t.a, t.b, t.c), (t.b, t.c, t.a), (t.c, t.a, t.b)):
        num = math.cosh(adj1) * math.cosh(adj2) - math.cosh(opp)
        den = math.sinh(adj1) * math.sinh(adj2)
        out.append(math.acos(min(1.0, max(-1.0, num / den))))
    return tuple(out)


def triangle_area(t: TriSides, formula: str = "sin_half") -> AreaResult:
    """Hyperbolic triangle area by one of the four side-length formulas
    or the Gauss-Bonnet angle route."""
    s = t.s
    a, b, c = t.a, t.b, t.c
    ch = math.cosh(a / 2) * math.cosh(b / 2) * math.cosh(c / 2)
    if formula == "sin_half":
        v = (math.sinh(s - a) * math.sinh(s - b) * math.sinh(s - c)
             * math.sinh(s)) / (4.0 * ch * ch)
        area = 2.0 * math.asin(_clamped_sqrt(v, "sine of half-area"))
    elif formula == "tan_quarter":
        v = (math.tanh((s - a) / 2) * math.tanh((s - b) / 2)
             * math.tanh((s - c) / 2) * math.tanh(s / 2))
        area = 4.0 * math.atan(_clamped_sqrt(v, "tangent of quarter-area"))
    elif formula == "sin_quarter":
        v = (math.sinh((s - a) / 2) * math.sinh((s - b) / 2)
             * math.sinh((s - c) / 2) * math.sinh(s / 2)) / ch
        area = 4.0 * math.asin(_clamped_sqrt(v, "sine of quarter-area"))
    elif formula == "bilinski":
        v = (math.cosh(a) + math.cosh(b) + math.cosh(c) + 1.0) / (4.0 * ch)
        area = 2.0 * math.acos(min(1.0, max(-1.0, v)))
    elif formula == "gauss_bonnet":
        area = math.pi - sum(triangle_angles(t))
    else:
        raise DomainError(f"unknown triangle formula {formula!r}")
    return AreaResult(area, formula)


# ---------------------------------------------------------------------------
# cyclic quadrilaterals

def brahmagupta_euclidean(q: QuadSides) -> float:
    """Euclidean cyclic quadrilateral area, S^2 = (s-a)(s-b)(s-c)(s-d)."""
    s = q.s
    return _clamped_sqrt(math.prod(s - x for x in q.sides()), "Brahmagupta")


def cyclic_quad_diagonals(q: QuadSides):
    """Diagonal lengths (e, f) of the cyclic hyperbolic quadrilateral.

    With s(x) = sinh(x/2):

        s^2(e) = (s(a)s(d)+s(b)s(c)) (s(a)s(c)+s(b)s(d)) / (s(a)s(b)+s(c)s(d)),
        s^2(f) = (s(a)s(b)+s(c)s(d)) (s(a)s(c)+s(b)s(d)) / (s(a)s(d)+s(b)s(c)),

    which satisfy the chord Ptolemy identity
    s(e)s(f) = s(a)s(c) + s(b)s(d) and the diagonal ratio identity.
    """
    pa, pb, pc, pd = (q.sh(x) for x in q.sides())
    m1 = pa * pd + pb * pc
    m2 = pa * pb + pc * pd
    m3 = pa * pc + pb * pd
    if m1 <= 0.0 or m2 <= 0.0:
        raise NotAQuadrilateral("degenerate side products")
    se2 = (m1 / m2) * m3
    sf2 = (m2 / m1) * m3
    return (2.0 * math.asinh(math.sqrt(se2)),
            2.0 * math.asinh(math.sqrt(sf2)))


def _cos_a_pair(q: QuadSides):
    """cos A and cos C from side lengths (A between sides d and a)."""
    pa, pb, pc, pd = (q.sh(x) for x in q.sides())
    m1 = pa * pd + pb * pc
    prod = pa * pb * pc * pd
    cos_a = ((pa * pa - pb * pb - pc * pc + pd * pd + 2.0 * prod
              + 2.0 * pa * pa * pd * pd)
             / (2.0 * m1 * math.cosh(q.a / 2) * math.cosh(q.d / 2)))
    cos_c = ((-pa * pa + pb * pb + pc * pc - pd * pd + 2.0 * prod
              + 2.0 * pb * pb * pc * pc)
             / (2.0 * m1 * math.cosh(q.b / 2) * math.cosh(q.c / 2)))
    return cos_a, cos_c


def cyclic_quad_angles(q: QuadSides) -> QuadAngles:
    """Interior angles of the cyclic quadrilateral from its sides.

    B and D come from the same closed forms applied to the rotated side
    labels (b, c, d, a).
    """
    cos_a, cos_c = _cos_a_pair(q)
    cos_b, cos_d = _cos_a_pair(q.rotated())
    vals = [math.acos(min(1.0, max(-1.0, v)))
            for v in (cos_a, cos_b, cos_c, cos_d)]
    return QuadAngles(*vals)


def quad_area_gauss_bonnet(q: QuadSides) -> AreaResult:
    return AreaResult(2.0 * math.pi - cyclic_quad_angles(q).total(),
                      "gauss_bonnet")


def epsilon_term(q: QuadSides) -> float:
    """Correction term eps = prod sinh(x/2) / prod cosh((s-x)/2);
    vanishes with any zero side and stays in (0, 1) otherwise."""
    s = q.s
    num = math.prod(q.sh(x) for x in q.sides())
    den = math.prod(math.cosh((s - x) / 2) for x in q.sides())
    return num / den


def _bilinski_cos_half(q: QuadSides) -> float:
    num = (sum(math.cosh(x) for x in q.sides())
           - 4.0 * math.prod(q.sh(x) for x in q.sides()))
    den = 4.0 * math.prod(math.cosh(x / 2) for x in q.sides())
    return min(1.0, max(-1.0, num / den))


def cyclic_quad_area(q: QuadSides, formula: str = "sin_quarter") -> AreaResult:
    """Cyclic hyperbolic quadrilateral area by one of the four
    side-length formulas or Gauss-Bonnet.

    A single zero side routes to the matching triangle formula, which
    the quadrilateral formulas reduce to exactly.
    """
    if min(q.sides()) == 0.0:
        rot = q
        while rot.d != 0.0:
            rot = rot.rotated()
        return triangle_area(TriSides(rot.a, rot.b, rot.c), formula)
    s = q.s
    sides = q.sides()
    ch = math.prod(math.cosh(x / 2) for x in sides)
    if formula == "sin_half":
        eps = epsilon_term(q)
        v = (math.prod(math.sinh(s - x) for x in sides)
             / (4.0 * ch * ch)) * (1.0 - eps)
        half = math.asin(_clamped_sqrt(v, "sine of half-area"))
        if _bilinski_cos_half(q) < 0.0:
            half = math.pi - half
        area = 2.0 * half
    elif formula == "tan_quarter":
        eps = epsilon_term(q)
        v = math.prod(math.tanh((s - x) / 2) for x in sides) / (1.0 - eps)
        area = 4.0 * math.atan(_clamped_sqrt(v, "tangent of quarter-area"))
    elif formula == "sin_quarter":
        v = math.prod(math.sinh((s - x) / 2) for x in sides) / ch
        area = 4.0 * math.asin(_clamped_sqrt(v, "sine of quarter-area"))
    elif formula == "bilinski":
        area = 2.0 * math.acos(_bilinski_cos_half(q))
    elif formula == "gauss_bonnet":
        return quad_area_gauss_bonnet(q)
    else:
        raise DomainError(f"unknown quadrilateral formula {formula!r}")
    return AreaResult(area, formula)


_BICENTRIC_TOL = 1e-12


def bicentric_area(q: QuadSides) -> AreaResult:
    """Area of a bicentric (inscribed and circumscribed) quadrilateral:
    sin^2(S/4) = prod tanh(x/2), valid under the tangential condition
    a + c = b + d."""
    if abs((q.a + q.c) - (q.b + q.d)) > _BICENTRIC_TOL:
        raise NotBicentric(
            f"a + c = {q.a + q.c} differs from b + d = {q.b + q.d}")
    v = math.prod(math.tanh(x / 2) for x in q.sides())
    return AreaResult(4.0 * math.asin(_clamped_sqrt(v, "bicentric area")),
                      "sin_quarter")


# ---------------------------------------------------------------------------
# trapezoids (b and d are the parallel-analog pair: A + B = C + D)

_PARALLEL_TOL = 1e-12


def trapezoid_area(q: QuadSides) -> AreaResult:
    """Hyperbolic trapezoid area from side lengths, with b and d the
    base pair (the formula has a pole at b = d, where a parallelogram
    flexes and the sides no longer determine the area):

        tan^2(S/4) = sinh^2((b+d)/2) * prod of four sinh quarter-sums
                     / (sinh^2((b-d)/2) * prod of four cosh quarter-sums).
    """
    a, b, c, d = q.sides()
    if abs(b - d) <= _PARALLEL_TOL:
        raise ParallelSides(
            f"b = {b} and d = {d}: trapezoid area is not determined")
    num = (math.sinh((b + d) / 2) ** 2
           * math.sinh((a + b - c - d) / 4) * math.sinh((a + b + c - d) / 4)
           * math.sinh((-a + b + c - d) / 4) * math.sinh((a - b + c + d) / 4))
    den = (math.sinh((b - d) / 2) ** 2
           * math.cosh((a - b - c - d) / 4) * math.cosh((a - b + c - d) / 4)
           * math.cosh((a + b - c + d) / 4) * math.cosh((a + b + c + d) / 4))
    t2 = num / den
    if t2 < -1e-12:
        raise NotRealizable(
            f"tan^2(S/4) = {t2} < 0: sides are not a hyperbolic trapezoid")
    return AreaResult(4.0 * math.atan(math.sqrt(max(t2, 0.0))), "tan_quarter")


def trapezoid_area_euclidean(a: float, b: float, c: float, d: float) -> float:
    """Euclidean trapezoid area from side lengths (bases b, d; legs a, c):

        S^2 = (b+d)^2 (a+b-c-d)(a+b+c-d)(-a+b+c-d)(a-b+c+d) / (16 (b-d)^2).
    """
    if any(x <= 0.0 for x in (a, b, c, d)):
        raise DomainError("trapezoid sides must be positive")
    if abs(b - d) <= _PARALLEL_TOL * max(b, d):
        raise ParallelSides(
            f"b = {b} and d = {d}: a parallelogram flexes freely")
    factors = (a + b - c - d, a + b + c - d, -a + b + c - d, a - b + c + d)
    if any(f < -1e-12 for f in factors):
        raise NotRealizable(
            f"factor {min(factors)} < 0: no Euclidean trapezoid "
            "realizes these sides")
    s2 = (b + d) ** 2 * math.prod(max(f, 0.0) for f in factors) \
        / (16.0 * (b - d) ** 2)
    return math.sqrt(s2)
