"""Exception types shared by all curvavol modules."""


class CurvavolError(Exception):
    """Base class for every error raised by this package."""


class DomainError(CurvavolError, ValueError):
    """An input leaves the mathematical domain of a formula."""


class InvalidAngle(DomainError):
    """A dihedral angle lies outside the open interval (0, pi)."""


class NonConvergence(CurvavolError, ArithmeticError):
    """An iterative evaluation exhausted its evaluation budget."""


class NoSignChange(DomainError):
    """Root bracketing failed: f(lo) and f(hi) have the same sign."""


class NotRealizable(DomainError):
    """No geometric object with the requested metric data exists."""


class NotCompactHyperbolic(DomainError):
    """The angle set does not define a compact hyperbolic tetrahedron."""


class NotSpherical(DomainError):
    """The angle set does not define a spherical tetrahedron."""


class NoDegenerationRoot(DomainError):
    """No admissible degeneration angle A0 with det G(A0) = 0 was found."""


class IntegrandSignError(CurvavolError, ArithmeticError):
    """A log integrand argument turned non-positive inside the integration interval."""


class DegenerateIdeal(DomainError):
    """Ideal tetrahedron angles degenerate (some angle <= 0)."""


class DegenerateFace(DomainError):
    """A tetrahedron face is too flat to carry a normal vector."""


class NotATriangle(DomainError):
    """Side lengths violate the triangle inequality."""


class NotAQuadrilateral(DomainError):
    """Side lengths violate the quadrilateral inequality."""


class NotBicentric(DomainError):
    """Side lengths fail the tangential condition a + c = b + d."""


class ParallelSides(DomainError):
    """Trapezoid with b = d: the side lengths do not determine the area."""


class NoSolution(DomainError):
    """No admissible solution exists for the requested inversion."""
