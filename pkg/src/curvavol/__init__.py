"""curvavol: exact-formula volumes of tetrahedra in E^3, S^3 and H^3 and
areas of hyperbolic triangles, cyclic quadrilaterals and trapezoids,
with independent numerical oracles for cross-validation."""

from .errors import (CurvavolError, DegenerateFace, DegenerateIdeal,
                     DomainError, IntegrandSignError, InvalidAngle,
                     NoDegenerationRoot, NonConvergence, NoSignChange,
                     NoSolution, NotAQuadrilateral, NotATriangle,
                     NotBicentric, NotCompactHyperbolic, NotRealizable,
                     NotSpherical, ParallelSides)
from .gram import (DihedralAngleSet, EdgeLengthSet, GramMatrix, TetraClass,
                   TetraKind, classify, cofactor_matrix, cofactors,
                   detg_quadratic, edge_lengths, gram_from_angles)
from .models import (KleinTetrahedron, McEstimate,
                     dihedral_angles_from_vertices, embed_from_edge_lengths,
                     mc_volume, orthoscheme_from_bolyai_params,
                     orthoscheme_from_chain)
from .polyarea import (AreaResult, QuadAngles, QuadSides, TriSides,
                       bicentric_area, brahmagupta_euclidean,
                       cyclic_quad_angles, cyclic_quad_area,
                       cyclic_quad_diagonals, epsilon_term, heron_euclidean,
                       trapezoid_area, trapezoid_area_euclidean,
                       triangle_area)
from .seidel import (GramSignature, IdealAngles, hyperbolic_family_dVdA,
                     ideal_signature, permanent4, recover_ideal_angles,
                     seidel_example_pair, spherical_family_member)
from .specfun import (QuadratureResult, Tolerance, find_root_bracketed,
                      integrate_adaptive, lobachevsky, schlafli_S)
from .tetvol import (DMIntegrandParams, VolumeResult, dm_params,
                     schlafli_variation_residual, volume_bolyai, volume_dm,
                     volume_euclidean_cm, volume_ideal,
                     volume_orthoscheme_hyperbolic,
                     volume_orthoscheme_spherical, volume_sforza_h3,
                     volume_sforza_s3)

__version__ = "0.1.0"
