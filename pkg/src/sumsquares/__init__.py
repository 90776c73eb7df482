"""Verification toolkit for the sum-of-squares law of projected edge-transitive polytopes.

Projecting the edges of an N-dimensional polytope whose rotation group acts
transitively on its edges onto any M-dimensional subspace scales the sum of
squared edge lengths by exactly M/N. The package builds the polytopes and
their rotation groups and checks the law and each identity used to derive it.
"""

from .numeric import (
    Subspace,
    Tol,
    axis_subspace,
    inner,
    is_special_orthogonal,
    orthonormalize,
    random_subspace,
    random_unit_vector,
)
from .polytopes import (
    Polytope,
    build,
    build_24cell,
    build_600cell,
    build_cross_polytope,
    build_cuboid,
    build_dodecahedron,
    build_hypercube,
    build_icosahedron,
    build_simplex,
    extract_edges,
    normalize_unit_edges,
)
from .projection import (
    LawReport,
    group_average_check,
    project_vector,
    sum_squares,
    sum_squares_projected,
    verify_law,
)
from .representation import (
    HypothesisError,
    OrthogonalityReport,
    character_norm,
    verify_schur,
    verify_sos2,
    verify_sos3,
    verify_unitary,
)
from .symmetry import (
    EdgeOrbitDecomposition,
    MatrixGroup,
    catalog_generators,
    close_group,
    decompose_edges,
    edge_action,
    is_edge_transitive,
    is_symmetry,
    symmetry_group,
)

__version__ = "0.1.0"
