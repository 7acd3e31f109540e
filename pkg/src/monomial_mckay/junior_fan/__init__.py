"""Junior simplex, equivariant crepant triangulations and their fixed loci."""

from .lattice import (
    JuniorSet,
    LatticePoint,
    Overlattice,
    corners,
    delta_lattice_points,
    is_basic,
    junior_set,
    overlattice,
)
from .triangulation import (
    SymmetryAction,
    Triangulation,
    TriangulationReport,
    symmetric_triangulation,
    symmetry_action,
    verify_triangulation,
)
from .fixed_locus import (
    FixedLocusSummary,
    FixedStrata,
    fixed_locus,
    fixed_strata,
    lattice_of,
    local_resolution_euler,
)
from .export import export_geometry, from_json, to_json, to_svg

__all__ = [
    "FixedLocusSummary",
    "FixedStrata",
    "JuniorSet",
    "LatticePoint",
    "Overlattice",
    "SymmetryAction",
    "Triangulation",
    "TriangulationReport",
    "corners",
    "delta_lattice_points",
    "export_geometry",
    "fixed_locus",
    "fixed_strata",
    "from_json",
    "is_basic",
    "junior_set",
    "lattice_of",
    "local_resolution_euler",
    "overlattice",
    "symmetric_triangulation",
    "symmetry_action",
    "to_json",
    "to_svg",
    "verify_triangulation",
]
