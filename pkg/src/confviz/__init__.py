"""confviz: neighbourhood-derived incidence structures and their realizations.

The pipeline runs graph -> incidence structure (V-construction) -> planar or
spatial realization -> verification and rendering. See README.md for the CLI
walk-through.
"""

from .errors import (
    AdmissibilityError,
    CapacityError,
    ConcyclicityError,
    ConvergenceError,
    DegeneracyError,
    DistinctnessError,
    ParameterError,
    PolePlacementError,
    SamplingError,
)
from .graphs import (
    Bipartition,
    Graph,
    StructureReport,
    VertexMap,
    bipartite_swap_involution,
    build_family,
    cartesian_product,
    family_names,
    is_admissible,
    kronecker_cover,
    line_graph,
    neighborhoods,
    structure_report,
)
from .incidence import (
    ConfigClass,
    IncidenceStructure,
    KroneckerReport,
    classify,
    decompose,
    fano_plane,
    is_self_polar,
    levi_graph,
    pappus_structure,
    v_construct,
    verify_kronecker_theorem,
)
from .iso import find_free_cyclic_action, find_swap_involution, isomorphic
from .realization import (
    Circle,
    Layout,
    PointCircleConfig,
    TOL_CLUSTER,
    TOL_INCIDENCE,
    TOL_SEPARATION,
    check_flags,
    circles_from_layout,
    circumcircle,
    fit_circle,
    incidence_of,
    invert_pointline,
    layout_gen_cuboctahedron,
    layout_hypercube,
    layout_polygon,
    layout_product,
    realize_n3,
    solve_unit_distance,
    unit_edge_residual,
)
from .spatial import (
    Plane,
    PointPlaneConfig,
    PolytopeSkeleton,
    POLYTOPE_NAMES,
    SphereCircle,
    SphericalCircleConfig,
    admissible_polytope,
    coplanarity,
    point_plane_vconstruct,
    polytope_data,
    sphere_circles,
    stereographic_project,
)

__version__ = "0.1.0"

__all__ = [
    "AdmissibilityError",
    "Bipartition",
    "CapacityError",
    "Circle",
    "ConcyclicityError",
    "ConfigClass",
    "ConvergenceError",
    "DegeneracyError",
    "DistinctnessError",
    "Graph",
    "IncidenceStructure",
    "KroneckerReport",
    "Layout",
    "POLYTOPE_NAMES",
    "ParameterError",
    "Plane",
    "PointCircleConfig",
    "PointPlaneConfig",
    "PolePlacementError",
    "PolytopeSkeleton",
    "SamplingError",
    "SphereCircle",
    "SphericalCircleConfig",
    "StructureReport",
    "TOL_CLUSTER",
    "TOL_INCIDENCE",
    "TOL_SEPARATION",
    "VertexMap",
    "admissible_polytope",
    "bipartite_swap_involution",
    "build_family",
    "cartesian_product",
    "check_flags",
    "circles_from_layout",
    "circumcircle",
    "classify",
    "coplanarity",
    "decompose",
    "family_names",
    "fano_plane",
    "find_free_cyclic_action",
    "find_swap_involution",
    "fit_circle",
    "incidence_of",
    "invert_pointline",
    "is_admissible",
    "is_self_polar",
    "isomorphic",
    "kronecker_cover",
    "layout_gen_cuboctahedron",
    "layout_hypercube",
    "layout_polygon",
    "layout_product",
    "levi_graph",
    "line_graph",
    "neighborhoods",
    "pappus_structure",
    "point_plane_vconstruct",
    "polytope_data",
    "realize_n3",
    "solve_unit_distance",
    "sphere_circles",
    "stereographic_project",
    "structure_report",
    "unit_edge_residual",
    "v_construct",
    "verify_kronecker_theorem",
]
