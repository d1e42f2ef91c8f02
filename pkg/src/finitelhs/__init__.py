"""Finite local-hidden-state models for two-qubit T-states.

Constructs explicit finite-atom LHS models (icosahedron-based, and a
four-atom tetrahedron model on the separable boundary), verifies them
against the quantum assemblage, traces the axial unsteerability boundary,
and quantifies the shared randomness and entanglement involved.
"""

from .belldecomp import (
    critical_separable_density,
    extract_local_blochs,
    mirror_decomposition,
    product_state_decomposition,
    schmidt_residual,
    tstate_density,
)
from .boundary import (
    BoundaryCurve,
    SphereQuadrature,
    axial_boundary_solve,
    boundary_csv,
    norm_integral,
    product_quadrature,
    sample_axial_family,
)
from .geometry import (
    GOLDEN_RATIO,
    ICOSAHEDRON_INRADIUS,
    ICOSAHEDRON_SIGN_SUM,
    Polyhedron,
    Rotation,
    convex_decompose,
    cube,
    fibonacci_sphere,
    gamma_identity_check,
    icosahedron,
    octahedron,
    polyhedron_from_vertices,
    random_rotation,
    sign_sum_constant,
    special_orientations,
    tetrahedron,
)
from .lhsmodel import (
    Atom,
    FiniteLhsModel,
    LinearResponse,
    SignMixture,
    VerificationReport,
    build_icosahedron_model,
    build_polyhedron_model,
    build_separable_tetrahedron_model,
    entropy_bits,
    model_from_dict,
    model_from_json,
    model_to_dict,
    model_to_json,
    response_probability,
    response_value,
    verify_model,
)
from .qstate import (
    DiagMat3,
    HalfState,
    Measurement,
    TState,
    assemblage,
    bell_weights,
    concurrence_axial,
    is_on_separable_boundary,
)
from .scanopt import (
    REGIMES,
    AxialPoint,
    analytic_norm_constants,
    best_regime,
    face_edge_crossover,
    max_visibility,
    optimal_axial_model,
    random_orientation_search,
    scan_axial_family,
    scan_csv,
    scan_summary,
    vertex_face_crossover,
    werner_reference,
    zero_entanglement_interval,
)

__version__ = "0.1.0"

__all__ = [
    "Atom",
    "AxialPoint",
    "BoundaryCurve",
    "DiagMat3",
    "FiniteLhsModel",
    "GOLDEN_RATIO",
    "HalfState",
    "ICOSAHEDRON_INRADIUS",
    "ICOSAHEDRON_SIGN_SUM",
    "LinearResponse",
    "Measurement",
    "Polyhedron",
    "REGIMES",
    "Rotation",
    "SignMixture",
    "SphereQuadrature",
    "TState",
    "VerificationReport",
    "analytic_norm_constants",
    "assemblage",
    "axial_boundary_solve",
    "bell_weights",
    "best_regime",
    "boundary_csv",
    "build_icosahedron_model",
    "build_polyhedron_model",
    "build_separable_tetrahedron_model",
    "concurrence_axial",
    "convex_decompose",
    "critical_separable_density",
    "cube",
    "entropy_bits",
    "extract_local_blochs",
    "face_edge_crossover",
    "fibonacci_sphere",
    "gamma_identity_check",
    "icosahedron",
    "is_on_separable_boundary",
    "max_visibility",
    "mirror_decomposition",
    "model_from_dict",
    "model_from_json",
    "model_to_dict",
    "model_to_json",
    "norm_integral",
    "octahedron",
    "optimal_axial_model",
    "polyhedron_from_vertices",
    "product_quadrature",
    "product_state_decomposition",
    "random_orientation_search",
    "random_rotation",
    "response_probability",
    "response_value",
    "sample_axial_family",
    "scan_axial_family",
    "scan_csv",
    "scan_summary",
    "schmidt_residual",
    "sign_sum_constant",
    "special_orientations",
    "tetrahedron",
    "tstate_density",
    "verify_model",
    "vertex_face_crossover",
    "werner_reference",
    "zero_entanglement_interval",
]
