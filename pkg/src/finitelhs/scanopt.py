"""Orientation optimization and scans along the axial boundary family.

For axial T0 = diag(t0x, t0x, t0z) the maximum visibility over icosahedron
orientations is reached with a symmetry axis (vertex, face center, or edge
midpoint) on the z axis, and each case has a closed form for the weight
normalization S = 12 / sum_i |T0 v_i|.  The visibility is then
S * gamma * l / 6 with gamma = 1 + sqrt5 and l the icosahedron inradius.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import serialize
from .boundary import (
    DEFAULT_T0Z_MIN,
    SOLVER_TOL,
    SphereQuadrature,
    axial_boundary_solve,
    sample_axial_family,
)
from .geometry import (
    ICOSAHEDRON_INRADIUS,
    ICOSAHEDRON_SIGN_SUM,
    Rotation,
    icosahedron,
    special_orientations,
)
from .lhsmodel import FiniteLhsModel, build_icosahedron_model, entropy_bits
from .qstate import DiagMat3, concurrence_axial

REGIMES = ("vertex", "face", "edge")

_ALPHA_PLUS = 5.0 + np.sqrt(5.0)
_ALPHA_MINUS = 5.0 - np.sqrt(5.0)
_BETA_PLUS = 2.5 + np.sqrt(5.0)
_BETA_MINUS = 2.5 - np.sqrt(5.0)

# visibility = S * this factor, for any orientation
_VISIBILITY_PER_S = ICOSAHEDRON_SIGN_SUM * ICOSAHEDRON_INRADIUS / 12.0

CROSSOVER_RESOLUTION = 1e-6


def analytic_norm_constants(t0x: float, t0z: float) -> tuple[float, float, float]:
    """S = 12 / sum_i |T0 v_i| for the vertex-, face-, and edge-aligned
    icosahedron, as closed forms in X = t0x^2 and Z = t0z^2."""
    if t0x <= 0 or t0z <= 0:
        raise ValueError(f"axial entries must be positive, got ({t0x!r}, {t0z!r})")
    big_x, big_z = t0x * t0x, t0z * t0z
    s_vertex = 6.0 / (np.sqrt(big_z) + np.sqrt(20.0 * big_x + 5.0 * big_z))
    s_face = np.sqrt(30.0) / (
        np.sqrt(big_x * _ALPHA_PLUS + big_z * _BETA_MINUS)
        + np.sqrt(big_x * _ALPHA_MINUS + big_z * _BETA_PLUS)
    )
    s_edge = 3.0 * np.sqrt(10.0) / (
        np.sqrt(10.0 * big_x)
        + np.sqrt(big_x * _ALPHA_PLUS + big_z * _ALPHA_MINUS)
        + np.sqrt(big_x * _ALPHA_MINUS + big_z * _ALPHA_PLUS)
    )
    return float(s_vertex), float(s_face), float(s_edge)


def max_visibility(target: DiagMat3, orientation: Rotation) -> float:
    """Maximum visibility of the icosahedron model at one orientation."""
    verts = orientation.apply(icosahedron().vertices)
    norms = np.linalg.norm(verts * target.as_array(), axis=1)
    return float(ICOSAHEDRON_SIGN_SUM * ICOSAHEDRON_INRADIUS / norms.sum())


def random_orientation_search(target: DiagMat3, n_rotations: int,
                              seed: int = 0) -> tuple[float, Rotation]:
    """Best visibility over ``n_rotations`` Haar-random orientations.

    Deterministic for a fixed seed.  Returns (best visibility, rotation).
    """
    if n_rotations < 1:
        raise ValueError(f"need at least one rotation, got {n_rotations}")
    if target.is_singular:
        raise ValueError("target diagonal must be nonsingular")
    rng = np.random.default_rng(seed)
    quats = rng.standard_normal((n_rotations, 4))
    quats /= np.linalg.norm(quats, axis=1, keepdims=True)
    w, x, y, z = quats.T
    mats = np.empty((n_rotations, 3, 3))
    mats[:, 0, 0] = 1 - 2 * (y * y + z * z)
    mats[:, 0, 1] = 2 * (x * y - w * z)
    mats[:, 0, 2] = 2 * (x * z + w * y)
    mats[:, 1, 0] = 2 * (x * y + w * z)
    mats[:, 1, 1] = 1 - 2 * (x * x + z * z)
    mats[:, 1, 2] = 2 * (y * z - w * x)
    mats[:, 2, 0] = 2 * (x * z - w * y)
    mats[:, 2, 1] = 2 * (y * z + w * x)
    mats[:, 2, 2] = 1 - 2 * (x * x + y * y)
    verts = icosahedron().vertices
    rotated = np.einsum("nij,vj->nvi", mats, verts)
    sums = np.linalg.norm(rotated * target.as_array(), axis=2).sum(axis=1)
    best = int(np.argmin(sums))
    visibility = ICOSAHEDRON_SIGN_SUM * ICOSAHEDRON_INRADIUS / float(sums[best])
    return visibility, Rotation(quats[best])


@dataclass(frozen=True)
class AxialPoint:
    """One scan sample of the axial boundary family."""

    t0z: float
    t0x: float
    s_vertex: float
    s_face: float
    s_edge: float
    s_best: float
    regime: str
    t_max: float
    entropy_bits: float
    concurrence: float


REGIME_TIE_TOL = 1e-9


def best_regime(s_values: tuple[float, float, float]) -> int:
    """Index of the winning regime, ties going to the earlier entry.

    Near-ties within REGIME_TIE_TOL (notably the isotropic point, where all
    three constants are equal and solver noise splits them) resolve in the
    order vertex > face > edge.
    """
    s = np.asarray(s_values)
    return int(np.argmax(s >= s.max() - REGIME_TIE_TOL))


def optimal_axial_model(t0x: float, t0z: float) -> tuple[FiniteLhsModel, str]:
    """The icosahedron model at the best special orientation for the axial
    state diag(-t0x, -t0x, -t0z), together with the regime name.

    The diagonal is negative by convention (the family contains the Werner
    line); the weights and visibility only depend on the magnitudes.
    """
    s_values = analytic_norm_constants(t0x, t0z)
    idx = best_regime(s_values)
    orientation = special_orientations()[idx]
    model = build_icosahedron_model(DiagMat3(-t0x, -t0x, -t0z), orientation)
    return model, REGIMES[idx]


def scan_axial_family(n: int, t0z_min: float = DEFAULT_T0Z_MIN,
                      tol: float = SOLVER_TOL,
                      quad: SphereQuadrature | None = None) -> list[AxialPoint]:
    """Solve, classify, and size the model at n points of the boundary."""
    curve = sample_axial_family(n, t0z_min=t0z_min, tol=tol, quad=quad)
    orientations = special_orientations()
    rotated = [icosahedron(rot).vertices for rot in orientations]
    points = []
    for t0z, t0x in zip(curve.t0z, curve.t0x):
        s_values = analytic_norm_constants(t0x, t0z)
        idx = best_regime(s_values)
        t_max = s_values[idx] * _VISIBILITY_PER_S
        diag = np.array([t0x, t0x, t0z])
        q = np.linalg.norm(rotated[idx] * diag, axis=1)
        q /= q.sum()
        entropy = float(-(q * np.log2(q)).sum())
        conc = concurrence_axial(DiagMat3(t0x, t0x, t0z), t_max)
        points.append(AxialPoint(
            t0z=float(t0z), t0x=float(t0x),
            s_vertex=s_values[0], s_face=s_values[1], s_edge=s_values[2],
            s_best=s_values[idx], regime=REGIMES[idx], t_max=float(t_max),
            entropy_bits=entropy, concurrence=float(conc),
        ))
    return points


def zero_entanglement_interval(points: list[AxialPoint],
                               tol: float = 1e-12) -> tuple[float, float] | None:
    """Longest contiguous t0z interval of the scan with zero concurrence."""
    best: tuple[float, float] | None = None
    start = None
    for i, p in enumerate(points):
        if p.concurrence <= tol:
            if start is None:
                start = i
            if best is None or points[i].t0z - points[start].t0z > best[1] - best[0]:
                best = (points[start].t0z, points[i].t0z)
        else:
            start = None
    return best


def _crossover_bisect(gap, lo: float, hi: float, resolution: float) -> float:
    if not (gap(lo) > 0 > gap(hi)):
        raise RuntimeError(f"crossover bracket ({lo}, {hi}) failed")
    while hi - lo > resolution:
        mid = 0.5 * (lo + hi)
        if gap(mid) > 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def vertex_face_crossover(tol: float = SOLVER_TOL,
                          quad: SphereQuadrature | None = None,
                          resolution: float = CROSSOVER_RESOLUTION) -> float:
    """The t0z on the boundary where the vertex and face maxima exchange.

    All three constants coincide at the isotropic point, so this lands
    at 1/2 up to the requested resolution.
    """

    def gap(t0z: float) -> float:
        t0x = axial_boundary_solve(t0z, tol=tol, quad=quad)
        s_vertex, s_face, _ = analytic_norm_constants(t0x, t0z)
        return s_vertex - s_face

    return _crossover_bisect(gap, 0.3, 0.7, resolution)


def face_edge_crossover(tol: float = SOLVER_TOL,
                        quad: SphereQuadrature | None = None,
                        resolution: float = CROSSOVER_RESOLUTION) -> float:
    """The t0z on the boundary where the face and edge maxima exchange."""

    def gap(t0z: float) -> float:
        t0x = axial_boundary_solve(t0z, tol=tol, quad=quad)
        _, s_face, s_edge = analytic_norm_constants(t0x, t0z)
        return s_face - s_edge

    return _crossover_bisect(gap, 0.6, 0.98, resolution)


def werner_reference(tol: float = SOLVER_TOL,
                     quad: SphereQuadrature | None = None) -> dict:
    """Visibility, entropy, and concurrence at the isotropic boundary point,
    computed through the same pipeline as the scan."""
    t0z = 0.5
    t0x = axial_boundary_solve(t0z, tol=tol, quad=quad)
    s_values = analytic_norm_constants(t0x, t0z)
    idx = best_regime(s_values)
    model = build_icosahedron_model(DiagMat3(t0x, t0x, t0z),
                                    special_orientations()[idx])
    return {
        "t": model.visibility,
        "entropy": entropy_bits(model),
        "concurrence": float(concurrence_axial(DiagMat3(t0x, t0x, t0z),
                                               model.visibility)),
    }


def scan_csv(points: list[AxialPoint]) -> str:
    header = ("t0z", "t0x", "s_vertex", "s_face", "s_edge", "regime",
              "t_max", "entropy_bits", "concurrence")
    rows = [
        (p.t0z, p.t0x, p.s_vertex, p.s_face, p.s_edge, p.regime,
         p.t_max, p.entropy_bits, p.concurrence)
        for p in points
    ]
    return serialize.csv_text(header, rows)


def scan_summary(points: list[AxialPoint], tol: float = SOLVER_TOL,
                 quad: SphereQuadrature | None = None) -> dict:
    interval = zero_entanglement_interval(points)
    return {
        "min_entropy_bits": min(p.entropy_bits for p in points),
        "regime_crossovers": [vertex_face_crossover(tol=tol, quad=quad),
                              face_edge_crossover(tol=tol, quad=quad)],
        "zero_entanglement_interval": list(interval) if interval else None,
        "werner_refs": werner_reference(tol=tol, quad=quad),
    }
