"""Rotations, unit-sphere polyhedra, and convex vertex decompositions."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.spatial import ConvexHull

from .qstate import UNIT_TOL, as_unit_vector

GOLDEN_RATIO = (1.0 + np.sqrt(5.0)) / 2.0

# Inradius of the icosahedron inscribed in the unit sphere, and the constant
# c in the vertex identity  sum_j sign(v_j . v_i) v_j = c v_i  (c = 2(1+sqrt 5)).
ICOSAHEDRON_INRADIUS = np.sqrt((5.0 + 2.0 * np.sqrt(5.0)) / 15.0)
ICOSAHEDRON_SIGN_SUM = 2.0 * (1.0 + np.sqrt(5.0))

_Z = np.array([0.0, 0.0, 1.0])


@dataclass(frozen=True, eq=False)
class Rotation:
    """A proper rotation stored as a unit quaternion (w, x, y, z)."""

    quat: np.ndarray

    def __post_init__(self) -> None:
        q = np.asarray(self.quat, dtype=float)
        if q.shape != (4,):
            raise ValueError(f"quaternion must have shape (4,), got {q.shape}")
        if abs(np.linalg.norm(q) - 1.0) > UNIT_TOL:
            raise ValueError(f"quaternion must be unit length, |q| = {np.linalg.norm(q)!r}")
        object.__setattr__(self, "quat", q)

    @cached_property
    def matrix(self) -> np.ndarray:
        w, x, y, z = self.quat
        return np.array([
            [1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)],
            [2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)],
            [2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)],
        ])

    def apply(self, v: np.ndarray) -> np.ndarray:
        """Rotate a (3,) vector or the rows of an (n, 3) array."""
        return np.asarray(v, dtype=float) @ self.matrix.T

    def inverse(self) -> "Rotation":
        w, x, y, z = self.quat
        return Rotation(np.array([w, -x, -y, -z]))

    @staticmethod
    def identity() -> "Rotation":
        return Rotation(np.array([1.0, 0.0, 0.0, 0.0]))

    @staticmethod
    def from_quat(q) -> "Rotation":
        q = np.asarray(q, dtype=float)
        n = np.linalg.norm(q)
        if q.shape != (4,) or n == 0:
            raise ValueError("quaternion must be a nonzero length-4 vector")
        return Rotation(q / n)


def random_rotation(rng: np.random.Generator) -> Rotation:
    """Draw a rotation from the uniform (Haar) distribution.

    A 4d standard normal, normalized, is uniform on the quaternion sphere.
    """
    q = rng.standard_normal(4)
    return Rotation(q / np.linalg.norm(q))


def rotation_to_z(u) -> Rotation:
    """The rotation carrying the unit vector ``u`` onto +z.

    Uses the half-angle quaternion (1 + u.z, u x z) normalized, which is
    stable everywhere except u = -z (handled as a half turn about x).
    """
    u = as_unit_vector(u, "direction")
    c = float(u @ _Z)
    if c < -1.0 + 1e-12:
        return Rotation(np.array([0.0, 1.0, 0.0, 0.0]))
    axis = np.cross(u, _Z)
    q = np.concatenate(([1.0 + c], axis))
    return Rotation(q / np.linalg.norm(q))


@dataclass(frozen=True, eq=False)
class Polyhedron:
    """A convex polyhedron with unit vertices and triangulated faces.

    ``faces`` holds vertex-index triples; ``inradius`` is the distance from
    the origin to the nearest face plane.
    """

    vertices: np.ndarray
    faces: np.ndarray
    inradius: float
    kind: str

    @cached_property
    def _face_frames(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(outward unit normals (F,3), plane offsets (F,), inverse corner matrices (F,3,3))."""
        corners = self.vertices[self.faces]           # (F, 3, 3)
        a, b, c = corners[:, 0], corners[:, 1], corners[:, 2]
        n = np.cross(b - a, c - a)
        flip = np.einsum("fi,fi->f", n, a) < 0
        n[flip] *= -1.0
        n /= np.linalg.norm(n, axis=1, keepdims=True)
        d = np.einsum("fi,fi->f", n, a)
        inv = np.linalg.inv(corners.transpose(0, 2, 1))  # columns are the corners
        return n, d, inv

    @cached_property
    def is_inversion_symmetric(self) -> bool:
        v = self.vertices
        dists = np.linalg.norm(v[:, None, :] + v[None, :, :], axis=2)
        return bool(np.all(dists.min(axis=1) <= 1e-9))


def polyhedron_from_vertices(vertices, kind: str = "custom") -> Polyhedron:
    v = np.asarray(vertices, dtype=float)
    if v.ndim != 2 or v.shape[1] != 3 or len(v) < 4:
        raise ValueError(f"need at least 4 vertices of shape (n, 3), got {v.shape}")
    norms = np.linalg.norm(v, axis=1)
    if np.abs(norms - 1.0).max() > UNIT_TOL:
        raise ValueError("all vertices must lie on the unit sphere")
    hull = ConvexHull(v)
    if len(hull.vertices) != len(v):
        raise ValueError("vertices must be in convex position")
    faces = np.array(hull.simplices, dtype=int)
    corners = v[faces]
    n = np.cross(corners[:, 1] - corners[:, 0], corners[:, 2] - corners[:, 0])
    d = np.abs(np.einsum("fi,fi->f", n, corners[:, 0])) / np.linalg.norm(n, axis=1)
    return Polyhedron(vertices=v, faces=faces, inradius=float(d.min()), kind=kind)


def icosahedron(orientation: Rotation | None = None) -> Polyhedron:
    """The regular icosahedron inscribed in the unit sphere.

    Canonical vertices are the cyclic permutations of (0, +-1, +-phi)
    normalized; ``orientation`` rotates the whole solid.
    """
    phi = GOLDEN_RATIO
    base = []
    for a in (1.0, -1.0):
        for b in (1.0, -1.0):
            base += [(0.0, a, b * phi), (a, b * phi, 0.0), (b * phi, 0.0, a)]
    v = np.asarray(base) / np.sqrt(1.0 + phi * phi)
    if orientation is not None:
        v = orientation.apply(v)
        v /= np.linalg.norm(v, axis=1, keepdims=True)
    return polyhedron_from_vertices(v, kind="icosahedron")


def tetrahedron() -> Polyhedron:
    v = np.array([
        [1.0, -1.0, 1.0],
        [1.0, 1.0, -1.0],
        [-1.0, 1.0, 1.0],
        [-1.0, -1.0, -1.0],
    ]) / np.sqrt(3.0)
    return polyhedron_from_vertices(v, kind="tetrahedron")


def cube(orientation: Rotation | None = None) -> Polyhedron:
    v = np.array([
        (a, b, c) for a in (1.0, -1.0) for b in (1.0, -1.0) for c in (1.0, -1.0)
    ]) / np.sqrt(3.0)
    if orientation is not None:
        v = orientation.apply(v)
        v /= np.linalg.norm(v, axis=1, keepdims=True)
    return polyhedron_from_vertices(v, kind="custom")


def octahedron(orientation: Rotation | None = None) -> Polyhedron:
    v = np.array([
        [1.0, 0, 0], [-1.0, 0, 0], [0, 1.0, 0], [0, -1.0, 0], [0, 0, 1.0], [0, 0, -1.0],
    ])
    if orientation is not None:
        v = orientation.apply(v)
        v /= np.linalg.norm(v, axis=1, keepdims=True)
    return polyhedron_from_vertices(v, kind="custom")


def gamma_identity_check(p: Polyhedron) -> float:
    """Max residual of  sum_j sign(v_j . v_i) v_j = 2(1+sqrt5) v_i  over vertices.

    Near zero only for the icosahedron; large values flag other solids.
    """
    v = p.vertices
    sums = np.sign(v @ v.T) @ v
    return float(np.linalg.norm(sums - ICOSAHEDRON_SIGN_SUM * v, axis=1).max())


def sign_sum_constant(p: Polyhedron, tol: float = 1e-9) -> float:
    """The constant c with  sum_j sign(v_j . v_i) v_j = c v_i  for every vertex.

    Raises ValueError when no single constant fits; that rules the
    polyhedron out as a response-mixture carrier.
    """
    v = p.vertices
    sums = np.sign(v @ v.T) @ v
    c = np.einsum("ij,ij->i", sums, v)
    residual = np.linalg.norm(sums - c[:, None] * v, axis=1).max()
    if residual > tol or c.max() - c.min() > tol:
        raise ValueError(
            f"unsupported polyhedron {p.kind!r}: vertex sign-sums are not a "
            f"uniform multiple of the vertices (residual {residual:.3e})"
        )
    return float(c.mean())


def decompose_directions(p: Polyhedron, directions: np.ndarray) -> np.ndarray:
    """Convex weights over vertices for each unit direction (vectorized).

    Row k of the result satisfies  w >= 0,  sum w = 1  and
    ``w @ p.vertices = p.inradius * directions[k]``.  The ray along x is
    intersected with its exit face; the face's barycentric coordinates are
    scaled by inradius/s and the remainder spread uniformly over all
    vertices, which cancels because the vertex set is inversion symmetric.
    """
    x = np.atleast_2d(np.asarray(directions, dtype=float))
    if x.ndim != 2 or x.shape[1] != 3:
        raise ValueError(f"directions must have shape (n, 3), got {x.shape}")
    if np.abs(np.linalg.norm(x, axis=1) - 1.0).max() > UNIT_TOL:
        raise ValueError("directions must be unit vectors")
    if not p.is_inversion_symmetric:
        raise ValueError(f"polyhedron {p.kind!r} is not inversion symmetric")

    normals, offsets, inv = p._face_frames
    along = x @ normals.T                          # (n, F)
    with np.errstate(divide="ignore", invalid="ignore"):
        s_all = np.where(along > 0, offsets[None, :] / along, np.inf)
    s = s_all.min(axis=1)                          # exit distance per direction
    # Non-triangular faces arrive triangulated into coplanar pieces that tie
    # in s; among the tied faces keep the piece containing the exit point.
    near = s_all <= s[:, None] * (1.0 + 1e-9)
    bary_all = s[:, None, None] * np.einsum("fij,nj->nfi", inv, x)
    score = np.where(near, bary_all.min(axis=2), -np.inf)
    hit = np.argmax(score, axis=1)
    bary = bary_all[np.arange(len(x)), hit]
    if bary.min() < -1e-12:
        raise RuntimeError(
            f"ray-face intersection failed: barycentric coordinate {bary.min():.3e}"
        )
    bary = np.maximum(bary, 0.0)
    bary /= bary.sum(axis=1, keepdims=True)

    n_dirs, n_verts = len(x), len(p.vertices)
    face_part = p.inradius / s
    weights = np.empty((n_dirs, n_verts))
    weights[:] = (np.maximum(1.0 - face_part, 0.0) / n_verts)[:, None]
    np.add.at(weights, (np.arange(n_dirs)[:, None], p.faces[hit]),
              face_part[:, None] * bary)
    return weights


def convex_decompose(p: Polyhedron, x) -> np.ndarray:
    """Weights w >= 0 with sum 1 and  w @ vertices = inradius * x."""
    x = as_unit_vector(x, "direction")
    return decompose_directions(p, x[None, :])[0]


def special_orientations() -> tuple[Rotation, Rotation, Rotation]:
    """Rotations putting an icosahedron vertex, face center, and edge
    midpoint on the +z axis (in that order)."""
    ico = icosahedron()
    v0 = ico.vertices[0]
    partner = ico.vertices[int(np.argsort(ico.vertices @ v0)[-2])]
    edge_mid = v0 + partner
    edge_mid /= np.linalg.norm(edge_mid)
    center = ico.vertices[ico.faces[0]].mean(axis=0)
    center /= np.linalg.norm(center)
    return rotation_to_z(v0), rotation_to_z(center), rotation_to_z(edge_mid)


def fibonacci_sphere(n: int) -> np.ndarray:
    """n nearly uniform unit vectors from the golden-angle spiral."""
    if n < 1:
        raise ValueError(f"need n >= 1 directions, got {n}")
    k = np.arange(n)
    z = 1.0 - (2.0 * k + 1.0) / n
    r = np.sqrt(np.maximum(0.0, 1.0 - z * z))
    angle = np.pi * (3.0 - np.sqrt(5.0)) * k
    return np.stack([r * np.cos(angle), r * np.sin(angle), z], axis=1)
