import numpy as np
import pytest

from finitelhs.geometry import (
    GOLDEN_RATIO,
    ICOSAHEDRON_INRADIUS,
    ICOSAHEDRON_SIGN_SUM,
    Rotation,
    convex_decompose,
    cube,
    decompose_directions,
    fibonacci_sphere,
    gamma_identity_check,
    icosahedron,
    octahedron,
    polyhedron_from_vertices,
    random_rotation,
    rotation_to_z,
    sign_sum_constant,
    special_orientations,
    tetrahedron,
)

from conftest import random_unit_vectors


def test_icosahedron_basic_shape():
    ico = icosahedron()
    assert ico.vertices.shape == (12, 3)
    assert len(ico.faces) == 20
    assert np.allclose(np.linalg.norm(ico.vertices, axis=1), 1.0, atol=1e-12)
    assert ico.inradius == pytest.approx(np.sqrt((5 + 2 * np.sqrt(5)) / 15), abs=1e-12)
    assert ico.inradius == pytest.approx(ICOSAHEDRON_INRADIUS)


def test_icosahedron_inversion_symmetric_any_rotation(rng):
    for _ in range(5):
        ico = icosahedron(random_rotation(rng))
        v = ico.vertices
        # for every vertex the antipode is present
        dists = np.linalg.norm(v[:, None, :] + v[None, :, :], axis=2)
        assert dists.min(axis=1).max() < 1e-12
        assert np.allclose(v.sum(axis=0), 0.0, atol=1e-12)
        assert ico.is_inversion_symmetric


def test_tetrahedron_is_the_canonical_one():
    tet = tetrahedron()
    expected = np.array([
        [1, -1, 1], [1, 1, -1], [-1, 1, 1], [-1, -1, -1],
    ]) / np.sqrt(3)
    assert np.allclose(tet.vertices, expected, atol=1e-15)


def test_tetrahedron_frame_and_angles():
    v = tetrahedron().vertices
    assert np.allclose(v.T @ v, (4 / 3) * np.eye(3), atol=1e-12)
    assert np.allclose(v.sum(axis=0), 0.0, atol=1e-15)
    dots = v @ v.T
    off = dots[~np.eye(4, dtype=bool)]
    assert np.allclose(off, -1 / 3, atol=1e-12)


def test_gamma_identity_on_icosahedra(rng):
    assert gamma_identity_check(icosahedron()) < 1e-10
    for _ in range(10):
        assert gamma_identity_check(icosahedron(random_rotation(rng))) < 1e-10


def test_gamma_identity_fails_for_tetrahedron():
    assert gamma_identity_check(tetrahedron()) > 1.0


def test_sign_sum_constants():
    assert sign_sum_constant(icosahedron()) == pytest.approx(2 * (1 + np.sqrt(5)), abs=1e-10)
    assert sign_sum_constant(icosahedron()) == pytest.approx(ICOSAHEDRON_SIGN_SUM)
    assert sign_sum_constant(cube()) == pytest.approx(4.0, abs=1e-10)
    assert sign_sum_constant(octahedron()) == pytest.approx(2.0, abs=1e-10)


def test_sign_sum_rejects_inconsistent_vertex_set():
    mixed = np.vstack([cube().vertices, octahedron().vertices])
    poly = polyhedron_from_vertices(mixed)
    with pytest.raises(ValueError):
        sign_sum_constant(poly)


def test_convex_decompose_face_center():
    """A face-center direction is the insphere tangency point: uniform
    barycentric weights on that face and nothing else."""
    ico = icosahedron()
    face = ico.faces[0]
    center = ico.vertices[face].mean(axis=0)
    center /= np.linalg.norm(center)
    w = convex_decompose(ico, center)
    assert w[face] == pytest.approx([1 / 3, 1 / 3, 1 / 3], abs=1e-12)
    others = np.delete(w, face)
    assert np.abs(others).max() < 1e-12


def test_convex_decompose_vertex_direction():
    ico = icosahedron()
    for k in (0, 5, 11):
        w = convex_decompose(ico, ico.vertices[k])
        assert np.linalg.norm(w @ ico.vertices - ico.inradius * ico.vertices[k]) < 1e-10


def test_convex_decompose_properties(rng):
    ico = icosahedron()
    xs = random_unit_vectors(rng, 2000)
    weights = decompose_directions(ico, xs)
    assert weights.min() >= 0.0
    assert np.allclose(weights.sum(axis=1), 1.0, atol=1e-12)
    recon = weights @ ico.vertices
    err = np.linalg.norm(recon - ico.inradius * xs, axis=1)
    assert err.max() < 1e-10


def test_convex_decompose_rotation_equivariance(rng):
    base = icosahedron()
    for _ in range(4):
        rot = random_rotation(rng)
        rotated = icosahedron(rot)
        xs = random_unit_vectors(rng, 100)
        w_rot = decompose_directions(rotated, xs)
        back = xs @ rot.matrix  # R^{-1} x for each row
        w_base = decompose_directions(base, back)
        assert np.abs(w_rot - w_base).max() < 1e-10


def test_convex_decompose_rejects_non_unit():
    with pytest.raises(ValueError):
        convex_decompose(icosahedron(), np.array([0.0, 0.0, 0.5]))


def test_convex_decompose_needs_inversion_symmetry():
    with pytest.raises(ValueError):
        convex_decompose(tetrahedron(), np.array([0.0, 0.0, 1.0]))


def test_random_rotation_reproducible_and_orthogonal():
    r1 = random_rotation(np.random.default_rng(42))
    r2 = random_rotation(np.random.default_rng(42))
    assert np.array_equal(r1.quat, r2.quat)
    m = r1.matrix
    assert np.allclose(m @ m.T, np.eye(3), atol=1e-12)
    assert np.linalg.det(m) == pytest.approx(1.0, abs=1e-12)


def test_random_rotation_is_roughly_uniform():
    rng = np.random.default_rng(7)
    v = np.array([0.0, 0.0, 1.0])
    mean = np.zeros(3)
    n = 100_000
    for _ in range(n):
        mean += random_rotation(rng).apply(v)
    mean /= n
    # |mean| ~ 1/sqrt(n) for a uniform distribution; allow 3 sigma
    assert np.linalg.norm(mean) < 3.0 / np.sqrt(n)


def test_rotation_roundtrip(rng):
    rot = random_rotation(rng)
    x = random_unit_vectors(rng, 10)
    assert np.allclose(rot.inverse().apply(rot.apply(x)), x, atol=1e-12)
    assert np.allclose(Rotation.identity().apply(x), x)


def test_rotation_rejects_non_unit_quaternion():
    with pytest.raises(ValueError):
        Rotation(np.array([1.0, 1.0, 0.0, 0.0]))


def test_rotation_to_z_cases(rng):
    for u in random_unit_vectors(rng, 20):
        assert np.allclose(rotation_to_z(u).apply(u), [0, 0, 1], atol=1e-12)
    assert np.allclose(rotation_to_z(np.array([0.0, 0.0, -1.0])).apply([0, 0, -1]),
                       [0, 0, 1], atol=1e-12)


def test_special_orientations_alignment():
    z = np.array([0.0, 0.0, 1.0])
    vertex_rot, face_rot, edge_rot = special_orientations()

    v = icosahedron(vertex_rot).vertices
    assert np.max(v @ z) == pytest.approx(1.0, abs=1e-12)

    # face orientation: +z leaves the solid through a face at distance l
    fico = icosahedron(face_rot)
    normals, offsets, _ = fico._face_frames
    along = normals @ z
    s = np.min(np.where(along > 1e-12, offsets / np.where(along > 0, along, 1.0), np.inf))
    assert s == pytest.approx(fico.inradius, abs=1e-12)

    # edge orientation: the two nearest vertices straddle +z symmetrically
    e = icosahedron(edge_rot).vertices
    top = np.sort(e @ z)[::-1]
    assert top[0] == pytest.approx(top[1], abs=1e-12)
    pair = e[np.argsort(e @ z)[-2:]]
    mid = pair.sum(axis=0)
    assert np.allclose(mid / np.linalg.norm(mid), z, atol=1e-12)


def test_icosa_werner_identity(rng):
    """The decomposition-weighted sign sums reproduce the isotropic map:
    -(1/12) sum_j [sum_i w_i(x) sign(v_i . v_j)] v_j = -(gamma l / 6) x."""
    ico = icosahedron()
    v = ico.vertices
    xs = random_unit_vectors(rng, 1000)
    w = decompose_directions(ico, xs)
    f = w @ np.sign(v @ v.T)  # f[n, j] = sum_i w_i(x_n) sign(v_i . v_j)
    lhs = -(f @ v) / 12.0
    target = -(1 + np.sqrt(5)) * ico.inradius / 6.0 * xs
    assert np.linalg.norm(lhs - target, axis=1).max() < 1e-10


def test_tetrahedron_frame_identity(rng):
    """sum_i (1/4) (x . -v_i) v_i = -(1/3) x."""
    v = tetrahedron().vertices
    xs = random_unit_vectors(rng, 1000)
    lhs = ((xs @ -v.T) / 4.0) @ v
    assert np.abs(lhs + xs / 3.0).max() < 1e-12


def test_polyhedron_from_vertices_validation():
    with pytest.raises(ValueError):
        polyhedron_from_vertices(np.array([[0.0, 0.0, 2.0], [1, 0, 0], [0, 1, 0], [0, 0, -1]]))
    with pytest.raises(ValueError):
        polyhedron_from_vertices(np.eye(3))  # fewer than four vertices
    dup = np.vstack([tetrahedron().vertices, tetrahedron().vertices[:1]])
    with pytest.raises(ValueError):
        polyhedron_from_vertices(dup)


def test_fibonacci_sphere():
    pts = fibonacci_sphere(500)
    assert pts.shape == (500, 3)
    assert np.allclose(np.linalg.norm(pts, axis=1), 1.0, atol=1e-12)
    assert np.linalg.norm(pts.mean(axis=0)) < 0.01
    with pytest.raises(ValueError):
        fibonacci_sphere(0)


def test_golden_ratio_constant():
    assert GOLDEN_RATIO == pytest.approx((1 + np.sqrt(5)) / 2, abs=1e-16)
