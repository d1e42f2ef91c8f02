"""Finite local-hidden-state models and their verification.

A model is a finite ensemble of hidden qubit states (atoms), each a pure
state with Bloch vector ``bloch`` drawn with probability ``weight``, plus
a response function f(x, atom) in [-1, 1] giving Alice's outcome bias.
The simulated assemblage is

    trace part:  sum_i q_i (1 + a f(x, i)) / 2
    Bloch part:  sum_i q_i (1 + a f(x, i)) / 2 * bloch_i

and the model is correct for a state when both match the quantum
assemblage for every measurement direction.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import serialize
from .geometry import (
    Polyhedron,
    Rotation,
    decompose_directions,
    fibonacci_sphere,
    icosahedron,
    polyhedron_from_vertices,
    sign_sum_constant,
    tetrahedron,
)
from .qstate import DiagMat3, Measurement, TState, as_unit_vector

WEIGHT_TOL = 1e-12
ATOM_MAP_TOL = 1e-12
BOUNDARY_TOL = 1e-9
DEFAULT_VERIFY_DIRECTIONS = 1024


@dataclass(frozen=True, eq=False)
class Atom:
    """One hidden state: probability ``weight``, Bloch vector ``bloch``.

    ``preimage`` is the unit direction the Bloch vector was mapped from
    (polyhedron vertex); responses for mixture models are evaluated on it.
    ``alice_bloch`` is set only for linear-response models.
    """

    weight: float
    bloch: np.ndarray
    preimage: np.ndarray
    alice_bloch: np.ndarray | None = None

    def __post_init__(self) -> None:
        if self.weight < -WEIGHT_TOL:
            raise ValueError(f"atom weight must be nonnegative, got {self.weight!r}")
        object.__setattr__(self, "bloch", as_unit_vector(self.bloch, "atom bloch"))
        object.__setattr__(self, "preimage", as_unit_vector(self.preimage, "atom preimage"))
        if self.alice_bloch is not None:
            object.__setattr__(
                self, "alice_bloch", as_unit_vector(self.alice_bloch, "atom alice_bloch")
            )


@dataclass(frozen=True, eq=False)
class SignMixture:
    """Response f(x, atom) = scale * sum_k w_k(x) sign(v_k . preimage),
    with w(x) the convex decomposition of x over the polyhedron vertices."""

    polyhedron: Polyhedron
    scale: float = 1.0

    def __post_init__(self) -> None:
        if not (0.0 <= self.scale <= 1.0 + 1e-12):
            raise ValueError(f"response scale must lie in [0, 1], got {self.scale!r}")


@dataclass(frozen=True)
class LinearResponse:
    """Response f(x, atom) = x . alice_bloch."""


@dataclass(frozen=True, eq=False)
class FiniteLhsModel:
    """A finite LHS model simulating TState(visibility * target)."""

    atoms: tuple[Atom, ...]
    response: SignMixture | LinearResponse
    target: DiagMat3
    visibility: float

    def __post_init__(self) -> None:
        if not self.atoms:
            raise ValueError("model needs at least one atom")
        object.__setattr__(self, "atoms", tuple(self.atoms))
        total = sum(a.weight for a in self.atoms)
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"atom weights must sum to 1, got {total!r}")
        if self.visibility < 0:
            raise ValueError(f"visibility must be nonnegative, got {self.visibility!r}")
        if isinstance(self.response, SignMixture):
            mapped = self.target.apply(self._preimages)
            norms = np.linalg.norm(mapped, axis=1)
            if norms.min() <= 0:
                raise ValueError("target maps an atom preimage to zero")
            err = np.linalg.norm(mapped / norms[:, None] - self._blochs, axis=1).max()
            if err > ATOM_MAP_TOL:
                raise ValueError(
                    f"atom blochs are not the normalized target images of their "
                    f"preimages (residual {err:.3e})"
                )
        elif any(a.alice_bloch is None for a in self.atoms):
            raise ValueError("linear-response atoms need alice_bloch set")

    @cached_property
    def _weights(self) -> np.ndarray:
        return np.array([a.weight for a in self.atoms])

    @cached_property
    def _blochs(self) -> np.ndarray:
        return np.stack([a.bloch for a in self.atoms])

    @cached_property
    def _preimages(self) -> np.ndarray:
        return np.stack([a.preimage for a in self.atoms])

    @cached_property
    def _alice_blochs(self) -> np.ndarray:
        return np.stack([a.alice_bloch for a in self.atoms])

    def simulated_state(self) -> TState:
        """The state this model reproduces; raises if it is not physical."""
        return TState(self.target.scaled(self.visibility))


def _response_matrix(model: FiniteLhsModel, directions: np.ndarray) -> np.ndarray:
    """f values, shape (n_directions, n_atoms)."""
    if isinstance(model.response, SignMixture):
        weights = decompose_directions(model.response.polyhedron, directions)
        signs = np.sign(model.response.polyhedron.vertices @ model._preimages.T)
        return model.response.scale * (weights @ signs)
    return directions @ model._alice_blochs.T


def response_value(model: FiniteLhsModel, atom: Atom, x) -> float:
    """Alice's outcome bias f(x, atom), in [-1, 1]."""
    x = as_unit_vector(x, "measurement axis")
    if isinstance(model.response, SignMixture):
        weights = decompose_directions(model.response.polyhedron, x[None, :])[0]
        signs = np.sign(model.response.polyhedron.vertices @ atom.preimage)
        return float(model.response.scale * (weights @ signs))
    if atom.alice_bloch is None:
        raise ValueError("linear-response atom is missing alice_bloch")
    return float(x @ atom.alice_bloch)


def response_probability(model: FiniteLhsModel, atom: Atom, m: Measurement) -> float:
    """p(outcome | axis, atom) = (1 + outcome * f) / 2."""
    return 0.5 * (1.0 + m.outcome * response_value(model, atom, m.axis))


def build_polyhedron_model(target: DiagMat3, poly: Polyhedron,
                           visibility: float | None = None) -> FiniteLhsModel:
    """LHS model on any inversion-symmetric polyhedron with the sign-sum
    property  sum_j sign(v_j . v_i) v_j = c v_i.

    One atom per vertex: weight |T0 v_i| / sum_j |T0 v_j| and Bloch vector
    T0 v_i normalized.  The maximum visibility is  c * inradius / sum_j
    |T0 v_j|; a smaller ``visibility`` is reached by scaling the response.
    """
    if target.is_singular:
        raise ValueError(
            f"target diagonal ({target.dx}, {target.dy}, {target.dz}) is singular; "
            "the vertex mapping is undefined"
        )
    if not poly.is_inversion_symmetric:
        raise ValueError(f"unsupported polyhedron {poly.kind!r}: not inversion symmetric")
    c = sign_sum_constant(poly)
    mapped = target.apply(poly.vertices)
    norms = np.linalg.norm(mapped, axis=1)
    t_max = c * poly.inradius / norms.sum()
    if visibility is None:
        visibility = t_max
        scale = 1.0
    else:
        if not (0.0 <= visibility <= t_max + 1e-12):
            raise ValueError(
                f"requested visibility {visibility!r} is outside [0, {t_max!r}]"
            )
        scale = min(visibility / t_max, 1.0)
    q = norms / norms.sum()
    blochs = mapped / norms[:, None]
    atoms = tuple(
        Atom(weight=float(q[i]), bloch=blochs[i], preimage=poly.vertices[i])
        for i in range(len(poly.vertices))
    )
    return FiniteLhsModel(atoms=atoms, response=SignMixture(poly, scale),
                          target=target, visibility=float(visibility))


def build_icosahedron_model(target: DiagMat3, orientation: Rotation | None = None,
                            visibility: float | None = None) -> FiniteLhsModel:
    """Icosahedron instance of :func:`build_polyhedron_model` (c = 2(1+sqrt5))."""
    return build_polyhedron_model(target, icosahedron(orientation), visibility)


def build_separable_tetrahedron_model(target: DiagMat3,
                                      boundary_tol: float = BOUNDARY_TOL) -> FiniteLhsModel:
    """Four-atom model for a state on the separable boundary
    |dx| + |dy| + |dz| = 1.

    Atoms sit at sqrt(3) * sqrt(|T|) v_i over the tetrahedron vertices with
    uniform weights; Alice responds linearly with eta_i equal to the atom
    Bloch vector, components negated wherever the target entry is negative
    (the sign fold happens here, so callers may pass signed diagonals).
    """
    diag = target.as_array()
    if abs(np.abs(diag).sum() - 1.0) > boundary_tol:
        raise ValueError(
            f"target diagonal {tuple(diag)} is not on the separable boundary "
            f"(|dx|+|dy|+|dz| = {np.abs(diag).sum()!r})"
        )
    signs = np.where(diag < 0, -1.0, 1.0)
    root = np.sqrt(np.abs(diag))
    tet = tetrahedron()
    blochs = np.sqrt(3.0) * tet.vertices * root
    blochs /= np.linalg.norm(blochs, axis=1, keepdims=True)
    atoms = tuple(
        Atom(weight=0.25, bloch=blochs[i], preimage=tet.vertices[i],
             alice_bloch=signs * blochs[i])
        for i in range(4)
    )
    return FiniteLhsModel(atoms=atoms, response=LinearResponse(),
                          target=target, visibility=1.0)


@dataclass(frozen=True)
class VerificationReport:
    """Worst-case deviations between a model and a quantum assemblage."""

    max_trace_err: float
    max_bloch_err: float
    alice_marginal_err: float
    bob_marginal_err: float
    n_directions: int

    @property
    def max_residual(self) -> float:
        return max(self.max_trace_err, self.max_bloch_err,
                   self.alice_marginal_err, self.bob_marginal_err)

    def as_dict(self) -> dict:
        return {
            "max_trace_err": self.max_trace_err,
            "max_bloch_err": self.max_bloch_err,
            "alice_marginal_err": self.alice_marginal_err,
            "bob_marginal_err": self.bob_marginal_err,
            "n_directions": self.n_directions,
        }


def verify_model(model: FiniteLhsModel, state: TState,
                 directions: np.ndarray | None = None) -> VerificationReport:
    """Compare the model's assemblage against the state's for both outcomes.

    ``directions`` defaults to a 1024-point Fibonacci sphere.  Also reports
    the residuals of Alice's marginal bias (mean |sum_i q_i f|) and Bob's
    reduced Bloch vector (|sum_i q_i bloch_i|), both of which must vanish.
    """
    if directions is None:
        x = fibonacci_sphere(DEFAULT_VERIFY_DIRECTIONS)
    else:
        x = np.atleast_2d(np.asarray(directions, dtype=float))
        if len(x) == 0:
            raise ValueError("need at least one verification direction")
    f = _response_matrix(model, x)
    q = model._weights
    blochs = model._blochs
    expected_bloch = 0.5 * state.corr.apply(x)
    max_trace = 0.0
    max_bloch = 0.0
    for outcome in (1.0, -1.0):
        p = 0.5 * (1.0 + outcome * f)
        trace = p @ q
        bloch = p @ (q[:, None] * blochs)
        max_trace = max(max_trace, float(np.abs(trace - 0.5).max()))
        diff = bloch - outcome * expected_bloch
        max_bloch = max(max_bloch, float(np.linalg.norm(diff, axis=1).max()))
    alice_err = float(np.abs(f @ q).mean())
    bob_err = float(np.linalg.norm(q @ blochs))
    return VerificationReport(
        max_trace_err=max_trace,
        max_bloch_err=max_bloch,
        alice_marginal_err=alice_err,
        bob_marginal_err=bob_err,
        n_directions=len(x),
    )


def entropy_bits(model: FiniteLhsModel) -> float:
    """Shannon entropy of the atom weights, in bits."""
    q = model._weights
    q = q[q > 0]
    return float(-(q * np.log2(q)).sum())


def model_to_dict(model: FiniteLhsModel) -> dict:
    kind = "sign_mixture" if isinstance(model.response, SignMixture) else "linear"
    scale = model.response.scale if isinstance(model.response, SignMixture) else 1.0
    atoms = []
    for a in model.atoms:
        entry = {
            "q": a.weight,
            "lambda": list(a.bloch),
            "lambda_prime": list(a.preimage),
        }
        if a.alice_bloch is not None:
            entry["eta"] = list(a.alice_bloch)
        atoms.append(entry)
    return {
        "t0": list(model.target.as_array()),
        "t": model.visibility,
        "response_kind": kind,
        "scale": scale,
        "atoms": atoms,
    }


def model_to_json(model: FiniteLhsModel) -> str:
    return serialize.dumps(model_to_dict(model))


def model_from_dict(doc: dict) -> FiniteLhsModel:
    """Rebuild a model from its serialized form.

    Sign-mixture models carry one atom per polyhedron vertex, so the
    response polyhedron is recovered as the hull of the atom preimages.
    """
    try:
        target = DiagMat3.from_array(doc["t0"])
        visibility = float(doc["t"])
        kind = doc["response_kind"]
        scale = float(doc["scale"])
        raw_atoms = doc["atoms"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed model document: {exc}") from exc
    atoms = tuple(
        Atom(
            weight=float(a["q"]),
            bloch=np.asarray(a["lambda"], dtype=float),
            preimage=np.asarray(a["lambda_prime"], dtype=float),
            alice_bloch=(np.asarray(a["eta"], dtype=float) if "eta" in a else None),
        )
        for a in raw_atoms
    )
    if kind == "sign_mixture":
        poly = polyhedron_from_vertices(
            np.stack([a.preimage for a in atoms]), kind="custom"
        )
        response: SignMixture | LinearResponse = SignMixture(poly, scale)
    elif kind == "linear":
        response = LinearResponse()
    else:
        raise ValueError(f"unknown response_kind {kind!r}")
    return FiniteLhsModel(atoms=atoms, response=response,
                          target=target, visibility=visibility)


def model_from_json(text: str) -> FiniteLhsModel:
    doc = serialize.loads(text)
    if not isinstance(doc, dict):
        raise ValueError("model document must be a JSON object")
    return model_from_dict(doc)
