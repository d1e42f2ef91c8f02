"""Two-qubit states with diagonal spin correlation matrices.

All single-qubit objects live in Bloch coordinates; the only place a
complex density matrix appears is :mod:`finitelhs.belldecomp`.  A state
here is ``rho = (I4 + sum_k d_k sigma_k (x) sigma_k) / 4`` with both
local Bloch vectors zero, so the diagonal ``(dx, dy, dz)`` is a complete
description.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

UNIT_TOL = 1e-12
PHYSICALITY_TOL = 1e-12


def as_unit_vector(v, what: str = "vector", tol: float = UNIT_TOL) -> np.ndarray:
    arr = np.asarray(v, dtype=float)
    if arr.shape != (3,):
        raise ValueError(f"{what} must have shape (3,), got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{what} must be finite")
    if abs(np.linalg.norm(arr) - 1.0) > tol:
        raise ValueError(f"{what} must be a unit vector, |v| = {np.linalg.norm(arr)!r}")
    return arr


@dataclass(frozen=True)
class DiagMat3:
    """A real diagonal 3x3 matrix, stored as its diagonal."""

    dx: float
    dy: float
    dz: float

    def as_array(self) -> np.ndarray:
        return np.array([self.dx, self.dy, self.dz], dtype=float)

    def apply(self, v: np.ndarray) -> np.ndarray:
        """Matrix-vector product; broadcasts over rows of an (n, 3) array."""
        return self.as_array() * np.asarray(v, dtype=float)

    def abs(self) -> "DiagMat3":
        return DiagMat3(abs(self.dx), abs(self.dy), abs(self.dz))

    def scaled(self, factor: float) -> "DiagMat3":
        return DiagMat3(factor * self.dx, factor * self.dy, factor * self.dz)

    @property
    def is_singular(self) -> bool:
        return self.dx == 0.0 or self.dy == 0.0 or self.dz == 0.0

    @classmethod
    def from_array(cls, arr) -> "DiagMat3":
        a = np.asarray(arr, dtype=float)
        if a.shape != (3,):
            raise ValueError(f"diagonal must have 3 entries, got shape {a.shape}")
        return cls(float(a[0]), float(a[1]), float(a[2]))


def bell_weights_of_diag(diag: np.ndarray) -> np.ndarray:
    """Eigenvalues of the state with correlation diagonal ``diag``.

    The four eigenvectors are the Bell states; the weights are returned in
    the fixed order ((00+11), (00-11), (01+10), (01-10)) / sqrt(2).
    """
    dx, dy, dz = diag
    return np.array([
        1.0 + dx - dy + dz,
        1.0 - dx + dy + dz,
        1.0 + dx + dy - dz,
        1.0 - dx - dy - dz,
    ]) / 4.0


@dataclass(frozen=True)
class TState:
    """A physical two-qubit state with vanishing local Bloch vectors."""

    corr: DiagMat3

    def __post_init__(self) -> None:
        weights = bell_weights_of_diag(self.corr.as_array())
        if weights.min() < -PHYSICALITY_TOL:
            raise ValueError(
                "correlation diagonal "
                f"({self.corr.dx}, {self.corr.dy}, {self.corr.dz}) is not physical: "
                f"minimum Bell weight {weights.min():.3e}"
            )


@dataclass(frozen=True, eq=False)
class Measurement:
    """Projective qubit measurement along ``axis`` with outcome +1 or -1."""

    axis: np.ndarray
    outcome: int

    def __post_init__(self) -> None:
        axis = as_unit_vector(self.axis, "measurement axis")
        object.__setattr__(self, "axis", axis)
        if self.outcome not in (1, -1):
            raise ValueError(f"measurement outcome must be +1 or -1, got {self.outcome!r}")


@dataclass(frozen=True, eq=False)
class HalfState:
    """An unnormalized qubit state ``(trace * I + bloch . sigma) / 2``."""

    trace: float
    bloch: np.ndarray

    def __post_init__(self) -> None:
        bloch = np.asarray(self.bloch, dtype=float)
        if bloch.shape != (3,):
            raise ValueError(f"bloch must have shape (3,), got {bloch.shape}")
        object.__setattr__(self, "bloch", bloch)
        if self.trace < -PHYSICALITY_TOL:
            raise ValueError(f"trace must be nonnegative, got {self.trace!r}")
        if np.linalg.norm(bloch) > self.trace + PHYSICALITY_TOL:
            raise ValueError(
                f"|bloch| = {np.linalg.norm(bloch)!r} exceeds trace = {self.trace!r}"
            )


def assemblage(state: TState, m: Measurement) -> HalfState:
    """Bob's unnormalized conditional state for Alice's measurement ``m``.

    For a state with diagonal correlations and no local terms, the result
    always has trace 1/2 and Bloch part ``(a/2) * corr @ axis``.
    """
    s = 0.5 * m.outcome * state.corr.apply(m.axis)
    return HalfState(trace=0.5, bloch=s)


def bell_weights(state: TState) -> np.ndarray:
    """Eigenvalues of the 4x4 density matrix, summing to 1.

    Order: ((00+11), (00-11), (01+10), (01-10)), see
    :func:`bell_weights_of_diag`.
    """
    return bell_weights_of_diag(state.corr.as_array())


def concurrence_axial(corr: DiagMat3, visibility: float, tol: float = UNIT_TOL) -> float:
    """Concurrence of the state with correlation ``visibility * corr``.

    Only valid for axially symmetric diagonals (|dx| == |dy|), where the
    closed form ``max(0, (2 t |dx| + t |dz| - 1) / 2)`` holds for every
    physical input.
    """
    if abs(abs(corr.dx) - abs(corr.dy)) > tol:
        raise ValueError(
            f"axial symmetry requires |dx| == |dy|, got ({corr.dx!r}, {corr.dy!r})"
        )
    if visibility < 0:
        raise ValueError(f"visibility must be nonnegative, got {visibility!r}")
    value = (2.0 * visibility * abs(corr.dx) + visibility * abs(corr.dz) - 1.0) / 2.0
    return max(0.0, value)


def is_on_separable_boundary(state: TState, tol: float = 1e-9) -> bool:
    """Whether |dx| + |dy| + |dz| equals 1 within tol."""
    a = np.abs(state.corr.as_array()).sum()
    return bool(abs(a - 1.0) <= tol)
