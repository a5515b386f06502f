"""Preparation of superposed inputs via a norm-preserving extension.

The operator carries a unitary rotation R on the system space, two complex
weights with |a|^2 + |b|^2 = 1, and a normalized state to blend in. The
construction extends the system by one auxiliary slot: the input rides in
with the auxiliary amplitude set to one, the extended map produces
a * R x + b * x_new in the system block, and the auxiliary slot is dropped
again. The result has unit norm exactly when R x is orthogonal to x_new,
which is why that overlap is checked up front.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_WEIGHT_TOL = 1e-12
_NORM_TOL = 1e-12
_UNITARY_TOL = 1e-10
_ORTHO_TOL = 1e-8

# Full R^dagger R verification is quadratic in the dimension; above this
# size unitarity is spot-checked on random vectors instead.
_FULL_UNITARY_CHECK_MAX_DIM = 1024


@dataclass(frozen=True, eq=False)
class ExtendedOperator:
    """Weights, rotation and blended state of one preparation.

    rotation is None for the identity. The auxiliary slot the construction
    appends sits at index dim; it exists only inside apply().
    """

    a: complex
    b: complex
    addition: np.ndarray
    rotation: np.ndarray | None = None

    @property
    def dim(self) -> int:
        return self.addition.shape[0]

    @property
    def aux_index(self) -> int:
        return self.dim


def _check_rotation(rotation: np.ndarray, dim: int) -> None:
    if rotation.shape != (dim, dim):
        raise ValueError(
            f"rotation has shape {rotation.shape}, the blended state needs ({dim}, {dim})"
        )
    if dim <= _FULL_UNITARY_CHECK_MAX_DIM:
        residual = np.max(np.abs(rotation.conj().T @ rotation - np.eye(dim)))
        if residual > _UNITARY_TOL:
            raise ValueError(
                f"rotation is not unitary (max R^H R residual {residual:.3e})"
            )
    else:
        rng = np.random.default_rng(0)
        for _ in range(8):
            probe = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
            probe /= np.linalg.norm(probe)
            residual = np.linalg.norm(rotation.conj().T @ (rotation @ probe) - probe)
            if residual > 1e-8:
                raise ValueError(
                    f"rotation fails the unitarity spot check (residual {residual:.3e})"
                )


def make_extended_operator(
    a: complex,
    b: complex,
    addition: np.ndarray,
    rotation: np.ndarray | None = None,
) -> ExtendedOperator:
    """Validate and freeze one preparation operator.

    Rejects weight pairs off the |a|^2 + |b|^2 = 1 sphere, unnormalized
    blend states, and non-unitary rotations, reporting the residual in
    each case.
    """
    a = complex(a)
    b = complex(b)
    weight_residual = abs(abs(a) ** 2 + abs(b) ** 2 - 1.0)
    if weight_residual > _WEIGHT_TOL:
        raise ValueError(
            f"weights violate |a|^2 + |b|^2 = 1 (residual {weight_residual:.3e})"
        )
    addition = np.array(addition, dtype=np.complex128)
    norm_residual = abs(np.linalg.norm(addition) - 1.0)
    if norm_residual > _NORM_TOL:
        raise ValueError(
            f"blended state must be normalized (residual {norm_residual:.3e})"
        )
    if rotation is not None:
        rotation = np.array(rotation, dtype=np.complex128)
        _check_rotation(rotation, addition.shape[0])
        rotation.setflags(write=False)
    addition.setflags(write=False)
    return ExtendedOperator(a=a, b=b, addition=addition, rotation=rotation)


def check_orthogonality(
    rotation: np.ndarray | None, state: np.ndarray, addition: np.ndarray
) -> float:
    """|<addition|R|state>|, the overlap that must vanish for unit output."""
    rotated = state if rotation is None else rotation @ state
    return float(abs(np.vdot(addition, rotated)))


def superpose(operator: ExtendedOperator, state: np.ndarray) -> np.ndarray:
    """Apply the extension to a normalized input state.

    Returns a * R state + b * addition, produced through the one-slot
    extension. The output norm is 1 up to the checked overlap: it deviates
    by at most |a||b| times the residual overlap, so exactly orthogonal
    inputs come out normalized to machine precision. No renormalization is
    applied.
    """
    state = np.asarray(state, dtype=np.complex128)
    if state.shape != operator.addition.shape:
        raise ValueError(
            f"state has dimension {state.shape[0]}, operator needs {operator.dim}"
        )
    if abs(np.linalg.norm(state) - 1.0) > _ORTHO_TOL:
        raise ValueError("input state must be normalized")
    overlap = check_orthogonality(operator.rotation, state, operator.addition)
    if overlap > _ORTHO_TOL:
        raise ValueError(
            f"rotated input overlaps the blended state (|overlap| = {overlap:.3e}), "
            "the prepared state would not be normalized"
        )
    rotated = state if operator.rotation is None else operator.rotation @ state
    # The auxiliary slot enters with amplitude one and leaves dropped; its
    # only trace is the blended term it injects into the system block.
    return operator.a * rotated + operator.b * operator.addition
