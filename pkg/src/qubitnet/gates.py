"""Two-qubit controlled gate variants and the dense statevector kernel.

Every gate kind acts on the amplitude pairs (a_I, a_J) where I has the
control qubit excited and the target qubit clear, and J = I with the
target bit set. The control-clear half of the basis is never touched.
The 2x2 blocks, in (target clear, target set) ordering:

    discrete_cnot        [[0, 1], [1, 0]]            hard flip of the target
    continuous_cnot      [[1, i*t], [i*t, 1]]        small complex mixing
    cprime_first_order   [[1, t], [-t, 1]]           small real mixing, sign reversed
    cprime_exact         [[cos t, sin t],            the rotation the previous
                          [-sin t, cos t]]           block truncates
    nonunitary_cont      [[1, t], [t, 1]]            real symmetric, norm grows

Only discrete_cnot and cprime_exact conserve the norm exactly; the three
first-order kinds drift and are usually run with per-sweep renormalization.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np


class GateKind(str, Enum):
    DISCRETE_CNOT = "discrete_cnot"
    CONTINUOUS_CNOT = "continuous_cnot"
    CPRIME_FIRST_ORDER = "cprime_first_order"
    CPRIME_EXACT = "cprime_exact"
    NONUNITARY_CONT = "nonunitary_cont"


UNITARY_KINDS = frozenset({GateKind.DISCRETE_CNOT, GateKind.CPRIME_EXACT})

FIRST_ORDER_KINDS = frozenset(
    {GateKind.CONTINUOUS_CNOT, GateKind.CPRIME_FIRST_ORDER, GateKind.NONUNITARY_CONT}
)

# Kinds whose repeated application drifts in norm; evolution renormalizes
# these after every sweep unless told otherwise.
RENORMALIZE_BY_DEFAULT = FIRST_ORDER_KINDS


@dataclass(frozen=True, eq=False)
class GateSpec:
    """One gate kind bound to a mixing angle, with its 2x2 block."""

    kind: GateKind
    theta: float
    block: np.ndarray

    def __post_init__(self) -> None:
        self.block.setflags(write=False)


def make_gate(kind: GateKind | str, theta: float = 0.0) -> GateSpec:
    """Build a GateSpec, validating the angle for the chosen kind.

    The first-order kinds only make sense for |theta| < 1; the discrete
    flip takes no angle at all.
    """
    kind = GateKind(kind)
    theta = float(theta)
    if not math.isfinite(theta):
        raise ValueError(f"theta must be finite, got {theta!r}")
    if kind in FIRST_ORDER_KINDS and not abs(theta) < 1.0:
        raise ValueError(
            f"{kind.value} is a small-angle expansion, needs |theta| < 1, got {theta}"
        )
    if kind is GateKind.DISCRETE_CNOT:
        theta = 0.0
        block = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=np.complex128)
    elif kind is GateKind.CONTINUOUS_CNOT:
        block = np.array([[1.0, 1j * theta], [1j * theta, 1.0]], dtype=np.complex128)
    elif kind is GateKind.CPRIME_FIRST_ORDER:
        block = np.array([[1.0, theta], [-theta, 1.0]], dtype=np.complex128)
    elif kind is GateKind.CPRIME_EXACT:
        c, s = math.cos(theta), math.sin(theta)
        block = np.array([[c, s], [-s, c]], dtype=np.complex128)
    else:
        block = np.array([[1.0, theta], [theta, 1.0]], dtype=np.complex128)
    return GateSpec(kind=kind, theta=theta, block=block)


def inverse_gate(gate: GateSpec) -> GateSpec:
    """Exact inverse of an exactly unitary gate.

    The first-order kinds have no useful inverse (their blocks are not
    unitary, so undoing them amplifies whatever noise is present) and are
    refused.
    """
    if gate.kind is GateKind.DISCRETE_CNOT:
        return gate
    if gate.kind is GateKind.CPRIME_EXACT:
        return make_gate(gate.kind, -gate.theta)
    raise ValueError(f"{gate.kind.value} is not exactly unitary, cannot invert")


def _insert_zero_bit(x: np.ndarray, position: int) -> np.ndarray:
    high = (x >> position) << (position + 1)
    return high | (x & ((1 << position) - 1))


@lru_cache(maxsize=None)
def pair_indices(
    n_qubits: int, control: int, target: int
) -> tuple[np.ndarray, np.ndarray]:
    """All (I, J) basis index pairs mixed by a gate on (control, target).

    lower[k] has the control excited and the target clear; upper[k] is
    lower[k] with the target set. Together they cover exactly the half of
    the basis with the control excited. Cached; the arrays are read-only.
    """
    if control == target:
        raise ValueError(f"control and target must differ, both are {control}")
    for q in (control, target):
        if not (0 <= q < n_qubits):
            raise ValueError(f"qubit {q} outside [0, {n_qubits})")
    base = np.arange(1 << (n_qubits - 2), dtype=np.int64)
    first, second = sorted((control, target))
    stem = _insert_zero_bit(_insert_zero_bit(base, first), second)
    lower = stem | (1 << control)
    upper = lower | (1 << target)
    lower.setflags(write=False)
    upper.setflags(write=False)
    return lower, upper


def _mix_pairs(
    amps: np.ndarray, block: np.ndarray, lower: np.ndarray, upper: np.ndarray
) -> None:
    """Apply the 2x2 block to the (lower, upper) amplitude pairs in place.

    Works on an amplitude vector or on a matrix (rows are mixed), which is
    how full sweep operators get assembled.
    """
    b00 = complex(block[0, 0])
    b01 = complex(block[0, 1])
    b10 = complex(block[1, 0])
    b11 = complex(block[1, 1])
    lo = amps[lower]
    hi = amps[upper]
    amps[lower] = b00 * lo + b01 * hi
    amps[upper] = b10 * lo + b11 * hi


def _infer_n_qubits(dim: int) -> int:
    n_qubits = dim.bit_length() - 1
    if dim <= 0 or (1 << n_qubits) != dim:
        raise ValueError(f"state dimension {dim} is not a power of two")
    return n_qubits


def apply_two_qubit_gate(
    psi: np.ndarray,
    gate: GateSpec,
    control: int,
    target: int,
    copy: bool = True,
) -> np.ndarray:
    """Apply one controlled gate to a dense amplitude vector.

    Returns the updated vector; with copy=False the input array is mixed
    in place (the pair updates are disjoint, so this is safe) and returned.
    """
    n_qubits = _infer_n_qubits(psi.shape[0])
    lower, upper = pair_indices(n_qubits, control, target)
    out = np.array(psi, dtype=np.complex128, copy=copy)
    _mix_pairs(out, gate.block, lower, upper)
    return out


def dense_matrix_of(
    gate: GateSpec, control: int, target: int, n_qubits: int
) -> np.ndarray:
    """Full 2**n x 2**n matrix of one controlled gate, for checking only.

    Built straight from the truth table (never through the pair kernel, so
    the two can be compared): entry (r, c) is the 4x4 single-gate element
    selected by the control/target bits of r and c, provided all other
    bits agree. Refuses more than 10 qubits; the matrix is quadratic in
    the state size and exists to verify the kernel, not to run it.
    """
    if n_qubits > 10:
        raise ValueError(f"dense gate matrix capped at 10 qubits, got {n_qubits}")
    if control == target:
        raise ValueError(f"control and target must differ, both are {control}")
    for q in (control, target):
        if not (0 <= q < n_qubits):
            raise ValueError(f"qubit {q} outside [0, {n_qubits})")
    dim = 1 << n_qubits
    g4 = np.eye(4, dtype=np.complex128)
    g4[2:, 2:] = gate.block
    idx = np.arange(dim)
    rows = idx[:, None]
    cols = idx[None, :]
    others = (dim - 1) ^ (1 << control) ^ (1 << target)
    same_elsewhere = (rows & others) == (cols & others)
    r4 = 2 * ((rows >> control) & 1) + ((rows >> target) & 1)
    c4 = 2 * ((cols >> control) & 1) + ((cols >> target) & 1)
    return np.where(same_elsewhere, g4[r4, c4], 0.0)
