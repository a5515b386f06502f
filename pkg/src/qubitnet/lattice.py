"""Square qubit lattices with periodic boundaries and bitmask basis labels.

A lattice of side n holds n*n qubits numbered row-major, qubit 0 in the
top-left corner. A product basis state of the register is labeled by the
integer whose bit i is the excitation of qubit i, so the joint state of
the network is one dense vector of 2**(n*n) complex amplitudes. Nothing
here assumes separability; the amplitude vector is the whole state.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

# Dense amplitudes take 16 bytes each; 2**24 is 268 MB and is as far as a
# single vector can reasonably go. Caps the lattice at 4x4.
MAX_QUBITS = 24


@dataclass(frozen=True)
class LatticeTopology:
    """Geometry of an n x n qubit lattice with periodic wraparound.

    ``adjacency[q]`` lists the right, left, down and up neighbors of
    qubit q, in that order. For side 2 the wraparound makes right/left
    (and down/up) coincide; the duplicates are kept on purpose so every
    node sees the same number of gates per sweep regardless of side.
    """

    side: int
    n_qubits: int = field(init=False)
    adjacency: tuple[tuple[int, int, int, int], ...] = field(init=False)

    def __post_init__(self) -> None:
        if self.side < 2:
            raise ValueError(f"lattice side must be at least 2, got {self.side}")
        n_qubits = self.side * self.side
        if n_qubits > MAX_QUBITS:
            raise ValueError(
                f"a {self.side}x{self.side} lattice needs {n_qubits} qubits, "
                f"beyond the {MAX_QUBITS}-qubit dense ceiling"
            )
        object.__setattr__(self, "n_qubits", n_qubits)
        object.__setattr__(
            self, "adjacency", tuple(self._neighbor_row(q) for q in range(n_qubits))
        )

    def _neighbor_row(self, q: int) -> tuple[int, int, int, int]:
        n = self.side
        i, j = divmod(q, n)
        right = i * n + (j + 1) % n
        left = i * n + (j - 1) % n
        down = ((i + 1) % n) * n + j
        up = ((i - 1) % n) * n + j
        return (right, left, down, up)

    @property
    def dim(self) -> int:
        """Dimension of the joint state space, 2**n_qubits."""
        return 1 << self.n_qubits

    def linearize(self, row: int, col: int) -> int:
        """Map a (row, col) lattice coordinate to its qubit index."""
        if not (0 <= row < self.side and 0 <= col < self.side):
            raise ValueError(
                f"coordinate ({row}, {col}) outside the {self.side}x{self.side} lattice"
            )
        return row * self.side + col

    def neighbors(self, q: int) -> tuple[int, int, int, int]:
        """Right, left, down, up neighbors of qubit q (with wraparound)."""
        if not (0 <= q < self.n_qubits):
            raise ValueError(f"qubit {q} outside [0, {self.n_qubits})")
        return self.adjacency[q]


def basis_index_from_set(excited: Iterable[int], n_qubits: int) -> int:
    """Basis index whose excited qubits are exactly the given set."""
    index = 0
    for q in excited:
        if not (0 <= q < n_qubits):
            raise ValueError(f"qubit {q} outside [0, {n_qubits})")
        index |= 1 << q
    return index


def qubit_state(index: int, qubit: int, n_qubits: int) -> int:
    """Excitation (0 or 1) of one qubit inside a basis index."""
    if not (0 <= qubit < n_qubits):
        raise ValueError(f"qubit {qubit} outside [0, {n_qubits})")
    return (index >> qubit) & 1


def basis_state(n_qubits: int, index: int) -> np.ndarray:
    """Amplitude vector of a single product basis state."""
    dim = 1 << n_qubits
    if not (0 <= index < dim):
        raise ValueError(f"basis index {index} outside [0, {dim})")
    psi = np.zeros(dim, dtype=np.complex128)
    psi[index] = 1.0
    return psi


def state_from_amplitudes(
    n_qubits: int, entries: Iterable[tuple[int, complex]]
) -> np.ndarray:
    """Amplitude vector with the given (index, amplitude) entries, others zero.

    Entries are not normalized here; callers decide whether the raw vector
    is acceptable. Duplicate indices are rejected rather than summed.
    """
    dim = 1 << n_qubits
    psi = np.zeros(dim, dtype=np.complex128)
    seen: set[int] = set()
    for index, amplitude in entries:
        if not (0 <= index < dim):
            raise ValueError(f"basis index {index} outside [0, {dim})")
        if index in seen:
            raise ValueError(f"duplicate amplitude for basis index {index}")
        seen.add(index)
        psi[index] = amplitude
    return psi
