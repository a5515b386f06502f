"""Full-network sweeps, multi-step evolution, exact reversal, injected orbits.

One sweep walks the nodes in ascending index order; for each node, each
of its four neighbors (right, left, down, up) in turn acts as the
controller of one gate with the node as target. That is 4 * n_qubits gate
applications per sweep, applied sequentially to the same vector, so later
gates see the amplitudes already modified by earlier ones. The order is
part of the contract: changing it changes the trajectory.

For small lattices the whole sweep is also a fixed linear map, so it is
assembled once into a dense matrix and replayed as a matrix-vector
product. Both paths compose the same block updates in the same order.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .gates import (
    RENORMALIZE_BY_DEFAULT,
    UNITARY_KINDS,
    GateSpec,
    _mix_pairs,
    inverse_gate,
    make_gate,
    pair_indices,
)
from .lattice import LatticeTopology

# Above this dimension the sweep matrix (dim x dim complex) stops paying
# for itself in memory; the per-gate kernel takes over.
_SWEEP_MATRIX_MAX_DIM = 2048

_sweep_matrix_cache: dict[tuple, np.ndarray] = {}


@dataclass(frozen=True)
class EvolutionConfig:
    """Everything that pins down one evolution run, initial state aside."""

    topology: LatticeTopology
    gate: GateSpec
    steps: int
    renormalize: bool | None = None  # None picks the per-kind default
    snapshot_every: int = 0  # 0 keeps only the final state
    node_as_controller: bool = False  # swap gate roles in each sweep

    def __post_init__(self) -> None:
        if self.steps < 0:
            raise ValueError(f"steps must be nonnegative, got {self.steps}")
        if self.snapshot_every < 0:
            raise ValueError(
                f"snapshot_every must be nonnegative, got {self.snapshot_every}"
            )

    @property
    def should_renormalize(self) -> bool:
        if self.renormalize is not None:
            return self.renormalize
        return self.gate.kind in RENORMALIZE_BY_DEFAULT


@dataclass
class Trajectory:
    """An initial state plus the recorded snapshots of one run.

    Snapshots are (sweep_number, state) pairs in ascending sweep order;
    the initial state is sweep 0 and is not repeated in the list.
    """

    initial: np.ndarray
    snapshots: list[tuple[int, np.ndarray]] = field(default_factory=list)
    config: EvolutionConfig | None = None

    @property
    def final(self) -> np.ndarray:
        return self.snapshots[-1][1] if self.snapshots else self.initial

    def states(self) -> Iterator[tuple[int, np.ndarray]]:
        yield 0, self.initial
        yield from self.snapshots


def gate_sequence(
    topology: LatticeTopology, node_as_controller: bool = False
) -> tuple[tuple[int, int], ...]:
    """The (control, target) pairs of one sweep, in application order."""
    pairs = []
    for node in range(topology.n_qubits):
        for neighbor in topology.adjacency[node]:
            if node_as_controller:
                pairs.append((node, neighbor))
            else:
                pairs.append((neighbor, node))
    return tuple(pairs)


def _apply_sweep_kernel(
    state: np.ndarray,
    topology: LatticeTopology,
    gate: GateSpec,
    node_as_controller: bool,
    reverse: bool,
) -> None:
    sequence = gate_sequence(topology, node_as_controller)
    block_gate = inverse_gate(gate) if reverse else gate
    steps = reversed(sequence) if reverse else sequence
    for control, target in steps:
        lower, upper = pair_indices(topology.n_qubits, control, target)
        _mix_pairs(state, block_gate.block, lower, upper)


def _sweep_matrix(config: EvolutionConfig, reverse: bool = False) -> np.ndarray:
    key = (
        config.topology.side,
        config.gate.kind,
        config.gate.theta,
        config.node_as_controller,
        reverse,
    )
    cached = _sweep_matrix_cache.get(key)
    if cached is None:
        matrix = np.eye(config.topology.dim, dtype=np.complex128)
        _apply_sweep_kernel(
            matrix, config.topology, config.gate, config.node_as_controller, reverse
        )
        matrix.setflags(write=False)
        _sweep_matrix_cache[key] = matrix
        cached = matrix
    return cached


def _run_sweep(
    state: np.ndarray, config: EvolutionConfig, reverse: bool = False
) -> np.ndarray:
    if config.topology.dim <= _SWEEP_MATRIX_MAX_DIM:
        state = _sweep_matrix(config, reverse) @ state
    else:
        state = state.copy()
        _apply_sweep_kernel(
            state, config.topology, config.gate, config.node_as_controller, reverse
        )
    if config.should_renormalize:
        norm = np.linalg.norm(state)
        if norm == 0.0:
            raise ValueError("state collapsed to zero, cannot renormalize")
        state /= norm
    return state


def sweep(psi: np.ndarray, config: EvolutionConfig) -> np.ndarray:
    """One full-network sweep. Returns a new vector; the input is untouched."""
    if psi.shape[0] != config.topology.dim:
        raise ValueError(
            f"state has dimension {psi.shape[0]}, topology needs {config.topology.dim}"
        )
    return _run_sweep(np.asarray(psi, dtype=np.complex128), config)


def evolve(psi: np.ndarray, config: EvolutionConfig) -> Trajectory:
    """Run config.steps sweeps, recording snapshots at the configured cadence.

    With snapshot_every = 0 only the final state is recorded (none at all
    for a zero-step run). Otherwise every multiple of the cadence is
    recorded, plus the final sweep.
    """
    if psi.shape[0] != config.topology.dim:
        raise ValueError(
            f"state has dimension {psi.shape[0]}, topology needs {config.topology.dim}"
        )
    state = np.array(psi, dtype=np.complex128)
    trajectory = Trajectory(initial=state.copy(), config=config)
    for step in range(1, config.steps + 1):
        state = _run_sweep(state, config)
        due = config.snapshot_every > 0 and step % config.snapshot_every == 0
        if due or step == config.steps:
            trajectory.snapshots.append((step, state.copy()))
    return trajectory


def reverse_evolve(trajectory: Trajectory) -> np.ndarray:
    """Undo a recorded run exactly, returning the recovered initial state.

    Only exactly unitary gate kinds can be undone; for the first-order
    kinds the inverse blocks would amplify the truncation noise instead of
    removing it, so those are refused. Renormalized runs are refused too,
    since the per-sweep rescaling is not part of the gate algebra.
    """
    config = trajectory.config
    if config is None:
        raise ValueError("trajectory carries no evolution config, cannot reverse")
    if config.gate.kind not in UNITARY_KINDS:
        raise ValueError(
            f"cannot reverse a {config.gate.kind.value} run: the gate is not "
            "exactly unitary, so inverting it would amplify noise"
        )
    if config.should_renormalize:
        raise ValueError("cannot reverse a renormalized run exactly")
    state = np.array(trajectory.final, dtype=np.complex128)
    for _ in range(config.steps):
        state = _run_sweep(state, config, reverse=True)
    return state


@dataclass(frozen=True)
class PlaneRotation:
    """A global operator that turns chosen state pairs into exact orbits.

    Each (u, v) plane is rotated by 2*pi/period per application while the
    orthogonal complement is left alone, so any state in the span of the
    planes returns to itself after exactly ``period`` applications. The
    operator is applied in O(dim * planes) without ever being materialized.
    """

    planes: tuple[tuple[np.ndarray, np.ndarray], ...]
    period: int

    @property
    def angle(self) -> float:
        return 2.0 * math.pi / self.period

    def apply(self, psi: np.ndarray) -> np.ndarray:
        out = np.array(psi, dtype=np.complex128)
        c = math.cos(self.angle)
        s = math.sin(self.angle)
        for u, v in self.planes:
            cu = np.vdot(u, psi)
            cv = np.vdot(v, psi)
            out += (c - 1.0) * (cu * u + cv * v) + s * (cu * v - cv * u)
        return out


def inject_periodic_orbit(
    states: list[np.ndarray] | tuple[np.ndarray, ...], period: int
) -> PlaneRotation:
    """Build a PlaneRotation from an even list of orthonormal states.

    Consecutive states are paired into rotation planes. The inputs must be
    pairwise orthonormal to 1e-10, or the planes would leak into each
    other and the orbit would not close.
    """
    if int(period) != period or period < 2:
        raise ValueError(f"period must be an integer >= 2, got {period!r}")
    states = [np.asarray(s, dtype=np.complex128) for s in states]
    if len(states) < 2 or len(states) % 2 != 0:
        raise ValueError(
            f"need an even number (>= 2) of states to pair into planes, got {len(states)}"
        )
    dim = states[0].shape[0]
    if any(s.shape != (dim,) for s in states):
        raise ValueError("orbit states must all share one dimension")
    stacked = np.stack(states)
    gram = stacked.conj() @ stacked.T
    residual = np.max(np.abs(gram - np.eye(len(states))))
    if residual > 1e-10:
        raise ValueError(
            f"orbit states are not orthonormal (max Gram residual {residual:.3e})"
        )
    planes = tuple(
        (states[i].copy(), states[i + 1].copy()) for i in range(0, len(states), 2)
    )
    for u, v in planes:
        u.setflags(write=False)
        v.setflags(write=False)
    return PlaneRotation(planes=planes, period=int(period))


def evolve_with_operator(
    psi: np.ndarray, operator: PlaneRotation, steps: int
) -> Trajectory:
    """Apply a global operator repeatedly, snapshotting every application."""
    if steps < 0:
        raise ValueError(f"steps must be nonnegative, got {steps}")
    state = np.array(psi, dtype=np.complex128)
    trajectory = Trajectory(initial=state.copy(), config=None)
    for step in range(1, steps + 1):
        state = operator.apply(state)
        trajectory.snapshots.append((step, state.copy()))
    return trajectory
