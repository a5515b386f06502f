"""Readouts over amplitude vectors: dominance, back-projection, recurrence.

The dominance ordering used everywhere sorts by magnitude descending with
basis index ascending as the tie-break, so reports are deterministic even
for exactly tied amplitudes.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .evolution import Trajectory


@dataclass(frozen=True)
class DominanceEntry:
    index: int
    magnitude: float
    amplitude: complex


@dataclass(frozen=True)
class DominanceReport:
    entries: tuple[DominanceEntry, ...]
    k: int


@dataclass(frozen=True)
class PeriodReport:
    """Outcome of a recurrence scan.

    period is None when no snapshot returned to the initial state within
    tolerance; recurrence_fidelity then holds the best overlap seen.
    """

    period: int | None
    recurrence_fidelity: float
    delta: float


def _dominance_order(psi: np.ndarray) -> np.ndarray:
    magnitudes = np.abs(psi)
    return np.lexsort((np.arange(psi.shape[0]), -magnitudes))


def dominant_components(psi: np.ndarray, k: int) -> DominanceReport:
    """The k largest components by magnitude (k is clamped to the dimension)."""
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    k = min(k, psi.shape[0])
    order = _dominance_order(psi)[:k]
    entries = tuple(
        DominanceEntry(
            index=int(i), magnitude=float(abs(psi[i])), amplitude=complex(psi[i])
        )
        for i in order
    )
    return DominanceReport(entries=entries, k=k)


def dominant_set(psi: np.ndarray, ratio: float = 0.8, k: int | None = None) -> list[int]:
    """Indices of the dominant components, for back-projection.

    By default this is every component whose magnitude reaches ``ratio``
    times the largest one; passing k instead takes exactly the top k.
    """
    if k is not None:
        return [entry.index for entry in dominant_components(psi, k).entries]
    if not (0.0 < ratio <= 1.0):
        raise ValueError(f"ratio must be in (0, 1], got {ratio}")
    magnitudes = np.abs(psi)
    top = magnitudes.max()
    if top == 0.0:
        raise ValueError("zero vector has no dominant components")
    order = _dominance_order(psi)
    cutoff = ratio * top
    return [int(i) for i in order if magnitudes[i] >= cutoff]


def back_project(indices: Iterable[int]) -> int:
    """Bitwise AND of basis indices: the excitations common to all of them.

    This recovers the stored pattern from a dominant component set, since
    the satellites of a memory differ from it by extra or missing single
    excitations that the intersection strips away.
    """
    result = None
    for index in indices:
        if index < 0:
            raise ValueError(f"basis indices are nonnegative, got {index}")
        result = index if result is None else result & index
    if result is None:
        raise ValueError("cannot back-project an empty index set")
    return result


def fidelity(psi: np.ndarray, phi: np.ndarray) -> float:
    """|<psi|phi>| with both vectors normalized internally."""
    if psi.shape != phi.shape:
        raise ValueError(f"dimension mismatch: {psi.shape} vs {phi.shape}")
    norm_psi = np.linalg.norm(psi)
    norm_phi = np.linalg.norm(phi)
    if norm_psi == 0.0 or norm_phi == 0.0:
        raise ValueError("fidelity of a zero vector is undefined")
    return min(1.0, float(abs(np.vdot(psi, phi)) / (norm_psi * norm_phi)))


def uniformity_deviation(psi: np.ndarray) -> float:
    """Largest deviation of any |a_I| from the flat value 1/sqrt(dim)."""
    flat = 1.0 / np.sqrt(psi.shape[0])
    return float(np.max(np.abs(np.abs(psi) - flat)))


def detect_period(trajectory: Trajectory, delta: float = 1e-6) -> PeriodReport:
    """Smallest sweep count t with |<psi(0)|psi(t)>| >= 1 - delta.

    Needs a trajectory recorded with per-sweep snapshots; anything coarser
    could only report multiples of its cadence and is rejected.
    """
    if delta <= 0.0:
        raise ValueError(f"delta must be positive, got {delta}")
    if len(trajectory.snapshots) < 1:
        raise ValueError("fewer than 2 states in trajectory, nothing to scan")
    sweeps = [step for step, _ in trajectory.snapshots]
    if sweeps != list(range(1, len(sweeps) + 1)):
        raise ValueError("period detection needs per-sweep snapshots (cadence 1)")
    best = 0.0
    for step, state in trajectory.snapshots:
        overlap = fidelity(trajectory.initial, state)
        if overlap >= 1.0 - delta:
            return PeriodReport(period=step, recurrence_fidelity=overlap, delta=delta)
        best = max(best, overlap)
    return PeriodReport(period=None, recurrence_fidelity=best, delta=delta)
