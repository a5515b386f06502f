"""Grover-style detection of an arbitrary normalized target state.

The target is first carried onto basis index 0 by a norm-preserving basis
change (one Householder reflection plus a phase alignment), so the search
itself is always the textbook one: flip the sign of the marked component,
invert about the mean, repeat. Measuring index 0 in the rotated frame is
measuring the target in the original one.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

_TARGET_NORM_TOL = 1e-10

# Dense conjugated operators are quadratic in the dimension; they exist
# for inspection and testing, not for running the search.
_DENSE_OPERATOR_MAX_DIM = 4096


@dataclass(frozen=True, eq=False)
class SearchSpec:
    """A normalized target plus an iteration budget (None means optimal)."""

    target: np.ndarray
    iterations: int | None = None

    def __post_init__(self) -> None:
        target = np.asarray(self.target, dtype=np.complex128)
        object.__setattr__(self, "target", target)
        if target.ndim != 1 or target.shape[0] < 2:
            raise ValueError("target must be a vector of dimension >= 2")
        if abs(np.linalg.norm(target) - 1.0) > _TARGET_NORM_TOL:
            raise ValueError("target state must be normalized")
        if self.iterations is not None and self.iterations < 0:
            raise ValueError(f"iterations must be nonnegative, got {self.iterations}")

    @property
    def dim(self) -> int:
        return self.target.shape[0]

    @property
    def resolved_iterations(self) -> int:
        if self.iterations is not None:
            return self.iterations
        return optimal_iterations(self.dim)


class BasisRotation:
    """The unitary change of basis sending one target state to index 0.

    Applied as a Householder reflection followed by a one-component phase
    fix, both in O(dim); forward() maps the original basis to the rotated
    frame and inverse() undoes it exactly.
    """

    def __init__(self, target: np.ndarray):
        target = np.asarray(target, dtype=np.complex128)
        norm = np.linalg.norm(target)
        if norm == 0.0:
            raise ValueError("cannot rotate the basis onto a zero target")
        unit = target / norm
        head = unit[0]
        # The reflector vector t - alpha * e0 with alpha opposite in phase
        # to t[0] keeps the subtraction cancellation-free.
        self.phase = -head / abs(head) if abs(head) > 0.0 else complex(1.0)
        reflector = unit.copy()
        reflector[0] -= self.phase
        squared = np.vdot(reflector, reflector).real
        self.reflector = None if squared < 1e-28 else reflector
        self._reflector_squared = squared
        self.dim = unit.shape[0]

    def _reflect(self, psi: np.ndarray) -> np.ndarray:
        if self.reflector is None:
            return psi.copy()
        coefficient = 2.0 * np.vdot(self.reflector, psi) / self._reflector_squared
        return psi - coefficient * self.reflector

    def forward(self, psi: np.ndarray) -> np.ndarray:
        if psi.shape[0] != self.dim:
            raise ValueError(f"state has dimension {psi.shape[0]}, expected {self.dim}")
        out = self._reflect(psi)
        out[0] *= np.conj(self.phase)
        return out

    def inverse(self, psi: np.ndarray) -> np.ndarray:
        if psi.shape[0] != self.dim:
            raise ValueError(f"state has dimension {psi.shape[0]}, expected {self.dim}")
        out = np.array(psi, dtype=np.complex128)
        out[0] *= self.phase
        return self._reflect(out)

    def matrix(self) -> np.ndarray:
        """Dense form of the forward map, for verification on small dims."""
        if self.dim > _DENSE_OPERATOR_MAX_DIM:
            raise ValueError(
                f"dense basis rotation capped at {_DENSE_OPERATOR_MAX_DIM}, "
                f"got {self.dim}"
            )
        out = np.eye(self.dim, dtype=np.complex128)
        if self.reflector is not None:
            out -= (
                2.0
                / self._reflector_squared
                * np.outer(self.reflector, self.reflector.conj())
            )
        out[0, :] *= np.conj(self.phase)
        return out


def rotate_basis_to_target(target: np.ndarray) -> BasisRotation:
    """Basis change with rotation.forward(target) equal to e0 exactly."""
    return BasisRotation(target)


def uniform_state(dim: int) -> np.ndarray:
    if dim < 1:
        raise ValueError(f"dimension must be positive, got {dim}")
    return np.full(dim, 1.0 / math.sqrt(dim), dtype=np.complex128)


def grover_iterate(psi: np.ndarray, spec: SearchSpec) -> np.ndarray:
    """One oracle-plus-diffusion step in the rotated frame (marked index 0)."""
    if psi.shape[0] != spec.dim:
        raise ValueError(f"state has dimension {psi.shape[0]}, spec needs {spec.dim}")
    out = np.array(psi, dtype=np.complex128)
    out[0] = -out[0]
    out = 2.0 * out.mean() - out
    return out


def optimal_iterations(dim: int, marked: int = 1) -> int:
    """Iteration count closest to the success peak, rounding half up."""
    if dim < 2:
        raise ValueError(f"search space must have dimension >= 2, got {dim}")
    if not (1 <= marked < dim):
        raise ValueError(f"marked count must be in [1, {dim}), got {marked}")
    half_angle = math.asin(math.sqrt(marked / dim))
    exact = math.pi / (4.0 * half_angle) - 0.5
    # Half-up ties (dim 2 lands exactly on one) can fall an ulp short of the
    # boundary after the asin round-trip, so nudge before flooring.
    return max(0, math.floor(exact + 0.5 + 1e-9))


def success_probability(dim: int, iterations: int, marked: int = 1) -> float:
    """Closed-form probability of measuring a marked state after k iterations."""
    if dim < 2:
        raise ValueError(f"search space must have dimension >= 2, got {dim}")
    if not (1 <= marked < dim):
        raise ValueError(f"marked count must be in [1, {dim}), got {marked}")
    if iterations < 0:
        raise ValueError(f"iterations must be nonnegative, got {iterations}")
    half_angle = math.asin(math.sqrt(marked / dim))
    return math.sin((2 * iterations + 1) * half_angle) ** 2


def grover_search(spec: SearchSpec) -> np.ndarray:
    """Rotated-frame state after running the configured iteration count."""
    state = uniform_state(spec.dim)
    for _ in range(spec.resolved_iterations):
        state = grover_iterate(state, spec)
    return state


def detect(psi: np.ndarray, spec: SearchSpec, trials: int, seed: int) -> float:
    """Empirical frequency of measuring the target over seeded trials.

    psi lives in the rotated frame, so a hit is outcome 0.
    """
    if trials < 1:
        raise ValueError(f"trials must be at least 1, got {trials}")
    if psi.shape[0] != spec.dim:
        raise ValueError(f"state has dimension {psi.shape[0]}, spec needs {spec.dim}")
    probabilities = np.abs(psi) ** 2
    total = probabilities.sum()
    if total == 0.0:
        raise ValueError("cannot sample from a zero vector")
    probabilities /= total
    rng = np.random.default_rng(seed)
    outcomes = rng.choice(spec.dim, size=trials, p=probabilities)
    return float(np.mean(outcomes == 0))


@dataclass(frozen=True)
class DetectionOutcome:
    dim: int
    iterations: int
    expected_probability: float  # closed form at the same iteration count
    target_probability: float  # |amplitude|^2 actually reached
    frequency: float  # empirical hit rate over the trials


def run_detection(spec: SearchSpec, trials: int, seed: int) -> DetectionOutcome:
    """Full pipeline: search in the rotated frame, then measure repeatedly."""
    state = grover_search(spec)
    iterations = spec.resolved_iterations
    return DetectionOutcome(
        dim=spec.dim,
        iterations=iterations,
        expected_probability=success_probability(spec.dim, iterations),
        target_probability=float(abs(state[0]) ** 2),
        frequency=detect(state, spec, trials, seed),
    )


def filtering_matrices(spec: SearchSpec) -> tuple[np.ndarray, np.ndarray]:
    """Oracle and diffusion operators conjugated back to the original basis.

    Equivalent to iterating in the rotated frame; these dense forms exist
    so that equivalence can be checked, and are capped accordingly.
    """
    if spec.dim > _DENSE_OPERATOR_MAX_DIM:
        raise ValueError(
            f"dense search operators capped at {_DENSE_OPERATOR_MAX_DIM}, got {spec.dim}"
        )
    rotation = rotate_basis_to_target(spec.target)
    forward = rotation.matrix()
    backward = forward.conj().T
    oracle_rotated = np.eye(spec.dim, dtype=np.complex128)
    oracle_rotated[0, 0] = -1.0
    diffusion_rotated = (
        2.0 / spec.dim * np.ones((spec.dim, spec.dim), dtype=np.complex128)
        - np.eye(spec.dim, dtype=np.complex128)
    )
    return backward @ oracle_rotated @ forward, backward @ diffusion_rotated @ forward
