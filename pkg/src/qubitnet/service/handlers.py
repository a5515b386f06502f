"""The four operations behind the endpoints, callable in process.

The CLI calls these directly by default; the HTTP layer adds nothing but
transport. Domain failures surface as ValueError (or its Snapshot
subclasses) and are mapped to exit codes or HTTP statuses by the callers.
"""
from __future__ import annotations

import numpy as np

from ..analysis import (
    DominanceReport,
    back_project,
    detect_period,
    dominant_components,
    dominant_set,
    uniformity_deviation,
)
from ..detection import SearchSpec, run_detection
from ..evolution import EvolutionConfig, Trajectory, evolve
from ..gates import GateKind, make_gate
from ..lattice import LatticeTopology
from ..snapshots import SnapshotError, format_snapshot, parse_snapshot
from ..state_prep import make_extended_operator, superpose
from .models import (
    AnalyzeRequest,
    AnalyzeResponse,
    DetectRequest,
    DetectResponse,
    DominanceEntryModel,
    EvolveRequest,
    EvolveResponse,
    PrepareRequest,
    PrepareResponse,
    SnapshotModel,
)


def _head_models(report: DominanceReport) -> list[DominanceEntryModel]:
    return [
        DominanceEntryModel(
            index=entry.index,
            magnitude=entry.magnitude,
            re=entry.amplitude.real,
            im=entry.amplitude.imag,
        )
        for entry in report.entries
    ]


def handle_evolve(request: EvolveRequest) -> EvolveResponse:
    topology = LatticeTopology(side=request.n)
    gate = make_gate(GateKind(request.gate), request.theta)
    config = EvolutionConfig(
        topology=topology,
        gate=gate,
        steps=request.steps,
        renormalize=request.renormalize,
        snapshot_every=request.snapshot_every,
    )
    initial = request.initial.to_spec().build(topology.n_qubits)
    trajectory = evolve(initial, config)

    def render(step: int, state: np.ndarray) -> SnapshotModel:
        text = format_snapshot(
            state, request.n, gate.kind, gate.theta, steps=step
        )
        return SnapshotModel(sweep=step, text=text)

    snapshots = []
    if request.snapshot_every > 0:
        snapshots.append(render(0, trajectory.initial))
    snapshots.extend(render(step, state) for step, state in trajectory.snapshots)
    if not snapshots:  # zero-step run with cadence 0
        snapshots.append(render(0, trajectory.initial))
    final = trajectory.final
    return EvolveResponse(
        n=request.n,
        gate=request.gate,
        theta=gate.theta,
        steps=request.steps,
        final_norm=float(np.linalg.norm(final)),
        head=_head_models(dominant_components(final, request.top_k)),
        snapshots=snapshots,
    )


def _states_from_snapshots(texts: list[str]) -> list[tuple[int, np.ndarray]]:
    parsed = []
    for text in texts:
        header, state = parse_snapshot(text)
        parsed.append((header.steps, state))
    return parsed


def handle_analyze(request: AnalyzeRequest) -> AnalyzeResponse:
    states = _states_from_snapshots(request.snapshots)
    if request.kind == "dominance":
        _, state = states[-1]
        return AnalyzeResponse(
            kind=request.kind,
            head=_head_models(dominant_components(state, request.k)),
        )
    if request.kind == "backproject":
        _, state = states[-1]
        indices = dominant_set(state, ratio=request.ratio)
        return AnalyzeResponse(
            kind=request.kind,
            dominant_indices=indices,
            back_projected=back_project(indices),
            head=_head_models(dominant_components(state, request.k)),
        )
    if request.kind == "uniformity":
        _, state = states[-1]
        return AnalyzeResponse(
            kind=request.kind, uniformity_deviation=uniformity_deviation(state)
        )
    # period: rebuild the trajectory from per-sweep snapshots 0..m
    states.sort(key=lambda pair: pair[0])
    numbers = [step for step, _ in states]
    if numbers[0] != 0:
        raise SnapshotError("period analysis needs the sweep-0 snapshot")
    trajectory = Trajectory(initial=states[0][1], snapshots=states[1:], config=None)
    report = detect_period(trajectory, delta=request.delta)
    return AnalyzeResponse(
        kind=request.kind,
        period=report.period,
        recurrence_fidelity=report.recurrence_fidelity,
    )


def handle_prepare(request: PrepareRequest) -> PrepareResponse:
    topology = LatticeTopology(side=request.n)
    x = request.x.to_spec().build(topology.n_qubits)
    x_prime = request.x_prime.to_spec().build(topology.n_qubits)
    operator = make_extended_operator(
        request.a.to_complex(), request.b.to_complex(), x_prime
    )
    prepared = superpose(operator, x)
    text = format_snapshot(
        prepared, request.n, GateKind.CPRIME_EXACT, theta=0.0, steps=0
    )
    return PrepareResponse(
        n=request.n,
        norm=float(np.linalg.norm(prepared)),
        head=_head_models(dominant_components(prepared, request.top_k)),
        snapshot=SnapshotModel(sweep=0, text=text),
    )


def handle_detect(request: DetectRequest) -> DetectResponse:
    if request.target_snapshot is not None:
        _, target = parse_snapshot(request.target_snapshot)
    else:
        assert request.target is not None
        topology = LatticeTopology(side=request.n)
        target = request.target.to_spec().build(topology.n_qubits)
    spec = SearchSpec(target=target, iterations=request.iterations)
    outcome = run_detection(spec, trials=request.trials, seed=request.seed)
    return DetectResponse(
        dim=outcome.dim,
        iterations=outcome.iterations,
        expected_probability=outcome.expected_probability,
        target_probability=outcome.target_probability,
        frequency=outcome.frequency,
        trials=request.trials,
        seed=request.seed,
    )
