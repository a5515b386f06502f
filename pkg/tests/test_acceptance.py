"""End-to-end acceptance gate: ten criteria, one verdict line each.

Each test prints (and records for the terminal summary) a single
"[acceptance NN] name: PASS/FAIL" line with the measured numbers, then
asserts. The criteria run at their stated sizes, so this module is the
slow part of the suite.
"""
import itertools
import time

import numpy as np

from conftest import ACCEPTANCE_RESULTS
from qubitnet.analysis import (
    back_project,
    detect_period,
    dominant_components,
    dominant_set,
    fidelity,
    uniformity_deviation,
)
from qubitnet.detection import SearchSpec, run_detection, success_probability
from qubitnet.evolution import (
    EvolutionConfig,
    evolve,
    evolve_with_operator,
    inject_periodic_orbit,
    reverse_evolve,
    sweep,
)
from qubitnet.gates import (
    GateKind,
    apply_two_qubit_gate,
    dense_matrix_of,
    make_gate,
)
from qubitnet.lattice import LatticeTopology, basis_state
from qubitnet.state_prep import make_extended_operator, superpose

TOPO3 = LatticeTopology(side=3)
SCAN_THETAS = (0.005, 0.01, 0.02, 0.05)


def _verdict(number, name, passed, detail=""):
    line = f"[acceptance {number:02d}] {name}: {'PASS' if passed else 'FAIL'}"
    if detail:
        line += f"  ({detail})"
    ACCEPTANCE_RESULTS.append(line)
    print(line)
    assert passed, line


def _random_state(rng, dim):
    psi = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return psi / np.linalg.norm(psi)


def test_criterion_01_norm_stability():
    config = EvolutionConfig(
        topology=TOPO3,
        gate=make_gate(GateKind.CPRIME_EXACT, 0.01),
        steps=10000,
        renormalize=False,
    )
    started = time.perf_counter()
    final = evolve(basis_state(9, 27), config).final
    elapsed = time.perf_counter() - started
    drift = abs(np.linalg.norm(final) - 1.0)
    _verdict(
        1,
        "norm stability over 10,000 exact sweeps",
        drift < 1e-10 and elapsed < 10.0,
        f"|norm - 1| = {drift:.3e}, {elapsed:.2f}s",
    )


def test_criterion_02_kernel_matches_dense_oracle():
    worst = 0.0
    for n_qubits in (2, 3):
        dim = 1 << n_qubits
        rng = np.random.default_rng(100 + n_qubits)
        for kind in GateKind:
            theta = 0.0 if kind is GateKind.DISCRETE_CNOT else 0.19
            gate = make_gate(kind, theta)
            for control, target in itertools.permutations(range(n_qubits), 2):
                matrix = dense_matrix_of(gate, control, target, n_qubits)
                for _ in range(20):
                    psi = _random_state(rng, dim)
                    diff = np.max(
                        np.abs(
                            apply_two_qubit_gate(psi, gate, control, target)
                            - matrix @ psi
                        )
                    )
                    worst = max(worst, diff)
    _verdict(
        2,
        "gate kernel equals the dense oracle",
        worst <= 1e-12,
        f"worst deviation {worst:.3e}",
    )


def test_criterion_03_reversibility():
    config = EvolutionConfig(
        topology=TOPO3,
        gate=make_gate(GateKind.CPRIME_EXACT, 0.01),
        steps=1000,
        renormalize=False,
    )
    rng = np.random.default_rng(123)
    lowest = 1.0
    for index in rng.choice(512, size=20, replace=False):
        initial = basis_state(9, int(index))
        recovered = reverse_evolve(evolve(initial, config))
        lowest = min(lowest, fidelity(recovered, initial))
    _verdict(
        3,
        "1000 sweeps forward then reverse recover the start",
        lowest > 1 - 1e-8,
        f"worst fidelity 1 - {1 - lowest:.3e}",
    )


def test_criterion_04_inner_product_preservation():
    config = EvolutionConfig(
        topology=TOPO3,
        gate=make_gate(GateKind.CPRIME_EXACT, 0.01),
        steps=1000,
        renormalize=False,
    )
    rng = np.random.default_rng(7)
    psi = _random_state(rng, 512)
    phi = _random_state(rng, 512)
    before = fidelity(psi, phi)
    after = fidelity(evolve(psi, config).final, evolve(phi, config).final)
    drift = abs(after - before)
    _verdict(
        4,
        "mutual fidelity is sweep-invariant",
        drift < 1e-9,
        f"drift {drift:.3e}",
    )


def _scan_run(initial_index, theta):
    config = EvolutionConfig(
        topology=TOPO3,
        gate=make_gate(GateKind.CPRIME_FIRST_ORDER, theta),
        steps=1000,
        renormalize=True,
    )
    return evolve(basis_state(9, initial_index), config).final


def test_criterion_05_memory_write_in():
    satellites = {11, 19, 25, 26}
    outcomes = []
    chosen = None
    for theta in SCAN_THETAS:
        entries = dominant_components(_scan_run(27, theta), 5).entries
        top = entries[0]
        next_four = {entry.index for entry in entries[1:5]}
        qualifies = (
            top.index == 27
            and top.magnitude > entries[1].magnitude
            and next_four == satellites
        )
        outcomes.append(
            f"theta={theta}: top {top.index} ({top.magnitude:.3f}), "
            f"next {sorted(next_four)}"
        )
        if qualifies and chosen is None:
            chosen = (theta, entries)
    if chosen is None:
        _verdict(
            5,
            "write-in pattern dominates after the theta scan",
            False,
            "no scanned theta leaves 27 on top with satellites "
            f"{sorted(satellites)}; " + "; ".join(outcomes),
        )
    else:
        theta, entries = chosen
        amplitudes_ok = abs(entries[0].magnitude - 0.71) <= 0.1 and all(
            abs(entry.magnitude - 0.21) <= 0.1 for entry in entries[1:5]
        )
        _verdict(
            5,
            "write-in pattern dominates after the theta scan",
            amplitudes_ok,
            f"theta={theta}, head magnitudes "
            + ", ".join(f"{entry.magnitude:.3f}" for entry in entries),
        )


def test_criterion_06_back_projection_recovers_the_pattern():
    projections = []
    hit = False
    for theta in SCAN_THETAS:
        final = _scan_run(17, theta)
        projected = back_project(dominant_set(final, ratio=0.8))
        projections.append(f"theta={theta}: AND={projected}")
        hit = hit or projected == 17
    _verdict(
        6,
        "dominant set back-projects to the stored pattern",
        hit,
        "; ".join(projections),
    )


def test_criterion_07_nonunitary_degeneration():
    config = EvolutionConfig(
        topology=TOPO3,
        gate=make_gate(GateKind.NONUNITARY_CONT, 0.01),
        steps=1,
        renormalize=True,
    )
    total_sweeps = 50000
    window = 100
    deviations = np.empty(total_sweeps)
    state = basis_state(9, 495)
    for step in range(total_sweeps):
        state = sweep(state, config)
        deviations[step] = uniformity_deviation(state)
    reached = bool(np.any(deviations < 1e-3))
    window_maxima = deviations.reshape(total_sweeps // window, window).max(axis=1)
    settled = window_maxima[1:]  # first window is the transient
    monotone = bool(np.all(np.diff(settled) <= 1e-12))
    _verdict(
        7,
        "long nonunitary run flattens the state",
        reached and monotone,
        f"min deviation {deviations.min():.7f} at sweep "
        f"{int(deviations.argmin()) + 1} (threshold 1e-3), window maxima "
        f"non-increasing: {monotone}",
    )


def test_criterion_08_preparation_norms():
    rng = np.random.default_rng(2024)
    worst = 0.0
    for _ in range(1000):
        weight = np.sqrt(rng.uniform(0.02, 0.98))
        phase_a, phase_b = np.exp(2j * np.pi * rng.random(2))
        a = weight * phase_a
        b = np.sqrt(1 - weight**2) * phase_b
        raw = rng.standard_normal((512, 2)) + 1j * rng.standard_normal((512, 2))
        pair, _ = np.linalg.qr(raw)
        operator = make_extended_operator(a, b, pair[:, 1])
        prepared = superpose(operator, pair[:, 0])
        worst = max(worst, abs(np.linalg.norm(prepared) - 1.0))
    inv_sqrt2 = 1 / np.sqrt(2)
    operator = make_extended_operator(inv_sqrt2, inv_sqrt2, basis_state(9, 9))
    reference = superpose(operator, basis_state(9, 5))
    amp_error = max(
        abs(abs(reference[5]) - inv_sqrt2), abs(abs(reference[9]) - inv_sqrt2)
    )
    _verdict(
        8,
        "prepared superpositions keep unit norm",
        worst < 1e-10 and amp_error < 1e-12,
        f"worst |norm - 1| = {worst:.3e} over 1000 instances, "
        f"equal-weight amplitude error {amp_error:.3e}",
    )


def test_criterion_09_detection_probability():
    spec = SearchSpec(target=basis_state(9, 17), iterations=17)
    outcome = run_detection(spec, trials=1000, seed=42)
    expected = success_probability(512, 17)
    probability_error = abs(outcome.target_probability - expected)
    _verdict(
        9,
        "search reaches the closed-form probability",
        probability_error < 1e-9 and outcome.frequency > 0.99,
        f"|p - expected| = {probability_error:.3e}, "
        f"frequency {outcome.frequency:.3f} over 1000 trials",
    )


def test_criterion_10_injected_periodicity():
    results = []
    passed = True
    for period in (4, 8, 16):
        rotation = inject_periodic_orbit(
            [basis_state(9, 5), basis_state(9, 9)], period=period
        )
        start = (basis_state(9, 5) + basis_state(9, 3)) / np.sqrt(2)
        trajectory = evolve_with_operator(start, rotation, steps=period)
        report = detect_period(trajectory, delta=1e-6)
        ok = report.period == period and report.recurrence_fidelity > 1 - 1e-9
        passed = passed and ok
        results.append(f"T={period}: detected {report.period}")
    _verdict(
        10,
        "injected orbits recur at exactly their period",
        passed,
        "; ".join(results),
    )
