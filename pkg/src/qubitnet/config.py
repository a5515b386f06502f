"""Flat key=value run configuration.

Tokens are whitespace-separated key=value pairs; '#' starts a comment that
runs to the end of its line. Recognized keys:

    n                lattice side (default 3; n*n capped at 24 qubits)
    gate             discrete_cnot | continuous_cnot | cprime_first_order |
                     cprime_exact | nonunitary_cont (default cprime_exact)
    theta            mixing angle per gate application (default 0.01)
    steps            full-network sweeps to run (default 1000)
    renormalize      true | false | auto (default auto: on for the kinds
                     whose norm drifts, off for the exact-unitary ones)
    snapshot_every   snapshot cadence in sweeps, 0 = final only (default 0)
    initial          initial state spec (default basis index 0)
    seed             unsigned 64-bit seed for measurement sampling (default 0)
    out              output path for written snapshots
    a, b             complex weights for prepare (default 1/sqrt(2) each)
    x                prepare input state spec
    x_prime          prepare blended state spec
    target           detect target state spec
    target_snapshot  path of a snapshot file holding the detect target
    iterations       detect iteration count, or auto (default auto)
    trials           detect measurement repetitions (default 1000)

A state spec is a bare basis index ("initial=495"), an excited qubit set
("initial=set:0,4", empty set allowed), or explicit amplitudes
("initial=amps:5=0.7071,9=0.7071", values may be complex like 0.5+0.5j).
Amplitude lists are normalized when built; if their raw norm is off by
more than 1e-6 a warning is emitted first.
"""
from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .gates import GateKind
from .lattice import MAX_QUBITS, basis_index_from_set, basis_state, state_from_amplitudes

_STATE_NORM_WARN_TOL = 1e-6


class ConfigError(ValueError):
    """A malformed or out-of-range run configuration."""

    def __init__(self, message: str, key: str | None = None, line: int | None = None):
        self.key = key
        self.line = line
        prefix = ""
        if line is not None:
            prefix += f"line {line}: "
        if key is not None:
            prefix += f"key '{key}': "
        super().__init__(prefix + message)


@dataclass(frozen=True)
class StateSpec:
    """One of the three textual state forms, buildable at a known size."""

    kind: str  # "basis" | "excited" | "amplitudes"
    basis: int = 0
    excited: tuple[int, ...] = ()
    amplitudes: tuple[tuple[int, complex], ...] = ()

    def build(self, n_qubits: int) -> np.ndarray:
        if self.kind == "basis":
            return basis_state(n_qubits, self.basis)
        if self.kind == "excited":
            return basis_state(n_qubits, basis_index_from_set(self.excited, n_qubits))
        psi = state_from_amplitudes(n_qubits, self.amplitudes)
        norm = np.linalg.norm(psi)
        if norm == 0.0:
            raise ValueError("amplitude state spec is the zero vector")
        if abs(norm - 1.0) > _STATE_NORM_WARN_TOL:
            warnings.warn(
                f"state spec has norm {norm:.12g}, renormalizing", stacklevel=2
            )
        return psi / norm


def parse_state_spec(raw: str) -> StateSpec:
    """Parse one of the textual state forms (see the module docstring)."""
    raw = raw.strip()
    if raw.startswith("set:"):
        body = raw[len("set:"):]
        qubits: list[int] = []
        if body:
            for piece in body.split(","):
                qubit = _parse_int(piece, "set entry")
                if qubit in qubits:
                    raise ValueError(f"duplicate qubit {qubit} in set spec")
                qubits.append(qubit)
        return StateSpec(kind="excited", excited=tuple(qubits))
    if raw.startswith("amps:"):
        body = raw[len("amps:"):]
        if not body:
            raise ValueError("empty amplitude list")
        entries: list[tuple[int, complex]] = []
        for piece in body.split(","):
            if "=" not in piece:
                raise ValueError(f"amplitude entry {piece!r} is not index=value")
            index_text, value_text = piece.split("=", 1)
            index = _parse_int(index_text, "amplitude index")
            try:
                value = complex(value_text)
            except ValueError:
                raise ValueError(f"bad amplitude value {value_text!r}") from None
            if not (math.isfinite(value.real) and math.isfinite(value.imag)):
                raise ValueError(f"amplitude {value_text!r} is not finite")
            entries.append((index, value))
        return StateSpec(kind="amplitudes", amplitudes=tuple(entries))
    return StateSpec(kind="basis", basis=_parse_int(raw, "basis index"))


def _parse_int(text: str, what: str) -> int:
    try:
        return int(text.strip())
    except ValueError:
        raise ValueError(f"bad {what} {text.strip()!r}") from None


@dataclass
class RunConfig:
    """Parsed configuration with defaults filled in."""

    side: int = 3
    gate_kind: GateKind = GateKind.CPRIME_EXACT
    theta: float = 0.01
    steps: int = 1000
    renormalize: bool | None = None
    snapshot_every: int = 0
    initial: StateSpec = field(default_factory=lambda: StateSpec(kind="basis"))
    seed: int = 0
    out: str | None = None
    a: complex = complex(1.0 / math.sqrt(2.0))
    b: complex = complex(1.0 / math.sqrt(2.0))
    x: StateSpec | None = None
    x_prime: StateSpec | None = None
    target: StateSpec | None = None
    target_snapshot: str | None = None
    iterations: int | None = None
    trials: int = 1000

    @property
    def n_qubits(self) -> int:
        return self.side * self.side


def _tokenize(text: str) -> list[tuple[int, str]]:
    tokens = []
    for line_number, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0]
        for token in line.split():
            tokens.append((line_number, token))
    return tokens


def _parse_bool_or_auto(raw: str) -> bool | None:
    lowered = raw.lower()
    if lowered == "true":
        return True
    if lowered == "false":
        return False
    if lowered == "auto":
        return None
    raise ValueError(f"expected true, false or auto, got {raw!r}")


def _parse_complex(raw: str) -> complex:
    try:
        value = complex(raw)
    except ValueError:
        raise ValueError(f"bad complex value {raw!r}") from None
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise ValueError(f"complex value {raw!r} is not finite")
    return value


def parse_config(text: str) -> RunConfig:
    """Parse config text, rejecting unknown keys and out-of-range values."""
    config = RunConfig()
    seen: set[str] = set()
    for line_number, token in _tokenize(text):
        if "=" not in token:
            raise ConfigError(
                f"token {token!r} is not key=value", line=line_number
            )
        key, raw = token.split("=", 1)
        if key in seen:
            raise ConfigError("duplicate key", key=key, line=line_number)
        seen.add(key)
        try:
            _apply_key(config, key, raw)
        except ConfigError:
            raise
        except ValueError as error:
            raise ConfigError(str(error), key=key, line=line_number) from None
    _validate(config)
    return config


def _apply_key(config: RunConfig, key: str, raw: str) -> None:
    if key == "n":
        config.side = int(raw)
    elif key == "gate":
        try:
            config.gate_kind = GateKind(raw)
        except ValueError:
            names = ", ".join(kind.value for kind in GateKind)
            raise ValueError(f"unknown gate {raw!r}, expected one of: {names}") from None
    elif key == "theta":
        config.theta = float(raw)
    elif key == "steps":
        config.steps = int(raw)
    elif key == "renormalize":
        config.renormalize = _parse_bool_or_auto(raw)
    elif key == "snapshot_every":
        config.snapshot_every = int(raw)
    elif key == "initial":
        config.initial = parse_state_spec(raw)
    elif key == "seed":
        config.seed = int(raw)
    elif key == "out":
        config.out = raw
    elif key == "a":
        config.a = _parse_complex(raw)
    elif key == "b":
        config.b = _parse_complex(raw)
    elif key == "x":
        config.x = parse_state_spec(raw)
    elif key == "x_prime":
        config.x_prime = parse_state_spec(raw)
    elif key == "target":
        config.target = parse_state_spec(raw)
    elif key == "target_snapshot":
        config.target_snapshot = raw
    elif key == "iterations":
        config.iterations = None if raw.lower() == "auto" else int(raw)
    elif key == "trials":
        config.trials = int(raw)
    else:
        raise ValueError(f"unknown key {key!r}")


def _validate(config: RunConfig) -> None:
    if config.side < 2:
        raise ConfigError(f"lattice side must be at least 2, got {config.side}", key="n")
    if config.n_qubits > MAX_QUBITS:
        raise ConfigError(
            f"n={config.side} needs {config.n_qubits} qubits, over the "
            f"{MAX_QUBITS}-qubit ceiling",
            key="n",
        )
    if not math.isfinite(config.theta):
        raise ConfigError("theta must be finite", key="theta")
    if config.steps < 0:
        raise ConfigError(f"steps must be nonnegative, got {config.steps}", key="steps")
    if config.snapshot_every < 0:
        raise ConfigError(
            f"snapshot_every must be nonnegative, got {config.snapshot_every}",
            key="snapshot_every",
        )
    if not (0 <= config.seed < 2**64):
        raise ConfigError("seed must fit in an unsigned 64-bit integer", key="seed")
    if config.iterations is not None and config.iterations < 0:
        raise ConfigError(
            f"iterations must be nonnegative, got {config.iterations}", key="iterations"
        )
    if config.trials < 1:
        raise ConfigError(f"trials must be at least 1, got {config.trials}", key="trials")
    if not cmath.isfinite(config.a) or not cmath.isfinite(config.b):
        raise ConfigError("weights a and b must be finite", key="a")
    if config.target is not None and config.target_snapshot is not None:
        raise ConfigError(
            "target and target_snapshot are mutually exclusive", key="target"
        )
