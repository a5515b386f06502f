"""Plain-text snapshot files for amplitude vectors.

Layout, line by line:

    qubitnet-snapshot v1
    n=3
    gate=cprime_exact
    theta=<float>
    steps=<int>
    norm=<float>
    floor=<float>
    records=<int>
    <index> <re> <im>
    ...

Floats are written with 17 significant digits so a written amplitude reads
back bit for bit. Records hold every amplitude whose magnitude exceeds the
floor, sorted by ascending basis index; everything else is zero by
omission. The header norm is the norm of the full vector at write time and
is re-checked against the records on read.
"""
from __future__ import annotations

import os
import tempfile
from dataclasses import dataclass

import numpy as np

from .gates import GateKind
from .lattice import MAX_QUBITS

SNAPSHOT_MAGIC = "qubitnet-snapshot"
SNAPSHOT_VERSION = "v1"
DEFAULT_FLOOR = 1e-12

_HEADER_KEYS = ("n", "gate", "theta", "steps", "norm", "floor", "records")


class SnapshotError(ValueError):
    """A snapshot file that cannot be parsed or fails its invariants."""


class SnapshotVersionError(SnapshotError):
    """A snapshot written by an incompatible format version."""


@dataclass(frozen=True)
class SnapshotHeader:
    side: int
    gate_kind: GateKind
    theta: float
    steps: int
    norm: float
    floor: float
    records: int

    @property
    def n_qubits(self) -> int:
        return self.side * self.side

    @property
    def dim(self) -> int:
        return 1 << self.n_qubits


def _format_float(value: float) -> str:
    return format(float(value), ".17g")


def format_snapshot(
    psi: np.ndarray,
    side: int,
    gate_kind: GateKind | str,
    theta: float,
    steps: int,
    floor: float = DEFAULT_FLOOR,
) -> str:
    """Render an amplitude vector to the snapshot text format."""
    gate_kind = GateKind(gate_kind)
    dim = 1 << (side * side)
    if psi.shape[0] != dim:
        raise SnapshotError(
            f"state has dimension {psi.shape[0]}, an n={side} snapshot needs {dim}"
        )
    kept = np.flatnonzero(np.abs(psi) > floor)
    lines = [
        f"{SNAPSHOT_MAGIC} {SNAPSHOT_VERSION}",
        f"n={side}",
        f"gate={gate_kind.value}",
        f"theta={_format_float(theta)}",
        f"steps={steps}",
        f"norm={_format_float(np.linalg.norm(psi))}",
        f"floor={_format_float(floor)}",
        f"records={kept.size}",
    ]
    for index in kept:
        amplitude = psi[index]
        lines.append(
            f"{int(index)} {_format_float(amplitude.real)} {_format_float(amplitude.imag)}"
        )
    return "\n".join(lines) + "\n"


def _header_value(lines: list[str], position: int, key: str) -> str:
    line_number = position + 2  # header entries start on line 2
    if position >= len(lines):
        raise SnapshotError(f"truncated header, missing '{key}' on line {line_number}")
    line = lines[position]
    prefix = key + "="
    if not line.startswith(prefix):
        raise SnapshotError(
            f"line {line_number}: expected '{key}=...', got {line!r}"
        )
    return line[len(prefix):]


def parse_snapshot(text: str) -> tuple[SnapshotHeader, np.ndarray]:
    """Parse snapshot text back into its header and full amplitude vector."""
    lines = text.splitlines()
    if not lines or not lines[0].startswith(SNAPSHOT_MAGIC):
        raise SnapshotError("not a snapshot: missing magic first line")
    version = lines[0][len(SNAPSHOT_MAGIC):].strip()
    if version != SNAPSHOT_VERSION:
        raise SnapshotVersionError(
            f"snapshot version {version or '(none)'} is not supported, "
            f"this build reads {SNAPSHOT_VERSION}"
        )
    body = lines[1:]
    values = {}
    for position, key in enumerate(_HEADER_KEYS):
        raw = _header_value(body, position, key)
        try:
            if key in ("n", "steps", "records"):
                values[key] = int(raw)
            elif key == "gate":
                values[key] = GateKind(raw)
            else:
                values[key] = float(raw)
        except ValueError as error:
            raise SnapshotError(f"bad header value for '{key}': {raw!r}") from error
    side = values["n"]
    if side < 2 or side * side > MAX_QUBITS:
        raise SnapshotError(f"snapshot lattice side {side} out of range")
    if values["steps"] < 0 or values["records"] < 0:
        raise SnapshotError("negative counts in snapshot header")
    header = SnapshotHeader(
        side=side,
        gate_kind=values["gate"],
        theta=values["theta"],
        steps=values["steps"],
        norm=values["norm"],
        floor=values["floor"],
        records=values["records"],
    )
    record_lines = body[len(_HEADER_KEYS):]
    if len(record_lines) != header.records:
        raise SnapshotError(
            f"header promises {header.records} records, file has {len(record_lines)}"
        )
    psi = np.zeros(header.dim, dtype=np.complex128)
    previous = -1
    for offset, line in enumerate(record_lines):
        line_number = offset + len(_HEADER_KEYS) + 2
        parts = line.split()
        if len(parts) != 3:
            raise SnapshotError(
                f"line {line_number}: expected 'index re im', got {line!r}"
            )
        try:
            index = int(parts[0])
            re = float(parts[1])
            im = float(parts[2])
        except ValueError as error:
            raise SnapshotError(f"line {line_number}: bad record {line!r}") from error
        if index <= previous:
            raise SnapshotError(
                f"line {line_number}: indices must be strictly increasing"
            )
        if index >= header.dim:
            raise SnapshotError(
                f"line {line_number}: index {index} outside dimension {header.dim}"
            )
        previous = index
        psi[index] = complex(re, im)
    recomputed = float(np.linalg.norm(psi))
    if abs(recomputed - header.norm) > 1e-9:
        raise SnapshotError(
            f"norm mismatch: header says {header.norm!r}, records give {recomputed!r}"
        )
    return header, psi


def write_snapshot(
    path: str | os.PathLike,
    psi: np.ndarray,
    side: int,
    gate_kind: GateKind | str,
    theta: float,
    steps: int,
    floor: float = DEFAULT_FLOOR,
) -> None:
    """Write a snapshot atomically (temp file in place, then rename)."""
    text = format_snapshot(psi, side, gate_kind, theta, steps, floor)
    write_text_atomic(path, text)


def write_text_atomic(path: str | os.PathLike, text: str) -> None:
    directory = os.path.dirname(os.fspath(path)) or "."
    descriptor, temp_path = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(descriptor, "w", newline="\n") as handle:
            handle.write(text)
        os.replace(temp_path, path)
    except BaseException:
        try:
            os.unlink(temp_path)
        except OSError:
            pass
        raise


def read_snapshot(path: str | os.PathLike) -> tuple[SnapshotHeader, np.ndarray]:
    with open(path, "r") as handle:
        return parse_snapshot(handle.read())
