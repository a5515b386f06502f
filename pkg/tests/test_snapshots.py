import numpy as np
import pytest

from qubitnet.gates import GateKind
from qubitnet.lattice import basis_state
from qubitnet.snapshots import (
    SNAPSHOT_MAGIC,
    SNAPSHOT_VERSION,
    SnapshotError,
    SnapshotVersionError,
    format_snapshot,
    parse_snapshot,
    read_snapshot,
    write_snapshot,
    write_text_atomic,
)


def _random_state(rng, dim):
    psi = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return psi / np.linalg.norm(psi)


def _sample_text(psi=None, **overrides):
    if psi is None:
        psi = basis_state(9, 17)
    fields = dict(side=3, gate_kind=GateKind.CPRIME_EXACT, theta=0.01, steps=5)
    fields.update(overrides)
    return format_snapshot(psi, **fields)


def test_round_trip_is_bit_exact():
    rng = np.random.default_rng(1)
    psi = _random_state(rng, 512)
    header, back = parse_snapshot(_sample_text(psi))
    assert np.array_equal(back, psi)
    assert header.side == 3
    assert header.gate_kind is GateKind.CPRIME_EXACT
    assert header.theta == 0.01
    assert header.steps == 5
    assert header.dim == 512
    assert header.records == 512


def test_header_layout():
    text = _sample_text()
    lines = text.splitlines()
    assert lines[0] == f"{SNAPSHOT_MAGIC} {SNAPSHOT_VERSION}"
    assert lines[1] == "n=3"
    assert lines[2] == "gate=cprime_exact"
    assert lines[3].startswith("theta=")
    assert lines[4] == "steps=5"
    assert lines[5].startswith("norm=")
    assert lines[6].startswith("floor=")
    assert lines[7] == "records=1"
    assert lines[8] == "17 1 0"
    assert text.endswith("\n")


def test_floor_drops_negligible_amplitudes():
    psi = basis_state(9, 3).astype(np.complex128)
    psi[300] = 1e-13
    text = _sample_text(psi)
    header, back = parse_snapshot(text)
    assert header.records == 1
    assert back[300] == 0.0
    kept = format_snapshot(
        psi, side=3, gate_kind=GateKind.CPRIME_EXACT, theta=0.01, steps=5, floor=0.0
    )
    assert parse_snapshot(kept)[0].records == 2


def test_records_are_sorted_by_index():
    psi = np.zeros(512, dtype=np.complex128)
    psi[499] = psi[3] = psi[100] = 1 / np.sqrt(3)
    records = _sample_text(psi).splitlines()[8:]
    assert [int(line.split()[0]) for line in records] == [3, 100, 499]


def test_unknown_version_is_refused():
    text = _sample_text().replace("v1", "v2", 1)
    with pytest.raises(SnapshotVersionError, match="v2"):
        parse_snapshot(text)
    assert issubclass(SnapshotVersionError, SnapshotError)
    assert issubclass(SnapshotError, ValueError)


def test_missing_magic_is_refused():
    with pytest.raises(SnapshotError, match="magic"):
        parse_snapshot("just some text\n1 2 3\n")


def test_header_order_is_enforced():
    lines = _sample_text().splitlines()
    lines[1], lines[2] = lines[2], lines[1]
    with pytest.raises(SnapshotError, match="expected 'n="):
        parse_snapshot("\n".join(lines) + "\n")


def test_truncated_records_are_refused():
    rng = np.random.default_rng(2)
    lines = _sample_text(_random_state(rng, 512)).splitlines()
    with pytest.raises(SnapshotError, match="records"):
        parse_snapshot("\n".join(lines[:-10]) + "\n")


def test_bad_record_lines_are_refused():
    text = _sample_text().replace("17 1 0", "17 1")
    with pytest.raises(SnapshotError, match="index re im"):
        parse_snapshot(text)
    text = _sample_text().replace("17 1 0", "17 one 0")
    with pytest.raises(SnapshotError, match="bad record"):
        parse_snapshot(text)


def test_out_of_order_records_are_refused():
    psi = np.zeros(512, dtype=np.complex128)
    psi[3] = psi[100] = 1 / np.sqrt(2)
    lines = _sample_text(psi).splitlines()
    lines[8], lines[9] = lines[9], lines[8]
    with pytest.raises(SnapshotError, match="strictly increasing"):
        parse_snapshot("\n".join(lines) + "\n")


def test_out_of_range_index_is_refused():
    text = _sample_text().replace("17 1 0", "512 1 0")
    with pytest.raises(SnapshotError, match="outside dimension"):
        parse_snapshot(text)


def test_tampered_norm_is_refused():
    text = _sample_text()
    tampered = "\n".join(
        "norm=0.5" if line.startswith("norm=") else line
        for line in text.splitlines()
    )
    with pytest.raises(SnapshotError, match="norm mismatch"):
        parse_snapshot(tampered + "\n")


def test_inconsistent_floor_fails_the_norm_check():
    # a floor that eats real weight leaves the records unable to account
    # for the recorded norm; such files are refused on read
    text = _sample_text(
        np.full(512, 1 / np.sqrt(512), dtype=np.complex128), floor=0.05
    )
    with pytest.raises(SnapshotError, match="norm mismatch"):
        parse_snapshot(text)


def test_bad_header_values_are_refused():
    text = _sample_text().replace("steps=5", "steps=five")
    with pytest.raises(SnapshotError, match="steps"):
        parse_snapshot(text)
    text = _sample_text().replace("gate=cprime_exact", "gate=telepathy")
    with pytest.raises(SnapshotError, match="gate"):
        parse_snapshot(text)
    text = _sample_text().replace("n=3", "n=5")
    with pytest.raises(SnapshotError, match="out of range"):
        parse_snapshot(text)


def test_format_rejects_mismatched_dimensions():
    with pytest.raises(SnapshotError, match="dimension"):
        format_snapshot(
            basis_state(4, 3), side=3, gate_kind=GateKind.CPRIME_EXACT,
            theta=0.0, steps=0,
        )


def test_file_round_trip(tmp_path):
    rng = np.random.default_rng(3)
    psi = _random_state(rng, 512)
    path = tmp_path / "state.txt"
    write_snapshot(path, psi, side=3, gate_kind=GateKind.CPRIME_EXACT,
                   theta=0.01, steps=7)
    header, back = read_snapshot(path)
    assert np.array_equal(back, psi)
    assert header.steps == 7


def test_atomic_write_leaves_no_droppings(tmp_path):
    path = tmp_path / "out.txt"
    write_text_atomic(path, "first\n")
    write_text_atomic(path, "second\n")
    assert path.read_text() == "second\n"
    assert [p.name for p in tmp_path.iterdir()] == ["out.txt"]
