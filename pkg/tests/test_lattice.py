import numpy as np
import pytest

from qubitnet.lattice import (
    LatticeTopology,
    basis_index_from_set,
    basis_state,
    qubit_state,
    state_from_amplitudes,
)


def test_neighbor_rows_on_the_3x3_lattice():
    topo = LatticeTopology(side=3)
    assert topo.neighbors(4) == (5, 3, 7, 1)
    assert topo.neighbors(0) == (1, 2, 3, 6)
    assert topo.neighbors(8) == (6, 7, 2, 5)


def test_neighbor_relation_is_symmetric_under_wraparound():
    topo = LatticeTopology(side=3)
    for q in range(topo.n_qubits):
        right, left, down, up = topo.neighbors(q)
        assert topo.neighbors(right)[1] == q
        assert topo.neighbors(left)[0] == q
        assert topo.neighbors(down)[3] == q
        assert topo.neighbors(up)[2] == q


def test_side_2_keeps_duplicate_neighbors():
    # wraparound folds right onto left (and down onto up); the duplicates
    # stay so every node receives four gates per sweep on any side
    topo = LatticeTopology(side=2)
    assert topo.neighbors(0) == (1, 1, 2, 2)
    assert topo.neighbors(3) == (2, 2, 1, 1)


def test_linearize_covers_all_qubits_once():
    topo = LatticeTopology(side=4)
    indices = [topo.linearize(r, c) for r in range(4) for c in range(4)]
    assert sorted(indices) == list(range(16))
    assert topo.linearize(1, 1) == 5
    with pytest.raises(ValueError):
        topo.linearize(4, 0)
    with pytest.raises(ValueError):
        topo.linearize(0, -1)


def test_dim_and_qubit_count():
    topo = LatticeTopology(side=3)
    assert topo.n_qubits == 9
    assert topo.dim == 512


@pytest.mark.parametrize("side", [1, 0, -2, 5, 6])
def test_sides_outside_the_dense_ceiling_are_rejected(side):
    with pytest.raises(ValueError):
        LatticeTopology(side=side)


def test_side_4_is_the_largest_accepted_lattice():
    topo = LatticeTopology(side=4)
    assert topo.n_qubits == 16
    with pytest.raises(ValueError, match="24"):
        LatticeTopology(side=5)


def test_neighbor_query_rejects_out_of_range_qubits():
    topo = LatticeTopology(side=3)
    with pytest.raises(ValueError):
        topo.neighbors(9)
    with pytest.raises(ValueError):
        topo.neighbors(-1)


def test_basis_index_from_set_examples():
    assert basis_index_from_set({0, 1, 2, 3, 5, 6, 7, 8}, 9) == 495
    assert basis_index_from_set({0, 4}, 9) == 17
    assert basis_index_from_set((), 9) == 0
    assert basis_index_from_set({4}, 9) == 16


def test_basis_index_from_set_rejects_out_of_range_qubits():
    with pytest.raises(ValueError):
        basis_index_from_set({9}, 9)


def test_qubit_state_reads_single_bits():
    assert qubit_state(495, 4, 9) == 0
    assert [qubit_state(495, q, 9) for q in range(9)] == [1, 1, 1, 1, 0, 1, 1, 1, 1]
    assert qubit_state(17, 0, 9) == 1
    assert qubit_state(17, 4, 9) == 1
    assert qubit_state(17, 1, 9) == 0
    with pytest.raises(ValueError):
        qubit_state(17, 9, 9)


def test_basis_state_round_trip_is_exhaustive_for_nine_qubits():
    for index in range(512):
        psi = basis_state(9, index)
        assert psi.dtype == np.complex128
        assert psi.shape == (512,)
        assert np.linalg.norm(psi) == 1.0
        assert int(np.argmax(np.abs(psi))) == index
        assert np.count_nonzero(psi) == 1


def test_basis_state_rejects_out_of_range_indices():
    with pytest.raises(ValueError):
        basis_state(9, 512)
    with pytest.raises(ValueError):
        basis_state(9, -1)


def test_state_from_amplitudes_places_entries_without_normalizing():
    psi = state_from_amplitudes(4, [(5, 0.7071), (9, 0.7071j)])
    assert psi[5] == 0.7071
    assert psi[9] == 0.7071j
    assert np.count_nonzero(psi) == 2


def test_state_from_amplitudes_rejects_duplicates_and_bad_indices():
    with pytest.raises(ValueError, match="duplicate"):
        state_from_amplitudes(4, [(5, 0.5), (5, 0.5)])
    with pytest.raises(ValueError):
        state_from_amplitudes(4, [(16, 1.0)])
