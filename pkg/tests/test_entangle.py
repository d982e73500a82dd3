import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from schwinger.entangle import (
    NotNormalizedError, coefficient_matrix, entanglement_entropy, map_spin_state, schmidt,
)
from schwinger.fock import TwoModeState

amp = st.complex_numbers(max_magnitude=2, allow_nan=False, allow_infinity=False)


def _reduced_entropy(state):
    # oracle: eigenvalues of the reduced density matrix of mode a
    M = coefficient_matrix(state)
    rho = M @ M.conj().T
    w = np.linalg.eigvalsh(rho)
    return float(-sum(p * math.log(p) for p in w if p > 1e-15))


def test_bell_like_state():
    r = 1 / math.sqrt(2)
    state = TwoModeState({(1, 0): r, (0, 1): r})
    assert abs(entanglement_entropy(state) - math.log(2)) <= 1e-12
    assert schmidt(state).rank == 2


def test_product_state():
    state = TwoModeState.ket(2, 3)
    assert schmidt(state).rank == 1
    assert entanglement_entropy(state) == 0.0


def test_entropy_requires_normalization():
    with pytest.raises(NotNormalizedError):
        entanglement_entropy(TwoModeState.ket(1, 0, 2.0))


def test_zero_state_rejected():
    with pytest.raises(ValueError):
        schmidt(TwoModeState())


@given(st.lists(amp, min_size=6, max_size=6))
def test_entropy_against_reduced_density_matrix(values):
    kets = [(0, 0), (0, 1), (1, 0), (1, 1), (2, 0), (0, 2)]
    state = TwoModeState(zip(kets, values))
    if state.norm() < 1e-3:
        return
    state = state.normalized()
    assert entanglement_entropy(state) == pytest.approx(_reduced_entropy(state), abs=1e-9)
    assert schmidt(state).reconstruct().isclose(state, atol=1e-12)


def test_z_map():
    state = map_spin_state("z", (0.6, 0.8j))
    assert state[(1, 0)] == pytest.approx(0.6)
    assert state[(0, 1)] == pytest.approx(0.8j)


def test_x_map_of_x_eigenstate_is_a_single_ket():
    r = 1 / math.sqrt(2)
    state = map_spin_state("x", (r, r))
    assert state.isclose(TwoModeState.ket(1, 0))


def test_map_validates():
    with pytest.raises(NotNormalizedError):
        map_spin_state("x", (1, 1))
    with pytest.raises(ValueError):
        map_spin_state("y", (1, 0))


def test_rank_one_exactly_when_c_equals_plus_minus_d():
    for j in range(41):
        theta = math.pi * j / 40
        for k in range(41):
            phi = 2 * math.pi * k / 40
            C, D = math.cos(theta / 2), np.exp(1j * phi) * math.sin(theta / 2)
            rank = schmidt(map_spin_state("x", (C, D))).rank
            special = abs(C - D) <= 1e-12 or abs(C + D) <= 1e-12
            assert (rank == 1) == special, (j, k)
