import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from schwinger.fock import (
    FockKet, TwoModeState, apply_ladder, apply_word, embed_sector, grid_basis, inner_product,
    project_to_grid, project_to_sector, sector_basis,
)

small = st.integers(min_value=0, max_value=6)


def test_ket_rejects_negative_occupation():
    with pytest.raises(ValueError):
        FockKet(-1, 0)


def test_creation_weights():
    out = apply_ladder("a^+", TwoModeState.ket(2, 1))
    assert out.amplitudes == {FockKet(3, 1): pytest.approx(math.sqrt(3))}


def test_annihilating_empty_mode_gives_zero():
    assert apply_ladder("b", TwoModeState.ket(3, 0)).is_zero()


def test_dagger_aliases():
    s = TwoModeState.ket(1, 1)
    assert apply_ladder("a†", s) == apply_ladder("a^+", s)


def test_unknown_operator():
    with pytest.raises(ValueError):
        apply_ladder("c", TwoModeState.ket(0, 0))


def test_word_acts_right_to_left():
    # a^+ b on |0,1> moves the quantum into mode a
    assert apply_word(["a^+", "b"], TwoModeState.ket(0, 1)) == TwoModeState.ket(1, 0)


@given(small, small)
def test_number_operators(m, n):
    s = TwoModeState.ket(m, n)
    assert apply_word(["a^+", "a"], s).isclose(s * m)
    assert apply_word(["b^+", "b"], s).isclose(s * n)


@given(small, small)
def test_canonical_commutators_on_kets(m, n):
    s = TwoModeState.ket(m, n)
    for low, high in (("a", "a^+"), ("b", "b^+")):
        comm = apply_word([low, high], s) - apply_word([high, low], s)
        assert comm.isclose(s)
    cross = apply_word(["a", "b^+"], s) - apply_word(["b^+", "a"], s)
    assert cross.isclose(TwoModeState())


def test_inner_product_conjugates_left():
    x = TwoModeState.ket(0, 1, 1j)
    assert inner_product(x, x) == pytest.approx(1)
    assert inner_product(x, TwoModeState.ket(0, 1)) == pytest.approx(-1j)


def test_zero_pruned_after_cancellation():
    s = TwoModeState.ket(1, 0) - TwoModeState.ket(1, 0)
    assert s.is_zero() and len(s) == 0


def test_sector_basis_order():
    basis = sector_basis(3)
    assert basis.dim == 4
    assert [(k.m, k.n) for k in basis.kets] == [(0, 3), (1, 2), (2, 1), (3, 0)]
    assert basis.index(FockKet(2, 1)) == 2


def test_sector_round_trip():
    v = np.array([0.5, -0.5j, 0.5, 0.5])
    assert np.allclose(project_to_sector(embed_sector(v, 3), 3), v)


def test_grid_projection():
    s = TwoModeState.ket(1, 0, 2.0) + TwoModeState.ket(5, 5)
    v = project_to_grid(s, 2)
    assert len(grid_basis(2)) == 4
    assert v.shape == (2, 2)
    assert v.tolist() == [[0, 0], [2, 0]]
