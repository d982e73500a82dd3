import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from schwinger.tridiag import ConvergenceError, fix_sign, givens, sorted_eigenpairs, tridiagonal_eigh

floats = st.floats(min_value=-10, max_value=10, allow_nan=False)


def _dense(d, e):
    return np.diag(d) + np.diag(e, 1) + np.diag(e, -1)


def test_givens_zeroes_second_entry():
    c, s = givens(3.0, 4.0)
    assert c * c + s * s == pytest.approx(1)
    assert s * 3.0 + c * 4.0 == pytest.approx(0)


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=1, max_value=12).flatmap(
    lambda n: st.tuples(st.lists(floats, min_size=n, max_size=n), st.lists(floats, min_size=n - 1, max_size=n - 1))))
def test_matches_numpy_eigh(de):
    d, e = (np.array(x, dtype=float) for x in de)
    values, Q = tridiagonal_eigh(d, e)
    T = _dense(d, e)
    scale = max(1.0, np.abs(T).max())
    assert np.allclose(np.sort(values), np.linalg.eigvalsh(T), atol=1e-10 * scale)
    assert np.allclose(Q.T @ Q, np.eye(len(d)), atol=1e-10)
    assert np.allclose(T @ Q, Q * values, atol=1e-9 * scale)


def test_diagonal_input_is_already_converged():
    values, Q = tridiagonal_eigh([3.0, 1.0, 2.0], [0.0, 0.0])
    assert sorted(values) == [1.0, 2.0, 3.0]


def test_zero_sweep_budget_raises():
    with pytest.raises(ConvergenceError):
        tridiagonal_eigh([0.0, 0.0], [1.0], max_sweeps=0)


def test_fix_sign():
    assert fix_sign(np.array([0.0, -0.6, 0.8])).tolist() == [0.0, 0.6, -0.8]


def test_sorted_pairs_are_ascending_and_sign_fixed():
    values, Q = tridiagonal_eigh([0.0, 0.0, 0.0], [1.0, 1.0])
    pairs = sorted_eigenpairs(values, Q)
    assert [v for v, _ in pairs] == pytest.approx([-np.sqrt(2), 0, np.sqrt(2)])
    for _, vec in pairs:
        first = vec[np.flatnonzero(np.abs(vec) > 1e-12)[0]]
        assert first > 0
