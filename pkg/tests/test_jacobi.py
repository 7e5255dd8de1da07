from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from lapspec.jacobi import ConvergenceError, jacobi_eigvalsh


@given(st.integers(1, 14), st.integers(0, 2**32 - 1))
def test_matches_lapack(n, seed):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(n, n))
    a = a + a.T
    got = jacobi_eigvalsh(a)
    ref = np.sort(np.linalg.eigvalsh(a))[::-1]
    assert np.max(np.abs(got - ref)) <= 1e-10 * max(1.0, np.abs(ref).max())


def test_batch_equals_single():
    rng = np.random.default_rng(3)
    stack = rng.integers(-3, 4, size=(50, 7, 7)).astype(float)
    stack = stack + stack.transpose(0, 2, 1)
    batch = jacobi_eigvalsh(stack)
    for a, vals in zip(stack, batch):
        assert np.allclose(vals, jacobi_eigvalsh(a), atol=1e-12)


def test_diagonal_and_degenerate():
    assert list(jacobi_eigvalsh(np.diag([1.0, 3.0, 2.0]))) == [3.0, 2.0, 1.0]
    ones = np.ones((5, 5))
    assert np.allclose(jacobi_eigvalsh(ones), [5, 0, 0, 0, 0], atol=1e-12)
    assert jacobi_eigvalsh(np.zeros((0, 0))).shape == (0,)


def test_input_validation():
    with pytest.raises(ValueError):
        jacobi_eigvalsh(np.array([[0.0, 1.0], [2.0, 0.0]]))
    with pytest.raises(ValueError):
        jacobi_eigvalsh(np.zeros((2, 3)))


def test_sweep_cap():
    a = np.array([[1.0, 2.0, 3.0], [2.0, 0.0, 1.0], [3.0, 1.0, 5.0]])
    with pytest.raises(ConvergenceError):
        jacobi_eigvalsh(a, max_sweeps=0)
