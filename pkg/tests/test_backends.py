import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from noether_forge import _accel
from noether_forge.kernels import canonical_mask, exact_rank, sumset_mask
from noether_forge.semigroup import canonical_K, from_numerical_generators

needs_numba = pytest.mark.skipif(not _accel.HAVE_NUMBA, reason="numba not installed")


@needs_numba
@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=6))
def test_rank_parity(rows):
    m = np.array(rows, dtype=np.int64)
    with _accel.use_backend("numba"):
        a = exact_rank(m)
    with _accel.use_backend("numpy"):
        b = exact_rank(m)
    assert a == b == np.linalg.matrix_rank(m.astype(float))


@needs_numba
@settings(max_examples=30, deadline=None)
@given(
    st.lists(st.tuples(st.integers(0, 6), st.integers(0, 6)), min_size=1, max_size=8),
    st.lists(st.tuples(st.integers(0, 6), st.integers(0, 6)), min_size=1, max_size=8),
)
def test_sumset_parity(a, b):
    lo, hi = np.array([1, 0]), np.array([8, 7])
    with _accel.use_backend("numba"):
        x = sumset_mask(np.array(a), np.array(b), lo, hi)
    with _accel.use_backend("numpy"):
        y = sumset_mask(np.array(a), np.array(b), lo, hi)
    assert np.array_equal(x, y)


@needs_numba
@pytest.mark.parametrize("gens", [[3, 7, 10, 11], [4, 6, 7, 8, 9], [5, 7, 9, 11, 13]])
def test_canonical_parity(gens):
    S = from_numerical_generators(gens)
    pts = np.array(S.small_elements)
    with _accel.use_backend("numba"):
        x = canonical_mask(pts, np.array(S.conductor))
    with _accel.use_backend("numpy"):
        y = canonical_mask(pts, np.array(S.conductor))
        K = canonical_K(S)
    assert np.array_equal(x, y)
    assert [a for a in range(S.conductor[0] + 1) if (a,) in K] == list(np.flatnonzero(y))


def test_big_entries_fall_back_to_python():
    m = np.array([[2**40, 1], [2**41, 2]], dtype=np.int64)
    assert exact_rank(m) == 1
    assert exact_rank([[10**30, 1], [1, 10**30]]) == 2


def test_unknown_backend():
    with pytest.raises(ValueError):
        _accel.set_backend("cuda")
