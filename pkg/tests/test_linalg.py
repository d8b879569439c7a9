import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cdcodes import linalg
from cdcodes.field import field_from_order


def random_matrix(data, q, rows=3, cols=5):
    return np.array(
        data.draw(
            st.lists(
                st.lists(st.integers(0, q - 1), min_size=cols, max_size=cols),
                min_size=rows,
                max_size=rows,
            )
        ),
        dtype=np.int64,
    )


def brute_row_space(field, M):
    """All linear combinations of the rows, as a frozenset of tuples."""
    words = linalg.enumerate_span(field, M)
    return frozenset(map(tuple, words.tolist()))


@given(data=st.data(), q=st.sampled_from([2, 3, 5]))
@settings(max_examples=40, deadline=None)
def test_rref_preserves_row_space(data, q):
    F = field_from_order(q)
    M = random_matrix(data, q)
    R, piv = linalg.rref(F, M)
    assert brute_row_space(F, M) == brute_row_space(F, R) if R.size else True
    R2, piv2 = linalg.rref(F, R)
    assert np.array_equal(R, R2) and piv == piv2  # idempotent
    assert len(piv) == R.shape[0]


@given(data=st.data(), q=st.sampled_from([2, 3, 4]))
@settings(max_examples=40, deadline=None)
def test_nullspace_orthogonality(data, q):
    F = field_from_order(q)
    M = random_matrix(data, q)
    N = linalg.nullspace(F, M)
    assert N.shape[0] == M.shape[1] - linalg.rank(F, M)
    if N.size:
        prod = linalg.matmul(F, M, N.T)
        assert not prod.any()


def test_matmul_matches_integer_arithmetic():
    F = field_from_order(7)
    rng = np.random.default_rng(1)
    A = rng.integers(0, 7, (4, 6))
    B = rng.integers(0, 7, (6, 3))
    assert np.array_equal(linalg.matmul(F, A, B), (A @ B) % 7)


@given(data=st.data(), q=st.sampled_from([2, 3]))
@settings(max_examples=30, deadline=None)
def test_intersection_dim_vs_bruteforce(data, q):
    F = field_from_order(q)
    A = random_matrix(data, q, rows=2, cols=4)
    B = random_matrix(data, q, rows=2, cols=4)
    inter = brute_row_space(F, A) & brute_row_space(F, B)
    # |intersection| = q^dim
    d = linalg.intersection_dim(F, A, B)
    assert len(inter) == q**d


def test_enumerate_span_counts():
    F = field_from_order(3)
    basis = np.array([[1, 0, 2], [0, 1, 1]], dtype=np.int64)
    words = linalg.enumerate_span(F, basis)
    assert words.shape == (9, 3)
    assert not words[0].any()
    assert len({tuple(w) for w in words.tolist()}) == 9


def test_in_row_space():
    F = field_from_order(5)
    M = np.array([[1, 2, 3], [0, 1, 4]], dtype=np.int64)
    R, piv = linalg.rref(F, M)
    assert linalg.in_row_space(F, R, piv, (2, 4, 6 % 5))
    assert not linalg.in_row_space(F, R, piv, (0, 0, 1))
