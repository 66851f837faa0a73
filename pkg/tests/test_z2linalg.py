from itertools import product

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from zzreps.z2linalg import Z2Matrix, col_reduce, low, rank, replay, solve_in_span, to_bits


def brute_solutions(columns, b):
    """All x in Z2^k with M x = b, by enumeration."""
    n = len(b)
    out = []
    for x in product((0, 1), repeat=len(columns)):
        y = [0] * n
        for xi, c in zip(x, columns):
            if xi:
                y = [a ^ cc for a, cc in zip(y, c)]
        if y == list(b):
            out.append(x)
    return out


def numpy_rank(A):
    """Independent row-echelon rank over GF(2) on a numpy array."""
    A = np.array(A, dtype=np.uint8) % 2
    r = 0
    rows, cols = A.shape
    for c in range(cols):
        piv = next((i for i in range(r, rows) if A[i, c]), None)
        if piv is None:
            continue
        A[[r, piv]] = A[[piv, r]]
        for i in range(rows):
            if i != r and A[i, c]:
                A[i] ^= A[r]
        r += 1
    return r


def test_rank_examples():
    assert rank(Z2Matrix.from_dense(np.eye(3, dtype=int))) == 3
    assert rank(Z2Matrix.from_dense(np.zeros((4, 2), dtype=int))) == 0
    assert rank(Z2Matrix.from_lists([(1, 1), (1, 1)])) == 1


def test_solve_examples():
    cols = [(1, 1, 0), (0, 1, 1)]
    M = Z2Matrix.from_lists(cols)
    # frozen from exhaustive enumeration over the four coefficient vectors
    assert brute_solutions(cols, (1, 0, 1)) == [(1, 1)]
    assert solve_in_span(M, (1, 0, 1)) == (1, 1)
    assert solve_in_span(M, (0, 0, 0)) == (0, 0)
    assert brute_solutions([(1, 0, 0)], (0, 1, 0)) == []
    assert solve_in_span(Z2Matrix.from_lists([(1, 0, 0)]), (0, 1, 0)) is None


def test_solve_dimension_mismatch():
    import pytest

    with pytest.raises(ValueError):
        solve_in_span(Z2Matrix.from_lists([(1, 0)]), (1, 0, 0))


def test_col_reduce_examples():
    I = Z2Matrix.from_dense(np.eye(3, dtype=int))
    red = col_reduce(I)
    assert red.matrix.columns == I.columns and red.log == []

    red = col_reduce(Z2Matrix.from_lists([(1, 1), (1, 1)]))
    assert red.matrix.to_lists() == [(1, 1), (0, 0)]
    assert red.log == [(0, 1)]

    red = col_reduce(Z2Matrix([], []))
    assert red.matrix.columns == [] and red.log == []


matrices = st.integers(1, 6).flatmap(
    lambda n: st.lists(st.lists(st.integers(0, 1), min_size=n, max_size=n), min_size=0, max_size=6)
    .map(lambda cols, n=n: Z2Matrix.from_lists(cols, rows=list(range(n)))))


@settings(max_examples=200, deadline=None)
@given(matrices)
def test_rank_matches_numpy(M):
    dense = np.array(M.to_lists(), dtype=int).T if M.columns else np.zeros((len(M.rows), 0), dtype=int)
    assert rank(M) == numpy_rank(dense)


@settings(max_examples=200, deadline=None)
@given(matrices)
def test_reduction_properties(M):
    red = col_reduce(M)
    assert rank(red.matrix) == rank(M)
    lows = [low(c) for c in red.matrix.columns if c]
    assert len(lows) == len(set(lows))
    assert replay(M, red.log).columns == red.matrix.columns
    # every original column is in the span of the reduced matrix
    for c in M.columns:
        assert solve_in_span(red.matrix, c) is not None
    assert col_reduce(M).log == red.log


@settings(max_examples=200, deadline=None)
@given(matrices, st.data())
def test_solve_round_trip(M, data):
    x = data.draw(st.lists(st.integers(0, 1), min_size=len(M.columns), max_size=len(M.columns)))
    b = M.matvec(x)
    sol = solve_in_span(M, b)
    assert sol is not None and M.matvec(sol) == b


def test_to_bits():
    assert to_bits([1, 0, 1]) == 5
