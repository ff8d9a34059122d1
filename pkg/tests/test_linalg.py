import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from modrep.fields import PrimeField, RationalFunctionField
from modrep.linalg import (
    Matrix,
    complement_columns,
    inverse,
    kernel_matrix,
    rank,
    rref,
    solve,
    solve_matrix,
)


def matrices(p):
    return st.integers(1, 7).flatmap(
        lambda r: st.integers(1, 7).flatmap(
            lambda c: st.lists(st.lists(st.integers(0, p - 1), min_size=c, max_size=c), min_size=r, max_size=r)))


@settings(max_examples=60)
@given(st.sampled_from([2, 3, 5]).flatmap(lambda p: st.tuples(st.just(p), matrices(p))))
def test_rank_nullity(args):
    p, rows = args
    m = Matrix(PrimeField(p), rows)
    k = kernel_matrix(m)
    assert rank(m) + k.ncols == m.ncols
    assert (m @ k).is_zero()
    assert rank(m) == rank(m.T)


def _brute_rank(rows, p):
    # rank over GF(p) by counting the row space
    n = len(rows[0])
    space = {tuple([0] * n)}
    for row in rows:
        space |= {tuple((a + c * b) % p for a, b in zip(v, row)) for v in space for c in range(p)}
    size, r = len(space), 0
    while p ** r < size:
        r += 1
    return r


@settings(max_examples=40)
@given(st.sampled_from([2, 3]).flatmap(lambda p: st.tuples(st.just(p), matrices(p))))
def test_rank_against_row_space_count(args):
    p, rows = args
    assert rank(Matrix(PrimeField(p), rows)) == _brute_rank(rows, p)


def test_solve_and_inverse():
    f = PrimeField(7)
    a = Matrix(f, [[1, 2], [3, 4]])
    x = solve(a, [1, 0])
    assert (a @ Matrix.column(f, x)).tolist() == [[1], [0]]
    assert (a @ inverse(a)) == Matrix.identity(f, 2)
    assert solve_matrix(Matrix(f, [[1, 1], [1, 1]]), Matrix(f, [[1], [2]])) is None


def test_rref_pivots():
    red, piv = rref(Matrix(PrimeField(2), [[0, 1, 1], [0, 1, 0]]))
    assert piv == [1, 2]
    assert red.tolist() == [[0, 1, 0], [0, 0, 1]]


def test_complement_columns():
    f = PrimeField(3)
    b = Matrix(f, [[1], [1], [0]])
    comp = complement_columns(b)
    assert len(comp) == 2
    full = np.hstack([b.data, np.eye(3, dtype=np.int64)[:, comp]])
    assert rank(Matrix(f, full)) == 3


def test_function_field_elimination():
    f = RationalFunctionField(PrimeField(2), ["t"])
    t = f.gen(0)
    m = Matrix(f, [[t, f.one], [t * t, t]])
    assert rank(m) == 1
    assert kernel_matrix(m).ncols == 1


def test_matrix_is_read_only_and_shape_checked():
    f = PrimeField(2)
    m = Matrix(f, [[1, 0]])
    with pytest.raises(ValueError):
        m.data[0, 0] = 0
    with pytest.raises(ValueError):
        m @ m
