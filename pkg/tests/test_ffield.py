import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from dlcohomology import ffield as ff
from dlcohomology.errors import InvalidArgument

PRIMES = [2, 3, 5]


def matrices(p, max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(0, p - 1), min_size=c, max_size=c), min_size=r, max_size=r)))


@pytest.mark.parametrize("p, ok", [(2, True), (3, True), (4, False), (1, False), (97, True)])
def test_is_prime(p, ok):
    assert ff.is_prime(p) == ok


def test_check_prime_rejects():
    with pytest.raises(InvalidArgument):
        ff.check_prime(6)


def test_rref_small():
    R, piv = ff.rref(np.array([[2, 4], [1, 3]]), 5)
    assert piv == [0, 1]
    assert (R == np.eye(2, dtype=np.int64)).all()


def test_inverse_singular():
    assert ff.inverse(np.array([[1, 1], [1, 1]]), 2) is None
    A = np.array([[1, 1], [0, 1]])
    assert (ff.matmul(A, ff.inverse(A, 3), 3) == ff.eye(2)).all()


def test_complement_empty_space():
    assert ff.complement(ff.zeros(0, 0), 0, 2).shape == (0, 0)


@pytest.mark.parametrize("p", PRIMES)
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_nullspace_matches_enumeration(p, data):
    A = data.draw(matrices(p, 3, 4))
    N = ff.nullspace(np.array(A), p)
    assert N.shape[0] == oracles.nullity_brute(A, p)
    assert not ff.matmul(np.array(A), N.T, p).any()


@pytest.mark.parametrize("p", PRIMES)
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_rank_nullity(p, data):
    A = np.array(data.draw(matrices(p, 5, 5)))
    assert ff.rank(A, p) + ff.nullspace(A, p).shape[0] == A.shape[1]


@pytest.mark.parametrize("p", PRIMES)
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_solve_consistency(p, data):
    A = np.array(data.draw(matrices(p, 4, 4)))
    x = np.array(data.draw(st.lists(st.integers(0, p - 1), min_size=A.shape[1], max_size=A.shape[1])))
    b = ff.matmul(A, x, p)
    y = ff.solve(A, b, p)
    assert y is not None and (ff.matmul(A, y, p) == b).all()


@pytest.mark.parametrize("p", PRIMES)
@settings(max_examples=30, deadline=None)
@given(data=st.data())
def test_complement_spans(p, data):
    A = np.array(data.draw(matrices(p, 3, 5)))
    C = ff.complement(A, A.shape[1], p)
    assert ff.rank(np.concatenate([A, C]), p) == A.shape[1]
    assert C.shape[0] == A.shape[1] - ff.rank(A, p)
