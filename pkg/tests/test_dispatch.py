import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from matwaring.decomposition import Decomposition, verify_decomposition
from matwaring.dispatch import bound, decompose_any, split_border
from matwaring.errors import BadInput, NotPairwiseCoprime, TooFewCoefficients
from matwaring.exact import block_diag
from matwaring.matrix import IntMat

from conftest import coprime_tuple, random_matrix


def test_bound_table():
    assert [bound(n) for n in range(2, 10)] == [4, 6, 6, 8, 6, 8, 6, 8]
    with pytest.raises(BadInput):
        bound(1)


def test_split_border_leaves_block_diagonal_remainder():
    rng = random.Random(1)
    for n in (5, 7):
        A = random_matrix(rng, n)
        a1, a2 = 3, 7
        M1, M2, Xp, Wq = split_border(a1, a2, A, 3, n - 3)
        assert A - a1 * M1.square() - a2 * M2.square() == block_diag(Xp, Wq)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6, 7, 8, 9])
def test_each_dimension(n):
    rng = random.Random(n)
    for _ in range(3):
        a = coprime_tuple(rng, bound(n), 10**6)
        d = decompose_any(a, random_matrix(rng, n))
        assert verify_decomposition(d)[0]
        assert d.nonzero_count() <= bound(n)


def test_surplus_coefficients_get_zero_matrices():
    d = decompose_any((1, 3, 5, 7, 11, 13, 17, 19), IntMat([[1, 2, 3], [4, 5, 6], [7, 8, 9]]))
    mats = d.matrices()
    assert len(mats) == 8 and mats[6].is_zero() and mats[7].is_zero()


def test_odd_split_records_blocks():
    d = decompose_any((1, 3, 5, 7, 11, 13, 17, 19), IntMat.identity(5))
    assert d.trace["split"] == [3, 2]
    assert d.trace["block_rest"]["engine"] == "2x2"
    d = decompose_any((1, 3, 5, 7, 11, 13, 17, 19), IntMat.identity(7))
    assert d.trace["block_rest"]["engine"] == "even"


def test_tampered_decomposition_fails_verification():
    d = decompose_any((1, 1, 1, 1), IntMat([[1, 2], [3, 4]]))
    i, M = d.squares[0]
    bad = Decomposition(d.coeffs, d.target, ((i, M.with_entry(0, 0, M[0, 0] + 1)),) + d.squares[1:])
    ok, cell = verify_decomposition(bad)
    assert not ok and cell is not None


def test_errors():
    with pytest.raises(TooFewCoefficients):
        decompose_any((1, 3, 5, 7, 11), IntMat.zeros(3))
    with pytest.raises(NotPairwiseCoprime):
        decompose_any((1, 3, 5, 7, 11, 13, 9), IntMat.zeros(3))


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 7), st.integers(0, 2**32))
def test_property_random(n, seed):
    rng = random.Random(seed)
    a = coprime_tuple(rng, bound(n) + rng.randint(0, 2), 10**6)
    T = random_matrix(rng, n, 10**6)
    d = decompose_any(a, T)
    assert verify_decomposition(d)[0]
    assert len(d.squares) == len(a)
