import pytest
from hypothesis import given

from matwaring.errors import BadInput
from matwaring.matrix import IntMat

from conftest import matrices


def test_construction_and_access():
    M = IntMat([[1, 2], [3, 4]])
    assert M.dim == 2
    assert M[1, 0] == 3
    assert M.entries() == [1, 2, 3, 4]
    assert M.T == IntMat([[1, 3], [2, 4]])
    assert M.trace() == 5


def test_rejects_ragged_and_empty():
    with pytest.raises(BadInput):
        IntMat([[1, 2], [3]])
    with pytest.raises(BadInput):
        IntMat([])


def test_rectangular_has_no_dim():
    R = IntMat([[1, 2, 3]])
    assert R.shape == (1, 3)
    with pytest.raises(BadInput):
        R.dim


def test_big_entries_do_not_overflow():
    big = 10**40
    M = IntMat([[big, 1], [0, big]])
    assert (M @ M)[0, 0] == big * big
    assert M.det() == big * big


def test_power_and_zero_power():
    M = IntMat([[1, 1], [0, 1]])
    assert M**5 == IntMat([[1, 5], [0, 1]])
    assert M**0 == IntMat.identity(2)


@given(matrices(3, 20))
def test_det_matches_sympy(M):
    import sympy

    assert M.det() == sympy.Matrix(M.tolist()).det()


@given(matrices(3, 20), matrices(3, 20))
def test_det_is_multiplicative(A, B):
    assert (A @ B).det() == A.det() * B.det()


def test_hashable():
    assert len({IntMat([[1]]), IntMat([[1]]), IntMat([[2]])}) == 2
