import time

import pytest

from unitgroup.errors import InvalidInput
from unitgroup.fermat import (
    fermat_divisor_matrix,
    fermat_index_in_degree_zero,
    fermat_rank_check,
    fermat_unit_candidates,
    fermat_unit_verify,
)
from unitgroup.groebner import test_unit as is_unit
from unitgroup.intlattice import IntMatrix, rank


# The 6x5 divisor matrix of the degree-2 curve, rows (P0,P1,Q0,Q1,T0,T1),
# columns (x, y, y-1, x-1, x-i*y).
DEGREE2_MATRIX = [
    [-1, -1, -1, -1, 1],
    [-1, -1, -1, -1, -1],
    [0, 1, 0, 2, 0],
    [0, 1, 0, 0, 0],
    [1, 0, 2, 0, 0],
    [1, 0, 0, 0, 0],
]


def test_degree2_matrix_exact():
    unit_set = fermat_divisor_matrix(2)
    assert unit_set.divisor_matrix == IntMatrix(DEGREE2_MATRIX)
    assert unit_set.unit_descriptions == ["x", "y", "y - 1", "x - 1", "x - z4^1*y"]


@pytest.mark.parametrize("d", [2, 3, 4, 5, 6, 7])
def test_columns_are_degree_zero(d):
    m = fermat_divisor_matrix(d).divisor_matrix
    assert m.nrows == 3 * d and m.ncols == 3 * d - 1
    for col in m.columns():
        assert sum(col) == 0


def test_degree3_rank():
    assert rank(fermat_divisor_matrix(3).divisor_matrix) == 8


@pytest.mark.parametrize("d", [2, 3, 4, 5, 6])
def test_full_rank(d):
    assert fermat_rank_check(d)


def test_degree2_index_is_four():
    assert fermat_index_in_degree_zero(2) == 4


def test_degree2_all_candidates_are_units():
    assert fermat_unit_verify(2)


def test_degree3_all_candidates_are_units():
    assert fermat_unit_verify(3)


def test_degree2_nonunit_rejected():
    _, ideal, candidates = fermat_unit_candidates(2)
    x = candidates[0]
    one = type(x).one(x.descriptor, x.variables)
    assert not is_unit(x - one - one, ideal)  # x - 2 is not a unit


def test_guards():
    with pytest.raises(InvalidInput):
        fermat_divisor_matrix(1)
    with pytest.raises(InvalidInput):
        fermat_unit_verify(1)
    with pytest.raises(InvalidInput):
        fermat_unit_verify(7)
