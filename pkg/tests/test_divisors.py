import pytest
from fractions import Fraction

from unitgroup.errors import InvalidInput, UnsupportedPoint
from unitgroup.exactfield import FieldDescriptor, FieldElem
from unitgroup.divisors import (
    Divisor,
    ProjPoint,
    divisor_degree,
    divisor_to_vector,
    unit_rank_bound,
    vector_to_divisor,
)

Q = FieldDescriptor.rationals()


def pt(*coords, descriptor=Q):
    return ProjPoint([FieldElem.from_rational(Fraction(c), descriptor) for c in coords])


def test_normalization():
    assert pt(2, 4, 6) == pt(1, 2, 3)
    assert pt(0, 3, 6) == pt(0, 1, 2)
    with pytest.raises(InvalidInput):
        pt(0, 0, 0)


def test_point_json_round_trip():
    QT = FieldDescriptor.rational_functions("t")
    t = FieldElem.generator(QT)
    one = FieldElem.one(QT)
    p = ProjPoint([FieldElem.zero(QT), one, t + one])
    assert p.to_json() == ["0", "1", "t+1"]
    assert ProjPoint.from_json(p.to_json(), QT) == p


def test_divisor_degree():
    assert divisor_degree(Divisor()) == 0
    P, R = pt(1, 0), pt(0, 1)
    assert divisor_degree(Divisor({P: 1, R: -1})) == 0
    assert divisor_degree(Divisor({P: 2, R: -2})) == 0
    assert divisor_degree(Divisor({P: 3})) == 3


def test_divisor_arithmetic_drops_zeros():
    P, R = pt(1, 0), pt(0, 1)
    d = Divisor({P: 1}) + Divisor({P: -1, R: 2})
    assert d.support == {R: 2}
    assert (d - d).is_zero()


def test_vectorization_round_trip():
    P1, P2, P3 = pt(1, 0, 0), pt(0, 1, 0), pt(0, 0, 1)
    boundary = [P1, P2, P3]
    d = Divisor({P1: 1, P2: -1})
    v = divisor_to_vector(d, boundary)
    assert v == (1, -1, 0)
    assert vector_to_divisor(v, boundary) == d
    assert divisor_degree(vector_to_divisor((2, -1, -1), boundary)) == sum((2, -1, -1))


def test_vectorization_rejects_outside_point():
    P1, P2 = pt(1, 0), pt(0, 1)
    with pytest.raises(UnsupportedPoint):
        divisor_to_vector(Divisor({P1: 1}), [P2])


def test_unit_rank_bound():
    assert unit_rank_bound(2, 2) == 5
    assert unit_rank_bound(2, 3) == 8
    assert unit_rank_bound(1, 1) == 1
    with pytest.raises(InvalidInput):
        unit_rank_bound(0, 3)
