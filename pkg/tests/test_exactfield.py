import random

import pytest
from fractions import Fraction

from unitgroup.errors import DescriptorMismatch, DivisionByZero, InvalidInput
from unitgroup.exactfield import (
    FieldDescriptor,
    FieldElem,
    cyclotomic_field,
    cyclotomic_polynomial,
    poly_divmod,
    poly_gcd,
    poly_mul,
    poly_sqrt,
    poly_trim,
)

Q = FieldDescriptor.rationals()
QI = FieldDescriptor.number_field([1, 0, 1], "i")  # Q[i], i^2 = -1
QT = FieldDescriptor.rational_functions("t")


def q(x):
    return FieldElem.from_rational(Fraction(x), Q)


def test_rational_add():
    assert q("1/2") + q("1/3") == q("5/6")


def test_gaussian_square():
    i = FieldElem.generator(QI)
    assert i * i == FieldElem.from_rational(-1, QI)


def test_rational_function_inverse_is_monic():
    t = FieldElem.generator(QT)
    one = FieldElem.one(QT)
    e = (t + one).inv()
    num, den = e.payload
    assert den[-1] == 1 and den == (Fraction(1), Fraction(1))
    assert e * (t + one) == one


def test_embed_identities():
    for desc in (Q, QI, QT):
        assert FieldElem.from_rational(0, desc).is_zero()
        assert FieldElem.from_rational(1, desc).is_one()
    assert FieldElem.from_rational(-4, QI).payload == (Fraction(-4),)


def test_descriptor_equality_is_exact():
    assert FieldDescriptor.number_field([1, 0, 1], "i") == QI
    assert FieldDescriptor.number_field([2, 0, 1], "i") != QI
    assert FieldDescriptor.rational_functions("s") != QT


def test_descriptor_mismatch_raises():
    with pytest.raises(DescriptorMismatch):
        q(1) + FieldElem.one(QI)


def test_division_by_zero_raises():
    with pytest.raises(DivisionByZero):
        q(1) / q(0)
    with pytest.raises(DivisionByZero):
        FieldElem.zero(QT).inv()


def test_zero_divisor_in_reducible_modulus():
    desc = FieldDescriptor.number_field([-1, 0, 1], "r")  # t^2 - 1, reducible
    t = FieldElem.generator(desc)
    bad = t - FieldElem.one(desc)
    with pytest.raises(DivisionByZero):
        bad.inv()


def _random_elem(rng, desc):
    if desc.kind == "rationals":
        return FieldElem.from_rational(
            Fraction(rng.randint(-9, 9), rng.randint(1, 9)), desc
        )
    if desc.kind == "number_field":
        deg = desc.degree
        coeffs = tuple(Fraction(rng.randint(-5, 5)) for _ in range(deg))
        return FieldElem(desc, poly_trim(coeffs))
    num = tuple(Fraction(rng.randint(-5, 5)) for _ in range(3))
    den = tuple(Fraction(rng.randint(-5, 5)) for _ in range(2))
    if poly_trim(den) == ():
        den = (Fraction(1),)
    return FieldElem.from_poly_pair(num, den, desc)


@pytest.mark.parametrize("desc", [Q, QI, cyclotomic_field(6), QT])
def test_field_axioms_random(desc):
    rng = random.Random(20240811)
    one = FieldElem.one(desc)
    for _ in range(40):
        a, b, c = (_random_elem(rng, desc) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a
        if not a.is_zero():
            assert a * a.inv() == one


@pytest.mark.parametrize("desc", [Q, QI, QT])
def test_canonical_form_idempotent(desc):
    rng = random.Random(7)
    for _ in range(25):
        a = _random_elem(rng, desc)
        # re-normalizing through a round trip changes nothing
        assert a + FieldElem.zero(desc) == a
        assert a * FieldElem.one(desc) == a


def test_cyclotomic_low_degrees():
    assert cyclotomic_polynomial(1) == (Fraction(-1), Fraction(1))
    assert cyclotomic_polynomial(4) == (Fraction(1), Fraction(0), Fraction(1))


def test_cyclotomic_6_by_division_oracle():
    # independent oracle: divide t^6 - 1 by Phi_1 * Phi_2 * Phi_3
    t6 = poly_trim([Fraction(-1), 0, 0, 0, 0, 0, Fraction(1)])
    prod = poly_mul(
        poly_mul(cyclotomic_polynomial(1), cyclotomic_polynomial(2)),
        cyclotomic_polynomial(3),
    )
    quotient, rem = poly_divmod(t6, prod)
    assert rem == ()
    assert cyclotomic_polynomial(6) == quotient == (Fraction(1), Fraction(-1), Fraction(1))


@pytest.mark.parametrize("d", [1, 2, 3, 4, 5, 6, 8, 12])
def test_zeta_has_exact_order(d):
    desc = cyclotomic_field(d)
    z = FieldElem.generator(desc)
    one = FieldElem.one(desc)
    assert z**d == one
    for e in range(1, d):
        assert z**e != one


def test_cyclotomic_rejects_bad_index():
    with pytest.raises(InvalidInput):
        cyclotomic_field(0)


def test_sqrt_rationals():
    assert q("9/4").sqrt() == q("3/2")
    assert q(2).sqrt() is None
    assert q(0).sqrt() == q(0)


def test_sqrt_rational_functions():
    t = FieldElem.generator(QT)
    one = FieldElem.one(QT)
    sq = (t + one) * (t + one) / (t * t)
    r = sq.sqrt()
    assert r is not None and r * r == sq
    assert ((t + one) / t).sqrt() is None


def test_sqrt_gaussian():
    i = FieldElem.generator(QI)
    m4 = FieldElem.from_rational(-4, QI)
    r = m4.sqrt()
    assert r is not None and r * r == m4
    assert r == i + i  # canonical sign: positive generator part
    two_i = i + i
    assert (two_i * two_i).sqrt() is not None


def test_poly_sqrt_oracle():
    rng = random.Random(99)
    for _ in range(20):
        p = poly_trim([Fraction(rng.randint(-4, 4)) for _ in range(4)])
        if not p:
            continue
        if p[-1] < 0:
            p = tuple(-c for c in p)
        assert poly_sqrt(poly_mul(p, p)) == p


def test_descriptor_json_round_trip():
    for desc in (Q, QI, QT, cyclotomic_field(6)):
        assert FieldDescriptor.from_json(desc.to_json()) == desc


def test_elem_printing():
    t = FieldElem.generator(QT)
    one = FieldElem.one(QT)
    assert str((t + one).inv()) == "1/(t+1)"
    assert str(q("-3/2")) == "-3/2"
    i = FieldElem.generator(QI)
    assert str(i + i + FieldElem.one(QI)) == "2*i+1"
