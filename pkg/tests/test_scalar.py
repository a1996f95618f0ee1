from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from core.errors import CharTwo, NotPrime, FieldTooLarge, DivisionByZero, FieldMismatch, ParseError, InfiniteField
from core.scalar import (make_field, RATIONAL, Scalar, arith, enumerate_elements, parse_scalar, inv)
from strategies import prime_fields, fields, raw_values


def test_make_field_aliases():
    assert make_field(5) == make_field('q5') == make_field('F5') == make_field('5')
    assert make_field('rational') is RATIONAL
    assert make_field('Q') is RATIONAL
    assert make_field('q7').name == 'q7'
    assert make_field('q7').order == 7


@pytest.mark.parametrize("spec, error", [
    (2, CharTwo), ('q2', CharTwo), (9, NotPrime), ('q1', NotPrime), ('abc', NotPrime),
    (2 ** 31 + 11, FieldTooLarge),
])
def test_make_field_rejects(spec, error):
    with pytest.raises(error):
        make_field(spec)


def test_prime_field_arithmetic(q5):
    a, b = Scalar(q5, 3), Scalar(q5, 4)
    assert a + b == 2
    assert a - b == 4
    assert a * b == 2
    assert a / b == 2  # 4^{-1} = 4
    assert (-a).value == 2
    assert a.inverse() == 2
    assert a ** 4 == 1


def test_rational_arithmetic():
    a = Scalar(RATIONAL, Fraction(1, 2))
    b = Scalar(RATIONAL, Fraction(-3, 4))
    assert a + b == Fraction(-1, 4)
    assert a * b == Fraction(-3, 8)
    assert (a / b).value == Fraction(-2, 3)
    assert str(a / b) == "-2/3"


def test_zero_has_no_inverse(q3):
    with pytest.raises(DivisionByZero):
        inv(Scalar(q3, 0))
    with pytest.raises(ZeroDivisionError):
        Scalar(RATIONAL, 0).inverse()


def test_field_mismatch(q3, q5):
    with pytest.raises(FieldMismatch):
        arith(Scalar(q3, 1), Scalar(q5, 1), 'add')
    with pytest.raises(FieldMismatch):
        Scalar(q3, 1) + Scalar(q5, 1)


def test_fraction_reduced_mod_p(q7):
    # 1/2 = 4 (mod 7)
    assert q7.canonical(Fraction(1, 2)) == 4
    with pytest.raises(DivisionByZero):
        q7.canonical(Fraction(1, 7))


def test_enumerate_elements(q5):
    assert [x.value for x in enumerate_elements(q5)] == [0, 1, 2, 3, 4]
    with pytest.raises(InfiniteField):
        enumerate_elements(RATIONAL)


def test_parse_scalar(q5):
    assert parse_scalar("-1", q5) == 4
    assert parse_scalar(" 7 ", q5) == 2
    assert parse_scalar("-3/4", RATIONAL).value == Fraction(-3, 4)
    with pytest.raises(ParseError) as err:
        parse_scalar("1/2", q5, line=3, column=5)
    assert err.value.line == 3 and err.value.column == 5
    with pytest.raises(ParseError):
        parse_scalar("x", RATIONAL)


def test_scalars_are_immutable(q3):
    s = Scalar(q3, 1)
    with pytest.raises(AttributeError):
        s.value = 2


def test_hash_matches_representative(q5):
    assert Scalar(q5, 3) == 3 and hash(Scalar(q5, 3)) == hash(3)
    half = Scalar(RATIONAL, Fraction(1, 2))
    assert half == Fraction(1, 2) and hash(half) == hash(Fraction(1, 2))
    assert Scalar(RATIONAL, 2) == 2 and hash(Scalar(RATIONAL, 2)) == hash(2)
    assert len({Scalar(q5, 3), Scalar(q5, 3), Scalar(q5, 4)}) == 2
    # 同一集合中按整数查找
    assert 3 in {Scalar(q5, 3)}


@given(st.data())
def test_field_axioms(data):
    fld = data.draw(fields())
    a, b, c = (Scalar(fld, fld.canonical(data.draw(raw_values(fld)))) for _ in range(3))
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + (-a) == 0
    if not a.is_zero():
        assert a * a.inverse() == 1


@given(st.data())
def test_format_parse_roundtrip(data):
    fld = data.draw(fields())
    x = fld.canonical(data.draw(raw_values(fld)))
    assert fld.parse(fld.format(x)) == x


@given(prime_fields())
def test_characteristic_is_odd(fld):
    assert fld.characteristic % 2 == 1
    assert fld.canonical(2) != 0
