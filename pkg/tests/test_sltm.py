import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from core.errors import BadIndex, IndexOrder, BadSize, ParseError, FieldMismatch, InfiniteField, DivisionByZero
from core.scalar import RATIONAL
from core.sltm import (SLTM, from_rows, zero_matrix, b_matrix, delta, restrict, embed, count_sltm,
                       enumerate_sltm, serial_index, from_serial, serialize_sltm, parse_sltm,
                       to_json, from_json)
from strategies import fields, sltms, raw_values


def test_entries_and_rows():
    T = from_rows([[1], [2, 3]])
    assert T.n == 3
    assert T.entry(3, 2) == 3
    assert T.raw(1, 3) == 0
    assert T.row(1) == ()
    assert T.rows() == [[1], [2, 3]]
    assert T.nonzero_positions() == [(2, 1), (3, 1), (3, 2)]
    with pytest.raises(BadIndex):
        T.entry(4, 1)


def test_bad_sizes():
    with pytest.raises(BadSize):
        from_rows([[1], [2]])
    with pytest.raises(BadSize):
        SLTM(0, RATIONAL, [])
    with pytest.raises(BadSize):
        SLTM(3, RATIONAL, [1, 2])


def test_b_matrix():
    B = b_matrix(4, 2)
    assert B.nonzero_positions() == [(4, 1), (4, 2)]
    assert B.entry(4, 2) == 1
    with pytest.raises(BadIndex):
        b_matrix(3, 3)
    with pytest.raises(BadIndex):
        b_matrix(3, 0)


def test_with_entries_is_persistent():
    Z = zero_matrix(3)
    T = Z.with_entries({(3, 1): 5})
    assert Z.is_zero()
    assert T.entry(3, 1) == 5
    with pytest.raises(BadIndex):
        Z.with_entries({(1, 2): 1})


def test_delta(q_example_delta):
    assert delta(q_example_delta, 1, 1, 3, 4) == 5
    assert delta(q_example_delta, 1, 2, 3, 4) == 10
    assert delta(q_example_delta, 2, 1, 3, 4) == 2 * 3 + 2 * 1
    with pytest.raises(IndexOrder):
        delta(q_example_delta, 1, 3, 2, 4)
    with pytest.raises(BadIndex):
        delta(q_example_delta, 1, 1, 2, 6)


def test_restrict():
    T = from_rows([[1], [2, 3], [4, 5, 6]])
    assert restrict(T, 3) == from_rows([[1], [2, 3]])
    assert restrict(T, 1).n == 1
    with pytest.raises(BadIndex):
        restrict(T, 4)


def test_embed_into_prime_field(q7):
    T = from_rows([[Fraction(1, 2)], [3, -1]])
    E = embed(T, q7)
    assert E.rows() == [[4], [3, 6]]
    with pytest.raises(DivisionByZero):
        embed(from_rows([[Fraction(1, 7)]]), q7)


def test_enumeration_order_matches_serial(q3):
    mats = list(enumerate_sltm(3, q3))
    assert len(mats) == count_sltm(3, q3) == 27
    assert mats == sorted(mats)
    assert [serial_index(T) for T in mats] == list(range(27))
    assert all(from_serial(3, q3, k) == T for k, T in enumerate(mats))


def test_infinite_field_has_no_enumeration():
    with pytest.raises(InfiniteField):
        enumerate_sltm(2, RATIONAL)
    with pytest.raises(InfiniteField):
        serial_index(zero_matrix(2))
    assert count_sltm(3, RATIONAL) is None


def test_serialize_and_parse():
    T = from_rows([[Fraction(1, 2)], [-3, 0]])
    text = serialize_sltm(T)
    assert text.splitlines() == ["n=3; field=rational", "1/2", "-3 0"]
    assert parse_sltm(text) == T


def test_parse_inline(q3):
    T = parse_sltm("n=3;q3;rows:1|2 0")
    assert T.field == q3
    assert T.rows() == [[1], [2, 0]]
    assert parse_sltm("n=1; field=q5").n == 1


def test_parse_json(q3):
    T = parse_sltm(json.dumps({'n': 3, 'field': 'q3', 'rows': [[1], [2, 0]]}))
    assert T == from_rows([[1], [2, 0]], q3)


def test_parse_errors_report_position():
    with pytest.raises(ParseError) as err:
        parse_sltm("n=3; field=rational\n1\n2 x")
    assert err.value.line == 3
    assert err.value.column == 3
    with pytest.raises(ParseError) as err:
        parse_sltm("n=3; field=rational\n1 2\n2 3")
    assert err.value.line == 2
    with pytest.raises(ParseError):
        parse_sltm("field=q3\n1")
    with pytest.raises(ParseError):
        parse_sltm("   ")


def test_parse_field_mismatch(q5):
    with pytest.raises(FieldMismatch):
        parse_sltm("n=2;q3;rows:1", q5)


@given(st.data())
def test_json_and_text_roundtrip(data):
    fld = data.draw(fields())
    T = data.draw(sltms(fld))
    assert from_json(to_json(T)) == T
    assert parse_sltm(serialize_sltm(T)) == T


def test_delta_of_b32():
    assert delta(b_matrix(3, 2), 2, 1, 2, 3) == 2
    assert delta(zero_matrix(4), 3, 1, 2, 4) == 0


@given(st.data())
def test_delta_is_affine_in_alpha(data):
    fld = data.draw(fields())
    U = data.draw(sltms(fld, min_n=3, max_n=6))
    i, j, k = sorted(data.draw(st.lists(st.integers(1, U.n), min_size=3, max_size=3, unique=True)))
    a1 = data.draw(raw_values(fld))
    a2 = data.draw(raw_values(fld))
    both = delta(U, fld.add(a1, a2), i, j, k)
    constant = U.entry(k, j) * U.entry(j, i)
    assert both == delta(U, a1, i, j, k) + delta(U, a2, i, j, k) - constant
    assert delta(U, a1, i, j, k) - U.entry(k, i) * a1 == constant


def test_restrict_examples(u12):
    assert restrict(u12, 3) == from_rows([[1], [-1, 2]])
    assert restrict(b_matrix(4, 2), 3) == zero_matrix(3)
    assert restrict(u12, 11) == from_rows([list(u12.row(i)) for i in range(2, 12)])
