from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from core.algebra import (Algebra, mul, add, scale, basis, degree_component, format_element, parse_element,
                          mul_monomial_generator, mask_of)
from core.errors import AlgebraMismatch, BadDegree, BadIndex, ParseError
from core.scalar import RATIONAL
from core.sltm import from_rows, zero_matrix
from strategies import fields, sltms, raw_values


def test_square_rewrites_by_row():
    # X_2^2 = t21 X1X2
    A = Algebra(from_rows([[3]]))
    x2 = A.generator(2)
    assert x2 * x2 == A.monomial((1, 2), 3)
    # X_1^2 = 0
    assert (A.generator(1) ** 2).is_zero()


def test_three_generators():
    T = from_rows([[1], [2, 5]])
    A = Algebra(T)
    x1, x2, x3 = (A.generator(i) for i in (1, 2, 3))
    # X3^2 = 2 X1X3 + 5 X2X3
    assert x3 * x3 == A.monomial((1, 3), 2) + A.monomial((2, 3), 5)
    # X2X3 · X3 = X2 · (2 X1X3 + 5 X2X3) = 2 X1X2X3 + 5 X2^2 X3 = 2 X1X2X3 + 5 X1X2X3
    assert (x2 * x3) * x3 == A.monomial((1, 2, 3), 7)


def test_mul_monomial_generator_memo():
    A = Algebra(from_rows([[1], [2, 5]]))
    memo = {}
    first = mul_monomial_generator(A, mask_of((1, 3)), 3, memo)
    assert memo
    assert mul_monomial_generator(A, mask_of((1, 3)), 3, memo) == first
    with pytest.raises(BadIndex):
        mul_monomial_generator(A, 0, 4)


@pytest.mark.parametrize("n", range(1, 9))
def test_dimension_and_nilpotency(n):
    T = zero_matrix(n).with_entries({(i, j): i - j for i in range(2, n + 1) for j in range(1, i)}) \
        if n > 1 else zero_matrix(1)
    A = Algebra(T)
    assert A.dimension() == 2 ** n
    assert len(basis(A)) == 2 ** n
    prod = A.unit()
    for i in range(1, n + 1):
        prod = prod * A.generator(i)
    assert (prod * A.generator(n)).is_zero()
    assert (prod * A.generator(1)).is_zero()


def test_basis_order():
    A = Algebra(zero_matrix(2))
    assert [format_element(b) for b in basis(A)] == ["1", "1*X1", "1*X1X2", "1*X2"]


def test_element_accessors():
    A = Algebra(from_rows([[2]]))
    a = parse_element("3 + X1 - 1/2*X1X2", A)
    assert a.constant_term() == 3
    assert a.coefficient((1, 2)) == Fraction(-1, 2)
    assert a.degrees() == [0, 2, 4]
    assert not a.is_homogeneous()
    assert degree_component(a, 2) == A.generator(1)
    assert degree_component(a, 4).degree() == 4
    assert degree_component(a, 6).degree() is None
    with pytest.raises(BadDegree):
        degree_component(a, 3)
    with pytest.raises(BadDegree):
        a.degree()


def test_format_and_parse():
    A = Algebra(from_rows([[1], [0, 1]]))
    a = parse_element("X1X2 - 2/3*X3", A)
    assert format_element(a) == "1*X1X2 - 2/3*X3"
    assert format_element(A.zero()) == "0"
    assert parse_element(format_element(a), A) == a


def test_parse_errors():
    A = Algebra(zero_matrix(2))
    with pytest.raises(ParseError):
        parse_element("", A)
    with pytest.raises(ParseError):
        parse_element("X3", A)
    with pytest.raises(ParseError):
        parse_element("2*Y1", A)


def test_algebra_mismatch():
    a = Algebra(from_rows([[1]])).generator(1)
    b = Algebra(from_rows([[2]])).generator(1)
    with pytest.raises(AlgebraMismatch):
        mul(a, b)
    with pytest.raises(AlgebraMismatch):
        add(a, b)


def _element(data, A, fld, with_constant=True):
    masks = data.draw(st.lists(st.integers(0 if with_constant else 1, A.dimension() - 1), max_size=4))
    return A.element({m: fld.canonical(data.draw(raw_values(fld))) for m in masks})


@given(st.data())
def test_ring_laws(data):
    fld = data.draw(fields())
    T = data.draw(sltms(fld, max_n=4))
    A = Algebra(T)
    a, b, c = (_element(data, A, fld) for _ in range(3))
    assert mul(a, b) == mul(b, a)
    assert mul(mul(a, b), c) == mul(a, mul(b, c))
    assert mul(a, add(b, c)) == add(mul(a, b), mul(a, c))
    assert mul(a, A.unit()) == a


@given(st.data())
def test_fold_order_and_memo_agree(data):
    fld = data.draw(fields())
    A = Algebra(data.draw(sltms(fld, max_n=5)))
    a, b = _element(data, A, fld), _element(data, A, fld)
    expected = mul(a, b)
    assert mul(a, b, fold='descending') == expected
    assert mul(a, b, memoize=False) == expected


@given(st.data())
def test_product_of_n_plus_one_generators_vanishes(data):
    fld = data.draw(fields())
    T = data.draw(sltms(fld, max_n=6))
    A = Algebra(T)
    idx = data.draw(st.lists(st.integers(1, T.n), min_size=T.n + 1, max_size=T.n + 1))
    prod = A.unit()
    for i in idx:
        prod = prod * A.generator(i)
    assert prod.is_zero()


@given(st.data())
def test_products_are_homogeneous(data):
    fld = data.draw(fields())
    A = Algebra(data.draw(sltms(fld, max_n=5)))
    i, j = data.draw(st.integers(1, A.n)), data.draw(st.integers(1, A.n))
    prod = A.generator(i) * A.generator(j)
    assert prod.is_homogeneous()
    assert prod.degrees() in ([], [4])


def test_scale_by_zero():
    A = Algebra(from_rows([[1]], RATIONAL))
    assert scale(A.generator(1), 0).is_zero()


@given(st.data())
def test_defining_relations(data):
    fld = data.draw(fields())
    T = data.draw(sltms(fld, max_n=6))
    A = Algebra(T)
    for i in range(1, T.n + 1):
        x_i = A.generator(i)
        expected = A.zero()
        for j in range(1, i):
            expected = add(expected, A.monomial((j, i), T.entry(i, j)))
        assert x_i * x_i == expected, i


@given(st.data())
def test_degree_components_of_product(data):
    fld = data.draw(fields())
    A = Algebra(data.draw(sltms(fld, min_n=2, max_n=5, sparse=True)))
    a, b = _element(data, A, fld), _element(data, A, fld)
    prod = mul(a, b)
    for d in range(0, 2 * A.n + 1, 2):
        expected = A.zero()
        for d1 in range(0, d + 1, 2):
            expected = add(expected, mul(degree_component(a, d1), degree_component(b, d - d1)))
        assert degree_component(prod, d) == expected, d


@given(st.data())
def test_elements_without_constant_term_are_nilpotent(data):
    fld = data.draw(fields())
    A = Algebra(data.draw(sltms(fld, max_n=5)))
    e = _element(data, A, fld, with_constant=False)
    assert e.constant_term() == 0
    assert (e ** (A.n + 1)).is_zero()
