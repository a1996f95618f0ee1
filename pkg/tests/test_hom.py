import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from core.algebra import Algebra, mul
from core.errors import (DimensionMismatch, FieldMismatch, UnverifiedMorphism, Singular, SourceTargetMismatch,
                         RestrictionViolated, NotDetermined, ParseError)
from core.scalar import RATIONAL
from core.sltm import from_rows, zero_matrix
from iso_analysis.hom import (GammaMatrix, gamma_from_rows, gamma_from_json, identity_gamma, key_eq_check,
                              key_eq_failure, direct_hom_check, is_isomorphism, make_morphism, identity_morphism,
                              apply_morphism, invert_isomorphism, compose, induced_target, parse_gamma)
from strategies import fields, sltms, sparse_gammas

HALF = Fraction(1, 2)


def test_n2_isomorphism():
    T, S = from_rows([[1]]), zero_matrix(2)
    G = gamma_from_rows([[1, HALF], [0, 1]], RATIONAL)
    assert key_eq_check(T, S, G)
    assert direct_hom_check(T, S, G)
    assert is_isomorphism(T, S, G)


def test_key_eq_failure_index():
    T, S = from_rows([[1]]), zero_matrix(2)
    assert key_eq_failure(T, S, identity_gamma(2, RATIONAL)) == (2, 1, 2)
    assert not direct_hom_check(T, S, identity_gamma(2, RATIONAL))


def test_identity_is_isomorphism(q_example):
    assert is_isomorphism(q_example, q_example, identity_gamma(5, RATIONAL))
    m = identity_morphism(q_example)
    assert m.verified == {'hom': True, 'iso': True}


def test_rectangular_zero_map():
    # Γ = 0 总是同态，但不是同构
    T, S = from_rows([[1], [2, 3]]), from_rows([[5]])
    G = GammaMatrix(RATIONAL, [[0, 0, 0], [0, 0, 0]])
    assert key_eq_check(T, S, G)
    assert direct_hom_check(T, S, G)
    with pytest.raises(DimensionMismatch):
        is_isomorphism(T, S, G)


def test_shape_and_field_checks(q3):
    T = from_rows([[1]])
    with pytest.raises(DimensionMismatch):
        key_eq_check(T, T, identity_gamma(3, RATIONAL))
    with pytest.raises(FieldMismatch):
        key_eq_check(T, from_rows([[1]], q3), identity_gamma(2, RATIONAL))


def test_singular_gamma_is_not_iso():
    T = zero_matrix(2)
    G = GammaMatrix(RATIONAL, [[1, 1], [0, 0]])
    assert not is_isomorphism(T, T, G)


def test_apply_morphism_respects_relations():
    T, S = from_rows([[1]]), zero_matrix(2)
    m = make_morphism(T, S, gamma_from_rows([[1, HALF], [0, 1]], RATIONAL))
    A = Algebra(T)
    x1, x2 = A.generator(1), A.generator(2)
    lhs = apply_morphism(m, mul(x2, x2))
    rhs = mul(apply_morphism(m, x2), apply_morphism(m, x2))
    assert lhs == rhs
    assert apply_morphism(m, x1 * x2) == Algebra(S).monomial((1, 2))


def test_unverified_morphism_is_rejected():
    T, S = from_rows([[1]]), zero_matrix(2)
    bad = make_morphism(T, S, identity_gamma(2, RATIONAL))
    assert not bad.hom
    with pytest.raises(UnverifiedMorphism):
        apply_morphism(bad, Algebra(T).generator(1))
    with pytest.raises(UnverifiedMorphism):
        invert_isomorphism(bad)


def test_invert_and_compose():
    T, S = from_rows([[1]]), zero_matrix(2)
    f = make_morphism(T, S, gamma_from_rows([[1, HALF], [0, 1]], RATIONAL))
    g = invert_isomorphism(f)
    assert g.iso
    assert g.gamma == gamma_from_rows([[1, -HALF], [0, 1]], RATIONAL)
    loop = compose(g, f)
    assert loop.gamma == identity_gamma(2, RATIONAL)
    assert loop.iso
    with pytest.raises(SourceTargetMismatch):
        compose(f, f)


def test_invert_singular_hom():
    T = zero_matrix(2)
    f = make_morphism(T, T, GammaMatrix(RATIONAL, [[0, 0], [0, 0]]))
    assert f.hom and not f.iso
    with pytest.raises(Singular):
        invert_isomorphism(f)


def test_gamma_json_roundtrip(q5):
    G = gamma_from_rows([[1, 2], [3, 4]], q5)
    assert gamma_from_json(G.to_json()) == G
    R = gamma_from_rows([[HALF, "-3/4"]], RATIONAL)
    assert gamma_from_json(R.to_json()) == R


def test_induced_target():
    T = from_rows([[1]])
    G = gamma_from_rows([[1, HALF], [0, 1]], RATIONAL)
    assert induced_target(T, G) == zero_matrix(2)
    assert induced_target(T, identity_gamma(2, RATIONAL)) == T


def test_induced_target_restrictions():
    with pytest.raises(RestrictionViolated):
        induced_target(zero_matrix(2), gamma_from_rows([[1, 0], [1, 1]], RATIONAL))
    with pytest.raises(NotDetermined) as err:
        induced_target(zero_matrix(2), GammaMatrix(RATIONAL, [[0, 0], [0, 0]]))
    assert err.value.position == (2, 1)


@settings(max_examples=1000)
@given(st.data())
def test_key_eq_matches_direct_evaluation(data):
    fld = data.draw(fields())
    T = data.draw(sltms(fld, max_n=4, sparse=True))
    S = data.draw(sltms(fld, max_n=4, sparse=True))
    G = data.draw(sparse_gammas(fld, S.n, T.n))
    assert key_eq_check(T, S, G) == direct_hom_check(T, S, G)


@given(st.data())
def test_induced_target_is_a_hom(data):
    fld = data.draw(fields())
    T = data.draw(sltms(fld, max_n=4, sparse=True))
    G = data.draw(sparse_gammas(fld, data.draw(st.integers(1, 4)), T.n))
    try:
        S = induced_target(T, G)
    except (RestrictionViolated, NotDetermined):
        return
    assert key_eq_check(T, S, G)


def test_parse_gamma(q5):
    assert parse_gamma("1 1/2|0 1", RATIONAL) == gamma_from_rows([[1, HALF], [0, 1]], RATIONAL)
    assert parse_gamma("1 2\n3 4\n", q5) == gamma_from_rows([[1, 2], [3, 4]], q5)
    G = gamma_from_rows([[1, 2], [3, 4]], q5)
    assert parse_gamma(json.dumps(G.to_json()), q5) == G


def test_parse_gamma_errors(q5):
    with pytest.raises(ParseError):
        parse_gamma("  ", q5)
    with pytest.raises(ParseError):
        parse_gamma("1 2|3", q5)
    with pytest.raises(ParseError) as err:
        parse_gamma("1 x", q5)
    assert err.value.column == 2
    with pytest.raises(ParseError):
        parse_gamma('{"rows": 2', q5)
    with pytest.raises(FieldMismatch):
        parse_gamma(json.dumps(gamma_from_rows([[1]], RATIONAL).to_json()), q5)
