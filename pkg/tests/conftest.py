from fractions import Fraction as Fr

import pytest
from hypothesis import settings

from core.scalar import make_field, RATIONAL
from core.sltm import from_rows

settings.register_profile("niltri", derandomize=True, deadline=None, max_examples=100)
settings.load_profile("niltri")


@pytest.fixture
def q3():
    return make_field('q3')


@pytest.fixture
def q5():
    return make_field('q5')


@pytest.fixture
def q7():
    return make_field('q7')


@pytest.fixture
def p_example():
    return from_rows([[1], [2, 1], [3, 3, 1], [1, 3, 2, 3], [2, 2, 3, 2, 1]], RATIONAL)


@pytest.fixture
def f_example():
    return from_rows([[1], [2, 1], [3, 3, 0], [1, 3, 0, 0], [2, 2, 3, 2, 1]], RATIONAL)


@pytest.fixture
def q_example():
    return from_rows([[2], [1, 0], [3, 1, 2], [1, 2, 3, 1]], RATIONAL)


@pytest.fixture
def q_example_delta():
    return from_rows([[2], [1, 2], [3, 6, 2], [1, 2, 3, 1]], RATIONAL)


def _pad(values, i):
    return list(values) + [0] * (i - 1 - len(values))


@pytest.fixture
def u12():
    """12×12 零类矩阵，主元链分为两支"""
    rows = {
        2: [1],
        3: [-1, 2],
        5: [1, -2, 2],
        6: [Fr(1, 2), -1, 1],
        7: [-1, 2, -2, 0, 2],
        8: [0, 0, 0, 1],
        9: [0, 0, 0, Fr(-3, 2), 0, 0, 0, 3],
        10: [Fr(1, 2), -1, 1, 0, -1, 0, 1],
        12: [Fr(-3, 4), Fr(3, 2), Fr(-3, 2), 0, 0, 3],
    }
    return from_rows([_pad(rows.get(i, []), i) for i in range(2, 13)], RATIONAL)
