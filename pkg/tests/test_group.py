from __future__ import annotations

import cmath
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from addcomb.group import (
    CapacityError,
    DomainError,
    InvalidOrderError,
    add,
    character,
    element,
    element_at,
    enumerate_elements,
    index_of,
    make_group,
    neg,
    pairing,
    zero,
)
from conftest import groups


def test_mixed_radix_first_factor_most_significant():
    g = make_group([3, 4])
    assert g.size == 12
    assert index_of(g, (1, 2)) == 6
    assert element_at(g, 6) == (1, 2)
    assert list(enumerate_elements(g))[:5] == [(0, 0), (0, 1), (0, 2), (0, 3), (1, 0)]


def test_bad_orders_and_capacity():
    with pytest.raises(InvalidOrderError):
        make_group([0])
    with pytest.raises(InvalidOrderError):
        make_group([3, -2])
    with pytest.raises(CapacityError):
        make_group([2] * 30)


def test_element_validation():
    g = make_group([5, 2])
    assert element(g, (4, 1)) == (4, 1)
    assert element(g, (5, -1)) == (0, 1)  # coordinates are reduced
    with pytest.raises(DomainError):
        element(g, (1,))


def test_two_group_index_is_bitvector_and_addition_is_xor():
    g = make_group([2] * 6)
    assert g.is_elementary_2
    i, j = 0b101100, 0b011010
    assert int(g.add_idx(i, j)) == i ^ j
    assert index_of(g, (1, 0, 1, 1, 0, 0)) == 0b101100


def test_character_exact_at_quarter_turns():
    g = make_group([4])
    assert character(g, (1,), (1,)) == 1j
    assert character(g, (2,), (1,)) == -1
    assert pairing(g, (3,), (3,)) == Fraction(1, 4)


@given(groups(), st.data())
def test_group_laws(g, data):
    pick = st.integers(0, g.size - 1)
    x, y, z = (element_at(g, data.draw(pick)) for _ in range(3))
    assert add(g, x, y) == add(g, y, x)
    assert add(g, add(g, x, y), z) == add(g, x, add(g, y, z))
    assert add(g, x, zero(g)) == x
    assert add(g, x, neg(g, x)) == zero(g)


@given(groups(), st.data())
def test_index_ops_match_tuple_ops(g, data):
    i = data.draw(st.integers(0, g.size - 1))
    j = data.draw(st.integers(0, g.size - 1))
    k = data.draw(st.integers(-5, 5))
    x, y = element_at(g, i), element_at(g, j)
    assert int(g.add_idx(i, j)) == index_of(g, add(g, x, y))
    assert int(g.neg_idx(i)) == index_of(g, neg(g, x))
    assert int(g.sub_idx(i, j)) == index_of(g, add(g, x, neg(g, y)))
    assert int(g.mul_idx(k, i)) == index_of(g, tuple((k * a) % n for a, n in zip(x, g.orders)))
    assert g.element_order(i) * 1 >= 1
    assert int(g.mul_idx(g.element_order(i), i)) == 0


@given(groups(max_size=64), st.data())
def test_character_is_multiplicative(g, data):
    pick = st.integers(0, g.size - 1)
    xi, x, y = (element_at(g, data.draw(pick)) for _ in range(3))
    lhs = character(g, xi, add(g, x, y))
    rhs = character(g, xi, x) * character(g, xi, y)
    assert cmath.isclose(lhs, rhs, abs_tol=1e-12)
    assert abs(abs(lhs) - 1) < 1e-12


def test_vectorized_add_matches_scalar():
    g = make_group([3, 5])
    a = np.arange(g.size)
    table = g.add_idx(a[:, None], a[None, :])
    for i in range(g.size):
        for j in range(g.size):
            assert table[i, j] == index_of(g, add(g, element_at(g, i), element_at(g, j)))
