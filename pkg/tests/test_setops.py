from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from addcomb.corpus import oracle_convolve, oracle_correlate, oracle_energy
from addcomb.group import DomainError, make_group
from addcomb.setops import (
    GroupSet,
    convolve,
    convolve_function,
    correlate,
    energy,
    energy_from,
    kfold_convolve,
    negate,
    sumset,
    translate,
)
from conftest import group_and_pair, groups, subsets


def test_z4_example():
    g = make_group([4])
    A = GroupSet.from_indices(g, [0, 1])
    assert list(convolve(A, A).values) == [1, 2, 1, 0]
    assert energy(A, A) == 6
    assert oracle_energy(A, A) == 6


def test_groupset_validation():
    g = make_group([5])
    with pytest.raises(DomainError):
        GroupSet.from_indices(g, [1, 1])
    with pytest.raises(DomainError):
        GroupSet.from_indices(g, [7])
    S = GroupSet.from_coords(g, [(3,), (1,)])
    assert S.elements == (1, 3) and 3 in S and 2 not in S
    assert GroupSet.from_mask(g, S.indicator()) == S


@given(group_and_pair(nonempty=False))
def test_convolve_and_correlate_match_oracles(t):
    g, A, B = t
    assert list(convolve(A, B).values) == oracle_convolve(A, B)
    assert list(correlate(A, B).values) == oracle_correlate(A, B)
    assert convolve(A, B).total() == len(A) * len(B)


@given(group_and_pair(max_size=64, nonempty=False))
@settings(max_examples=60)
def test_energy_matches_quadruple_count(t):
    g, A, B = t
    assert energy(A, B) == oracle_energy(A, B) == energy(B, A)


@given(group_and_pair(nonempty=False))
def test_correlation_counts_translate_intersections(t):
    g, A, B = t
    f = correlate(A, B)
    for x in range(0, g.size, max(1, g.size // 8)):
        assert f[x] == len(set(A) & set(translate(B, x)))


@given(group_and_pair(nonempty=False))
def test_correlate_is_convolution_with_negation(t):
    g, A, B = t
    assert correlate(A, B) == convolve(A, negate(B))


@given(group_and_pair())
def test_energy_bounds(t):
    g, A, B = t
    e = energy(A, B)
    assert len(A) * len(B) <= e <= min(len(A), len(B)) * len(A) * len(B)
    assert e == energy_from(convolve(A, B))


@given(group_and_pair())
def test_sumset_is_support(t):
    g, A, B = t
    assert sumset(A, B) == convolve(A, B).support()


@given(groups(max_size=64), st.data())
def test_kfold_convolution_is_associative(g, data):
    sets = [data.draw(subsets(g, 1, 8)) for _ in range(3)]
    direct = kfold_convolve(sets)
    step = convolve_function(convolve(sets[0], sets[1]), sets[2])
    assert direct == step
    neg = kfold_convolve(sets, negate_index=2)
    assert neg == convolve_function(convolve(sets[0], sets[1]), negate(sets[2]))


def test_subgroup_energy_is_cube():
    g = make_group([2] * 6)
    H = GroupSet.from_indices(g, range(8))
    assert energy(H, H) == 8**3
