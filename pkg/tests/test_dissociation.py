from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from addcomb.corpus import oracle_dim, oracle_gf2_rank, oracle_is_dissociated
from addcomb.dissociation import (
    MITM_CAP,
    SignWitness,
    dim_exact,
    gf2_rank,
    is_dissociated,
    is_dissociated_gf2,
    is_k_dissociated,
    maximal_dissociated,
    span_contains,
    span_contains_gf2,
    span_index,
    subset_sums_distinct,
)
from addcomb.group import CapacityError, make_group
from addcomb.setops import GroupSet
from conftest import groups, subsets, two_group

Z7 = make_group([7])


def test_z7_forced_relation():
    w = is_dissociated(Z7, [1, 2, 3])
    assert isinstance(w, SignWitness)
    assert w.coeffs == (1, 1, -1) and w.verify()


def test_z7_small_sets():
    assert is_dissociated(Z7, [1, 2]) is True
    assert is_k_dissociated(Z7, [1, 2, 3], 2) is True
    assert isinstance(is_k_dissociated(Z7, [1, 2, 3], 3), SignWitness)
    w = span_contains(Z7, [1, 2], 4)
    assert w.coeffs == (-1, -1) and w.verify()
    assert maximal_dissociated(Z7, [1, 2, 3]) == [1, 2]
    assert dim_exact(Z7, [1, 2, 3]) == 2


def test_zero_and_involutions():
    assert isinstance(is_dissociated(Z7, [0]), SignWitness)
    g = make_group([4])
    # 2 = -2 in Z/4, yet {2} is dissociated: only 1*2 and -1*2 are available
    assert is_dissociated(g, [2]) is True
    assert isinstance(is_dissociated(g, [1, 2, 3]), SignWitness)


def test_mitm_cap():
    g = make_group([2] * 7)
    with pytest.raises(CapacityError):
        is_dissociated(g, list(range(1, MITM_CAP + 2)))


@given(st.integers(1, 10), st.data())
@settings(max_examples=200)
def test_gf2_path_agrees_with_general(n, data):
    g = two_group(n)
    L = sorted(data.draw(st.sets(st.integers(0, g.size - 1), max_size=min(12, g.size))))
    general, fast = is_dissociated(g, L), is_dissociated_gf2(g, L)
    assert (general is True) == (fast is True)
    if general is not True:
        assert general.verify() and fast.verify()
    nonzero = [x for x in L if x]
    assert dim_exact(g, L) == gf2_rank(nonzero) == oracle_gf2_rank(GroupSet.from_indices(g, nonzero))


@given(groups(max_size=60), st.data())
@settings(max_examples=80)
def test_dissociation_matches_oracle(g, data):
    L = sorted(data.draw(st.sets(st.integers(0, g.size - 1), max_size=min(7, g.size))))
    res = is_dissociated(g, L)
    assert (res is True) == oracle_is_dissociated(g, L)
    if res is not True:
        assert res.verify() and res.coeffs[next(i for i, e in enumerate(res.coeffs) if e)] == 1


@given(groups(max_size=60), st.data())
@settings(max_examples=60)
def test_greedy_is_maximal_and_spans(g, data):
    Q = data.draw(subsets(g, 0, 10))
    lam = maximal_dissociated(g, Q)
    assert set(lam) <= set(Q)
    assert is_dissociated(g, lam) is True
    idx = span_index(g, lam)
    for q in Q:
        w = idx.witness(q)
        assert w is not None and w.verify()
    for q in set(Q) - set(lam):
        assert is_dissociated(g, lam + [q]) is not True


@given(groups(max_size=40), st.data())
@settings(max_examples=50)
def test_dim_exact_matches_brute_force(g, data):
    Q = data.draw(subsets(g, 0, 8))
    d = dim_exact(g, Q)
    assert d == oracle_dim(g, Q)
    assert len(maximal_dissociated(g, Q)) <= d


@given(st.integers(1, 9), st.data())
def test_dissociated_sets_have_distinct_subset_sums(n, data):
    g = two_group(n)
    L = sorted(data.draw(st.sets(st.integers(1, g.size - 1), max_size=n)))
    if is_dissociated_gf2(g, L) is True:
        assert subset_sums_distinct(g, L)


def test_gf2_span():
    g = two_group(5)
    w = span_contains_gf2(g, [0b10000, 0b01000], 0b11000)
    assert w.coeffs == (1, 1) and w.verify()
    assert span_contains_gf2(g, [0b10000, 0b01000], 0b00100) is None


def test_span_index_witness_uses_each_generator_once():
    g = make_group([11])
    idx = span_index(g, [1, 3, 5])
    for x in range(11):
        w = idx.witness(x)
        if w is not None:
            assert all(abs(e) <= 1 for e in w.coeffs) and w.verify()
    assert idx.size() == sum(idx.witness(x) is not None for x in range(11))
