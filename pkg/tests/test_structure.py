from __future__ import annotations

import dataclasses
from fractions import Fraction

import pytest
from hypothesis import given, settings

from addcomb.corpus import coordinate_subspace, standard_corpus
from addcomb.group import DomainError, make_group
from addcomb.setops import GroupSet, energy
from addcomb.structure import extract_core_levelset, extract_core_simple, verify_structure
from conftest import group_and_pair


def _subspace_pair():
    g = make_group([2] * 8)
    H = coordinate_subspace(g, range(4))
    return H


def test_subspace_returns_itself():
    H = _subspace_pair()
    for extract in (extract_core_simple, extract_core_levelset):
        r = extract(H, H)
        assert r.B1 == H and r.ok
        assert len(r.Lambda) == 4
        assert verify_structure(H, H, r).ok


def test_simple_swaps_to_make_A_larger():
    g = make_group([11])
    A = GroupSet.from_indices(g, [0, 1])
    B = GroupSet.from_indices(g, [0, 1, 2, 3, 4])
    r = extract_core_simple(A, B)
    assert r.swapped and len(r.A) == 5
    assert verify_structure(A, B, r).ok


def test_empty_input_rejected():
    g = make_group([5])
    with pytest.raises(DomainError):
        extract_core_simple(GroupSet(g, ()), GroupSet.from_indices(g, [1]))


@given(group_and_pair(max_size=96))
@settings(max_examples=60, deadline=None)
def test_simple_guarantees(t):
    g, A, B = t
    r = extract_core_simple(A, B)
    assert r.ok, [c for c in r.checks if not c.holds]
    na, nb = len(r.A), len(r.B)
    assert r.c == Fraction(energy(r.A, r.B), na * nb * nb)
    assert 4 * r.energy_AB1 >= r.c * na * nb * nb
    assert verify_structure(A, B, r).ok


@given(group_and_pair(max_size=96))
@settings(max_examples=60, deadline=None)
def test_levelset_guarantees(t):
    g, A, B = t
    r = extract_core_levelset(A, B)
    assert r.ok, [c for c in r.checks if not c.holds]
    assert 16 * r.s * r.energy_AB1 >= r.energy_AB
    assert r.c_j >= r.c / (2 * r.s)
    assert r.branch in ("S_j", "A")
    assert verify_structure(A, B, r).ok


def test_tampered_result_fails_verification():
    H = _subspace_pair()
    g = H.group
    r = extract_core_simple(H, H)
    bad = dataclasses.replace(r, B1=GroupSet.from_indices(g, list(r.B1.elements) + [255]))
    rep = verify_structure(H, H, bad)
    assert not rep.ok
    assert {c.name for c in rep.failures()} >= {"B1 subset of B", "B1 equals threshold set"}


def test_self_pairs_satisfy_cauchy_schwarz_chain():
    for name, A, B in standard_corpus(seed=1, n_random=10):
        if A != B:
            continue
        for extract in (extract_core_simple, extract_core_levelset):
            rep = verify_structure(A, A, extract(A, A))
            assert rep.ok, (name, rep.failures())
