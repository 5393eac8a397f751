from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from addcomb.corpus import oracle_cycle_scan, planted_cycle_instance
from addcomb.cycles import (
    DependencyCertificate,
    build_graph,
    build_kfold_graph,
    cycle_from_vertices,
    default_depth_cap,
    dependency_from_cycle,
    erdos_hypothesis,
    kfold_multiplicity_bound,
    cycle_degree,
    prune_bipartite,
    prune_min_degree,
    tree_search,
)
from addcomb.dissociation import is_dissociated
from addcomb.group import DomainError, make_group
from addcomb.setops import GroupSet
from conftest import groups, subsets

Z7 = make_group([7])
FULL7 = GroupSet.from_indices(Z7, range(7))


def test_z7_graph_and_oracle_cycle():
    G = build_graph(FULL7, FULL7, [1, 2, 3])
    G.check_invariants()
    assert len(G.edges) == 21
    found = {cs: vs for vs, cs in oracle_cycle_scan(G, 4)}
    assert (1, 2, 3, 2) in found
    cyc = cycle_from_vertices(G, found[(1, 2, 3, 2)])
    cert = dependency_from_cycle(cyc)
    assert cert.coeffs == (1, -2, 1) and cert.verify()
    assert cert.weight <= len(cyc)


def test_z7_tree_search_reports_abort():
    # every vertex has degree 3 and the root's children already use 2 colours
    ts = tree_search(build_graph(FULL7, FULL7, [1, 2, 3]))
    assert ts.cycle is None and ts.reason == "no_fresh_colors" and ts.line5_aborts == 1


def test_planted_instance_finds_short_cycle():
    g, A, B, lam, sigma = planted_cycle_instance()
    assert len(lam) == 161
    G = build_graph(A, B, lam)
    d = cycle_degree(sigma, len(lam), len(A))
    assert erdos_hypothesis(G, d)
    ts = tree_search(prune_min_degree(G, d))
    assert ts.reason == "collision"
    assert len(ts.cycle) <= 4 * 10
    cert = dependency_from_cycle(ts.cycle)
    assert cert.verify() and 1 in map(abs, cert.coeffs) and cert.weight <= len(ts.cycle)


def test_refutes_is_sound_for_doubled_coefficients():
    g = make_group([5])
    assert is_dissociated(g, [1, 2]) is True
    cert = DependencyCertificate(g, (1, 2), (2, -1))
    assert cert.verify()
    assert cert.refutes() == "bounded_coefficients"
    assert DependencyCertificate(make_group([7]), (1, 2, 3), (1, 1, -1)).refutes() == "dissociated"


def test_reduced_coefficients():
    g = make_group([2, 2])
    cert = DependencyCertificate(g, (1, 2), (2, 0))
    assert cert.reduced().coeffs == (0, 0)
    assert cert.refutes() == "bounded_coefficients"


def test_bad_colour_sets():
    with pytest.raises(DomainError):
        build_graph(FULL7, FULL7, [1, 1])


@given(groups(max_size=64), st.data())
@settings(max_examples=60)
def test_graph_edges_are_exactly_differences(g, data):
    A = data.draw(subsets(g, 1, 10))
    B = data.draw(subsets(g, 1, 10))
    lam = sorted(data.draw(st.sets(st.integers(0, g.size - 1), min_size=1, max_size=6)))
    G = build_graph(A, B, lam)
    G.check_invariants()
    want = {(a, b) for a in A for b in B if int(g.sub_idx(a, b)) in lam}
    got = {(G.left[li], G.right[ri]) for li, ri, _ in G.edges}
    assert want == got


@given(groups(max_size=64), st.data(), st.integers(1, 4), st.integers(1, 4))
@settings(max_examples=60)
def test_pruning_reaches_degree_core(g, data, d1, d2):
    A = data.draw(subsets(g, 1, 16))
    B = data.draw(subsets(g, 1, 16))
    assume(g.size >= 2)
    lam = sorted(data.draw(st.sets(st.integers(1, g.size - 1), min_size=1, max_size=8)))
    G = build_graph(A, B, lam)
    P = prune_bipartite(G, d1, d2)
    dl, dr = P.degrees()
    assert all(dl >= d1) and all(dr >= d2)
    kept = {(P.left[li], P.right[ri], P.colors[ci]) for li, ri, ci in P.edges}
    assert kept <= {(G.left[li], G.right[ri], G.colors[ci]) for li, ri, ci in G.edges}
    # order of removal does not change the core
    Q = prune_bipartite(G, d1, d2, order="descending")
    assert sorted(P.left) == sorted(Q.left) and sorted(P.right) == sorted(Q.right)


@given(groups(max_size=48), st.data())
@settings(max_examples=60)
def test_any_found_cycle_is_valid(g, data):
    assume(g.size >= 3)
    A = data.draw(subsets(g, 2, 20))
    lam = sorted(data.draw(st.sets(st.integers(1, g.size - 1), min_size=2, max_size=8)))
    G = build_graph(A, A, lam)
    ts = tree_search(G)
    if ts.cycle is not None:
        ts.cycle.check()
        assert len(ts.cycle) <= 2 * ts.depth_cap
        cert = dependency_from_cycle(ts.cycle)
        assert cert.verify() and all(abs(e) <= len(ts.cycle) for e in cert.coeffs)
        assert any(abs(e) == 1 for e in cert.coeffs)


def test_kfold_graph_multiplicity():
    g = make_group([6])
    sets = [GroupSet.from_indices(g, s) for s in ([0, 1], [0, 2, 3], [1, 2, 4, 5])]
    G = build_kfold_graph(sets, [1, 2])
    G.check_invariants(kfold_multiplicity_bound(sets))


def test_cycle_degree_and_depth_cap():
    assert cycle_degree(Fraction(1024), 161, 1024) == 41
    assert cycle_degree(1, 1, 100) == 1
    assert default_depth_cap(1024) == 20
