"""Edge-coloured bipartite graphs, min-degree peeling and special cycles.

Left vertices stand for group elements (or tuples of elements whose sum is
used), right vertices are elements of B, and an edge (a, b) carries colour
lam exactly when a - b = lam.  Walking any closed cycle and adding the colour
with sign +1 on left-to-right steps and -1 on right-to-left steps telescopes
to zero, which turns cycles into relations among the colours.
"""

from __future__ import annotations

import itertools
import logging
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Hashable, Sequence

import numpy as np

from .group import DomainError, GroupSpec
from .setops import GroupSet

log = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class ColoredBipartiteGraph:
    group: GroupSpec
    colors: tuple[int, ...]  # Lambda, as element indices
    left: tuple[Hashable, ...]  # labels: element index, or tuple of indices
    left_value: tuple[int, ...]  # element each left vertex stands for
    right: tuple[int, ...]
    edges: tuple[tuple[int, int, int], ...]  # (left pos, right pos, colour pos)
    b_size: int = 0  # |B| of the unpruned graph; fixes the default depth cap

    @property
    def n_vertices(self) -> int:
        return len(self.left) + len(self.right)

    @cached_property
    def left_adj(self) -> list[list[tuple[int, int]]]:
        """Per left vertex: (colour pos, right pos), sorted by colour element."""
        adj: list[list[tuple[int, int]]] = [[] for _ in self.left]
        for li, ri, ci in self.edges:
            adj[li].append((ci, ri))
        key = self._color_key
        for a in adj:
            a.sort(key=lambda e: (key[e[0]], e[1]))
        return adj

    @cached_property
    def right_adj(self) -> list[list[tuple[int, int]]]:
        adj: list[list[tuple[int, int]]] = [[] for _ in self.right]
        for li, ri, ci in self.edges:
            adj[ri].append((ci, li))
        key = self._color_key
        for a in adj:
            a.sort(key=lambda e: (key[e[0]], e[1]))
        return adj

    @property
    def _color_key(self) -> tuple[int, ...]:
        return self.colors

    def degrees(self) -> tuple[np.ndarray, np.ndarray]:
        dl = np.zeros(len(self.left), dtype=np.int64)
        dr = np.zeros(len(self.right), dtype=np.int64)
        for li, ri, _ in self.edges:
            dl[li] += 1
            dr[ri] += 1
        return dl, dr

    def color_of(self, li: int, ri: int) -> int:
        return int(self.group.sub_idx(self.left_value[li], self.right[ri]))

    def check_invariants(self, kfold_bound: int | None = None) -> None:
        """Raise AssertionError unless every edge obeys a - b = lam and colours are
        distinct around each left vertex; around right vertices each colour may
        repeat at most ``kfold_bound`` times (1 for the plain graph)."""
        bound = 1 if kfold_bound is None else kfold_bound
        for li, ri, ci in self.edges:
            assert self.color_of(li, ri) == self.colors[ci], "edge colour mismatch"
        for adj in self.left_adj:
            cols = [c for c, _ in adj]
            assert len(cols) == len(set(cols)), "repeated colour at a left vertex"
        for adj in self.right_adj:
            counts: dict[int, int] = {}
            for c, _ in adj:
                counts[c] = counts.get(c, 0) + 1
            assert all(v <= bound for v in counts.values()), "colour multiplicity above bound"


def _check_lambda(Lambda: Sequence[int]) -> tuple[int, ...]:
    lam = tuple(int(x) for x in Lambda)
    if len(set(lam)) != len(lam):
        raise DomainError("colour set has duplicates")
    return lam


def build_graph(A: GroupSet, B: GroupSet, Lambda: Sequence[int]) -> ColoredBipartiteGraph:
    if A.group != B.group:
        raise DomainError("sets live in different groups")
    g = A.group
    lam = _check_lambda(Lambda)
    right = B.elements
    pos_b = {b: i for i, b in enumerate(right)}
    edges = []
    if len(A) and lam:
        targets = g.sub_idx(A.array()[:, None], np.asarray(lam, dtype=np.int64)[None, :])
        inb = B.indicator()[targets]
        for li, ci in zip(*np.nonzero(inb)):
            edges.append((int(li), pos_b[int(targets[li, ci])], int(ci)))
    return ColoredBipartiteGraph(g, lam, A.elements, A.elements, right, tuple(edges), len(B))


def build_kfold_graph(sets: Sequence[GroupSet], Lambda: Sequence[int]) -> ColoredBipartiteGraph:
    """Left part A_1 x ... x A_{k-2} x A_k, right part A_{k-1}; sets must be
    given already ordered by cardinality."""
    if len(sets) < 2:
        raise ValueError("need at least two sets")
    g = sets[0].group
    for s in sets:
        if s.group != g:
            raise DomainError("sets live in different groups")
    lam = _check_lambda(Lambda)
    B = sets[-2]
    factors = list(sets[:-2]) + [sets[-1]]
    pos_b = {b: i for i, b in enumerate(B.elements)}
    left, left_value, edges = [], [], []
    for li, tup in enumerate(itertools.product(*(s.elements for s in factors))):
        v = 0
        for t in tup:
            v = int(g.add_idx(v, t))
        left.append(tup)
        left_value.append(v)
        for ci, l in enumerate(lam):
            b = int(g.sub_idx(v, l))
            if b in pos_b:
                edges.append((li, pos_b[b], ci))
    return ColoredBipartiteGraph(g, lam, tuple(left), tuple(left_value), B.elements, tuple(edges), len(B))


def kfold_multiplicity_bound(sets: Sequence[GroupSet]) -> int:
    """|A_1| ... |A_{k-2}|: the most edges of one colour at a right vertex."""
    return math.prod(len(s) for s in sets[:-2])


def induced(graph: ColoredBipartiteGraph, keep_left, keep_right) -> ColoredBipartiteGraph:
    kl = [i for i in range(len(graph.left)) if keep_left[i]]
    kr = [i for i in range(len(graph.right)) if keep_right[i]]
    ml = {old: new for new, old in enumerate(kl)}
    mr = {old: new for new, old in enumerate(kr)}
    edges = tuple(
        (ml[li], mr[ri], ci) for li, ri, ci in graph.edges if li in ml and ri in mr
    )
    return ColoredBipartiteGraph(
        graph.group,
        graph.colors,
        tuple(graph.left[i] for i in kl),
        tuple(graph.left_value[i] for i in kl),
        tuple(graph.right[i] for i in kr),
        edges,
        graph.b_size,
    )


def prune_bipartite(graph: ColoredBipartiteGraph, d1: int, d2: int, order: str = "ascending") -> ColoredBipartiteGraph:
    """Peel left vertices of degree < d1 and right vertices of degree < d2
    until stable.  The fixed point does not depend on ``order``."""
    if d1 < 1 or d2 < 1:
        raise ValueError("degree thresholds must be >= 1")
    dl, dr = graph.degrees()
    alive_l = np.ones(len(graph.left), dtype=bool)
    alive_r = np.ones(len(graph.right), dtype=bool)
    start = [("L", i) for i in range(len(graph.left)) if dl[i] < d1]
    start += [("R", i) for i in range(len(graph.right)) if dr[i] < d2]
    if order == "descending":
        start.reverse()
    elif order != "ascending":
        raise ValueError(f"unknown order {order!r}")
    queue = deque(start)
    for side, i in start:
        (alive_l if side == "L" else alive_r)[i] = False
    while queue:
        side, i = queue.popleft()
        if side == "L":
            for _, ri in graph.left_adj[i]:
                if alive_r[ri]:
                    dr[ri] -= 1
                    if dr[ri] < d2:
                        alive_r[ri] = False
                        queue.append(("R", ri))
        else:
            for _, li in graph.right_adj[i]:
                if alive_l[li]:
                    dl[li] -= 1
                    if dl[li] < d1:
                        alive_l[li] = False
                        queue.append(("L", li))
    return induced(graph, alive_l, alive_r)


def prune_min_degree(graph: ColoredBipartiteGraph, d: int, order: str = "ascending") -> ColoredBipartiteGraph:
    return prune_bipartite(graph, d, d, order)


def erdos_hypothesis(graph: ColoredBipartiteGraph, d1: int, d2: int | None = None) -> bool:
    """|E| > (d1-1)|V1| + (d2-1)|V2|; the peeled graph is then nonempty."""
    d2 = d1 if d2 is None else d2
    return len(graph.edges) > (d1 - 1) * len(graph.left) + (d2 - 1) * len(graph.right)


# -- special cycles -------------------------------------------------------------


@dataclass(frozen=True)
class SpecialCycle:
    """Closed alternating walk; edges[i] = (left label, right label, colour pos)
    and signs[i] = +1 when the walk crosses that edge from left to right."""

    group: GroupSpec
    colors: tuple[int, ...]
    vertices: tuple[tuple[str, Hashable], ...]
    edges: tuple[tuple[Hashable, int, int], ...]
    signs: tuple[int, ...]
    special_indices: tuple[int, ...]

    def __len__(self):
        return len(self.edges)

    def color_sequence(self) -> tuple[int, ...]:
        return tuple(self.colors[c] for _, _, c in self.edges)

    def check(self) -> None:
        k = len(self.edges)
        assert k >= 4 and k % 2 == 0, "cycle length must be even and at least 4"
        assert len(self.vertices) == k and len(self.signs) == k
        for i, (side, label) in enumerate(self.vertices):
            nxt_side, nxt = self.vertices[(i + 1) % k]
            assert side != nxt_side, "cycle does not alternate sides"
            lbl, rbl, _ = self.edges[i]
            if side == "L":
                assert (lbl, rbl) == (label, nxt) and self.signs[i] == 1
            else:
                assert (lbl, rbl) == (nxt, label) and self.signs[i] == -1
        assert len(set(self.vertices)) == k, "cycle repeats a vertex"
        assert self.special_indices, "cycle has no special edge"


def special_positions(color_positions: Sequence[int]) -> tuple[int, ...]:
    counts: dict[int, int] = {}
    for c in color_positions:
        counts[c] = counts.get(c, 0) + 1
    return tuple(i for i, c in enumerate(color_positions) if counts[c] == 1)


@dataclass(frozen=True)
class TreeSearch:
    """Outcome of the tree construction with its abort bookkeeping."""

    cycle: SpecialCycle | None
    reason: str  # collision | no_fresh_colors | depth_cap | empty | not_special
    depth: int
    tree_size: int
    depth_cap: int
    line5_aborts: int = 0
    lca_edges_special: bool | None = None
    root: Hashable | None = None
    stats: dict = field(default_factory=dict)


def default_depth_cap(b_size: int) -> int:
    return max(1, math.ceil(2 * math.log2(max(b_size, 1))))


def tree_search(graph: ColoredBipartiteGraph, depth_cap: int | None = None) -> TreeSearch:
    """Grow the binary tree of fresh-coloured children from the least left
    vertex, level by level, until two branches meet.

    F(v) holds the colour of v and the colours of its ancestors and of their
    siblings; each child pair is chosen with the two least colours outside
    F(v).  Levels 0 .. depth_cap-1 are expanded, so cycles have length at most
    2 * depth_cap.
    """
    cap = default_depth_cap(graph.b_size or len(graph.right)) if depth_cap is None else int(depth_cap)
    nl = len(graph.left)
    starts = [i for i in range(nl) if graph.left_adj[i]]
    if not starts:
        return TreeSearch(None, "empty", 0, 0, cap)
    root = min(starts, key=lambda i: graph.left[i])

    def nbrs(v: int):
        return graph.left_adj[v] if v < nl else graph.right_adj[v - nl]

    def other(v: int, u: int) -> int:
        return u + nl if v < nl else u

    parent = {root: None}
    color = {root: None}
    depth = {root: 0}
    forbidden = {root: frozenset()}
    level = [root]
    for i in range(cap):
        nxt = []
        for v in level:
            picks = []
            for ci, u in nbrs(v):
                if ci in forbidden[v] or any(ci == p[0] for p in picks):
                    continue
                picks.append((ci, other(v, u)))
                if len(picks) == 2:
                    break
            if len(picks) < 2:
                return TreeSearch(None, "no_fresh_colors", i, len(parent), cap, line5_aborts=1,
                                  root=graph.left[root])
            (c1, v1), (c2, v2) = picks
            if v1 in parent or v2 in parent:
                w, cw = (v1, c1) if v1 in parent else (v2, c2)
                cycle, lca_ok = _close_cycle(graph, parent, color, depth, v, w, cw)
                if cycle is None:
                    return TreeSearch(None, "not_special", i, len(parent), cap, root=graph.left[root])
                return TreeSearch(cycle, "collision", i, len(parent), cap,
                                  lca_edges_special=lca_ok, root=graph.left[root])
            f = forbidden[v] | {c1, c2}
            for u, c in ((v1, c1), (v2, c2)):
                parent[u] = v
                color[u] = c
                depth[u] = i + 1
                forbidden[u] = f
                nxt.append(u)
        level = nxt
    return TreeSearch(None, "depth_cap", cap, len(parent), cap, root=graph.left[root])


def _close_cycle(graph, parent, color, depth, v, w, cw):
    nl = len(graph.left)
    up_v = [v]
    while parent[up_v[-1]] is not None:
        up_v.append(parent[up_v[-1]])
    up_w = [w]
    while parent[up_w[-1]] is not None:
        up_w.append(parent[up_w[-1]])
    on_v = set(up_v)
    lca = next(x for x in up_w if x in on_v)
    down_to_v = list(reversed(up_v[: up_v.index(lca) + 1]))  # lca ... v
    w_to_lca = up_w[: up_w.index(lca)]  # w ... child of lca (excludes lca)
    walk = down_to_v + w_to_lca  # closed: last vertex returns to lca
    cols = []
    for a, b in zip(walk, walk[1:] + walk[:1]):
        if (a, b) == (v, w):
            cols.append(cw)
        elif parent.get(b) == a:
            cols.append(color[b])
        else:
            cols.append(color[a])
    vertices, edges, signs = [], [], []
    for a, b, c in zip(walk, walk[1:] + walk[:1], cols):
        if a < nl:
            vertices.append(("L", graph.left[a]))
            edges.append((graph.left[a], graph.right[b - nl], c))
            signs.append(1)
        else:
            vertices.append(("R", graph.right[a - nl]))
            edges.append((graph.left[b], graph.right[a - nl], c))
            signs.append(-1)
    special = special_positions(cols)
    lca_ok = 0 in special and (len(cols) - 1) in special
    if not lca_ok:
        log.warning("edges at the shallowest cycle vertex are not both special: colours %s", cols)
    if not special:
        return None, False
    cycle = SpecialCycle(graph.group, graph.colors, tuple(vertices), tuple(edges), tuple(signs), special)
    cycle.check()
    return cycle, lca_ok


def cycle_from_vertices(graph: ColoredBipartiteGraph, vertices) -> SpecialCycle | None:
    """Rebuild a SpecialCycle from an alternating ("L"|"R", label) sequence,
    e.g. one reported by an exhaustive scan.  None if no colour is unique."""
    pos_l = {lab: i for i, lab in enumerate(graph.left)}
    pos_c = {c: i for i, c in enumerate(graph.colors)}
    k = len(vertices)
    edges, signs, cols = [], [], []
    for i, (side, lab) in enumerate(vertices):
        _, nxt = vertices[(i + 1) % k]
        lbl, rbl = (lab, nxt) if side == "L" else (nxt, lab)
        ci = pos_c[graph.color_of(pos_l[lbl], graph.right.index(rbl))]
        edges.append((lbl, rbl, ci))
        signs.append(1 if side == "L" else -1)
        cols.append(ci)
    special = special_positions(cols)
    if not special:
        return None
    cycle = SpecialCycle(graph.group, graph.colors, tuple(vertices), tuple(edges), tuple(signs), special)
    cycle.check()
    return cycle


def find_special_cycle(graph: ColoredBipartiteGraph, depth_cap: int | None = None) -> SpecialCycle | None:
    return tree_search(graph, depth_cap).cycle


# -- certificates -------------------------------------------------------------


@dataclass(frozen=True)
class DependencyCertificate:
    group: GroupSpec
    base: tuple[int, ...]
    coeffs: tuple[int, ...]

    @property
    def weight(self) -> int:
        return sum(abs(e) for e in self.coeffs)

    def evaluate(self) -> int:
        g = self.group
        acc = 0
        for e, lam in zip(self.coeffs, self.base):
            if e:
                acc = int(g.add_idx(acc, g.mul_idx(e, lam)))
        return acc

    def verify(self) -> bool:
        return len(self.coeffs) == len(self.base) and any(self.coeffs) and self.evaluate() == 0

    def reduced(self) -> "DependencyCertificate":
        """Coefficients reduced modulo each element's order into (-ord/2, ord/2]."""
        g = self.group
        out = []
        for e, lam in zip(self.coeffs, self.base):
            n = g.element_order(lam)
            r = e % n
            if r > n // 2:
                r -= n
            if n % 2 == 0 and r == -(n // 2):
                r = n // 2
            out.append(r)
        return DependencyCertificate(g, self.base, tuple(out))

    def refutes(self) -> str:
        """What this relation disproves about ``base``.

        'dissociated' when the (order-reduced) coefficients are a nonzero
        {0, +-1} pattern; then also membership in the weight-k family for
        k >= weight.  Otherwise only the weaker statement that some nonzero
        integer combination with |eps| <= 2 vanishes.
        """
        r = self.reduced()
        if any(r.coeffs) and all(abs(e) <= 1 for e in r.coeffs):
            return "dissociated"
        return "bounded_coefficients"


def dependency_from_cycle(cycle: SpecialCycle) -> DependencyCertificate:
    cycle.check()
    coeffs = [0] * len(cycle.colors)
    for (_, _, c), s in zip(cycle.edges, cycle.signs):
        coeffs[c] += s
    for i in cycle.special_indices:
        assert abs(coeffs[cycle.edges[i][2]]) == 1
    cert = DependencyCertificate(cycle.group, cycle.colors, tuple(coeffs))
    assert cert.weight <= len(cycle)
    return cert


def cycle_degree(sigma, n_lambda: int, n_left: int) -> int:
    """Integer d >= sigma |Lambda| / (4 |A|)."""
    return max(1, math.ceil(Fraction(sigma) * n_lambda / (4 * n_left)))
