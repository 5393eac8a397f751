"""Extremal examples, random instances and brute-force oracles.

The oracles below work on coordinate tuples with their own modular
arithmetic and deliberately avoid the index arithmetic, sparse convolutions
and meet-in-the-middle searches used by the production modules.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .group import CapacityError, GroupSpec, element_at, index_of, make_group
from .setops import GroupSet, sumset

ORACLE_STEP_CAP = 10**8


@dataclass(frozen=True)
class Prediction:
    name: str
    relation: str  # "==", ">=", "<="
    value: Fraction
    note: str = ""

    def check(self, actual) -> bool:
        actual = Fraction(actual)
        return {"==": actual == self.value, ">=": actual >= self.value, "<=": actual <= self.value}[self.relation]


@dataclass(frozen=True)
class ExampleInstance:
    name: str
    group: GroupSpec
    A: GroupSet
    B: GroupSet
    predictions: tuple[Prediction, ...] = ()
    params: dict = field(default_factory=dict)
    extra: dict = field(default_factory=dict)


# -- elementary 2-group helpers ------------------------------------------------


def basis_vector(n: int, i: int) -> int:
    """Index of e_i in (Z/2)^n (coordinate 0 is the most significant bit)."""
    return 1 << (n - 1 - i)


def coordinate_subspace(g: GroupSpec, coords: range | list[int]) -> GroupSet:
    n = g.rank
    gens = [basis_vector(n, i) for i in coords]
    els = set()
    for r in range(len(gens) + 1):
        for combo in itertools.combinations(gens, r):
            v = 0
            for x in combo:
                v ^= x
            els.add(v)
    return GroupSet.from_indices(g, els)


def support(g: GroupSpec, S: GroupSet) -> set[int]:
    out = set()
    for x in S.elements:
        for i, c in enumerate(element_at(g, x)):
            if c:
                out.add(i)
    return out


def direct_sum(X: GroupSet, Y: GroupSet) -> GroupSet:
    """X + Y with every |X||Y| sum distinct; anything else is a construction bug."""
    Z = sumset(X, Y)
    assert len(Z) == len(X) * len(Y), "sums in a direct sum must be distinct"
    return Z


def _two_group(n: int) -> GroupSpec:
    return make_group([2] * n)


def example_disjoint_subspaces(t: int, d: int, n: int) -> ExampleInstance:
    """Union of t coordinate subspaces of size h = 2^d on disjoint blocks."""
    if t < 1 or d < 0 or t * d > n:
        raise CapacityError(f"need t >= 1 and t*d <= n, got t={t} d={d} n={n}")
    g = _two_group(n)
    parts = [coordinate_subspace(g, range(i * d, (i + 1) * d)) for i in range(t)]
    sups = [support(g, H) for H in parts]
    for a, b in itertools.combinations(sups, 2):
        assert not (a & b), "subspace supports must be disjoint"
    A = GroupSet.from_indices(g, set().union(*(H.elements for H in parts)))
    h = 2**d
    assert len(A) == t * (h - 1) + 1
    preds = (
        Prediction("|A|", "==", Fraction(t * (h - 1) + 1), "subspaces share only 0"),
        Prediction("E(A)", ">=", Fraction(t * h**3), "t h^3 lower bound"),
    )
    if t == 1:
        preds += (Prediction("E(A)", "==", Fraction(h**3), "single subspace"),)
    return ExampleInstance("disjoint-subspaces", g, A, A, preds, {"t": t, "d": d, "n": n})


def example_H_union_dissociated(h_dim: int, lambda_count: int, n: int) -> ExampleInstance:
    """A = H together with basis vectors outside H's support."""
    if h_dim + lambda_count > n or h_dim < 0 or lambda_count < 0:
        raise CapacityError("h_dim + lambda_count must fit in n")
    g = _two_group(n)
    H = coordinate_subspace(g, range(h_dim))
    Lam = GroupSet.from_indices(g, [basis_vector(n, h_dim + i) for i in range(lambda_count)])
    assert not set(H.elements) & set(Lam.elements)
    A = GroupSet.from_indices(g, set(H.elements) | set(Lam.elements))
    preds = (Prediction("|A|", "==", Fraction(len(H) + lambda_count)),)
    if lambda_count == 0:
        preds += (Prediction("c", "==", Fraction(1), "pure subspace"),)
    return ExampleInstance(
        "H-union-dissociated", g, A, A, preds,
        {"h_dim": h_dim, "lambda_count": lambda_count, "n": n}, {"H": H, "Lambda": Lam},
    )


def example_B_subspace_A_directsum(h_dim: int, lambda_count: int, n: int, lambda2_count: int = 0) -> ExampleInstance:
    """B = H and A = H + ({0} u Lambda); with ``lambda2_count`` the connected
    pair B = H + ({0} u L1), A = B + ({0} u L2).

    Lambda is padded with 0 so the sum contains its first summand and
    lambda_count = 0 gives A = B = H.
    """
    if h_dim + lambda_count + lambda2_count > n:
        raise CapacityError("dimensions do not fit in n")
    g = _two_group(n)
    H = coordinate_subspace(g, range(h_dim))
    L1 = [basis_vector(n, h_dim + i) for i in range(lambda_count)]
    L2 = [basis_vector(n, h_dim + lambda_count + i) for i in range(lambda2_count)]
    if lambda2_count == 0:
        B = H
        A = direct_sum(H, GroupSet.from_indices(g, [0] + L1))
        preds = (
            Prediction("sigma", "==", Fraction(len(B)), "threshold |B|"),
            Prediction("dim(S)", "==", Fraction(h_dim + lambda_count), "dim(S) ~ |Lambda| + dim(B)"),
            Prediction("S == A", "==", Fraction(1)),
        )
        name = "B-subspace-A-directsum"
    else:
        B = direct_sum(H, GroupSet.from_indices(g, [0] + L1))
        A = direct_sum(B, GroupSet.from_indices(g, [0] + L2))
        preds = (
            Prediction("sigma", "==", Fraction(len(B)), "threshold |B|"),
            Prediction("dim(S)", ">=", Fraction(h_dim + lambda2_count), "S contains H + L2"),
            Prediction("dim(S)", "<=", Fraction(h_dim + lambda_count + lambda2_count), "S inside A - B"),
        )
        name = "connected-pair"
    return ExampleInstance(
        name, g, A, B, preds,
        {"h_dim": h_dim, "lambda_count": lambda_count, "n": n, "lambda2_count": lambda2_count},
        {"H": H},
    )


# -- random and structured instance families ------------------------------------


MIXED_ORDERS = [
    [256], [255], [2, 128], [4, 4, 4, 4], [3, 5, 7], [2] * 8, [6, 6, 6], [12, 12],
    [36], [2, 3, 4, 5], [30], [24], [7, 7], [2, 2, 3, 3], [48], [16, 16], [5, 50],
]


def random_subset(rng: random.Random, g: GroupSpec, k: int) -> GroupSet:
    return GroupSet.from_indices(g, rng.sample(range(g.size), min(k, g.size)))


def random_pairs(seed: int, count: int, max_size: int = 40) -> Iterator[tuple[str, GroupSet, GroupSet]]:
    """Uniform random subsets of assorted groups with N <= 256."""
    rng = random.Random(seed)
    for i in range(count):
        orders = MIXED_ORDERS[i % len(MIXED_ORDERS)]
        g = make_group(orders)
        A = random_subset(rng, g, rng.randint(1, max_size))
        B = random_subset(rng, g, rng.randint(1, max_size))
        yield f"random[{i}]{orders}", A, B


def coset_union(rng: random.Random, g: GroupSpec, sub_dim: int, count: int) -> GroupSet:
    """Union of ``count`` random cosets of a random subspace of dimension sub_dim."""
    n = g.rank
    gens = []
    while len(gens) < sub_dim:
        v = rng.randrange(1, 2**n)
        span = {0}
        for x in gens:
            span |= {y ^ x for y in span}
        if v not in span:
            gens.append(v)
    H = {0}
    for x in gens:
        H |= {y ^ x for y in H}
    shifts = [rng.randrange(2**n) for _ in range(count)]
    return GroupSet.from_indices(g, {h ^ s for h in H for s in shifts})


def structured_pairs(seed: int) -> Iterator[tuple[str, GroupSet, GroupSet]]:
    """Subspaces, coset unions, progressions, and the extremal examples."""
    rng = random.Random(seed)
    g10 = _two_group(10)
    H = coordinate_subspace(g10, range(4))
    yield "subspace(Z/2)^10 d=4", H, H
    yield "subspace(Z/2)^10 d=6", coordinate_subspace(g10, range(6)), coordinate_subspace(g10, range(6))
    for k in range(8):
        A = coset_union(rng, g10, rng.randint(2, 5), rng.randint(1, 4))
        B = coset_union(rng, g10, rng.randint(2, 5), rng.randint(1, 4))
        yield f"coset-union[{k}]", A, B
    for k in range(4):
        A = coset_union(rng, g10, rng.randint(2, 5), rng.randint(1, 4))
        yield f"coset-union-self[{k}]", A, A
    z = make_group([97])
    yield "progression Z/97", GroupSet.from_indices(z, range(20)), GroupSet.from_indices(z, range(10))
    z = make_group([60])
    yield "progression Z/60 self", GroupSet.from_indices(z, range(0, 30, 2)), GroupSet.from_indices(z, range(0, 30, 2))
    ex = example_disjoint_subspaces(3, 3, 10)
    yield "disjoint-subspaces(3,3,10)", ex.A, ex.B
    ex = example_H_union_dissociated(3, 6, 10)
    yield "H-union-dissociated(3,6,10)", ex.A, ex.B
    ex = example_B_subspace_A_directsum(4, 4, 10)
    yield "B-subspace-A-directsum(4,4,10)", ex.A, ex.B
    ex = example_B_subspace_A_directsum(3, 2, 10, 3)
    yield "connected-pair(3,2,10,3)", ex.A, ex.B


def standard_corpus(seed: int = 0, n_random: int = 30) -> list[tuple[str, GroupSet, GroupSet]]:
    return list(structured_pairs(seed)) + list(random_pairs(seed + 1, n_random))


# -- oracles -------------------------------------------------------------------


def _tuples(S: GroupSet) -> list[tuple[int, ...]]:
    return [element_at(S.group, i) for i in S.elements]


def _add(x, y, orders):
    return tuple((a + b) % n for a, b, n in zip(x, y, orders))


def _sub(x, y, orders):
    return tuple((a - b) % n for a, b, n in zip(x, y, orders))


def oracle_energy(A: GroupSet, B: GroupSet) -> int:
    """Count quadruples a1 + b1 = a2 + b2 directly (b2 is forced by the rest)."""
    steps = len(A) ** 2 * len(B)
    if steps > ORACLE_STEP_CAP:
        raise CapacityError(f"oracle would take {steps} steps")
    orders = A.group.orders
    ta, tb = _tuples(A), _tuples(B)
    bset = set(tb)
    count = 0
    for a1 in ta:
        for b1 in tb:
            s = _add(a1, b1, orders)
            for a2 in ta:
                if _sub(s, a2, orders) in bset:
                    count += 1
    return count


def oracle_convolve(A: GroupSet, B: GroupSet) -> list[int]:
    """(A*B) as a plain list indexed like the group."""
    if len(A) * len(B) > ORACLE_STEP_CAP:
        raise CapacityError("oracle too large")
    g = A.group
    out = [0] * g.size
    for a in _tuples(A):
        for b in _tuples(B):
            out[index_of(g, _add(a, b, g.orders))] += 1
    return out


def oracle_correlate(A: GroupSet, B: GroupSet) -> list[int]:
    g = A.group
    out = [0] * g.size
    for a in _tuples(A):
        for b in _tuples(B):
            out[index_of(g, _sub(a, b, g.orders))] += 1
    return out


def oracle_signed_relation(g: GroupSpec, L: list[int], target=None, max_weight=None):
    """First eps in {0,+-1}^t (lexicographic over (0, 1, -1)) with sum eps L = target.

    With target None the zero vector is excluded and the target is 0.
    """
    orders = g.orders
    els = [element_at(g, x) for x in L]
    zero = (0,) * g.rank
    goal = zero if target is None else element_at(g, target)
    for eps in itertools.product((0, 1, -1), repeat=len(L)):
        if target is None and not any(eps):
            continue
        if max_weight is not None and sum(map(abs, eps)) > max_weight:
            continue
        acc = zero
        for e, x in zip(eps, els):
            if e == 1:
                acc = _add(acc, x, orders)
            elif e == -1:
                acc = _sub(acc, x, orders)
        if acc == goal:
            return eps
    return None


def oracle_is_dissociated(g: GroupSpec, L: list[int], k=None) -> bool:
    return oracle_signed_relation(g, list(L), None, k) is None


def oracle_dim(g: GroupSpec, Q) -> int:
    Q = list(Q)
    if len(Q) > 18:
        raise CapacityError("oracle_dim capped at 18 elements")
    top = min(len(Q), int(math.log2(g.size)) if g.size > 1 else 0)
    for size in range(top, 0, -1):
        for sub in itertools.combinations(Q, size):
            if oracle_is_dissociated(g, list(sub)):
                return size
    return 0


def oracle_cycle_scan(graph, maxlen: int = 6) -> list[tuple[tuple, tuple]]:
    """Every simple cycle of length <= maxlen in a coloured bipartite graph.

    Returns (vertex sequence, colour sequence) per cycle, each listed once,
    starting at its least vertex.  Uses only the raw edge list.
    """
    if maxlen > 6:
        raise CapacityError("cycle scan capped at length 6")
    adj: dict[tuple, list[tuple[tuple, int]]] = {}
    for li, ri, ci in graph.edges:
        u, v = ("L", graph.left[li]), ("R", graph.right[ri])
        col = graph.colors[ci]
        adj.setdefault(u, []).append((v, col))
        adj.setdefault(v, []).append((u, col))
    found = []
    seen = set()

    def walk(path, cols):
        head = path[-1]
        for nxt, col in adj.get(head, []):
            if nxt == path[0] and len(path) >= 4:
                key = frozenset(frozenset(e) for e in zip(path, path[1:] + [path[0]]))
                if key not in seen:
                    seen.add(key)
                    found.append((tuple(path), tuple(cols + [col])))
            elif nxt not in path and nxt > path[0] and len(path) < maxlen:
                walk(path + [nxt], cols + [col])

    for start in sorted(adj):
        walk([start], [])
    return found


def oracle_gf2_rank(S: GroupSet) -> int:
    """Rank of the coordinate vectors of S over GF(2), by plain elimination."""
    rows = [list(element_at(S.group, x)) for x in S.elements]
    rank, col = 0, 0
    width = S.group.rank
    while rank < len(rows) and col < width:
        piv = next((r for r in range(rank, len(rows)) if rows[r][col] % 2), None)
        if piv is not None:
            rows[rank], rows[piv] = rows[piv], rows[rank]
            for r in range(len(rows)):
                if r != rank and rows[r][col] % 2:
                    rows[r] = [(a + b) % 2 for a, b in zip(rows[r], rows[rank])]
            rank += 1
        col += 1
    return rank


def measure(ex: ExampleInstance) -> dict[str, Fraction]:
    """The quantities an example's predictions talk about, computed by oracles."""
    A, B = ex.A, ex.B
    out: dict[str, Fraction] = {"|A|": Fraction(len(A)), "|B|": Fraction(len(B))}
    if ex.name in ("disjoint-subspaces", "H-union-dissociated"):
        e = oracle_energy(A, A)
        out["E(A)"] = Fraction(e)
        out["c"] = Fraction(e, len(A) ** 3)
    if ex.name in ("B-subspace-A-directsum", "connected-pair"):
        sigma = len(B)
        corr = oracle_correlate(A, B)
        S = GroupSet(A.group, tuple(x for x, v in enumerate(corr) if v >= sigma))
        out["sigma"] = Fraction(sigma)
        out["dim(S)"] = Fraction(oracle_gf2_rank(S))
        out["S == A"] = Fraction(int(S == A))
        out["|S|"] = Fraction(len(S))
    return out


def evaluate_predictions(ex: ExampleInstance) -> list[dict]:
    actual = measure(ex)
    rows = []
    for p in ex.predictions:
        a = actual[p.name]
        rows.append({"name": p.name, "relation": p.relation, "predicted": p.value,
                     "actual": a, "holds": p.check(a), "note": p.note})
    return rows


def planted_cycle_instance(n: int = 10, extra: int = 1, sigma: int | None = None):
    """A = B = (Z/2)^n, Lambda = the first 16 n 2^n / sigma + extra nonzero
    elements, sigma = 2^n by default: the smallest Lambda above the cycle finder's
    size hypothesis."""
    g = _two_group(n)
    full = GroupSet(g, tuple(range(g.size)))
    sigma = g.size if sigma is None else sigma
    count = 16 * g.size * n // sigma + extra
    return g, full, full, tuple(range(1, count + 1)), sigma
