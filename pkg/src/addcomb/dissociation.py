"""Dissociated sets, spans and dimension.

A list L is dissociated when sum eps_j L_j = 0 with eps_j in {0, -1, 1}
forces eps = 0.  Exact tests split L in two halves and hash the 3^(t/2)
signed partial sums of each (meet in the middle).  On groups where every
order is 2 the same questions are linear algebra over GF(2), and element
indices are already the bit vectors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .group import CapacityError, DomainError, GroupSpec

MITM_CAP = 40
DIM_EXACT_CAP = 24


@dataclass(frozen=True)
class SignWitness:
    """coeffs over ``base`` with sum coeffs_j * base_j == target."""

    group: GroupSpec
    base: tuple[int, ...]
    coeffs: tuple[int, ...]
    target: int

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
        return (
            len(self.coeffs) == len(self.base)
            and all(e in (-1, 0, 1) for e in self.coeffs)
            and self.evaluate() == self.target
        )


def _canonical_sign(coeffs: list[int]) -> tuple[int, ...]:
    for e in coeffs:
        if e:
            if e < 0:
                coeffs = [-c for c in coeffs]
            break
    return tuple(coeffs)


def _signed_sums(g: GroupSpec, L: Sequence[int]):
    """Sums over all sign patterns of L and their weights.

    Pattern p is stored at position sum_j d_j 3^j where digit 1 means +L_j
    and digit 2 means -L_j.
    """
    sums = np.zeros(1, dtype=np.int64)
    weights = np.zeros(1, dtype=np.int64)
    for lam in L:
        sums = np.concatenate([sums, g.add_idx(sums, lam), g.sub_idx(sums, lam)])
        weights = np.concatenate([weights, weights + 1, weights + 1])
    return sums, weights


def _decode(pos: int, t: int) -> list[int]:
    out = []
    for _ in range(t):
        pos, d = divmod(pos, 3)
        out.append((0, 1, -1)[d])
    return out


def _check_list(g: GroupSpec, L: Sequence[int]) -> list[int]:
    L = [int(x) for x in L]
    if len(set(L)) != len(L):
        raise DomainError("element list has duplicates")
    for x in L:
        if not 0 <= x < g.size:
            raise DomainError(f"element index {x} out of range")
    if len(L) > MITM_CAP:
        raise CapacityError(f"list of size {len(L)} exceeds meet-in-the-middle cap {MITM_CAP}")
    return L


def _first_by_sum(sums: np.ndarray, weights: np.ndarray):
    """Per distinct sum: the lightest pattern position (ties: smallest position)."""
    order = np.lexsort((np.arange(len(sums)), weights, sums))
    s = sums[order]
    first = np.ones(len(s), dtype=bool)
    first[1:] = s[1:] != s[:-1]
    return s[first], order[first]


def _relation(g: GroupSpec, L: list[int], target: int = 0, k: int | None = None):
    """Pattern eps (not all zero when target == 0) with sum eps L = target.

    With ``k`` set only patterns of weight <= k count.  Returns None when
    no such pattern exists.
    """
    t = len(L)
    h = t // 2
    s1, w1 = _signed_sums(g, L[:h])
    s2, w2 = _signed_sums(g, L[h:])
    limit = t if k is None else k
    keys, pos1 = _first_by_sum(s1, w1)
    best = None
    # eps restricted to the first half
    if target == 0:
        hit = np.flatnonzero((s1 == 0) & (w1 <= limit))
        hit = hit[hit > 0]
        if len(hit):
            p = int(hit[np.argmin(w1[hit])])
            best = (int(w1[p]), _decode(p, h) + [0] * (t - h))
    # any first-half pattern against a second-half pattern
    need = g.sub_idx(target, s2)
    j = np.searchsorted(keys, need)
    j = np.minimum(j, len(keys) - 1)
    ok = keys[j] == need
    cand = np.flatnonzero(ok)
    if target == 0:
        cand = cand[cand > 0]
    if len(cand):
        tot = w1[pos1[j[cand]]] + w2[cand]
        sel = tot <= limit
        cand, tot = cand[sel], tot[sel]
        if len(cand):
            m = int(np.argmin(tot))
            if best is None or int(tot[m]) < best[0]:
                q = int(cand[m])
                best = (int(tot[m]), _decode(int(pos1[j[q]]), h) + _decode(q, t - h))
    return None if best is None else best[1]


def is_dissociated(g: GroupSpec, L: Sequence[int]):
    """True, or a SignWitness with target 0 and some nonzero coefficient."""
    L = _check_list(g, L)
    eps = _relation(g, L)
    if eps is None:
        return True
    return SignWitness(g, tuple(L), _canonical_sign(eps), 0)


def is_k_dissociated(g: GroupSpec, L: Sequence[int], k: int):
    """Membership in the family of sets with no nontrivial relation of weight <= k."""
    if k < 1:
        raise ValueError("k must be >= 1")
    L = _check_list(g, L)
    eps = _relation(g, L, k=k)
    if eps is None:
        return True
    return SignWitness(g, tuple(L), _canonical_sign(eps), 0)


def span_contains(g: GroupSpec, L: Sequence[int], x: int) -> SignWitness | None:
    """A witness that ``x`` lies in Span(L), or None."""
    if g.is_elementary_2 and g.rank > 0:
        return span_contains_gf2(g, L, x)
    L = _check_list(g, L)
    eps = _relation(g, L, target=int(x))
    if eps is None:
        return None
    return SignWitness(g, tuple(L), tuple(eps), int(x))


# -- GF(2) -------------------------------------------------------------------


def _gf2_reduce(rows: Sequence[int]):
    """Echelon basis: list of (pivot bit, vector, combination mask over rows)
    plus the first dependent row's combination, if any."""
    basis: list[tuple[int, int, int]] = []
    dependent = None
    for r, v in enumerate(rows):
        combo = 1 << r
        for bit, bv, bc in basis:
            if (v >> bit) & 1:
                v ^= bv
                combo ^= bc
        if v == 0:
            if dependent is None:
                dependent = combo
            continue
        basis.append((v.bit_length() - 1, v, combo))
    return basis, dependent


def _require_gf2(g: GroupSpec) -> None:
    if not g.is_elementary_2 or g.rank == 0:
        raise DomainError("GF(2) path needs a nontrivial group with every order 2")


def is_dissociated_gf2(g: GroupSpec, L: Sequence[int]):
    _require_gf2(g)
    L = [int(x) for x in L]
    if len(set(L)) != len(L):
        raise DomainError("element list has duplicates")
    _, dependent = _gf2_reduce(L)
    if dependent is None:
        return True
    coeffs = tuple((dependent >> j) & 1 for j in range(len(L)))
    return SignWitness(g, tuple(L), coeffs, 0)


def gf2_rank(vectors: Sequence[int]) -> int:
    basis, _ = _gf2_reduce([int(v) for v in vectors])
    return len(basis)


def span_contains_gf2(g: GroupSpec, L: Sequence[int], x: int) -> SignWitness | None:
    _require_gf2(g)
    L = [int(v) for v in L]
    basis, _ = _gf2_reduce(L)
    v, combo = int(x), 0
    for bit, bv, bc in basis:
        if (v >> bit) & 1:
            v ^= bv
            combo ^= bc
    if v:
        return None
    return SignWitness(g, tuple(L), tuple((combo >> j) & 1 for j in range(len(L))), int(x))


# -- spans of dissociated sets --------------------------------------------------


class SpanIndex:
    """Span(L) materialised over the whole group, with a witness per element.

    Built incrementally: adding lam reaches y + lam and y - lam from every
    already-reached y.  Memory is O(N).
    """

    def __init__(self, g: GroupSpec):
        self.group = g
        self.base: list[int] = []
        self._pred = np.full(g.size, -1, dtype=np.int64)
        self._step = np.zeros(g.size, dtype=np.int8)  # +-(j+1) of the last term, 0 at the root
        self._reached = np.zeros(g.size, dtype=bool)
        self._reached[0] = True

    def __contains__(self, x) -> bool:
        return bool(self._reached[int(x)])

    @property
    def mask(self) -> np.ndarray:
        return self._reached

    def size(self) -> int:
        return int(self._reached.sum())

    def add(self, lam: int) -> None:
        g = self.group
        j = len(self.base)
        if j >= 127:
            raise CapacityError("span index supports at most 127 generators")
        self.base.append(int(lam))
        old = np.flatnonzero(self._reached)
        for sign in (1, -1):
            new = g.add_idx(old, lam) if sign == 1 else g.sub_idx(old, lam)
            fresh = ~self._reached[new]
            # several old points may land on one fresh target; keep one
            tgt, first = np.unique(new[fresh], return_index=True)
            src = old[fresh][first]
            self._pred[tgt] = src
            self._step[tgt] = sign * (j + 1)
            self._reached[tgt] = True

    def witness(self, x: int) -> SignWitness | None:
        x = int(x)
        if not self._reached[x]:
            return None
        coeffs = [0] * len(self.base)
        y = x
        while y != 0 and self._step[y] != 0:
            st = int(self._step[y])
            coeffs[abs(st) - 1] += 1 if st > 0 else -1
            y = int(self._pred[y])
        return SignWitness(self.group, tuple(self.base), tuple(coeffs), x)


def maximal_dissociated(g: GroupSpec, Q) -> list[int]:
    """Greedy inclusion-maximal dissociated subset of Q in index order.

    For a dissociated L, L + [q] stays dissociated exactly when q is outside
    Span(L), so the greedy only needs span membership.
    """
    span = SpanIndex(g)
    out: list[int] = []
    for q in Q:
        if int(q) not in span:
            out.append(int(q))
            span.add(q)
    return out


def span_index(g: GroupSpec, L: Sequence[int]) -> SpanIndex:
    idx = SpanIndex(g)
    for lam in L:
        idx.add(lam)
    return idx


def dim_exact(g: GroupSpec, Q) -> int:
    """Largest dissociated subset of Q."""
    Q = [int(q) for q in Q]
    if g.is_elementary_2 and g.rank > 0:
        return gf2_rank([q for q in Q if q])
    if len(Q) > DIM_EXACT_CAP:
        raise CapacityError(f"exact dimension search capped at {DIM_EXACT_CAP} elements")
    cand = [q for q in Q if q != 0]
    ceiling = min(len(cand), int(math.floor(math.log2(g.size))) if g.size > 1 else 0)
    best = 0

    def search(start: int, chosen: list[int], mask: np.ndarray) -> bool:
        nonlocal best
        if len(chosen) > best:
            best = len(chosen)
            if best == ceiling:
                return True
        for i in range(start, len(cand)):
            if len(chosen) + len(cand) - i <= best:
                return False
            q = cand[i]
            if mask[q]:
                continue
            new = mask | mask[g.sub_idx(np.arange(g.size), q)] | mask[g.add_idx(np.arange(g.size), q)]
            if search(i + 1, chosen + [q], new):
                return True
        return False

    root = np.zeros(g.size, dtype=bool)
    root[0] = True
    search(0, [], root)
    return best


def subset_sums_distinct(g: GroupSpec, L: Sequence[int]) -> bool:
    """All 2^t {0,1}-subset sums of L are pairwise distinct."""
    sums = np.zeros(1, dtype=np.int64)
    for lam in L:
        sums = np.concatenate([sums, g.add_idx(sums, int(lam))])
    return len(np.unique(sums)) == len(sums)
