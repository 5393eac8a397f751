"""Exact integer set arithmetic: convolutions, correlations, sumsets, energy.

Indicator convolutions are accumulated sparsely in O(|A||B|) into int64
arrays; no floating point anywhere on this path.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .group import DomainError, GroupSpec, element_at, index_of

_INT64_LIMIT = 2**63


@dataclass(frozen=True)
class GroupSet:
    group: GroupSpec
    elements: tuple[int, ...]

    def __post_init__(self):
        els = tuple(int(e) for e in self.elements)
        for a, b in zip(els, els[1:]):
            if a >= b:
                raise DomainError("GroupSet elements must be strictly increasing")
        if els and not (0 <= els[0] and els[-1] < self.group.size):
            raise DomainError("GroupSet element index out of range")
        object.__setattr__(self, "elements", els)

    @classmethod
    def from_indices(cls, g: GroupSpec, indices: Iterable[int]) -> "GroupSet":
        """Build from arbitrary indices; duplicates are rejected."""
        idx = [int(i) for i in indices]
        if len(set(idx)) != len(idx):
            raise DomainError("duplicate elements in set")
        return cls(g, tuple(sorted(idx)))

    @classmethod
    def from_coords(cls, g: GroupSpec, coords: Iterable[Sequence[int]]) -> "GroupSet":
        return cls.from_indices(g, (index_of(g, c) for c in coords))

    @classmethod
    def from_mask(cls, g: GroupSpec, mask) -> "GroupSet":
        return cls(g, tuple(np.flatnonzero(np.asarray(mask)).tolist()))

    @property
    def cardinality(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, i) -> bool:
        k = bisect_left(self.elements, int(i))
        return k < len(self.elements) and self.elements[k] == int(i)

    def array(self) -> np.ndarray:
        return np.asarray(self.elements, dtype=np.int64)

    def indicator(self) -> np.ndarray:
        mask = np.zeros(self.group.size, dtype=bool)
        mask[list(self.elements)] = True
        return mask

    def coords(self) -> list[tuple[int, ...]]:
        return [element_at(self.group, i) for i in self.elements]

    def issubset(self, other: "GroupSet") -> bool:
        return set(self.elements) <= set(other.elements)


@dataclass(frozen=True, eq=False)
class IntFunction:
    group: GroupSpec
    values: np.ndarray

    def __eq__(self, other):
        return (
            isinstance(other, IntFunction)
            and self.group == other.group
            and np.array_equal(self.values, other.values)
        )

    def __getitem__(self, i):
        return int(self.values[i])

    def total(self) -> int:
        return int(self.values.sum())

    def support(self) -> GroupSet:
        return GroupSet.from_mask(self.group, self.values != 0)


def _same_group(*sets) -> GroupSpec:
    g = sets[0].group
    for s in sets[1:]:
        if s.group != g:
            raise DomainError("sets live in different groups")
    return g


def _guard(*sizes: int) -> None:
    lo = min(sizes) if sizes else 0
    prod = 1
    for s in sizes:
        prod *= max(s, 1)
    if prod * max(lo, 1) >= _INT64_LIMIT:
        raise OverflowError("convolution counts would overflow int64")


def convolve(A: GroupSet, B: GroupSet) -> IntFunction:
    """(A*B)(x) = #{(a, b) in A x B : a + b = x}."""
    g = _same_group(A, B)
    _guard(len(A), len(B))
    if not len(A) or not len(B):
        return IntFunction(g, np.zeros(g.size, dtype=np.int64))
    sums = g.add_idx(A.array()[:, None], B.array()[None, :])
    return IntFunction(g, np.bincount(sums.ravel(), minlength=g.size).astype(np.int64))


def negate(A: GroupSet) -> GroupSet:
    return GroupSet.from_indices(A.group, A.group.neg_idx(A.array()).tolist())


def translate(A: GroupSet, x: int) -> GroupSet:
    return GroupSet.from_indices(A.group, A.group.add_idx(A.array(), int(x)).tolist())


def sumset(A: GroupSet, B: GroupSet) -> GroupSet:
    g = _same_group(A, B)
    if not len(A) or not len(B):
        return GroupSet(g, ())
    sums = g.add_idx(A.array()[:, None], B.array()[None, :])
    return GroupSet(g, tuple(np.unique(sums).tolist()))


def correlate(A: GroupSet, B: GroupSet) -> IntFunction:
    """(A * (-B))(x) = |A intersect (B + x)|."""
    g = _same_group(A, B)
    _guard(len(A), len(B))
    if not len(A) or not len(B):
        return IntFunction(g, np.zeros(g.size, dtype=np.int64))
    diffs = g.sub_idx(A.array()[:, None], B.array()[None, :])
    return IntFunction(g, np.bincount(diffs.ravel(), minlength=g.size).astype(np.int64))


def convolve_function(f: IntFunction, B: GroupSet) -> IntFunction:
    """(f*B)(x) = sum_{b in B} f(x - b) for an integer function f."""
    g = _same_group(f, B)
    if int(np.abs(f.values).sum()) * max(len(B), 1) >= _INT64_LIMIT:
        raise OverflowError("convolution counts would overflow int64")
    out = np.zeros(g.size, dtype=np.int64)
    support = np.flatnonzero(f.values)
    if len(support) <= g.size // 4:
        for b in B.elements:
            np.add.at(out, g.add_idx(support, b), f.values[support])
    else:
        idx = np.arange(g.size)
        for b in B.elements:
            out[g.add_idx(idx, b)] += f.values
    return IntFunction(g, out)


def kfold_convolve(sets: Sequence[GroupSet], negate_index: int | None = None) -> IntFunction:
    """Left fold of convolve over ``sets``; ``sets[negate_index]`` enters as -A."""
    if len(sets) < 1:
        raise ValueError("kfold_convolve needs at least one set")
    _same_group(*sets)
    sets = list(sets)
    if negate_index is not None:
        sets[negate_index] = negate(sets[negate_index])
    _guard(*(len(s) for s in sets))
    g = sets[0].group
    if len(sets) == 1:
        return IntFunction(g, sets[0].indicator().astype(np.int64))
    f = convolve(sets[0], sets[1])
    for s in sets[2:]:
        f = convolve_function(f, s)
    return f


def energy(A: GroupSet, B: GroupSet) -> int:
    """E(A, B) = sum_x (A*B)(x)^2, computed exactly."""
    _guard(len(A), len(B))
    v = convolve(A, B).values
    return int(np.dot(v, v))


def energy_from(f: IntFunction) -> int:
    return int(np.dot(f.values, f.values))
