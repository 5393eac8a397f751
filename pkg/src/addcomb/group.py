"""Finite abelian groups Z/n_1 x ... x Z/n_m with a mixed-radix element index.

Elements are coordinate tuples at this level.  Everything downstream works with
integer indices in ``[0, N)``; the first factor is the most significant digit,
so ``enumerate_elements`` yields coordinates in lexicographic order.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

DEFAULT_CAP = 2**24

Element = tuple[int, ...]


class InvalidOrderError(ValueError):
    pass


class CapacityError(ValueError):
    pass


class DomainError(ValueError):
    pass


@dataclass(frozen=True)
class GroupSpec:
    orders: tuple[int, ...]
    size: int = field(init=False)
    weights: tuple[int, ...] = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "orders", tuple(int(n) for n in self.orders))
        weights = []
        w = 1
        for n in reversed(self.orders):
            weights.append(w)
            w *= n
        object.__setattr__(self, "size", w)
        object.__setattr__(self, "weights", tuple(reversed(weights)))

    @property
    def rank(self) -> int:
        return len(self.orders)

    @property
    def is_elementary_2(self) -> bool:
        return all(n == 2 for n in self.orders)

    # -- vectorised index arithmetic -------------------------------------
    def add_idx(self, i, j):
        """Index of x + y, broadcasting over integer arrays."""
        i = np.asarray(i, dtype=np.int64)
        j = np.asarray(j, dtype=np.int64)
        if self.is_elementary_2:
            return i ^ j
        if self.rank == 1:
            return (i + j) % self.size
        out = np.zeros(np.broadcast(i, j).shape, dtype=np.int64)
        for n, w in zip(self.orders, self.weights):
            out += ((i // w + j // w) % n) * w
        return out

    def neg_idx(self, i):
        i = np.asarray(i, dtype=np.int64)
        if self.is_elementary_2:
            return i.copy()
        if self.rank == 1:
            return (-i) % self.size
        out = np.zeros(i.shape, dtype=np.int64)
        for n, w in zip(self.orders, self.weights):
            out += ((-(i // w)) % n) * w
        return out

    def sub_idx(self, i, j):
        return self.add_idx(i, self.neg_idx(j))

    def mul_idx(self, k: int, i):
        """Index of k*x for an integer k (any sign)."""
        i = np.asarray(i, dtype=np.int64)
        out = np.zeros(i.shape, dtype=np.int64)
        for n, w in zip(self.orders, self.weights):
            out += (((i // w) % n) * k % n) * w
        return out

    def coords(self, i) -> np.ndarray:
        """Coordinate array of shape ``(..., rank)``."""
        i = np.asarray(i, dtype=np.int64)
        return np.stack([(i // w) % n for n, w in zip(self.orders, self.weights)], axis=-1)

    def element_order(self, i: int) -> int:
        out = 1
        for c, n in zip(self.coords(int(i)).tolist(), self.orders):
            out = math.lcm(out, n // math.gcd(c, n))
        return out


def make_group(orders: Sequence[int], cap: int = DEFAULT_CAP) -> GroupSpec:
    orders = [int(n) for n in orders]
    for n in orders:
        if n < 1:
            raise InvalidOrderError(f"cyclic order must be >= 1, got {n}")
    size = math.prod(orders)
    if size > cap:
        raise CapacityError(f"group of size {size} exceeds cap {cap}")
    return GroupSpec(tuple(orders))


def _check(g: GroupSpec, x: Sequence[int]) -> None:
    if len(x) != g.rank:
        raise DomainError(f"element {tuple(x)} has {len(x)} coordinates, group has {g.rank}")


def element(g: GroupSpec, coords: Sequence[int]) -> Element:
    _check(g, coords)
    return tuple(int(c) % n for c, n in zip(coords, g.orders))


def zero(g: GroupSpec) -> Element:
    return (0,) * g.rank


def add(g: GroupSpec, x: Sequence[int], y: Sequence[int]) -> Element:
    _check(g, x)
    _check(g, y)
    return tuple((a + b) % n for a, b, n in zip(x, y, g.orders))


def neg(g: GroupSpec, x: Sequence[int]) -> Element:
    _check(g, x)
    return tuple((-a) % n for a, n in zip(x, g.orders))


def pairing(g: GroupSpec, xi: Sequence[int], x: Sequence[int]) -> Fraction:
    """xi . x = sum xi_i x_i / n_i, reduced into [0, 1)."""
    _check(g, xi)
    _check(g, x)
    t = sum((Fraction(a * b % n, n) for a, b, n in zip(xi, x, g.orders)), Fraction(0))
    return t - math.floor(t)


def character(g: GroupSpec, xi: Sequence[int], x: Sequence[int]) -> complex:
    """e(xi . x) with e(t) = exp(2 pi i t)."""
    t = pairing(g, xi, x)
    # exact values at quarter turns keep small examples clean
    quarter = {Fraction(0): 1 + 0j, Fraction(1, 4): 1j, Fraction(1, 2): -1 + 0j, Fraction(3, 4): -1j}
    if t in quarter:
        return quarter[t]
    return cmath.exp(2j * math.pi * float(t))


def index_of(g: GroupSpec, x: Sequence[int]) -> int:
    _check(g, x)
    for c, n in zip(x, g.orders):
        if not 0 <= c < n:
            raise DomainError(f"coordinate {c} out of range for Z/{n}")
    return sum(int(c) * w for c, w in zip(x, g.weights))


def element_at(g: GroupSpec, i: int) -> Element:
    if not 0 <= i < g.size:
        raise DomainError(f"index {i} out of range [0, {g.size})")
    return tuple(int(i) // w % n for n, w in zip(g.orders, g.weights))


def enumerate_elements(g: GroupSpec) -> Iterator[Element]:
    for i in range(g.size):
        yield element_at(g, i)
