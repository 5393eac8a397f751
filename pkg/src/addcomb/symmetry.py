"""Sets of large convolution values and the dyadic level decomposition.

Thresholds are compared in exact integer arithmetic by cross-multiplying
rationals; values are never converted to floats.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .group import DomainError
from .setops import GroupSet, IntFunction, convolve, correlate, energy_from, kfold_convolve

log = logging.getLogger(__name__)


def as_fraction(x) -> Fraction:
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


def threshold(f: IntFunction, sigma) -> GroupSet:
    """{x : f(x) >= sigma}."""
    sigma = as_fraction(sigma)
    vals = f.values.astype(object) if abs(sigma.denominator) > 2**20 else f.values
    return GroupSet.from_mask(f.group, vals * sigma.denominator >= sigma.numerator)


def sigma_in_range(sigma) -> bool:
    return as_fraction(sigma) >= 1


def dimension_bound(na: int, nb: int, sigma: Fraction) -> Fraction:
    """Explicit-constant dimension bound for symmetry sets:
    16 max(|A|,|B|) sigma^-1 log2(2 min(|A|,|B|)), log rounded up slightly."""
    lg = Fraction(math.log2(2 * min(na, nb))).limit_denominator(10**12) + Fraction(1, 10**12)
    return 16 * max(na, nb) / sigma * lg


def symmetry_set(A: GroupSet, B: GroupSet, sigma) -> GroupSet:
    """S = {x : (A * (-B))(x) >= sigma}."""
    if not sigma_in_range(sigma):
        log.info("sigma=%s is below 1, outside the range of the dimension bound", sigma)
    return threshold(correlate(A, B), sigma)


def order_for_kfold(sets: Sequence[GroupSet]) -> list[GroupSet]:
    """Stable sort by cardinality so that the negated set is the second largest."""
    return sorted(sets, key=len)


def kfold_function(sets: Sequence[GroupSet]) -> IntFunction:
    """A_1 * ... * A_{k-2} * A_k * (-A_{k-1}) with |A_1| <= ... <= |A_k|."""
    if len(sets) < 2:
        raise ValueError("need at least two sets")
    ordered = order_for_kfold(sets)
    return kfold_convolve(ordered, negate_index=len(ordered) - 2)


def kfold_symmetry_set(sets: Sequence[GroupSet], sigma) -> GroupSet:
    if not sigma_in_range(sigma):
        log.info("sigma=%s is below 1, outside the range of the dimension bound", sigma)
    return threshold(kfold_function(sets), sigma)


@dataclass(frozen=True)
class Level:
    j: int
    S: GroupSet
    c_j: Fraction
    mass: int  # sum over S_j of (A*B)(x)^2


@dataclass(frozen=True)
class LevelDecomposition:
    """S_j = {x : c 2^(j-2) |B| <= (A*B)(x) < c 2^(j-1) |B|} for j = 1..s."""

    levels: tuple[Level, ...]
    s: int
    c: Fraction
    energy: int
    size_a: int
    size_b: int
    conv: IntFunction

    def level(self, j: int) -> Level:
        return self.levels[j - 1]

    def total(self) -> Fraction:
        return sum((lv.c_j for lv in self.levels), Fraction(0))


def level_index(value: int, energy: int, na: int, nb: int) -> int:
    """j with 2^(j-2) <= value*|A||B|/E < 2^(j-1); j <= 0 means below c|B|/2."""
    r = Fraction(value * na * nb, energy)
    if r == 0:
        return -(10**9)
    # floor(log2 r) computed exactly
    e = r.numerator.bit_length() - r.denominator.bit_length()
    if Fraction(2) ** e > r:
        e -= 1
    elif Fraction(2) ** (e + 1) <= r:
        e += 1
    return e + 2


def dyadic_levels(A: GroupSet, B: GroupSet) -> LevelDecomposition:
    if not len(A) or not len(B):
        raise DomainError("dyadic levels need nonempty A and B")
    f = convolve(A, B)
    E = energy_from(f)
    na, nb = len(A), len(B)
    c = Fraction(E, na * nb * nb)
    top = int(f.values.max())
    s = level_index(top, E, na, nb)
    vals = f.values
    support = np.flatnonzero(vals)
    js = {}
    for v in np.unique(vals[support]).tolist():
        js[v] = level_index(v, E, na, nb)
    members: dict[int, list[int]] = {j: [] for j in range(1, s + 1)}
    for x in support.tolist():
        j = js[int(vals[x])]
        if j >= 1:
            members[j].append(x)
    levels = []
    for j in range(1, s + 1):
        xs = members[j]
        mass = int(sum(int(vals[x]) ** 2 for x in xs))
        levels.append(Level(j, GroupSet(A.group, tuple(xs)), Fraction(mass, na * nb * nb), mass))
    return LevelDecomposition(tuple(levels), s, c, E, na, nb, f)


def check_levels(dec: LevelDecomposition) -> list[tuple[str, Fraction, Fraction, bool]]:
    """The decomposition's defining inequalities, each as (name, lhs, rhs, holds)."""
    out = []
    c, nb = dec.c, dec.size_b
    f = dec.conv
    seen: set[int] = set()
    disjoint = True
    for lv in dec.levels:
        if seen & set(lv.S.elements):
            disjoint = False
        seen |= set(lv.S.elements)
        lo, hi = c * 2 ** (lv.j - 2) * nb, c * 2 ** (lv.j - 1) * nb
        for x in lv.S.elements:
            v = f[x]
            if not (lo <= v < hi):
                out.append((f"bracket[j={lv.j},x={x}]", Fraction(v), lo, False))
        out.append((f"c_{lv.j} <= c 2^(j-1)", lv.c_j, c * 2 ** (lv.j - 1), lv.c_j <= c * 2 ** (lv.j - 1)))
    total = dec.total()
    out.append(("levels disjoint", Fraction(int(disjoint)), Fraction(1), disjoint))
    out.append(("c/2 <= sum c_j", c / 2, total, c / 2 <= total))
    out.append(("sum c_j <= c", total, c, total <= c))
    top = int(f.values.max())
    out.append(("c 2^(s-1) |B| > max (A*B)", c * 2 ** (dec.s - 1) * nb, Fraction(top), c * 2 ** (dec.s - 1) * nb > top))
    return out
