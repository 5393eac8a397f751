"""Extract B1 of B with small dissociated dimension and a constant share of E(A, B).

Two routes.  ``extract_core_simple`` keeps the x in B where B*A*(-A) is at
least half its average-derived level c|A||B|; ``extract_core_levelset``
first slices A*B into dyadic levels, picks one carrying enough energy and
thresholds S_j*(-A) on B.  In both cases c is the exact density
E(A,B)/(|A||B|^2), which turns every guarantee into a checkable inequality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .dissociation import is_dissociated, is_dissociated_gf2, maximal_dissociated, span_index
from .group import DomainError
from .setops import GroupSet, convolve, correlate, energy, kfold_convolve
from .symmetry import check_levels, dyadic_levels

DIM_CONSTANT = 16


@dataclass(frozen=True)
class Check:
    name: str
    lhs: Fraction
    rhs: Fraction
    holds: bool
    relation: str = "<="
    asserted: bool = True  # False: reported for the record only


def _le(name, lhs, rhs, asserted=True) -> Check:
    lhs, rhs = Fraction(lhs), Fraction(rhs)
    return Check(name, lhs, rhs, lhs <= rhs, "<=", asserted)


@dataclass(frozen=True)
class StructureResult:
    method: str  # "simple" | "levelset"
    A: GroupSet  # working pair, after any swap
    B: GroupSet
    B1: GroupSet
    Lambda: tuple[int, ...]
    c: Fraction
    threshold: Fraction
    energy_AB: int
    energy_AB1: int
    swapped: bool = False
    j: int | None = None
    S_j: GroupSet | None = None
    c_j: Fraction | None = None
    s: int | None = None
    branch: str | None = None  # which of |S_j|, |A| is larger
    checks: tuple[Check, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return all(ch.holds for ch in self.checks if ch.asserted)


def dimension_budget(c: Fraction, size_a: int) -> Fraction:
    """16 c^-1 log2(2|A|) as an exact upper rational (log rounded up to 1e-12)."""
    lg = math.log2(2 * size_a)
    return DIM_CONSTANT / c * Fraction(lg).limit_denominator(10**12) + Fraction(1, 10**9)


def _span_checks(g, B1: GroupSet, Lambda) -> list[Check]:
    out = []
    diss = is_dissociated_gf2(g, Lambda) if g.is_elementary_2 and g.rank else is_dissociated(g, Lambda)
    out.append(Check("Lambda dissociated", Fraction(int(diss is True)), Fraction(1), diss is True, "=="))
    idx = span_index(g, Lambda)
    missing = 0
    for x in B1:
        w = idx.witness(x)
        if w is None or not w.verify():
            missing += 1
    out.append(Check("B1 in Span(Lambda): elements without witness", Fraction(missing), Fraction(0), missing == 0, "=="))
    return out


def _common_checks(A, B, B1, Lambda, c, E, E1) -> list[Check]:
    g = A.group
    out = [Check("B1 subset of B", Fraction(int(B1.issubset(B))), Fraction(1), B1.issubset(B), "==")]
    out.append(Check("B1 nonempty", Fraction(len(B1)), Fraction(1), len(B1) >= 1, ">="))
    out += _span_checks(g, B1, Lambda)
    out.append(_le("|Lambda| <= 16 c^-1 log2(2|A|)", len(Lambda), dimension_budget(c, len(A)), asserted=False))
    return out


def extract_core_simple(A: GroupSet, B: GroupSet) -> StructureResult:
    if not len(A) or not len(B):
        raise DomainError("extraction needs nonempty A and B")
    if A.group != B.group:
        raise DomainError("sets live in different groups")
    swapped = len(A) < len(B)
    if swapped:
        A, B = B, A
    na, nb = len(A), len(B)
    E = energy(A, B)
    c = Fraction(E, na * nb * nb)
    thr = c * na * nb / 2
    f = kfold_convolve([B, A, A], negate_index=2)
    B1 = GroupSet(A.group, tuple(x for x in B.elements if f.values[x] * thr.denominator >= thr.numerator))
    Lambda = tuple(maximal_dissociated(A.group, B1))
    E1 = energy(A, B1)
    mass = sum(int(f.values[x]) for x in B1.elements)
    checks = _common_checks(A, B, B1, Lambda, c, E, E1)
    checks.append(_le("c|A||B|^2/2 <= sum_{B1} (B*A*(-A))", c * na * nb * nb / 2, mass))
    checks.append(_le("2^-2 c |A||B|^2 <= E(A,B1)", c * na * nb * nb / 4, E1))
    return StructureResult("simple", A, B, B1, Lambda, c, thr, E, E1, swapped, checks=tuple(checks))


def select_level(dec) -> int:
    """Smallest j with c_j >= c / (2s)."""
    bar = dec.c / (2 * dec.s)
    for lv in dec.levels:
        if lv.c_j >= bar:
            return lv.j
    raise AssertionError("no level carries c/(2s); the level sums are inconsistent")


def extract_core_levelset(A: GroupSet, B: GroupSet) -> StructureResult:
    if not len(A) or not len(B):
        raise DomainError("extraction needs nonempty A and B")
    if A.group != B.group:
        raise DomainError("sets live in different groups")
    na, nb = len(A), len(B)
    dec = dyadic_levels(A, B)
    c, E, s = dec.c, dec.energy, dec.s
    j = select_level(dec)
    lv = dec.level(j)
    thr = Fraction(1, 2**j) * lv.c_j / c * na
    g = correlate(lv.S, A)  # (S_j * (-A))
    B1 = GroupSet(A.group, tuple(x for x in B.elements if g.values[x] * thr.denominator >= thr.numerator))
    Lambda = tuple(maximal_dissociated(A.group, B1))
    E1 = energy(A, B1)
    conv1 = convolve(A, B1)
    mass = sum(int(conv1.values[x]) for x in lv.S.elements)
    checks = _common_checks(A, B, B1, Lambda, c, E, E1)
    for name, lhs, rhs, holds in check_levels(dec):
        checks.append(Check(name, Fraction(lhs), Fraction(rhs), holds))
    checks.append(_le("c/(2s) <= c_j", c / (2 * s), lv.c_j))
    checks.append(_le("2^-j c_j c^-1 |A||B| <= sum_{S_j} (A*B1)", thr * nb, mass))
    checks.append(_le("2^-4 s^-1 E(A,B) <= E(A,B1)", Fraction(E, 16 * s), E1))
    checks.append(_le("2^-5 s^-1 E(A,B) <= E(A,B1)", Fraction(E, 32 * s), E1))
    branch = "S_j" if len(lv.S) > na else "A"
    return StructureResult(
        "levelset", A, B, B1, Lambda, c, thr, E, E1, False,
        j=j, S_j=lv.S, c_j=lv.c_j, s=s, branch=branch, checks=tuple(checks),
    )


@dataclass(frozen=True)
class VerificationReport:
    checks: tuple[Check, ...]

    @property
    def ok(self) -> bool:
        return all(ch.holds for ch in self.checks if ch.asserted)

    def failures(self) -> list[Check]:
        return [ch for ch in self.checks if ch.asserted and not ch.holds]


def verify_structure(A: GroupSet, B: GroupSet, r: StructureResult) -> VerificationReport:
    """Recompute every claim in ``r`` from the raw sets."""
    if A.group != r.A.group:
        raise DomainError("result belongs to a different group")
    if r.swapped:
        A, B = B, A
    if A != r.A or B != r.B:
        raise DomainError("result was not produced from these sets")
    na, nb = len(A), len(B)
    E = energy(A, B)
    E1 = energy(A, r.B1)
    c = Fraction(E, na * nb * nb)
    checks = [Check("energy density matches", r.c, c, r.c == c, "==")]
    checks += _common_checks(A, B, r.B1, r.Lambda, c, E, E1)
    if r.method == "simple":
        checks.append(_le("2^-2 c |A||B|^2 <= E(A,B1)", c * na * nb * nb / 4, E1))
        f = kfold_convolve([B, A, A], negate_index=2)
        thr = c * na * nb / 2
        expect = tuple(x for x in B.elements if f.values[x] * thr.denominator >= thr.numerator)
        checks.append(Check("B1 equals threshold set", Fraction(int(expect == r.B1.elements)), Fraction(1),
                            expect == r.B1.elements, "=="))
    elif r.method == "levelset":
        dec = dyadic_levels(A, B)
        checks.append(Check("s matches", Fraction(r.s), Fraction(dec.s), r.s == dec.s, "=="))
        checks.append(_le("2^-4 s^-1 E(A,B) <= E(A,B1)", Fraction(E, 16 * dec.s), E1))
        lv = dec.level(r.j)
        checks.append(_le("c/(2s) <= c_j", c / (2 * dec.s), lv.c_j))
        thr = Fraction(1, 2**r.j) * lv.c_j / c * na
        g = correlate(lv.S, A)
        expect = tuple(x for x in B.elements if g.values[x] * thr.denominator >= thr.numerator)
        checks.append(Check("B1 equals threshold set", Fraction(int(expect == r.B1.elements)), Fraction(1),
                            expect == r.B1.elements, "=="))
    else:
        raise DomainError(f"unknown method {r.method!r}")
    if A == B:
        E11 = energy(r.B1, r.B1)
        checks.append(_le("E(A,A1)^2 / E(A) <= E(A1)", Fraction(E1 * E1, E), E11))
        checks.append(_le("2^-10 E(A) <= E(A1)", Fraction(E, 1024), E11, asserted=False))
    return VerificationReport(tuple(checks))
