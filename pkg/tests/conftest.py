from __future__ import annotations

import math

from hypothesis import strategies as st

from addcomb.group import make_group
from addcomb.setops import GroupSet


@st.composite
def groups(draw, max_size=256, max_rank=4):
    orders = draw(st.lists(st.integers(1, 12), min_size=1, max_size=max_rank))
    while math.prod(orders) > max_size:
        orders.pop()
    if not orders:
        orders = [draw(st.integers(1, 12))]
    return make_group(orders)


@st.composite
def subsets(draw, g, min_size=0, max_size=None):
    hi = g.size if max_size is None else min(max_size, g.size)
    idx = draw(st.sets(st.integers(0, g.size - 1), min_size=min(min_size, hi), max_size=hi))
    return GroupSet.from_indices(g, idx)


@st.composite
def group_and_pair(draw, max_size=128, nonempty=True):
    g = draw(groups(max_size=max_size))
    lo = 1 if nonempty else 0
    return g, draw(subsets(g, lo, 30)), draw(subsets(g, lo, 30))


def two_group(n):
    return make_group([2] * n)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
