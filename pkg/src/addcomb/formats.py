"""JSON formats: group descriptors, set files, exact rationals, results."""

from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path

from .group import GroupSpec, element_at, index_of, make_group
from .setops import GroupSet


class InputError(ValueError):
    pass


def frac(x) -> str:
    return str(Fraction(x))


def parse_fraction(s) -> Fraction:
    try:
        return Fraction(str(s).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"not an exact rational: {s!r}") from exc


def group_to_json(g: GroupSpec) -> dict:
    return {"orders": list(g.orders)}


def group_from_json(obj) -> GroupSpec:
    if not isinstance(obj, dict) or "orders" not in obj:
        raise InputError('group descriptor must look like {"orders": [...]}')
    return make_group(obj["orders"])


def coords(g: GroupSpec, i: int) -> list[int]:
    return list(element_at(g, int(i)))


def coords_list(g: GroupSpec, xs) -> list[list[int]]:
    return [coords(g, x) for x in xs]


def set_to_json(S: GroupSet) -> dict:
    return {"group": group_to_json(S.group), "elements": coords_list(S.group, S.elements)}


def set_from_json(obj, g: GroupSpec | None = None) -> GroupSet:
    if not isinstance(obj, dict) or "elements" not in obj:
        raise InputError('set file must look like {"group": {...}, "elements": [...]}')
    if g is None:
        g = group_from_json(obj.get("group"))
    els = []
    for e in obj["elements"]:
        e = [e] if isinstance(e, int) else list(e)
        if len(e) != g.rank:
            raise InputError(f"element {e} needs {g.rank} coordinates")
        els.append(index_of(g, [int(c) % n for c, n in zip(e, g.orders)]))
    return GroupSet.from_indices(g, els)


def load_json(path) -> dict:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc


def load_set(path) -> GroupSet:
    return set_from_json(load_json(path))


def parse_element(g: GroupSpec, text: str) -> int:
    """'4' or '1,0,1' or '[1,0,1]' to an element index."""
    t = text.strip().strip("[]")
    try:
        parts = [int(p) for p in t.split(",") if p.strip()]
    except ValueError as exc:
        raise InputError(f"cannot parse element {text!r}") from exc
    if len(parts) != g.rank:
        raise InputError(f"element {text!r} needs {g.rank} coordinates")
    return index_of(g, [c % n for c, n in zip(parts, g.orders)])


_NUM_LIST = re.compile(r"\[(?:\s*-?[\d.e+-]+\s*,)*\s*-?[\d.e+-]+\s*\]")


def dumps(doc) -> str:
    """Indented, key-sorted JSON with flat numeric arrays kept on one line."""
    text = json.dumps(doc, indent=2, sort_keys=True)
    return _NUM_LIST.sub(lambda m: "[" + ", ".join(x.strip() for x in m.group(0)[1:-1].split(",")) + "]", text) + "\n"
