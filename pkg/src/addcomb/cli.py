"""Batch command line: every command reads set files and prints one JSON document.

Exit status is 0 on success, 2 when a verification fails and 1 on bad input.
"""

from __future__ import annotations

import argparse
import logging
import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import corpus
from .cycles import (
    build_graph,
    dependency_from_cycle,
    erdos_hypothesis,
    cycle_degree,
    prune_min_degree,
    tree_search,
    DependencyCertificate,
)
from .dissociation import (
    CapacityError,
    SignWitness,
    dim_exact,
    is_dissociated,
    is_dissociated_gf2,
    maximal_dissociated,
    span_contains,
    span_index,
)
from .fourier import dft, energy_spectral
from .formats import (
    InputError,
    coords,
    coords_list,
    dumps,
    frac,
    group_from_json,
    group_to_json,
    load_json,
    load_set,
    parse_element,
    parse_fraction,
    set_from_json,
    set_to_json,
)
from .group import DomainError, index_of
from .setops import GroupSet, convolve, energy
from .structure import (
    Check,
    StructureResult,
    extract_core_levelset,
    extract_core_simple,
    verify_structure,
)
from .symmetry import (
    check_levels,
    dyadic_levels,
    dimension_bound,
    sigma_in_range,
    kfold_symmetry_set,
    symmetry_set,
)

log = logging.getLogger("addcomb")

OK, FAILED, BAD_INPUT = 0, 2, 1


@dataclass
class RunConfig:
    command: str
    inputs: list[str] = field(default_factory=list)
    sigma: str | None = None
    method: str = "simple"
    depth_cap: int | None = None
    kfold: bool = False
    output: str | None = None
    out_dir: str | None = None
    seed: int = 0
    orders: str | None = None
    element: str | None = None
    params: list[int] = field(default_factory=list)


# -- helpers -------------------------------------------------------------------


def _check_json(ch: Check) -> dict:
    return {"name": ch.name, "lhs": frac(ch.lhs), "rhs": frac(ch.rhs), "relation": ch.relation,
            "holds": ch.holds, "asserted": ch.asserted}


def _dissociated(g, L):
    if g.is_elementary_2 and g.rank:
        return is_dissociated_gf2(g, L)
    return is_dissociated(g, L)


def _dim_or_none(g, Q):
    try:
        return dim_exact(g, Q)
    except CapacityError:
        return None


def _need(cfg: RunConfig, n: int, what: str) -> list[str]:
    if len(cfg.inputs) != n:
        raise InputError(f"{cfg.command} expects {what}")
    return cfg.inputs


def _pair(cfg: RunConfig):
    a, b = _need(cfg, 2, "two set files A B")
    A, B = load_set(a), load_set(b)
    if A.group != B.group:
        raise InputError("A and B live in different groups")
    return A, B


# -- commands ------------------------------------------------------------------


def cmd_energy(cfg: RunConfig):
    A, B = _pair(cfg)
    conv = energy(A, B)
    try:
        quad = corpus.oracle_energy(A, B)
    except CapacityError:
        quad = None
    spec = energy_spectral(A, B)
    agree = (quad is None or quad == conv) and abs(spec - conv) <= 1e-6 * max(conv, 1)
    doc = {"command": "energy", "inputs": {"A": set_to_json(A), "B": set_to_json(B)},
           "quadruple": quad, "convolution": conv, "spectral": round(spec, 6), "agree": agree}
    return (OK if agree else FAILED), doc


def cmd_convolve(cfg: RunConfig):
    A, B = _pair(cfg)
    f = convolve(A, B)
    g = A.group
    doc = {"command": "convolve", "group": group_to_json(g),
           "values": [[coords(g, x), int(f.values[x])] for x in np.flatnonzero(f.values)],
           "total": f.total()}
    return OK, doc


def cmd_spectrum(cfg: RunConfig):
    (path,) = _need(cfg, 1, "one set file")
    A = load_set(path)
    g = A.group
    s = dft(g, A.indicator()).values
    parseval = abs(float(np.sum(np.abs(s) ** 2)) / g.size - len(A)) <= 1e-9 * max(len(A), 1)
    doc = {"command": "spectrum", "group": group_to_json(g),
           "values": [[round(float(z.real), 9) + 0.0, round(float(z.imag), 9) + 0.0] for z in s],
           "parseval": parseval}
    return (OK if parseval else FAILED), doc


def cmd_dissociate(cfg: RunConfig):
    (path,) = _need(cfg, 1, "one set file Q")
    Q = load_set(path)
    g = Q.group
    res = _dissociated(g, Q.elements)
    lam = maximal_dissociated(g, Q.elements)
    doc = {"command": "dissociate", "group": group_to_json(g), "elements": coords_list(g, Q.elements),
           "dissociated": res is True, "witness": None if res is True else list(res.coeffs),
           "maximal": coords_list(g, lam), "greedy_size": len(lam), "dim_exact": _dim_or_none(g, Q.elements)}
    return OK, doc


def cmd_span_check(cfg: RunConfig):
    (path,) = _need(cfg, 1, "one set file L and --element")
    if cfg.element is None:
        raise InputError("span-check needs --element")
    L = load_set(path)
    g = L.group
    x = parse_element(g, cfg.element)
    w = span_contains(g, L.elements, x)
    doc = {"command": "span-check", "group": group_to_json(g), "base": coords_list(g, L.elements),
           "target": coords(g, x), "in_span": w is not None,
           "witness": None if w is None else list(w.coeffs)}
    return OK, doc


def _symmetry_doc(sets, S: GroupSet, sigma: Fraction) -> dict:
    g = S.group
    lam = maximal_dissociated(g, S.elements)
    doc = {"command": "symmetry-set", "inputs": [set_to_json(X) for X in sets], "sigma": frac(sigma),
           "sigma_in_range": sigma_in_range(sigma), "elements": coords_list(g, S.elements),
           "size": len(S), "greedy_dim": len(lam), "maximal": coords_list(g, lam)}
    if len(sets) == 2:
        bound = dimension_bound(len(sets[0]), len(sets[1]), sigma) if sigma > 0 else None
        doc["bound"] = None if bound is None else frac(bound)
        doc["bound_holds"] = None if bound is None else len(lam) <= bound
    return doc


def cmd_symmetry_set(cfg: RunConfig):
    if cfg.sigma is None:
        raise InputError("symmetry-set needs --sigma")
    sigma = parse_fraction(cfg.sigma)
    if cfg.kfold:
        if len(cfg.inputs) < 2:
            raise InputError("--kfold needs at least two set files")
        sets = [load_set(p) for p in cfg.inputs]
        S = kfold_symmetry_set(sets, sigma)
    else:
        sets = list(_pair(cfg))
        S = symmetry_set(sets[0], sets[1], sigma)
    doc = _symmetry_doc(sets, S, sigma)
    return (FAILED if doc.get("bound_holds") is False else OK), doc


def cmd_levels(cfg: RunConfig):
    A, B = _pair(cfg)
    dec = dyadic_levels(A, B)
    g = A.group
    checks = [Check(n, Fraction(l), Fraction(r), h) for n, l, r, h in check_levels(dec)]
    doc = {"command": "levels", "inputs": {"A": set_to_json(A), "B": set_to_json(B)},
           "c": frac(dec.c), "s": dec.s, "energy": dec.energy,
           "levels": [{"j": lv.j, "c_j": frac(lv.c_j), "S_j": coords_list(g, lv.S.elements)} for lv in dec.levels],
           "sum_c_j": frac(dec.total()), "checks": [_check_json(c) for c in checks],
           "ok": all(c.holds for c in checks)}
    return (OK if doc["ok"] else FAILED), doc


def cmd_special_cycle(cfg: RunConfig):
    a, b, l = _need(cfg, 3, "three set files A B L")
    A, B, L = load_set(a), load_set(b), load_set(l)
    if not (A.group == B.group == L.group):
        raise InputError("A, B and L live in different groups")
    g = A.group
    graph = build_graph(A, B, L.elements)
    graph.check_invariants()
    doc = {"command": "special-cycle", "inputs": {"A": set_to_json(A), "B": set_to_json(B), "L": set_to_json(L)},
           "edges": len(graph.edges)}
    if cfg.sigma is not None:
        sigma = parse_fraction(cfg.sigma)
        d = cycle_degree(sigma, len(L), max(len(A), 1))
        lhs = 16 * Fraction(len(A)) / sigma * Fraction(math.log2(max(len(B), 1))).limit_denominator(10**12)
        doc["sigma"] = frac(sigma)
        doc["degree"] = d
        doc["erdos_hypothesis"] = erdos_hypothesis(graph, d)
        doc["size_hypothesis"] = {"lhs": len(L), "rhs": frac(lhs), "holds": len(L) > lhs}
        graph = prune_min_degree(graph, d)
    doc["pruned"] = {"left": len(graph.left), "right": len(graph.right), "edges": len(graph.edges)}
    ts = tree_search(graph, cfg.depth_cap)
    doc["search"] = {"reason": ts.reason, "depth": ts.depth, "depth_cap": ts.depth_cap,
                     "line5_aborts": ts.line5_aborts, "tree_size": ts.tree_size,
                     "lca_edges_special": ts.lca_edges_special}
    doc["cycle"] = doc["certificate"] = None
    if ts.cycle is not None:
        cyc = ts.cycle
        doc["cycle"] = {"vertices": [[side, coords(g, v)] for side, v in cyc.vertices],
                        "colors": coords_list(g, cyc.color_sequence()), "signs": list(cyc.signs),
                        "special_indices": list(cyc.special_indices), "length": len(cyc)}
        cert = dependency_from_cycle(cyc)
        doc["certificate"] = {"base": coords_list(g, cert.base), "coeffs": list(cert.coeffs),
                              "weight": cert.weight, "refutes": cert.refutes(), "verifies": cert.verify()}
    return OK, doc


def structure_to_json(A: GroupSet, B: GroupSet, r: StructureResult) -> dict:
    g = A.group
    idx = span_index(g, r.Lambda)
    doc = {"command": "decompose", "method": r.method, "inputs": {"A": set_to_json(A), "B": set_to_json(B)},
           "swapped": r.swapped, "B1": coords_list(g, r.B1.elements), "Lambda": coords_list(g, r.Lambda),
           "c": frac(r.c), "threshold": frac(r.threshold), "energy_AB": r.energy_AB, "energy_AB1": r.energy_AB1,
           "span_witnesses": [{"element": coords(g, x), "coeffs": list(idx.witness(x).coeffs)} for x in r.B1.elements],
           "checks": [_check_json(c) for c in r.checks], "ok": r.ok}
    if r.method == "levelset":
        doc.update({"j": r.j, "s": r.s, "c_j": frac(r.c_j), "branch": r.branch,
                    "S_j": coords_list(g, r.S_j.elements)})
    return doc


def cmd_decompose(cfg: RunConfig):
    A, B = _pair(cfg)
    if cfg.method == "simple":
        r = extract_core_simple(A, B)
    elif cfg.method == "levelset":
        r = extract_core_levelset(A, B)
    else:
        raise InputError(f"unknown method {cfg.method!r}")
    for ch in r.checks:
        log.info("%s: %s %s %s -> %s", ch.name, ch.lhs, ch.relation, ch.rhs, ch.holds)
    doc = structure_to_json(A, B, r)
    return (OK if r.ok else FAILED), doc


DEMOS = {
    "disjoint-subspaces": (corpus.example_disjoint_subspaces, "t d n"),
    "h-union-dissociated": (corpus.example_H_union_dissociated, "h_dim lambda_count n"),
    "directsum": (corpus.example_B_subspace_A_directsum, "h_dim lambda_count n [lambda2_count]"),
}


def cmd_demo(cfg: RunConfig):
    if not cfg.inputs:
        raise InputError(f"demo needs an example name: {', '.join(sorted(DEMOS))} or random")
    name = cfg.inputs[0]
    try:
        params = [int(p) for p in cfg.inputs[1:]]
    except ValueError as exc:
        raise InputError("demo parameters must be integers") from exc
    if name == "random":
        import random

        if len(params) != 2 or cfg.orders is None:
            raise InputError("demo random needs SIZE_A SIZE_B and --orders")
        from .group import make_group

        g = make_group([int(x) for x in cfg.orders.split(",")])
        rng = random.Random(cfg.seed)
        A, B = corpus.random_subset(rng, g, params[0]), corpus.random_subset(rng, g, params[1])
        ex = corpus.ExampleInstance("random", g, A, B, (), {"sizes": params, "seed": cfg.seed})
        rows = []
    elif name in DEMOS:
        fn, usage = DEMOS[name]
        try:
            ex = fn(*params)
        except TypeError as exc:
            raise InputError(f"demo {name} takes {usage}") from exc
        rows = corpus.evaluate_predictions(ex)
    else:
        raise InputError(f"unknown example {name!r}")
    doc = {"command": "demo", "example": ex.name, "params": ex.params,
           "A": set_to_json(ex.A), "B": set_to_json(ex.B),
           "predictions": [{**r, "predicted": frac(r["predicted"]), "actual": frac(r["actual"])} for r in rows]}
    if cfg.out_dir:
        out = Path(cfg.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / "A.json").write_text(dumps(set_to_json(ex.A)))
        (out / "B.json").write_text(dumps(set_to_json(ex.B)))
        (out / "predictions.json").write_text(dumps(doc["predictions"]))
    return (OK if all(r["holds"] for r in rows) else FAILED), doc


# -- verify ----------------------------------------------------------------------


def _verify_decompose(doc) -> list[Check]:
    A = set_from_json(doc["inputs"]["A"])
    B = set_from_json(doc["inputs"]["B"], A.group)
    g = A.group
    A_w, B_w = (B, A) if doc["swapped"] else (A, B)

    def s(key):
        return GroupSet.from_indices(g, [index_of(g, c) for c in doc[key]])

    r = StructureResult(
        doc["method"], A_w, B_w, s("B1"), tuple(index_of(g, c) for c in doc["Lambda"]),
        parse_fraction(doc["c"]), parse_fraction(doc["threshold"]), doc["energy_AB"], doc["energy_AB1"],
        doc["swapped"], j=doc.get("j"), S_j=s("S_j") if "S_j" in doc else None,
        c_j=parse_fraction(doc["c_j"]) if "c_j" in doc else None, s=doc.get("s"),
    )
    checks = list(verify_structure(A, B, r).checks)
    bad = 0
    covered = set()
    for w in doc.get("span_witnesses", []):
        x = index_of(g, w["element"])
        sw = SignWitness(g, r.Lambda, tuple(w["coeffs"]), x)
        if sw.verify():
            covered.add(x)
        else:
            bad += 1
    missing = len(set(r.B1.elements) - covered)
    checks.append(Check("emitted span witnesses verify", Fraction(bad + missing), Fraction(0), bad + missing == 0, "=="))
    return checks


def _flag(name: str, ok: bool) -> Check:
    return Check(name, Fraction(int(ok)), Fraction(1), ok, "==")


def _verify_dissociate(doc) -> list[Check]:
    g = group_from_json(doc["group"])
    Q = [index_of(g, c) for c in doc["elements"]]
    out = []
    if doc["witness"] is not None:
        w = SignWitness(g, tuple(Q), tuple(doc["witness"]), 0)
        out.append(_flag("witness sums to zero", w.verify() and any(w.coeffs)))
    else:
        out.append(_flag("dissociated", _dissociated(g, Q) is True))
    lam = [index_of(g, c) for c in doc["maximal"]]
    out.append(_flag("maximal set dissociated", _dissociated(g, lam) is True))
    idx = span_index(g, lam)
    out.append(_flag("maximal set spans Q", all(idx.witness(q) is not None and idx.witness(q).verify() for q in Q)))
    return out


def _verify_span(doc) -> list[Check]:
    g = group_from_json(doc["group"])
    L = [index_of(g, c) for c in doc["base"]]
    x = index_of(g, doc["target"])
    if doc["witness"] is not None:
        return [_flag("witness reaches target", SignWitness(g, tuple(L), tuple(doc["witness"]), x).verify())]
    return [_flag("target outside span", span_contains(g, L, x) is None)]


def _verify_cycle(doc) -> list[Check]:
    L = set_from_json(doc["inputs"]["L"])
    g = L.group
    A = set_from_json(doc["inputs"]["A"], g)
    B = set_from_json(doc["inputs"]["B"], g)
    if doc["cycle"] is None:
        return [_flag("no cycle claimed", doc["certificate"] is None)]
    verts = [(side, index_of(g, c)) for side, c in doc["cycle"]["vertices"]]
    cols = [index_of(g, c) for c in doc["cycle"]["colors"]]
    signs = doc["cycle"]["signs"]
    k = len(verts)
    ok = k >= 4 and k % 2 == 0 and len(cols) == k and len(set(verts)) == k
    for i in range(k if ok else 0):
        (s1, u), (s2, v) = verts[i], verts[(i + 1) % k]
        a, b = (u, v) if s1 == "L" else (v, u)
        ok &= s1 != s2 and a in A and b in B and cols[i] in L
        ok &= int(g.sub_idx(a, b)) == cols[i] and signs[i] == (1 if s1 == "L" else -1)
    out = [_flag("cycle edges valid", ok)]
    special = [i for i, c in enumerate(cols) if cols.count(c) == 1]
    out.append(_flag("cycle has special edge", bool(special) and special == doc["cycle"]["special_indices"]))
    cert = DependencyCertificate(g, L.elements, tuple(doc["certificate"]["coeffs"]))
    expect = [0] * len(L)
    for c, sg in zip(cols, signs):
        expect[L.elements.index(c)] += sg
    out.append(_flag("certificate matches cycle", list(cert.coeffs) == expect))
    out.append(_flag("certificate sums to zero", cert.verify()))
    return out


def _verify_energy(doc) -> list[Check]:
    A = set_from_json(doc["inputs"]["A"])
    B = set_from_json(doc["inputs"]["B"], A.group)
    e = energy(A, B)
    return [_flag("convolution energy", e == doc["convolution"]),
            _flag("spectral energy", abs(energy_spectral(A, B) - e) <= 1e-6 * max(e, 1))]


def _verify_symmetry(doc) -> list[Check]:
    sets = [set_from_json(s) for s in doc["inputs"]]
    sigma = parse_fraction(doc["sigma"])
    S = kfold_symmetry_set(sets, sigma) if len(sets) > 2 else symmetry_set(sets[0], sets[1], sigma)
    out = [_flag("symmetry set matches", coords_list(S.group, S.elements) == doc["elements"])]
    if doc.get("bound_holds") is not None:
        out.append(_flag("dimension bound", doc["bound_holds"]))
    return out


def _verify_levels(doc) -> list[Check]:
    A = set_from_json(doc["inputs"]["A"])
    B = set_from_json(doc["inputs"]["B"], A.group)
    dec = dyadic_levels(A, B)
    out = [Check(n, Fraction(l), Fraction(r), h) for n, l, r, h in check_levels(dec)]
    out.append(_flag("levels match", [frac(lv.c_j) for lv in dec.levels] == [lv["c_j"] for lv in doc["levels"]]))
    return out


VERIFIERS = {
    "decompose": _verify_decompose,
    "dissociate": _verify_dissociate,
    "span-check": _verify_span,
    "special-cycle": _verify_cycle,
    "energy": _verify_energy,
    "symmetry-set": _verify_symmetry,
    "levels": _verify_levels,
}


def cmd_verify(cfg: RunConfig):
    (path,) = _need(cfg, 1, "one result file")
    doc = load_json(path)
    kind = doc.get("command") if isinstance(doc, dict) else None
    if kind not in VERIFIERS:
        raise InputError(f"{path}: cannot verify documents of kind {kind!r}")
    try:
        checks = VERIFIERS[kind](doc)
    except (KeyError, TypeError) as exc:
        raise InputError(f"{path}: malformed {kind} result ({exc})") from exc
    ok = all(c.holds for c in checks if c.asserted)
    return (OK if ok else FAILED), {"command": "verify", "kind": kind, "ok": ok,
                                    "checks": [_check_json(c) for c in checks]}


COMMANDS = {
    "energy": cmd_energy,
    "convolve": cmd_convolve,
    "spectrum": cmd_spectrum,
    "dissociate": cmd_dissociate,
    "span-check": cmd_span_check,
    "symmetry-set": cmd_symmetry_set,
    "levels": cmd_levels,
    "special-cycle": cmd_special_cycle,
    "decompose": cmd_decompose,
    "demo": cmd_demo,
    "verify": cmd_verify,
}


def run(cfg: RunConfig) -> tuple[int, dict | None]:
    try:
        return COMMANDS[cfg.command](cfg)
    except (InputError, DomainError, CapacityError, ValueError) as exc:
        return BAD_INPUT, {"command": cfg.command, "error": str(exc)}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="addcomb", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true", help="log every checked inequality")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help_, nargs="*"):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("inputs", nargs=nargs)
        sp.add_argument("-o", "--output")
        return sp

    add("energy", "E(A,B) by quadruple count, convolution and spectrum")
    add("convolve", "(A*B) as a sparse table")
    add("spectrum", "Fourier transform of an indicator")
    add("dissociate", "dissociativity, witness and maximal dissociated subset")
    add("span-check", "span membership with a witness").add_argument("--element", required=True)
    sp = add("symmetry-set", "{x : (A*(-B))(x) >= sigma}")
    sp.add_argument("--sigma", required=True)
    sp.add_argument("--kfold", action="store_true", help="treat all inputs as A_1..A_k")
    add("levels", "dyadic level decomposition of A*B")
    sp = add("special-cycle", "special cycle and dependency certificate for A B L")
    sp.add_argument("--sigma")
    sp.add_argument("--depth-cap", type=int)
    add("decompose", "extract B1").add_argument("--method", choices=["simple", "levelset"], default="simple")
    sp = add("demo", "materialise an example: NAME PARAMS...")
    sp.add_argument("--out-dir")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--orders")
    add("verify", "recheck a result document")
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=ns.command, inputs=list(ns.inputs), sigma=getattr(ns, "sigma", None),
        method=getattr(ns, "method", "simple"), depth_cap=getattr(ns, "depth_cap", None),
        kfold=getattr(ns, "kfold", False), output=ns.output, out_dir=getattr(ns, "out_dir", None),
        seed=getattr(ns, "seed", 0), orders=getattr(ns, "orders", None), element=getattr(ns, "element", None),
    )


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if ns.verbose else logging.WARNING, format="%(name)s: %(message)s")
    cfg = config_from_args(ns)
    status, doc = run(cfg)
    if status == BAD_INPUT:
        print(f"addcomb {cfg.command}: {doc['error']}", file=sys.stderr)
        return status
    text = dumps(doc)
    if cfg.output:
        Path(cfg.output).write_text(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
