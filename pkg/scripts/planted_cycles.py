"""Special cycles in planted instances A = B = (Z/2)^n with |Lambda| just above
16 |A| sigma^-1 log2 |B|, sigma = 2^n.  Reports cycle length, certificate and
search statistics per n."""

from __future__ import annotations

import argparse
import time

from addcomb.corpus import planted_cycle_instance
from addcomb.cycles import build_graph, cycle_degree, dependency_from_cycle, prune_min_degree, tree_search


def main(ns: list[int], extra: int) -> int:
    print(f"{'n':>3} {'|Lam|':>6} {'deg':>4} {'reason':>16} {'len':>4} {'cap':>4} {'weight':>6} {'refutes':>20} {'sec':>6}")
    status = 0
    for n in ns:
        t0 = time.perf_counter()
        g, A, B, lam, sigma = planted_cycle_instance(n, extra)
        if len(lam) >= g.size:
            print(f"{n:3d} Lambda would need {len(lam)} nonzero elements; skipped")
            continue
        d = cycle_degree(sigma, len(lam), len(A))
        ts = tree_search(prune_min_degree(build_graph(A, B, lam), d))
        cert = dependency_from_cycle(ts.cycle) if ts.cycle else None
        status |= cert is None or not cert.verify()
        print(f"{n:3d} {len(lam):6d} {d:4d} {ts.reason:>16} {len(ts.cycle) if ts.cycle else '-':>4} "
              f"{2 * ts.depth_cap:4d} {cert.weight if cert else '-':>6} {cert.refutes() if cert else '-':>20} "
              f"{time.perf_counter() - t0:6.2f}")
    return int(status)


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n", type=int, nargs="+", default=[8, 9, 10, 11, 12])
    p.add_argument("--extra", type=int, default=1)
    a = p.parse_args()
    raise SystemExit(main(a.n, a.extra))
