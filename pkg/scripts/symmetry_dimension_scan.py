"""Compare the dissociated dimension of symmetry sets with the explicit bound.

For each corpus pair and a ladder of thresholds sigma, prints |S|, the greedy
dissociated size and (when cheap) the exact dimension, next to
16 max(|A|,|B|) sigma^-1 log2(2 min(|A|,|B|)).
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass
from fractions import Fraction

from addcomb.corpus import example_B_subspace_A_directsum, standard_corpus
from addcomb.dissociation import CapacityError, dim_exact, maximal_dissociated
from addcomb.symmetry import dimension_bound, symmetry_set


@dataclass
class ScanConfig:
    seed: int = 0
    n_random: int = 30
    exact_cap: int = 18


def rows(cfg: ScanConfig):
    pairs = standard_corpus(cfg.seed, cfg.n_random)
    for h, lam in [(3, 3), (4, 4), (2, 6), (5, 2)]:
        ex = example_B_subspace_A_directsum(h, lam, 10)
        pairs.append((f"directsum({h},{lam})", ex.A, ex.B))
    for name, A, B in pairs:
        m = min(len(A), len(B))
        for sigma in sorted({1, max(1, m // 4), max(1, m // 2), m}):
            S = symmetry_set(A, B, sigma)
            greedy = len(maximal_dissociated(A.group, S.elements))
            exact = None
            if len(S) <= cfg.exact_cap or A.group.is_elementary_2:
                try:
                    exact = dim_exact(A.group, S.elements)
                except CapacityError:
                    pass
            yield name, len(A), len(B), sigma, len(S), greedy, exact, dimension_bound(len(A), len(B), Fraction(sigma))


def main(cfg: ScanConfig) -> int:
    worst, bad = 0.0, 0
    print(f"{'instance':34s} {'|A|':>4} {'|B|':>4} {'sigma':>5} {'|S|':>5} {'greedy':>6} {'exact':>5} {'bound':>9}")
    for name, na, nb, sigma, size, greedy, exact, bound in rows(cfg):
        worst = max(worst, greedy / float(bound))
        bad += greedy > bound
        print(f"{name[:34]:34s} {na:4d} {nb:4d} {sigma:5d} {size:5d} {greedy:6d} "
              f"{'-' if exact is None else exact:>5} {float(bound):9.1f}")
    print(f"\nmax greedy/bound = {worst:.3f}; {bad} violations")
    return 1 if bad else 0


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n-random", type=int, default=30)
    a = p.parse_args()
    raise SystemExit(main(ScanConfig(a.seed, a.n_random)))
