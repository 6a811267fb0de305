#!/usr/bin/env python3
"""Return-tower searches over interval exchange transformations.

A tower certificate is an interval J and a return time q such that J, T(J),
..., T^{q-1}(J) are disjoint continuity intervals covering most of [0, 1) and
T^q maps J mostly back into itself.  The script scans a family of seeded
three-interval exchanges plus the golden rotation viewed as a two-interval
exchange (which famously never yields a tower below the golden barrier).

Usage:
    python scripts/veech_towers.py
    python scripts/veech_towers.py --eps 0.4 --qmax 1000 --seeds 20
"""

import argparse
import random
import sys

from gordonlab.arithmetic import GOLDEN
from gordonlab.dynamics import Iet, Permutation
from gordonlab.repetition import TowerNotFound, veech_tower_search


def describe(label, result) -> None:
    if isinstance(result, TowerNotFound):
        print(f"  {label}: no tower"
              f"  (best coverage {result.best_coverage:.4f},"
              f" best overlap fraction {result.best_overlap_fraction:.4f})")
    else:
        lo, hi = result.interval
        print(f"  {label}: q={result.q}  J=[{lo:.6f}, {hi:.6f})"
              f"  coverage={result.coverage:.4f}"
              f"  return overlap={result.return_overlap:.4f}")


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--eps", type=float, default=0.5)
    parser.add_argument("--qmax", type=int, default=500)
    parser.add_argument("--seeds", type=int, default=10,
                        help="number of seeded three-interval exchanges")
    args = parser.parse_args()

    print(f"three-interval exchanges, permutation (3 1 2), eps={args.eps}, q<={args.qmax}:")
    n_found = 0
    for seed in range(args.seeds):
        rng = random.Random(seed)
        cuts = sorted((rng.random(), rng.random()))
        lengths = (cuts[0], cuts[1] - cuts[0], 1 - cuts[1])
        result = veech_tower_search(Iet(lengths, Permutation((3, 1, 2))), args.eps, args.qmax)
        describe(f"seed {seed:>2} lengths ({lengths[0]:.3f}, {lengths[1]:.3f}, "
                 f"{lengths[2]:.3f})", result)
        n_found += not isinstance(result, TowerNotFound)
    print(f"  -> {n_found}/{args.seeds} towers found")

    beta = float(GOLDEN)
    golden = Iet((1 - beta, beta), Permutation((2, 1)))
    print(f"golden rotation as a 2-IET, q<={args.qmax}:")
    for eps in (0.65, 0.5, args.eps, 0.3):
        result = veech_tower_search(golden, eps, args.qmax)
        describe(f"eps={eps:<5g}", result)
    return 0


if __name__ == "__main__":
    sys.exit(main())
