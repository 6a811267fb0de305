#!/usr/bin/env python3
"""Defect profiles gamma(q) along convergent denominators, with decay
verdicts, for smooth versus discontinuous sampling.

For a cosine potential the defect tracks 2*pi*<q*alpha> and shrinks along the
convergents; for a half-circle coding it stays pinned at the level gap.  The
verdict tests whether gamma(q) is consistent with a C^-q envelope for each C
in the list (log-space comparison, horizon evidence only).

Usage:
    python scripts/gordon_decay.py
    python scripts/gordon_decay.py --alpha liouville10 --depth 6 --c-list 1.01,1.05,2
"""

import argparse
import sys

from gordonlab.arithmetic import FixedPointFrac, cf_expand
from gordonlab.cli import parse_alpha
from gordonlab.dynamics import Shift, TorusPoint
from gordonlab.potentials import Cosine, PiecewiseConstant, gordon_profile


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--alpha", default="golden")
    parser.add_argument("--depth", type=int, default=12,
                        help="number of convergent denominators in the schedule")
    parser.add_argument("--c-list", default="1.01,1.05,2.0")
    parser.add_argument("--lam", type=float, default=1.0)
    args = parser.parse_args()

    alpha = parse_alpha(args.alpha)
    cf = cf_expand(alpha, 64)
    q_list = []
    for _, q in cf.convergents[: args.depth]:
        if not q_list or q > q_list[-1]:
            q_list.append(q)
    c_list = [float(c) for c in args.c_list.split(",")]
    system = Shift((alpha,))
    omega = TorusPoint((FixedPointFrac(0),))

    functions = [
        ("cosine", Cosine((1,))),
        ("half-circle coding", PiecewiseConstant((0.0, 0.5), (0.0, 1.0))),
    ]
    for label, f in functions:
        profile = gordon_profile(system, f, args.lam, omega, q_list, c_list)
        print(f"[{args.alpha}] {label}: {profile.verdict}"
              + (f" (largest consistent C = {profile.c_max})" if profile.c_max else ""))
        for q, gamma in profile.entries:
            step = (q * alpha).norm()
            ratio = gamma / step if step else float("inf")
            print(f"  q={q:>8}  gamma={gamma:>12.6g}  <q*alpha>={step:>12.6g}"
                  f"  ratio={ratio:>8.4g}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
