#!/usr/bin/env python3
"""Sweep repetition-time searches for torus shifts over a grid of
frequencies, scales, and repetition lengths.

For each (alpha, epsilon, r) cell the search horizon is the first convergent
denominator q* with <q* alpha> < epsilon; the table reports the certified q
against q* and the achieved pair distance.  Certificates for shifts are
omega-independent, so a single start point per cell suffices.

Usage:
    python scripts/shift_repetition_grid.py
    python scripts/shift_repetition_grid.py --alphas golden,sqrt2 --j-max 12 --r 1,2,3,5
"""

import argparse
import random
import sys

from gordonlab.arithmetic import ALPHA_PRESETS, FixedPointFrac, cf_expand
from gordonlab.cli import parse_alpha
from gordonlab.dynamics import Shift, TorusPoint
from gordonlab.repetition import RepetitionCertificate, find_repetition_time


def first_denominator_below(alpha, eps):
    for _, q in cf_expand(alpha, 64).convergents:
        if (q * alpha).norm() < eps:
            return q
    return None


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--alphas", default="golden,sqrt2,liouville10",
                        help="comma-separated presets or literals")
    parser.add_argument("--j-max", type=int, default=10,
                        help="scales epsilon = 2^-1 .. 2^-j_max")
    parser.add_argument("--r", default="1,2,3", help="repetition lengths")
    parser.add_argument("--seed", type=int, default=0, help="start-point seed")
    args = parser.parse_args()

    rng = random.Random(args.seed)
    r_values = [float(x) for x in args.r.split(",")]
    print(f"{'alpha':>12} {'eps':>10} {'r':>4} {'q*':>8} {'q':>8} {'max_dist':>22}")
    for name in args.alphas.split(","):
        alpha = parse_alpha(name)
        system = Shift((alpha,))
        omega = TorusPoint((FixedPointFrac(rng.getrandbits(128)),))
        for j in range(1, args.j_max + 1):
            eps = 2.0 ** -j
            q_star = first_denominator_below(alpha, eps)
            if q_star is None:
                print(f"{name:>12} {eps:>10.3g}    -  expansion exhausted before eps")
                continue
            for r in r_values:
                cert = find_repetition_time(system, omega, eps, r, q_star)
                assert isinstance(cert, RepetitionCertificate)
                print(f"{name:>12} {eps:>10.3g} {r:>4g} {q_star:>8} {cert.q:>8} "
                      f"{cert.max_dist:>22.16g}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
