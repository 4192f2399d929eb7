#!/usr/bin/env python3
"""Walk through the degree 3 worked example at n = 1.

For an irreducible (niveau 2) datum over the unramified cubic extension with
inertia exponent n = 1, the labeled solution set has 8 entries but only 6
distinct weights: the two subsets B = {0, 1} and B = {0, 2} produce the same
weight V[a-digits ; 1, ell, 1] with a = -ell^2 mod ell^3 - 1, and one more
collision occurs elsewhere.  The collapse pattern is identical for every
prime tried here, so nothing about it is special to ell = 3.

Usage:

    python3 scripts/worked_example.py
    python3 scripts/worked_example.py --ell 3 5 7 11
"""

from __future__ import annotations

import argparse
import sys
from collections import Counter

from serreweights import FieldParams
from serreweights import irreducible as irred
from serreweights.modarith import subset_indices
from serreweights.weights import format_weight_set, weight_sort_key


def describe(ell: int) -> None:
    p = FieldParams(ell, 3)
    d = irred.niveau_two(p, 1)
    labeled = irred.labeled_weight_set(d)
    ws = irred.weight_set(d)
    print(f"ell = {ell}, f = 3, n = 1")
    print(f"  labeled solutions |W'| = {len(labeled)}, weights |W_p| = {len(ws)}")
    multiplicity = Counter(lw.weight for lw in labeled)
    for lw in sorted(labeled, key=lambda lw: (weight_sort_key(lw.weight), lw.B)):
        B = "{" + ",".join(map(str, subset_indices(lw.B, 3))) + "}"
        mark = "  <- collision" if multiplicity[lw.weight] > 1 else ""
        print(f"    B={B:<7} {lw.weight}{mark}")
    print(f"  weights: {format_weight_set(ws)}")
    a = (-(ell**2)) % p.m_big
    print(f"  highlighted pair: a = -{ell}^2 = {a} mod {p.m_big}, b = (1, {ell}, 1),")
    print("  reached from both B = {0,1} and B = {0,2}")
    print()


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--ell", nargs="+", type=int, default=[3, 5, 7], help="primes to walk through"
    )
    args = parser.parse_args(argv)
    sizes = set()
    for ell in args.ell:
        describe(ell)
        p = FieldParams(ell, 3)
        d = irred.niveau_two(p, 1)
        sizes.add((len(irred.labeled_weight_set(d)), len(irred.weight_set(d))))
    if len(sizes) == 1:
        pair = next(iter(sizes))
        print(f"sizes agree across all primes: |W'| = {pair[0]}, |W_p| = {pair[1]}")
    else:
        print(f"sizes differ across primes: {sorted(sizes)}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
