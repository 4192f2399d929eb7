"""Brute-force oracles: definitional triple loops, no recipe cleverness.

The labeled weight sets are defined by congruences on (a, b, B); these
functions test every candidate directly.  They are deliberately slow and
obviously correct, and the test modules compare the package's recipe
functions (and the vectorized engine) against them.
"""

from __future__ import annotations

import itertools

from serreweights.modarith import FieldParams, subset_indices
from serreweights.weights import LabeledWeight, canonical_weight


def brute_labeled_irred(ell: int, f: int, n: int) -> set[tuple[int, tuple[int, ...], int]]:
    """All (a, b, B) with

    n = a (q+1) + sum_{i in B} b_i ell^i + sum_{i not in B} b_i ell^{f+i}  (mod q^2 - 1)
    """
    q = ell**f
    big = q * q - 1
    out = set()
    for B in range(1 << f):
        inside = set(subset_indices(B, f))
        for b in itertools.product(range(1, ell + 1), repeat=f):
            s = sum(b[i] * ell**i for i in inside)
            s += sum(b[i] * ell ** (f + i) for i in range(f) if i not in inside)
            for a in range(max(q - 1, 1)):
                if (a * (q + 1) + s - n) % big == 0:
                    out.add((a, b, B))
    return out


def brute_labeled_red(
    ell: int, f: int, n1: int, n2: int
) -> set[tuple[int, tuple[int, ...], int]]:
    """All (a, b, B) with

    a + sum_{i in B} b_i ell^i = n1  and  a + sum_{i not in B} b_i ell^i = n2
    (both mod q - 1)
    """
    q = ell**f
    m = max(q - 1, 1)
    out = set()
    for B in range(1 << f):
        inside = set(subset_indices(B, f))
        for b in itertools.product(range(1, ell + 1), repeat=f):
            s_in = sum(b[i] * ell**i for i in inside)
            s_out = sum(b[i] * ell**i for i in range(f) if i not in inside)
            for a in range(m):
                if (a + s_in - n1) % m == 0 and (a + s_out - n2) % m == 0:
                    out.add((a, b, B))
    return out


def as_labeled_set(raw, params: FieldParams) -> frozenset[LabeledWeight]:
    """Convert oracle triples into the package's labeled weight objects."""
    return frozenset(
        LabeledWeight(canonical_weight(a, b, params), B) for a, b, B in raw
    )


def project_weights(raw) -> set[tuple[int, tuple[int, ...]]]:
    return {(a, b) for a, b, _ in raw}
