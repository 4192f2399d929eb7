"""Weight recipe for irreducible local data (niveau 2 characters).

The datum is a character of the unramified quadratic extension whose inertia
restriction is the n-th power of a niveau 2 fundamental character, with
n taken mod m_big = ell^(2f) - 1 and not divisible by m_plus = ell^f + 1
(otherwise the character would descend to niveau 1).

A triple (a, b, B) with a mod q-1, b in {1..ell}^f and B a subset of
S = {0..f-1} belongs to the labeled weight set of n exactly when

    n = a (q+1) + sum_{i in B} b_i ell^i + sum_{i not in B} b_i ell^(f+i)
                                                        (mod ell^(2f) - 1).

Reducing mod q+1 turns the b-part into the signed digit window for B, so for
each B the congruence has a solution iff n avoids a single excluded class mod
q+1, and then the solution is unique.  The B-label corresponds to a choice of
embeddings; the weight itself is (a, b).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .errors import InvalidNiveauTwo
from .modarith import (
    FieldParams,
    Residue,
    signed_digit_solve,
    subset_complement,
    subsets,
    window_top,
)
from .weights import LabeledWeight, SerreWeight, canonical_weight

__all__ = [
    "NiveauTwoDatum",
    "niveau_two",
    "missing_class",
    "labeled_weight_set",
    "weight_set",
    "labeled_count_formula",
    "injectivity_witness",
    "projection_is_injective",
    "conjugate_datum",
    "frobenius_datum",
    "twist_datum",
    "frobenius_labeled",
]


@dataclass(frozen=True)
class NiveauTwoDatum:
    """Exponent n of a niveau 2 character, canonical mod ell^(2f) - 1."""

    params: FieldParams
    n: int

    def __post_init__(self) -> None:
        if not 0 <= self.n < self.params.m_big:
            raise InvalidNiveauTwo(f"n = {self.n} not canonical mod {self.params.m_big}")
        if self.n % self.params.m_plus == 0:
            raise InvalidNiveauTwo(
                f"n = {self.n} is divisible by q+1 = {self.params.m_plus}; "
                "the character has niveau 1"
            )


def niveau_two(params: FieldParams, n: "int | Residue") -> NiveauTwoDatum:
    """Construct a datum, reducing n mod ell^(2f) - 1 first."""
    return NiveauTwoDatum(params, int(n) % params.m_big)


def missing_class(B: int, params: FieldParams) -> int:
    """The unique class mod q+1 with no solution for the subset B.

    Equals window_top(B) + 1: the window covers ell^f consecutive integers,
    one short of a full period mod q+1, and the value just above the top is
    the class it misses.
    """
    return window_top(B, params) + 1


def labeled_weight_set(d: NiveauTwoDatum) -> frozenset[LabeledWeight]:
    """All labeled weights (V_{a,b}, B) attached to the datum.

    Per subset B: solve the window congruence v = n mod q+1, decode the
    digit vector, then recover a by exact division of the remaining term
    by q+1 (the remainder is divisible by construction).
    """
    p = d.params
    out = []
    for B in subsets(p.f):
        lw = _solve_for_subset(d, B)
        if lw is not None:
            out.append(lw)
    result = frozenset(out)
    assert len(result) == len(out), "labeled elements must be pairwise distinct"
    return result


def _solve_for_subset(d: NiveauTwoDatum, B: int) -> LabeledWeight | None:
    p = d.params
    anchor = missing_class(B, p)
    if (d.n - anchor) % p.m_plus == 0:
        return None
    low = anchor - p.q
    v = low + (d.n - low) % p.m_plus
    b = signed_digit_solve(v, B, p)
    assert b is not None, "admissible class must decode inside the window"
    s_out = sum(bi * p.ell**i for i, bi in enumerate(b) if not (B >> i & 1))
    # n - (window value + (q+1) * off-B part) = a (q+1) mod q^2 - 1
    remainder = (d.n - v - p.m_plus * s_out) % p.m_big
    assert remainder % p.m_plus == 0, "remaining term must be divisible by q+1"
    a = (remainder // p.m_plus) % max(p.m_minus, 1)
    return LabeledWeight(canonical_weight(a, b, p), B)


def weight_set(d: NiveauTwoDatum) -> frozenset[SerreWeight]:
    """The conjectural weight set: forget the labels."""
    return frozenset(lw.weight for lw in labeled_weight_set(d))


# ---------------------------------------------------------------------------
# closed-form count


@lru_cache(maxsize=None)
def _ambiguous_classes_irred(ell: int, f: int) -> frozenset[int]:
    """Classes mod q+1 that a valid n can share with an excluded class.

    For odd ell these are built from alternating digit sums over auxiliary
    subsets; the construction differs with the parity of f.  The builder
    asserts the distinctness and nonvanishing that the counting argument
    relies on.
    """
    P = ell**f + 1
    A: set[int] = set()
    if f % 2 == 0:
        for k in range(f + 1):
            for Bs in itertools.combinations(range(f), k):
                A.add((-1 + (ell + 1) * sum((-1) ** i * ell**i for i in Bs)) % P)
        assert len(A) == 2**f and 0 not in A
    else:
        for k in range(1, f):
            for Bs in itertools.combinations(range(f), k):
                A.add(((ell + 1) * sum((-1) ** i * ell**i for i in Bs)) % P)
        assert len(A) == 2**f - 2 and 0 not in A
    return frozenset(A)


def labeled_count_formula(d: NiveauTwoDatum) -> int:
    """Size of the labeled weight set without enumerating it."""
    p = d.params
    if p.ell == 2:
        if p.f % 2 == 0:
            return 2**p.f - 1
        # for odd f, 3 divides q+1, so n mod 3 is well defined on the datum
        return 2**p.f - 3 if d.n % 3 == 0 else 2**p.f
    A = _ambiguous_classes_irred(p.ell, p.f)
    return 2**p.f - (1 if d.n % p.m_plus in A else 0)


# ---------------------------------------------------------------------------
# injectivity of the projection to plain weights


def _small_injectivity_bound(ell: int, f: int) -> int:
    # ell (ell^(f-2) - 1) / (ell - 1); negative sentinel for f = 1
    if f < 2:
        return -1
    return ell * (ell ** (f - 2) - 1) // (ell - 1)


def injectivity_witness(d: NiveauTwoDatum) -> tuple[int, int] | None:
    """A pair (r, m) with ell^r n = m mod q+1 and |m| small, if one exists.

    The projection from labeled weights to weights is injective exactly when
    no such pair exists; |m| ranges over 0..ell(ell^(f-2)-1)/(ell-1), which is
    empty for f = 1 and {0} for f = 2 (and m = 0 is unreachable since q+1
    never divides n).
    """
    p = d.params
    bound = _small_injectivity_bound(p.ell, p.f)
    if bound < 0:
        return None
    for r in range(2 * p.f):
        c = (pow(p.ell, r, p.m_plus) * d.n) % p.m_plus
        for m in range(-bound, bound + 1):
            if c == m % p.m_plus:
                return (r, m)
    return None


def projection_is_injective(d: NiveauTwoDatum) -> bool:
    return injectivity_witness(d) is None


# ---------------------------------------------------------------------------
# symmetries


def conjugate_datum(d: NiveauTwoDatum) -> NiveauTwoDatum:
    """Replace the character by its Galois conjugate: n -> q n."""
    return niveau_two(d.params, d.params.q * d.n)


def frobenius_datum(d: NiveauTwoDatum) -> NiveauTwoDatum:
    """Base change along Frobenius: n -> ell n."""
    return niveau_two(d.params, d.params.ell * d.n)


def twist_datum(d: NiveauTwoDatum, c: int) -> NiveauTwoDatum:
    """Twist by an unramified-to-niveau-1 character of exponent c:
    n -> n + c (q+1)."""
    return niveau_two(d.params, d.n + c * d.params.m_plus)


def frobenius_labeled(lw: LabeledWeight) -> LabeledWeight:
    """Image of a labeled weight under n -> ell n.

    The digits shift cyclically up one slot; the wrapped top digit crosses
    ell^(2f) = 1, which flips its side of the subset, so B shifts with the
    wrap bit complemented; a picks up a factor ell.
    """
    p = lw.weight.params
    f = p.f
    b = lw.weight.b
    new_b = (b[-1],) + b[:-1]
    top = lw.B >> (f - 1) & 1
    new_B = ((lw.B << 1) & ((1 << f) - 1)) | (0 if top else 1)
    new_a = (p.ell * lw.weight.a) % max(p.m_minus, 1)
    return LabeledWeight(canonical_weight(new_a, new_b, p), new_B)


def conjugate_labeled(lw: LabeledWeight) -> LabeledWeight:
    """Image of a labeled weight under n -> q n: same weight, complemented label."""
    f = lw.weight.params.f
    return LabeledWeight(lw.weight, subset_complement(lw.B, f))
