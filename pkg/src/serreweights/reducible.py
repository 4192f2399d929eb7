"""Weight recipe for reducible local data (pairs of niveau 1 characters).

The datum is an ordered pair of characters with inertia exponents n1, n2 mod
q-1, together with what is known about the extension class: split, or
non-split with unknown class.  A triple (a, b, B) belongs to the labeled
weight set exactly when

    n1 = a + sum_{i in B} b_i ell^i        (mod q - 1)
    n2 = a + sum_{i not in B} b_i ell^i    (mod q - 1).

Subtracting, the difference n = n1 - n2 must equal the signed digit window
value for B mod q-1; the window has q = (q-1) + 1 consecutive integers, so
every class has one solution and the class of the window top has two.  Then
a = n1 - (B-part) is forced.

For a non-split datum the weight set depends on where the extension class
lands inside H^1; each labeled weight carves out a subspace L whose dimension
is |J| with small corrections (J is the embedding subset matching B).  The
dimension report records the correction and whether it is decided by the
datum alone; the one open situation is a trivial character ratio with J
proper and b not identically ell, where the answer depends on whether the
unramified line sits inside the peu-ramifiee subspace L'.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from .errors import NotInLabeledSet, ParamError, WrongExtClass
from .modarith import (
    FieldParams,
    Residue,
    signed_digit_solve,
    signed_digit_sum,
    subset_complement,
    subsets,
    window_top,
)
from .weights import LabeledWeight, SerreWeight, canonical_weight

__all__ = [
    "ExtClass",
    "ReducibleDatum",
    "niveau_one",
    "doubled_class",
    "labeled_weight_set",
    "labeled_count_formula",
    "injectivity_witness",
    "projection_is_injective",
    "h1_dim",
    "DimReport",
    "dim_report",
    "weight_set_split",
    "weight_sets_partial",
    "is_generic",
    "swap_datum",
    "frobenius_datum",
    "twist_datum",
    "frobenius_labeled",
    "swap_labeled",
]


class ExtClass(Enum):
    SPLIT = "split"
    NONSPLIT_UNKNOWN = "unknown"


@dataclass(frozen=True)
class ReducibleDatum:
    """Ordered pair of niveau 1 inertia exponents plus extension knowledge."""

    params: FieldParams
    n1: int
    n2: int
    ext: ExtClass

    def __post_init__(self) -> None:
        m = max(self.params.m_minus, 1)
        if not (0 <= self.n1 < m and 0 <= self.n2 < m):
            raise ParamError(f"exponents ({self.n1}, {self.n2}) not canonical mod {m}")

    @property
    def n(self) -> int:
        """Inertia exponent of the character ratio."""
        return (self.n1 - self.n2) % max(self.params.m_minus, 1)


def niveau_one(
    params: FieldParams, n1: "int | Residue", n2: "int | Residue", ext: ExtClass
) -> ReducibleDatum:
    m = max(params.m_minus, 1)
    return ReducibleDatum(params, int(n1) % m, int(n2) % m, ext)


def doubled_class(B: int, params: FieldParams) -> int:
    """Window top for B: the one class mod q-1 with two window solutions."""
    return window_top(B, params)


def labeled_weight_set(d: ReducibleDatum) -> frozenset[LabeledWeight]:
    """All labeled weights of the datum; every subset B contributes one
    weight, or two when n lands on the doubled class of B."""
    p = d.params
    m = max(p.m_minus, 1)
    out = []
    for B in subsets(p.f):
        top = doubled_class(B, p)
        low = top + 1 - p.q
        v = low + (d.n - low) % m
        vs = [v]
        if (d.n - low) % m == 0:
            vs.append(v + m)  # the window holds a full period plus one value
        for vv in vs:
            b = signed_digit_solve(vv, B, p)
            assert b is not None, "window solution must decode"
            s_in = sum(bi * p.ell**i for i, bi in enumerate(b) if B >> i & 1)
            a = (d.n1 - s_in) % m
            out.append(LabeledWeight(canonical_weight(a, b, p), B))
    result = frozenset(out)
    assert len(result) == len(out), "labeled elements must be pairwise distinct"
    return result


# ---------------------------------------------------------------------------
# closed-form count


@lru_cache(maxsize=None)
def _ambiguous_classes_red(ell: int, f: int) -> frozenset[int]:
    """Classes mod q-1 hit by exactly one window top, for odd ell.

    Built from alternating digit sums as in the irreducible case, but with
    the parity roles swapped, and with extra exclusions for ell = 3 where two
    subsets share the class (q-1)/2.
    """
    D = ell**f - 1
    A: set[int] = set()
    if ell == 3:
        if f % 2 == 1:
            excluded = {tuple(range(0, f, 2)), tuple(range(1, f - 1, 2))}
            for k in range(f + 1):
                for Bs in itertools.combinations(range(f), k):
                    if Bs in excluded:
                        continue
                    A.add((-1 + 4 * sum((-1) ** i * 3**i for i in Bs)) % D)
            assert len(A) == 2**f - 2
        else:
            excluded = {tuple(range(0, f, 2)), tuple(range(1, f, 2))}
            for k in range(1, f):
                for Bs in itertools.combinations(range(f), k):
                    if Bs in excluded:
                        continue
                    A.add((4 * sum((-1) ** i * 3**i for i in Bs)) % D)
            assert len(A) == 2**f - 4
        half = D // 2
        for c in A:
            assert c % half != 0, "classes must avoid 0 and (q-1)/2"
        return frozenset(A)
    if f % 2 == 1:
        for k in range(f + 1):
            for Bs in itertools.combinations(range(f), k):
                A.add((-1 + (ell + 1) * sum((-1) ** i * ell**i for i in Bs)) % D)
        assert len(A) == 2**f and 0 not in A
    else:
        for k in range(1, f):
            for Bs in itertools.combinations(range(f), k):
                A.add(((ell + 1) * sum((-1) ** i * ell**i for i in Bs)) % D)
        assert len(A) == 2**f - 2 and 0 not in A
    return frozenset(A)


def labeled_count_formula(d: ReducibleDatum) -> int:
    """Size of the labeled weight set: 2^f plus the number of subsets whose
    doubled class the ratio exponent hits."""
    p = d.params
    f = p.f
    n = d.n
    if p.ell == 2:
        if f % 2 == 0:
            if n == 0:
                return 2**f + 4
            return 2**f + 3 if n % 3 == 0 else 2**f
        return 2**f + 2 if n == 0 else 2**f + 1
    if p.ell == 3:
        half = p.m_minus // 2
        if (n == 0 and f % 2 == 0) or n == half:
            return 2**f + 2
        return 2**f + 1 if n in _ambiguous_classes_red(3, f) else 2**f
    if n == 0 and f % 2 == 0:
        return 2**f + 2
    return 2**f + 1 if n in _ambiguous_classes_red(p.ell, f) else 2**f


# ---------------------------------------------------------------------------
# injectivity of the projection to plain weights


def injectivity_witness(d: ReducibleDatum) -> tuple[int, int] | None:
    """A pair (r, m) with ell^r n = m mod q-1 and |m| small, if one exists.

    m = 0 is always allowed, so a trivial character ratio (n = 0) always
    fails injectivity; the witness there is (0, 0).
    """
    p = d.params
    m_cap = max(0, p.ell * (p.ell ** (p.f - 2) - 1) // (p.ell - 1)) if p.f >= 2 else 0
    D = max(p.m_minus, 1)
    for r in range(p.f):
        c = (pow(p.ell, r, D) * d.n) % D
        for m in range(-m_cap, m_cap + 1):
            if c == m % D:
                return (r, m)
    return None


def projection_is_injective(d: ReducibleDatum) -> bool:
    return injectivity_witness(d) is None


# ---------------------------------------------------------------------------
# cohomology bookkeeping for the non-split case


def h1_dim(d: ReducibleDatum) -> int:
    """Dimension of H^1 for the ratio character: f plus one for a trivial
    ratio plus one for a cyclotomic ratio.  For ell = 2 the cyclotomic
    exponent vanishes mod q-1, so both corrections apply at n = 0."""
    p = d.params
    n = d.n
    dim = p.f
    if n == 0:
        dim += 1
    if n == p.cyclotomic_exponent:
        dim += 1
    return dim


@dataclass(frozen=True)
class DimReport:
    """Dimension of the subspace L attached to a labeled weight.

    dim L = j_size + delta when decidable.  When not decidable the true delta
    is 1 or 2 (the stored delta is the guaranteed lower value) and the answer
    depends on whether the unramified line lies in the peu-ramifiee subspace.
    """

    j_size: int
    delta: int
    decidable: bool

    @property
    def dim(self) -> int:
        if not self.decidable:
            raise ValueError("dimension undecided for this labeled weight")
        return self.j_size + self.delta

    @property
    def dim_bounds(self) -> tuple[int, int]:
        if self.decidable:
            return (self.j_size + self.delta, self.j_size + self.delta)
        return (self.j_size + 1, self.j_size + 2)


def _membership_check(lw: LabeledWeight, d: ReducibleDatum) -> None:
    p = d.params
    m = max(p.m_minus, 1)
    b, B, a = lw.weight.b, lw.B, lw.weight.a
    s_in = sum(bi * p.ell**i for i, bi in enumerate(b) if B >> i & 1)
    s_out = sum(bi * p.ell**i for i, bi in enumerate(b) if not (B >> i & 1))
    if (a + s_in - d.n1) % m != 0 or (a + s_out - d.n2) % m != 0:
        raise NotInLabeledSet(f"{lw} is not a labeled weight of {d}")


def dim_report(lw: LabeledWeight, d: ReducibleDatum) -> DimReport:
    """Dimension report for the subspace attached to one labeled weight.

    Generic answer |J|.  Corrections: a cyclotomic ratio with b = (ell..ell)
    and J full gets +1 (the subspace is everything); a trivial ratio gets +1,
    upgraded to +2 when b = (ell..ell) (forcing ell = 2) or when J is proper
    and the unramified line escapes the peu-ramifiee subspace, which is the
    one case the datum does not decide.
    """
    _membership_check(lw, d)
    p = d.params
    j_size = bin(lw.B).count("1")
    full = lw.B == (1 << p.f) - 1
    all_ell = all(bi == p.ell for bi in lw.weight.b)
    n = d.n
    trivial = n == 0
    cyclotomic = n == p.cyclotomic_exponent

    if trivial:
        # ell = 2 included here (trivial and cyclotomic coincide mod q-1)
        if all_ell:
            return DimReport(j_size, 2, True)
        if full:
            # b must be (ell-1 .. ell-1); the unramified line is inside L'
            return DimReport(j_size, 1, True)
        return DimReport(j_size, 1, False)
    if cyclotomic and all_ell and full and p.ell > 2:
        return DimReport(j_size, 1, True)
    return DimReport(j_size, 0, True)


# ---------------------------------------------------------------------------
# weight sets


def weight_set_split(d: ReducibleDatum) -> frozenset[SerreWeight]:
    """Weight set for a split datum: every labeled weight contributes."""
    if d.ext is not ExtClass.SPLIT:
        raise WrongExtClass("weight_set_split requires a split datum")
    return frozenset(lw.weight for lw in labeled_weight_set(d))


def weight_sets_partial(
    d: ReducibleDatum,
) -> tuple[frozenset[SerreWeight], frozenset[SerreWeight]]:
    """(certain, possible) for a non-split datum with unknown class.

    A weight is certain when some labeled representative has a decided
    subspace equal to all of H^1, so it contains every extension class.
    Everything else in the projection stays possible.  The certain set is
    never empty: the full-label representative always has a full subspace.
    """
    if d.ext is not ExtClass.NONSPLIT_UNKNOWN:
        raise WrongExtClass("weight_sets_partial requires a non-split datum")
    h1 = h1_dim(d)
    labeled = labeled_weight_set(d)
    certain = set()
    for lw in labeled:
        rep = dim_report(lw, d)
        if rep.decidable and rep.dim == h1:
            certain.add(lw.weight)
    possible = {lw.weight for lw in labeled} - certain
    assert certain, "the full-label weight always contributes"
    return frozenset(certain), frozenset(possible)


def is_generic(d: ReducibleDatum) -> bool:
    """Whether the ratio exponent is generic: hit by some digit vector with
    every digit in {1..ell-2}, other than the two constant vectors (1..1)
    and (ell-2..ell-2).  Vacuously false for ell <= 3."""
    p = d.params
    m = max(p.m_minus, 1)
    lo, hi = 1, p.ell - 2
    if hi < lo:
        return False
    banned = {(lo,) * p.f, (hi,) * p.f}
    for b in itertools.product(range(lo, hi + 1), repeat=p.f):
        if b in banned:
            continue
        if sum(bi * p.ell**i for i, bi in enumerate(b)) % m == d.n:
            return True
    return False


# ---------------------------------------------------------------------------
# symmetries


def swap_datum(d: ReducibleDatum) -> ReducibleDatum:
    """Interchange the two characters."""
    return ReducibleDatum(d.params, d.n2, d.n1, d.ext)


def frobenius_datum(d: ReducibleDatum) -> ReducibleDatum:
    """Base change along Frobenius: both exponents multiply by ell."""
    m = max(d.params.m_minus, 1)
    return ReducibleDatum(d.params, (d.params.ell * d.n1) % m, (d.params.ell * d.n2) % m, d.ext)


def twist_datum(d: ReducibleDatum, c: int) -> ReducibleDatum:
    """Twist by a niveau 1 character of exponent c: both exponents shift by c."""
    m = max(d.params.m_minus, 1)
    return ReducibleDatum(d.params, (d.n1 + c) % m, (d.n2 + c) % m, d.ext)


def frobenius_labeled(lw: LabeledWeight) -> LabeledWeight:
    """Image of a labeled weight under Frobenius base change: digits and the
    subset shift cyclically (no wrap complement here: ell^f = 1 mod q-1),
    and a picks up a factor ell."""
    p = lw.weight.params
    f = p.f
    b = lw.weight.b
    new_b = (b[-1],) + b[:-1]
    new_B = ((lw.B << 1) & ((1 << f) - 1)) | (lw.B >> (f - 1) & 1)
    new_a = (p.ell * lw.weight.a) % max(p.m_minus, 1)
    return LabeledWeight(canonical_weight(new_a, new_b, p), new_B)


def swap_labeled(lw: LabeledWeight) -> LabeledWeight:
    """Image under interchanging the characters: same weight, complemented label."""
    f = lw.weight.params.f
    return LabeledWeight(lw.weight, subset_complement(lw.B, f))
