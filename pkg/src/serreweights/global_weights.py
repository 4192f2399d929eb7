"""Assembly of per-prime weight sets into global weight tuples.

A global datum is a finite family of local data, all at the same ell but with
their own inertial degrees.  The conjectural global set is the Cartesian
product of the local sets, so its size is the product of the local sizes.
When some reducible entry has an unknown extension class the result splits
into a certain part (product of the certain local sets) and a possible part
(everything else in the product of the upper local sets).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence, Union

from .errors import ParamError, ParamMismatch
from .weights import SerreWeight, det_exponent, weight_sort_key

from . import irreducible as irred
from . import reducible as red

__all__ = [
    "LocalDatum",
    "GlobalDatum",
    "GlobalWeightSets",
    "global_weight_set",
    "twist_global",
    "DetReport",
    "check_det_compatibility",
    "global_sort_key",
]

LocalDatum = Union[irred.NiveauTwoDatum, red.ReducibleDatum]

GlobalWeight = tuple[SerreWeight, ...]


@dataclass(frozen=True)
class GlobalDatum:
    ell: int
    primes: tuple[LocalDatum, ...]

    def __post_init__(self) -> None:
        if not self.primes:
            raise ParamError("global datum needs at least one prime")
        for d in self.primes:
            if d.params.ell != self.ell:
                raise ParamMismatch(
                    f"local datum at ell = {d.params.ell} inside a global datum at ell = {self.ell}"
                )


@dataclass(frozen=True)
class GlobalWeightSets:
    """certain x possible split of the global product; possible is empty when
    every local entry is decided."""

    certain: frozenset[GlobalWeight]
    possible: frozenset[GlobalWeight]


def _local_sets(d: LocalDatum) -> tuple[frozenset[SerreWeight], frozenset[SerreWeight]]:
    """(certain, upper) for one local entry."""
    if isinstance(d, irred.NiveauTwoDatum):
        ws = irred.weight_set(d)
        return ws, ws
    if d.ext is red.ExtClass.SPLIT:
        ws = red.weight_set_split(d)
        return ws, ws
    certain, possible = red.weight_sets_partial(d)
    return certain, certain | possible


def global_weight_set(g: GlobalDatum) -> GlobalWeightSets:
    locals_ = [_local_sets(d) for d in g.primes]
    certain = frozenset(
        itertools.product(*(sorted(c, key=weight_sort_key) for c, _ in locals_))
    )
    upper = frozenset(
        itertools.product(*(sorted(u, key=weight_sort_key) for _, u in locals_))
    )
    return GlobalWeightSets(certain=certain, possible=upper - certain)


def twist_global(g: GlobalDatum, cs: Sequence[int]) -> GlobalDatum:
    """Twist every local entry by a niveau 1 exponent, one per prime.

    Irreducible entries shift by c (q+1) mod q^2-1; reducible entries shift
    both exponents by c mod q-1.
    """
    if len(cs) != len(g.primes):
        raise ParamMismatch(
            f"got {len(cs)} twist exponents for {len(g.primes)} primes"
        )
    new = []
    for d, c in zip(g.primes, cs):
        if isinstance(d, irred.NiveauTwoDatum):
            new.append(irred.twist_datum(d, c))
        else:
            new.append(red.twist_datum(d, c))
    return GlobalDatum(g.ell, tuple(new))


@dataclass(frozen=True)
class DetReport:
    passed: bool
    failures: tuple[dict, ...]


def _expected_det(d: LocalDatum) -> int:
    m = max(d.params.m_minus, 1)
    if isinstance(d, irred.NiveauTwoDatum):
        return d.n % m
    return (d.n1 + d.n2) % m


def check_det_compatibility(g: GlobalDatum) -> DetReport:
    """Every weight in every local set must have det exponent matching the
    determinant of its local datum."""
    failures = []
    for slot, d in enumerate(g.primes):
        expected = _expected_det(d)
        _, upper = _local_sets(d)
        for V in sorted(upper, key=weight_sort_key):
            got = det_exponent(V)
            if got != expected:
                failures.append(
                    {"prime_index": slot, "weight": str(V), "expected": expected, "got": got}
                )
    return DetReport(passed=not failures, failures=tuple(failures))


def global_sort_key(gw: GlobalWeight):
    return tuple(weight_sort_key(V) for V in gw)
