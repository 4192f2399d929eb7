"""Serre weights for GL_2 over a finite field of size q = ell^f.

A weight is an irreducible representation over an algebraic closure of F_ell,

    V_{a,b} = tensor over the f embeddings of det^(a_i) (x) Sym^(b_i - 1),

with digits b_i in {1..ell} and a determinant twist recorded as a single
exponent a mod q-1 (the digit vector a_i is just the base-ell expansion of a).
Two parameter choices give the same representation exactly when the b vectors
agree and the a exponents agree mod q-1, so (a mod q-1, b) is a faithful key.
There are exactly (q-1) * q distinct weights.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Mapping

from .errors import BadWeightDigits, ParamMismatch
from .modarith import FieldParams, Residue, digits_base_ell, subset_indices

__all__ = [
    "SerreWeight",
    "LabeledWeight",
    "canonical_weight",
    "twist_weight",
    "central_character_exponent",
    "det_exponent",
    "weight_sort_key",
    "weight_to_dict",
    "weight_from_dict",
    "format_weight_set",
]


@dataclass(frozen=True, order=True)
class SerreWeight:
    """Immutable weight key: params, twist exponent a (canonical mod q-1),
    and digit vector b in {1..ell}^f."""

    params: FieldParams
    a: int
    b: tuple[int, ...]

    def __post_init__(self) -> None:
        m = max(self.params.m_minus, 1)
        if not 0 <= self.a < m:
            raise BadWeightDigits(f"a = {self.a} not canonical mod {m}")
        if len(self.b) != self.params.f:
            raise BadWeightDigits(
                f"b has length {len(self.b)}, expected f = {self.params.f}"
            )
        for bi in self.b:
            if not 1 <= bi <= self.params.ell:
                raise BadWeightDigits(f"digit {bi} outside 1..{self.params.ell}")

    def __str__(self) -> str:
        a_digits = digits_base_ell(self.a, self.params)
        return (
            "V["
            + ",".join(str(d) for d in a_digits)
            + " ; "
            + ",".join(str(d) for d in self.b)
            + "]"
        )


@dataclass(frozen=True, order=True)
class LabeledWeight:
    """A weight together with the subset label produced by a recipe."""

    weight: SerreWeight
    B: int

    def __str__(self) -> str:
        idx = subset_indices(self.B, self.weight.params.f)
        return f"({self.weight}, B={{{','.join(str(i) for i in idx)}}})"


def canonical_weight(a: "int | Residue", b: tuple[int, ...], params: FieldParams) -> SerreWeight:
    """Build a weight, reducing the twist exponent to its canonical residue."""
    if isinstance(a, Residue) and a.modulus != max(params.m_minus, 1):
        raise ParamMismatch(
            f"twist exponent modulus {a.modulus} does not match q-1 = {params.m_minus}"
        )
    return SerreWeight(params, int(a) % max(params.m_minus, 1), tuple(b))


def twist_weight(V: SerreWeight, c: "int | Residue") -> SerreWeight:
    """Twist by det^c: adds c to the twist exponent, b unchanged."""
    if isinstance(c, Residue) and c.modulus != max(V.params.m_minus, 1):
        raise ParamMismatch(
            f"twist exponent modulus {c.modulus} does not match q-1 = {V.params.m_minus}"
        )
    return canonical_weight(V.a + int(c), V.b, V.params)


def _b_exponent(V: SerreWeight) -> int:
    return sum(bi * V.params.ell**i for i, bi in enumerate(V.b))


def central_character_exponent(V: SerreWeight) -> int:
    """Exponent of the central character: sum (2 a_i + b_i - 1) ell^i mod q-1."""
    m = max(V.params.m_minus, 1)
    return (2 * V.a + _b_exponent(V) - V.params.cyclotomic_exponent) % m


def det_exponent(V: SerreWeight) -> int:
    """Exponent sum (2 a_i + b_i) ell^i mod q-1; the recipes match it with the
    determinant of the input datum."""
    m = max(V.params.m_minus, 1)
    return (2 * V.a + _b_exponent(V)) % m


def weight_sort_key(V: SerreWeight) -> tuple[tuple[int, ...], int]:
    """Canonical output order: lexicographic on (b, a)."""
    return (V.b, V.a)


def weight_to_dict(V: SerreWeight) -> dict[str, Any]:
    return {"ell": V.params.ell, "f": V.params.f, "a": V.a, "b": list(V.b)}


def weight_from_dict(d: Mapping[str, Any]) -> SerreWeight:
    params = FieldParams(d["ell"], d["f"])
    return canonical_weight(d["a"], tuple(d["b"]), params)


def format_weight_set(weights) -> str:
    """Brace-delimited weight list in canonical order."""
    ordered = sorted(weights, key=weight_sort_key)
    return "{" + ", ".join(str(V) for V in ordered) + "}"
