"""Exact modular arithmetic for the weight recipes.

Everything here is plain integer arithmetic with the three moduli attached to
an unramified extension of degree f of Q_ell with residue field of size
q = ell^f:

    m_minus = q - 1     (exponents of niveau 1 characters, weight twists)
    m_plus  = q + 1     (the quotient modulus in the niveau 2 recipe)
    m_big   = q^2 - 1   (exponents of niveau 2 characters)

The signed digit window is the combinatorial heart of both recipes.  Fix a
subset B of S = {0, .., f-1} and let each digit b_i range over {1, .., ell}.
The map

    b  |->  sum_{i in B} b_i ell^i  -  sum_{i not in B} b_i ell^i

is a bijection from {1..ell}^f onto a run of ell^f consecutive integers whose
top value is window_top(B) = sum_{i in B} ell^(i+1) - sum_{i not in B} ell^i.
`signed_digit_solve` inverts the map digit by digit.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterator, Sequence

from .errors import ParamError, ParamMismatch

__all__ = [
    "FieldParams",
    "Residue",
    "reduce_mod",
    "frobenius_shift",
    "digits_base_ell",
    "signed_digit_sum",
    "signed_digit_solve",
    "window_top",
    "subsets",
    "subset_indices",
    "subset_from_indices",
    "subset_complement",
    "is_prime",
]

# Hard cap on m_big; keeps every datum at desk scale by construction.
_MODULUS_CAP = 2**62


def is_prime(n: int) -> bool:
    """Deterministic trial division, adequate for desk-scale primes."""
    if n < 2:
        return False
    for p in (2, 3):
        if n % p == 0:
            return n == p
    d = 5
    while d * d <= n:
        if n % d == 0 or n % (d + 2) == 0:
            return False
        d += 6
    return True


@dataclass(frozen=True)
class FieldParams:
    """Residue field parameters: prime ell and inertial degree f."""

    ell: int
    f: int

    def __post_init__(self) -> None:
        if not isinstance(self.ell, int) or not isinstance(self.f, int):
            raise ParamError(f"ell and f must be integers, got {self.ell!r}, {self.f!r}")
        if not is_prime(self.ell):
            raise ParamError(f"ell = {self.ell} is not prime")
        if self.f < 1:
            raise ParamError(f"f = {self.f} must be at least 1")
        if self.ell ** (2 * self.f) - 1 >= _MODULUS_CAP:
            raise ParamError(
                f"ell^(2f) - 1 = {self.ell ** (2 * self.f) - 1} exceeds the 2^62 cap"
            )

    @cached_property
    def q(self) -> int:
        return self.ell**self.f

    @cached_property
    def m_plus(self) -> int:
        return self.q + 1

    @cached_property
    def m_minus(self) -> int:
        # Degenerate but legal: ell=2, f=1 gives modulus 1.
        return self.q - 1

    @cached_property
    def m_big(self) -> int:
        return self.q * self.q - 1

    @cached_property
    def cyclotomic_exponent(self) -> int:
        """Exponent of the mod-ell cyclotomic character: sum of ell^i, i < f."""
        return sum(self.ell**i for i in range(self.f)) % max(self.m_minus, 1)

    def __repr__(self) -> str:  # noqa: D105
        return f"FieldParams(ell={self.ell}, f={self.f})"


@dataclass(frozen=True)
class Residue:
    """An integer known modulo a fixed positive modulus, stored canonically."""

    value: int
    modulus: int

    def __post_init__(self) -> None:
        if self.modulus < 1:
            raise ParamError(f"modulus must be positive, got {self.modulus}")
        object.__setattr__(self, "value", self.value % self.modulus)

    def _coerce(self, other: "Residue | int") -> int:
        if isinstance(other, Residue):
            if other.modulus != self.modulus:
                raise ParamMismatch(
                    f"modulus mismatch: {self.modulus} vs {other.modulus}"
                )
            return other.value
        return other

    def __add__(self, other: "Residue | int") -> "Residue":
        return Residue(self.value + self._coerce(other), self.modulus)

    __radd__ = __add__

    def __sub__(self, other: "Residue | int") -> "Residue":
        return Residue(self.value - self._coerce(other), self.modulus)

    def __rsub__(self, other: int) -> "Residue":
        return Residue(other - self.value, self.modulus)

    def __mul__(self, other: "Residue | int") -> "Residue":
        return Residue(self.value * self._coerce(other), self.modulus)

    __rmul__ = __mul__

    def __neg__(self) -> "Residue":
        return Residue(-self.value, self.modulus)

    def __int__(self) -> int:
        return self.value

    __index__ = __int__

    def __repr__(self) -> str:  # noqa: D105
        return f"Residue({self.value} mod {self.modulus})"


def reduce_mod(x: int, modulus: int) -> Residue:
    """Canonical residue of x modulo a positive modulus."""
    return Residue(x, modulus)


def frobenius_shift(r: Residue, k: int, ell: int) -> Residue:
    """Multiply by ell^k (k may be negative; ell is invertible mod q +- 1)."""
    if r.modulus == 1:
        return r
    return Residue(r.value * pow(ell, k, r.modulus), r.modulus)


def digits_base_ell(a: "Residue | int", params: FieldParams) -> tuple[int, ...]:
    """Base-ell digits (d_0, .., d_{f-1}) of the canonical residue of a mod q-1.

    The canonical representative lies in [0, q-1), so the digit vector is never
    all ell-1 (that value equals q-1 itself).
    """
    v = int(a) % max(params.m_minus, 1)
    out = []
    for _ in range(params.f):
        out.append(v % params.ell)
        v //= params.ell
    return tuple(out)


# ---------------------------------------------------------------------------
# subsets of S = {0..f-1} as bitmasks


def subsets(f: int) -> range:
    """All subsets of {0..f-1} as bitmasks 0 .. 2^f - 1."""
    return range(1 << f)


def subset_indices(B: int, f: int) -> tuple[int, ...]:
    """Sorted member indices of the bitmask B."""
    if not 0 <= B < (1 << f):
        raise ParamError(f"subset mask {B} out of range for f={f}")
    return tuple(i for i in range(f) if B >> i & 1)


def subset_from_indices(indices: Sequence[int], f: int) -> int:
    """Bitmask from an index collection, validating the range."""
    B = 0
    for i in indices:
        if not 0 <= i < f:
            raise ParamError(f"index {i} out of range for f={f}")
        B |= 1 << i
    return B


def subset_complement(B: int, f: int) -> int:
    return B ^ ((1 << f) - 1)


# ---------------------------------------------------------------------------
# the signed digit window


def signed_digit_sum(b: Sequence[int], B: int, params: FieldParams) -> int:
    """Forward window map: sum_{i in B} b_i ell^i - sum_{i not in B} b_i ell^i."""
    ell, f = params.ell, params.f
    if len(b) != f:
        raise ParamError(f"digit vector has length {len(b)}, expected {f}")
    total = 0
    for i, bi in enumerate(b):
        total += bi * ell**i if B >> i & 1 else -bi * ell**i
    return total


@lru_cache(maxsize=None)
def _window_top(B: int, ell: int, f: int) -> int:
    top = 0
    for i in range(f):
        top += ell ** (i + 1) if B >> i & 1 else -(ell**i)
    return top


def window_top(B: int, params: FieldParams) -> int:
    """Largest value of the window map for B; the window is the ell^f
    consecutive integers [window_top - ell^f + 1, window_top]."""
    if not 0 <= B < (1 << params.f):
        raise ParamError(f"subset mask {B} out of range for f={params.f}")
    return _window_top(B, params.ell, params.f)


def signed_digit_solve(v: int, B: int, params: FieldParams) -> tuple[int, ...] | None:
    """Invert the window map at v, or None when v is outside the window.

    Greedy digit-by-digit: the residue of v mod ell forces b_0 in {1..ell}
    with the sign dictated by membership of 0 in B; subtract and divide.
    Exactly the values in the window decode to zero remainder.
    """
    ell, f = params.ell, params.f
    if not 0 <= B < (1 << f):
        raise ParamError(f"subset mask {B} out of range for f={f}")
    t = v
    digits = []
    for i in range(f):
        if B >> i & 1:
            d = (t - 1) % ell + 1
            t = (t - d) // ell
        else:
            d = (-t - 1) % ell + 1
            t = (t + d) // ell
        digits.append(d)
    if t != 0:
        return None
    return tuple(digits)


def window_values(B: int, params: FieldParams) -> Iterator[int]:
    """All window values for B (test helper; ell^f items)."""
    import itertools

    for b in itertools.product(range(1, params.ell + 1), repeat=params.f):
        yield signed_digit_sum(b, B, params)
