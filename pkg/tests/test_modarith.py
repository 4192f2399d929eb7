import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from serreweights.errors import ParamError, ParamMismatch
from serreweights.modarith import (
    FieldParams,
    Residue,
    digits_base_ell,
    frobenius_shift,
    is_prime,
    reduce_mod,
    signed_digit_solve,
    signed_digit_sum,
    subset_complement,
    subset_from_indices,
    subset_indices,
    subsets,
    window_top,
    window_values,
)

SMALL_PARAMS = [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (5, 2), (7, 1)]


def test_is_prime():
    def slow(n):
        return n >= 2 and all(n % k for k in range(2, n))

    for n in range(-2, 300):
        assert is_prime(n) == slow(n), n


def test_field_params_validation():
    for ell in (0, 1, 4, 6, -3, 9):
        with pytest.raises(ParamError):
            FieldParams(ell, 1)
    for f in (0, -1):
        with pytest.raises(ParamError):
            FieldParams(3, f)
    # 3^40 - 1 exceeds the 2^62 cap
    with pytest.raises(ParamError):
        FieldParams(3, 20)
    FieldParams(13, 3)  # fine


def test_moduli_frozen_values():
    p = FieldParams(3, 2)
    assert (p.q, p.m_plus, p.m_minus, p.m_big) == (9, 10, 8, 80)
    assert p.cyclotomic_exponent == 4  # 1 + 3 mod 8
    p = FieldParams(2, 1)
    assert (p.q, p.m_plus, p.m_minus, p.m_big) == (2, 3, 1, 3)
    assert p.cyclotomic_exponent == 0
    p = FieldParams(2, 3)
    assert p.cyclotomic_exponent == 0  # 1+2+4 = 7 = 0 mod 7
    p = FieldParams(5, 1)
    assert p.cyclotomic_exponent == 1


def test_residue_ops():
    r = reduce_mod(-3, 8)
    assert r == Residue(5, 8)
    assert int(r + 4) == 1
    assert int(r - 6) == 7
    assert int(r * 3) == 7
    assert int(-r) == 3
    assert int(2 - r) == 5
    with pytest.raises(ParamMismatch):
        r + Residue(1, 7)
    with pytest.raises(ParamError):
        Residue(0, 0)


def test_frobenius_shift():
    r = reduce_mod(3, 8)
    assert int(frobenius_shift(r, 1, 3)) == 1  # 9 mod 8
    assert frobenius_shift(frobenius_shift(r, 1, 3), -1, 3) == r
    # shifting f times multiplies by q = 1 mod q-1
    p = FieldParams(5, 2)
    r = reduce_mod(7, p.m_minus)
    assert frobenius_shift(r, 2, 5) == r


@pytest.mark.parametrize("ell,f", SMALL_PARAMS)
def test_digits_base_ell_round_trip(ell, f):
    p = FieldParams(ell, f)
    m = max(p.m_minus, 1)
    for a in range(m):
        d = digits_base_ell(a, p)
        assert len(d) == f
        assert all(0 <= x < ell for x in d)
        assert sum(x * ell**i for i, x in enumerate(d)) % m == a


def test_subset_helpers():
    assert list(subsets(2)) == [0, 1, 2, 3]
    assert subset_indices(0b101, 3) == (0, 2)
    assert subset_from_indices((0, 2), 3) == 0b101
    assert subset_complement(0b101, 3) == 0b010
    for f in range(1, 5):
        for B in subsets(f):
            assert subset_from_indices(subset_indices(B, f), f) == B
            assert subset_complement(subset_complement(B, f), f) == B


@pytest.mark.parametrize("ell,f", SMALL_PARAMS)
def test_window_bijection_exhaustive(ell, f):
    """The signed digit sum maps {1..ell}^f bijectively onto a q-window."""
    import itertools

    p = FieldParams(ell, f)
    for B in subsets(f):
        top = window_top(B, p)
        values = {}
        for b in itertools.product(range(1, ell + 1), repeat=f):
            v = signed_digit_sum(b, B, p)
            assert v not in values, (B, b)
            values[v] = b
        assert len(values) == p.q
        assert max(values) == top
        assert min(values) == top - p.q + 1
        for v, b in values.items():
            assert signed_digit_solve(v, B, p) == b
        assert signed_digit_solve(top + 1, B, p) is None
        assert signed_digit_solve(top - p.q, B, p) is None
        assert sorted(window_values(B, p)) == sorted(values)


@settings(max_examples=200, deadline=None)
@given(
    st.sampled_from([(2, 3), (3, 2), (5, 2), (7, 1), (11, 1), (13, 1)]),
    st.integers(min_value=0),
    st.integers(min_value=-400, max_value=400),
)
def test_window_solve_consistency(params, B_seed, v):
    ell, f = params
    p = FieldParams(ell, f)
    B = B_seed % (1 << f)
    top = window_top(B, p)
    b = signed_digit_solve(v, B, p)
    inside = top - p.q + 1 <= v <= top
    assert (b is not None) == inside
    if b is not None:
        assert signed_digit_sum(b, B, p) == v
