import itertools

import pytest

from serreweights.errors import InvalidFactorInput
from serreweights.local_factors import (
    CHAR_INV_DET,
    CHAR_INV_OMEGA_INV_DET,
    Character,
    DirectSumTwo,
    Extension,
    GaloisShape,
    JLReduction,
    LocalFactorInput,
    Zero,
    classification_notes,
    classify_local_factor,
    ext_space_dim,
)


def test_input_validation():
    with pytest.raises(InvalidFactorInput):
        LocalFactorInput(4, 1, GaloisShape.IRREDUCIBLE)  # not prime
    with pytest.raises(InvalidFactorInput):
        LocalFactorInput(5, 0, GaloisShape.IRREDUCIBLE)  # q class out of range
    with pytest.raises(InvalidFactorInput):
        LocalFactorInput(5, 5, GaloisShape.IRREDUCIBLE)
    with pytest.raises(InvalidFactorInput):
        LocalFactorInput(5, 4, GaloisShape.CYC_TWIST_EXT, split=True, ext_nonzero=True)


def _expected(ell, q_mod, shape, split, ext_nonzero):
    """Hand-built truth table, written independently of the implementation."""
    if shape is GaloisShape.IRREDUCIBLE:
        return JLReduction()
    if shape is GaloisShape.OTHER_REDUCIBLE:
        return Zero()
    # cyclotomic-twist extension line: residue of q decides everything,
    # with q = -1 taking precedence over q = +1 where both hold
    if (q_mod + 1) % ell == 0:
        return Extension(
            split=not ext_nonzero, sub=CHAR_INV_DET, quot=CHAR_INV_OMEGA_INV_DET
        )
    if q_mod % ell == 1:
        return DirectSumTwo(CHAR_INV_DET) if split else Character(CHAR_INV_DET)
    return Character(CHAR_INV_DET)


def test_decision_table_exhaustive():
    for ell in (2, 3, 5):
        for q_mod in range(1, ell):
            for shape in GaloisShape:
                for split, ext_nonzero in itertools.product((False, True), repeat=2):
                    if split and ext_nonzero:
                        continue
                    inp = LocalFactorInput(ell, q_mod, shape, split, ext_nonzero)
                    got = classify_local_factor(inp)
                    want = _expected(ell, q_mod, shape, split, ext_nonzero)
                    assert got == want, (ell, q_mod, shape, split, ext_nonzero)


def test_precedence_at_small_ell():
    """q = 1 = -1 mod 2 and q = 2 = -1 mod 3: the extension branch must win."""
    got = classify_local_factor(LocalFactorInput(2, 1, GaloisShape.CYC_TWIST_EXT))
    assert isinstance(got, Extension)
    assert got.split  # ext class zero by default
    got = classify_local_factor(
        LocalFactorInput(3, 2, GaloisShape.CYC_TWIST_EXT, ext_nonzero=True)
    )
    assert isinstance(got, Extension)
    assert not got.split
    assert (got.sub, got.quot) == (CHAR_INV_DET, CHAR_INV_OMEGA_INV_DET)
    # while q = 1 mod 3 with a split class is an honest direct sum
    got = classify_local_factor(
        LocalFactorInput(3, 1, GaloisShape.CYC_TWIST_EXT, split=True)
    )
    assert got == DirectSumTwo(CHAR_INV_DET)


def test_ext_space_dim():
    assert ext_space_dim(2, 1) == 2
    assert ext_space_dim(3, 2) == 1
    assert ext_space_dim(5, 4) == 1
    assert ext_space_dim(13, 12) == 1
    with pytest.raises(InvalidFactorInput):
        ext_space_dim(5, 1)
    with pytest.raises(InvalidFactorInput):
        ext_space_dim(5, 2)


def test_notes():
    notes = classification_notes(LocalFactorInput(2, 1, GaloisShape.CYC_TWIST_EXT))
    assert any("Kummer" in n or "kummer" in n for n in notes)
    notes = classification_notes(
        LocalFactorInput(3, 2, GaloisShape.CYC_TWIST_EXT, ext_nonzero=True)
    )
    assert any("lift" in n for n in notes)
    assert classification_notes(LocalFactorInput(5, 2, GaloisShape.IRREDUCIBLE)) == ()
