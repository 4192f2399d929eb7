"""Exhaustive verification sweeps over whole residue rings.

Each sweep kind re-derives a proposition two independent ways and compares
them at every datum in range:

  counts-irred        enumerated labeled-set size vs the closed-form count
  counts-red          same, over the ratio line and over the full (n1, n2) grid
  injectivity-irred   enumerated |weights| < |labeled| vs the witness criterion
  injectivity-red     same, including the always-failing trivial-ratio case
  det-law             every enumerated triple satisfies the determinant law
  symmetry            conjugation, swap, Frobenius shift, and twist naturality
  nonempty            weight sets are never empty (certain part included)
  generic-split       generic split data have exactly 2^f weights
  qtable-crosscheck   the f = 1 tables vs the general recipes

The enumeration side runs on a vectorized engine that performs the same
greedy window decode as the scalar recipe functions, chunk by chunk; the
test suite pins the two implementations against each other exhaustively on
small parameters and by sampling on large ones.

Budget: a sweep over (ell, f) is charged ell^(2f), the number of residue
classes enumerated (each costing up to 2^f window solves, all vectorized),
and `verify_sweep` refuses to start when the planned total exceeds the
budget.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Callable, Iterable, Sequence

import numpy as np

from .errors import BudgetExceeded, ParamError
from .modarith import FieldParams, subset_complement
from .weights import LabeledWeight, canonical_weight

from . import irreducible as irred
from . import qtable
from . import reducible as red

__all__ = [
    "VerificationReport",
    "ALL_KINDS",
    "plan_tasks",
    "estimate_cost",
    "verify_sweep",
    "irred_labeled_via_engine",
    "red_labeled_via_engine",
]

_CHUNK = 1 << 18
_MAX_WITNESSES = 25
# int64 headroom for the vectorized paths; the budget keeps real runs far below
_ENGINE_CAP = 2**40


# ---------------------------------------------------------------------------
# planning


def plan_tasks(
    ells: Sequence[int], f_max: int, space_cap: int | None = None
) -> list[tuple[int, int]]:
    """(ell, f) pairs in deterministic order, optionally capped by ell^(2f)."""
    tasks = []
    for ell in sorted(set(ells)):
        for f in range(1, f_max + 1):
            FieldParams(ell, f)  # validates
            if space_cap is not None and ell ** (2 * f) > space_cap:
                continue
            tasks.append((ell, f))
    return tasks


def estimate_cost(tasks: Iterable[tuple[int, int]]) -> int:
    return sum(ell ** (2 * f) for ell, f in tasks)


# ---------------------------------------------------------------------------
# vectorized window decode


def _decode(v: np.ndarray, B: int, ell: int, f: int):
    """Greedy signed-digit decode of every entry of v at once.

    Returns (bcode, s_in, s_out, ok): bcode encodes the digits as
    sum (b_i - 1) ell^i, s_in / s_out are the B / complement digit sums,
    and ok marks entries that decode exactly (i.e. lie in the window).
    """
    t = v.astype(np.int64, copy=True)
    bcode = np.zeros_like(t)
    s_in = np.zeros_like(t)
    s_out = np.zeros_like(t)
    pw = 1
    for i in range(f):
        if B >> i & 1:
            d = (t - 1) % ell + 1
            t -= d
            t //= ell
            s_in += d * pw
        else:
            d = (-t - 1) % ell + 1
            t += d
            t //= ell
            s_out += d * pw
        bcode += (d - 1) * pw
        pw *= ell
    return bcode, s_in, s_out, t == 0


def _check_params(p: FieldParams) -> None:
    if p.m_big >= _ENGINE_CAP:
        raise ParamError(f"vectorized engine capped at m_big < 2^40, got {p.m_big}")


# ---------------------------------------------------------------------------
# irreducible engine


def _irred_kernel(p: FieldParams, N: np.ndarray):
    """Per-subset solve for every n in N (all assumed valid).

    Returns (admis, a_mat, bcode_mat), each of shape (len(N), 2^f).
    """
    f, ell, q = p.f, p.ell, p.q
    P, M = p.m_plus, p.m_big
    D = max(p.m_minus, 1)
    nB = 1 << f
    admis = np.empty((len(N), nB), dtype=bool)
    a_mat = np.zeros((len(N), nB), dtype=np.int64)
    bcode_mat = np.zeros((len(N), nB), dtype=np.int64)
    for B in range(nB):
        anchor = irred.missing_class(B, p)
        low = anchor - q
        ok_B = (N - anchor) % P != 0
        v = low + (N - low) % P
        bcode, s_in, s_out, ok = _decode(v, B, ell, f)
        if not bool(np.all(ok[ok_B])):
            raise AssertionError("admissible class failed to decode in window")
        rem = (N - v - P * s_out) % M
        if bool(np.any(rem[ok_B] % P)):
            raise AssertionError("remaining term not divisible by q+1")
        a_mat[:, B] = (rem // P) % D
        bcode_mat[:, B] = bcode
        admis[:, B] = ok_B
    return admis, a_mat, bcode_mat


def _distinct_counts(keys: np.ndarray, valid: np.ndarray) -> np.ndarray:
    """Number of distinct key values per row, counting only valid entries.

    Invalid entries are replaced by unique negative sentinels so they add a
    known number of distinct values, then subtracted off.
    """
    ncols = keys.shape[1]
    sentinels = -np.arange(1, ncols + 1, dtype=np.int64)
    masked = np.where(valid, keys, sentinels[np.newaxis, :])
    s = np.sort(masked, axis=1)
    distinct_total = (np.diff(s, axis=1) > 0).sum(axis=1) + 1
    return distinct_total - (ncols - valid.sum(axis=1))


@dataclass
class _IrredScan:
    labeled: np.ndarray  # int16, labeled-set size per n (0 at invalid n)
    distinct: np.ndarray  # int16, weight-set size per n
    det_bad: list  # ns with a determinant-law violation
    checked: int


def _valid_irred_chunks(p: FieldParams):
    for start in range(0, p.m_big, _CHUNK):
        N = np.arange(start, min(start + _CHUNK, p.m_big), dtype=np.int64)
        N = N[N % p.m_plus != 0]
        if len(N):
            yield N


@lru_cache(maxsize=None)
def _irred_scan(ell: int, f: int) -> _IrredScan:
    p = FieldParams(ell, f)
    _check_params(p)
    D = max(p.m_minus, 1)
    cyc_sum = (p.q - 1) // (ell - 1)  # sum of ell^i as an integer
    labeled = np.zeros(p.m_big, dtype=np.int16)
    distinct = np.zeros(p.m_big, dtype=np.int16)
    det_bad: list[int] = []
    checked = 0
    for N in _valid_irred_chunks(p):
        admis, a_mat, bcode_mat = _irred_kernel(p, N)
        labeled[N] = admis.sum(axis=1).astype(np.int16)
        keys = a_mat + D * bcode_mat
        distinct[N] = _distinct_counts(keys, admis).astype(np.int16)
        det_res = (2 * a_mat + bcode_mat + cyc_sum - N[:, np.newaxis]) % D
        bad = (det_res != 0) & admis
        if bad.any():
            det_bad.extend(int(x) for x in N[bad.any(axis=1)])
        checked += len(N)
    return _IrredScan(labeled, distinct, det_bad, checked)


@lru_cache(maxsize=None)
def _closed_irred_lut(ell: int, f: int) -> np.ndarray:
    """Closed-form labeled count as a function of n mod q+1 (index 0 unused)."""
    p = FieldParams(ell, f)
    P = p.m_plus
    lut = np.zeros(P, dtype=np.int16)
    if ell == 2:
        if f % 2 == 0:
            lut[:] = 2**f - 1
        else:
            for r in range(P):
                lut[r] = 2**f - 3 if r % 3 == 0 else 2**f
    else:
        A = irred._ambiguous_classes_irred(ell, f)
        for r in range(P):
            lut[r] = 2**f - (1 if r in A else 0)
    return lut


@lru_cache(maxsize=None)
def _inj_irred_lut(ell: int, f: int) -> np.ndarray:
    """Witness-criterion verdict as a function of n mod q+1."""
    p = FieldParams(ell, f)
    P = p.m_plus
    flag = np.zeros(P, dtype=bool)
    bound = -1 if f < 2 else ell * (ell ** (f - 2) - 1) // (ell - 1)
    if bound >= 0:
        small = {m % P for m in range(-bound, bound + 1)}
        classes = np.arange(P, dtype=np.int64)
        small_arr = np.array(sorted(small), dtype=np.int64)
        for r in range(2 * f):
            c = (pow(ell, r, P) * classes) % P
            flag |= np.isin(c, small_arr)
    return flag


# ---------------------------------------------------------------------------
# reducible engine


def _red_kernel(p: FieldParams, N1: np.ndarray, N2: np.ndarray):
    """Per-subset solve for every pair; two solution slots per subset.

    Returns (doubled, a_mat, bcode_mat) with slot axes of shape
    (len, 2^f, 2); slot 1 is only meaningful where doubled is set.
    """
    f, ell, q = p.f, p.ell, p.q
    D = max(p.m_minus, 1)
    nB = 1 << f
    n = (N1 - N2) % D
    doubled = np.empty((len(N1), nB), dtype=bool)
    a_mat = np.zeros((len(N1), nB, 2), dtype=np.int64)
    bcode_mat = np.zeros((len(N1), nB, 2), dtype=np.int64)
    for B in range(nB):
        top = red.doubled_class(B, p)
        low = top + 1 - q
        off = (n - low) % D
        dbl = off == 0
        doubled[:, B] = dbl
        for slot, v in enumerate((low + off, low + off + D)):
            bcode, s_in, s_out, ok = _decode(v, B, ell, f)
            need = ok if slot == 0 else ok[dbl]
            if not bool(np.all(need)):
                raise AssertionError("window solution failed to decode")
            a_mat[:, B, slot] = (N1 - s_in) % D
            bcode_mat[:, B, slot] = bcode
    return doubled, a_mat, bcode_mat


@dataclass
class _RedScan:
    labeled: np.ndarray  # int16 per n (pair (n, 0))
    distinct: np.ndarray
    det_bad: list
    certain_missing: list  # ns where no labeled weight provably fills H^1
    checked: int


@lru_cache(maxsize=None)
def _red_scan(ell: int, f: int) -> _RedScan:
    p = FieldParams(ell, f)
    _check_params(p)
    D = max(p.m_minus, 1)
    nB = 1 << f
    cyc_sum = (p.q - 1) // (ell - 1)
    cyc = p.cyclotomic_exponent
    N = np.arange(D, dtype=np.int64)
    Z = np.zeros_like(N)
    doubled, a_mat, bcode_mat = _red_kernel(p, N, Z)
    labeled = (nB + doubled.sum(axis=1)).astype(np.int16)

    valid = np.ones((D, nB, 2), dtype=bool)
    valid[:, :, 1] = doubled
    keys = (a_mat + D * bcode_mat).reshape(D, 2 * nB)
    distinct = _distinct_counts(keys, valid.reshape(D, 2 * nB)).astype(np.int16)

    det_res = (2 * a_mat + bcode_mat + cyc_sum - N[:, np.newaxis, np.newaxis]) % D
    det_ok = (det_res == 0) | ~valid
    det_bad = [int(x) for x in N[~det_ok.all(axis=(1, 2))]]

    # certain part: some valid slot with a decided subspace equal to all of H^1
    h1 = f + (N == 0).astype(np.int64) + (N == cyc).astype(np.int64)
    j_sizes = np.array([bin(B).count("1") for B in range(nB)], dtype=np.int64)
    full_col = np.array([B == nB - 1 for B in range(nB)], dtype=bool)
    all_ell = bcode_mat == p.q - 1  # every digit equals ell
    trivial = (N == 0)[:, np.newaxis, np.newaxis]
    cyclo = (N == cyc)[:, np.newaxis, np.newaxis]
    delta = np.zeros_like(a_mat)
    decid = np.ones_like(valid)
    cols = full_col[np.newaxis, :, np.newaxis]
    delta = np.where(trivial & all_ell, 2, delta)
    delta = np.where(trivial & ~all_ell, 1, delta)
    decid = np.where(trivial & ~all_ell & ~cols, False, decid)
    if ell > 2:
        delta = np.where(~trivial & cyclo & all_ell & cols, 1, delta)
    dims = j_sizes[np.newaxis, :, np.newaxis] + delta
    fills = valid & decid & (dims == h1[:, np.newaxis, np.newaxis])
    certain_missing = [int(x) for x in N[~fills.any(axis=(1, 2))]]

    return _RedScan(labeled, distinct, det_bad, certain_missing, checked=D)


@lru_cache(maxsize=None)
def _closed_red_lut(ell: int, f: int) -> np.ndarray:
    """Closed-form labeled count as a function of the ratio exponent."""
    q = ell**f
    D = max(q - 1, 1)
    lut = np.zeros(D, dtype=np.int16)
    base = 2**f
    if ell == 2:
        for n in range(D):
            if f % 2 == 0:
                lut[n] = base + 4 if n == 0 else (base + 3 if n % 3 == 0 else base)
            else:
                lut[n] = base + 2 if n == 0 else base + 1
        return lut
    if ell == 3:
        A = red._ambiguous_classes_red(3, f)
        half = D // 2
        for n in range(D):
            if (n == 0 and f % 2 == 0) or n == half:
                lut[n] = base + 2
            else:
                lut[n] = base + 1 if n in A else base
        return lut
    A = red._ambiguous_classes_red(ell, f)
    for n in range(D):
        if n == 0 and f % 2 == 0:
            lut[n] = base + 2
        else:
            lut[n] = base + 1 if n in A else base
    return lut


@lru_cache(maxsize=None)
def _inj_red_lut(ell: int, f: int) -> np.ndarray:
    q = ell**f
    D = max(q - 1, 1)
    flag = np.zeros(D, dtype=bool)
    bound = max(0, ell * (ell ** (f - 2) - 1) // (ell - 1)) if f >= 2 else 0
    small = {m % D for m in range(-bound, bound + 1)}
    classes = np.arange(D, dtype=np.int64)
    small_arr = np.array(sorted(small), dtype=np.int64)
    for r in range(f):
        c = (pow(ell, r, D) * classes) % D
        flag |= np.isin(c, small_arr)
    return flag


@lru_cache(maxsize=None)
def _generic_lut(ell: int, f: int) -> np.ndarray:
    """Marks ratio exponents hit by an interior digit vector."""
    import itertools

    D = max(ell**f - 1, 1)
    flag = np.zeros(D, dtype=bool)
    lo, hi = 1, ell - 2
    if hi < lo:
        return flag
    banned = {(lo,) * f, (hi,) * f}
    for b in itertools.product(range(lo, hi + 1), repeat=f):
        if b in banned:
            continue
        flag[sum(bi * ell**i for i, bi in enumerate(b)) % D] = True
    return flag


# ---------------------------------------------------------------------------
# single-datum reconstruction through the engine (for cross-validation)


def irred_labeled_via_engine(d: irred.NiveauTwoDatum) -> frozenset[LabeledWeight]:
    p = d.params
    D = max(p.m_minus, 1)
    admis, a_mat, bcode_mat = _irred_kernel(p, np.array([d.n], dtype=np.int64))
    out = []
    for B in range(1 << p.f):
        if not admis[0, B]:
            continue
        bc = int(bcode_mat[0, B])
        b = tuple(bc // p.ell**i % p.ell + 1 for i in range(p.f))
        out.append(LabeledWeight(canonical_weight(int(a_mat[0, B]) % D, b, p), B))
    return frozenset(out)


def red_labeled_via_engine(d: red.ReducibleDatum) -> frozenset[LabeledWeight]:
    p = d.params
    D = max(p.m_minus, 1)
    doubled, a_mat, bcode_mat = _red_kernel(
        p, np.array([d.n1], dtype=np.int64), np.array([d.n2], dtype=np.int64)
    )
    out = []
    for B in range(1 << p.f):
        for slot in range(2):
            if slot == 1 and not doubled[0, B]:
                continue
            bc = int(bcode_mat[0, B, slot])
            b = tuple(bc // p.ell**i % p.ell + 1 for i in range(p.f))
            out.append(LabeledWeight(canonical_weight(int(a_mat[0, B, slot]) % D, b, p), B))
    return frozenset(out)


# ---------------------------------------------------------------------------
# per-kind task runners: return (checked, mismatches)


def _witness_cap(items: list) -> list:
    return items[:_MAX_WITNESSES]


def _run_counts_irred(ell: int, f: int):
    scan = _irred_scan(ell, f)
    p = FieldParams(ell, f)
    lut = _closed_irred_lut(ell, f)
    N = np.arange(p.m_big, dtype=np.int64)
    valid = N % p.m_plus != 0
    closed = lut[N % p.m_plus]
    bad = valid & (scan.labeled != closed)
    mism = [
        {"ell": ell, "f": f, "n": int(n), "enumerated": int(scan.labeled[n]), "closed_form": int(closed[n])}
        for n in N[bad][:_MAX_WITNESSES]
    ]
    return scan.checked, mism, int(bad.sum())


def _run_counts_red(ell: int, f: int):
    scan = _red_scan(ell, f)
    p = FieldParams(ell, f)
    D = max(p.m_minus, 1)
    lut = _closed_red_lut(ell, f)
    mism = []
    total_bad = 0
    # ratio-line form
    bad = scan.labeled != lut
    total_bad += int(bad.sum())
    for n in np.nonzero(bad)[0][:_MAX_WITNESSES]:
        mism.append(
            {"ell": ell, "f": f, "n1": int(n), "n2": 0, "enumerated": int(scan.labeled[n]), "closed_form": int(lut[n])}
        )
    checked = scan.checked
    # full pair grid, honestly re-enumerated
    nB = 1 << f
    cyc_sum = (p.q - 1) // (ell - 1)
    pair_chunk = max(1, _CHUNK // (2 * nB))
    idx = np.arange(D * D, dtype=np.int64)
    for start in range(0, D * D, pair_chunk):
        part = idx[start : start + pair_chunk]
        N1, N2 = part // D, part % D
        doubled, a_mat, bcode_mat = _red_kernel(p, N1, N2)
        counts = nB + doubled.sum(axis=1)
        bad_pairs = counts != lut[(N1 - N2) % D]
        total_bad += int(bad_pairs.sum())
        for j in np.nonzero(bad_pairs)[0]:
            if len(mism) >= _MAX_WITNESSES:
                break
            mism.append(
                {"ell": ell, "f": f, "n1": int(N1[j]), "n2": int(N2[j]), "enumerated": int(counts[j]), "closed_form": int(lut[(N1[j] - N2[j]) % D])}
            )
        # determinant law across the grid, while the triples are in hand
        valid = np.ones((len(part), nB, 2), dtype=bool)
        valid[:, :, 1] = doubled
        det_res = (2 * a_mat + bcode_mat + cyc_sum - (N1 + N2)[:, np.newaxis, np.newaxis]) % D
        det_bad = ((det_res != 0) & valid).any(axis=(1, 2))
        total_bad += int(det_bad.sum())
        for j in np.nonzero(det_bad)[0]:
            if len(mism) >= _MAX_WITNESSES:
                break
            mism.append({"ell": ell, "f": f, "n1": int(N1[j]), "n2": int(N2[j]), "check": "det-law"})
        checked += len(part)
    return checked, mism, total_bad


def _run_injectivity_irred(ell: int, f: int):
    scan = _irred_scan(ell, f)
    p = FieldParams(ell, f)
    N = np.arange(p.m_big, dtype=np.int64)
    valid = N % p.m_plus != 0
    enum_fails = scan.distinct < scan.labeled
    crit = _inj_irred_lut(ell, f)[N % p.m_plus]
    bad = valid & (enum_fails != crit)
    mism = [
        {"ell": ell, "f": f, "n": int(n), "enumerated_failure": bool(enum_fails[n]), "criterion": bool(crit[n])}
        for n in N[bad][:_MAX_WITNESSES]
    ]
    return scan.checked, mism, int(bad.sum())


def _run_injectivity_red(ell: int, f: int):
    scan = _red_scan(ell, f)
    D = max(ell**f - 1, 1)
    enum_fails = scan.distinct < scan.labeled
    crit = _inj_red_lut(ell, f)
    bad = enum_fails != crit
    mism = [
        {"ell": ell, "f": f, "n1": int(n), "n2": 0, "enumerated_failure": bool(enum_fails[n]), "criterion": bool(crit[n])}
        for n in np.nonzero(bad)[0][:_MAX_WITNESSES]
    ]
    return scan.checked, mism, int(bad.sum())


def _run_det_law(ell: int, f: int):
    si = _irred_scan(ell, f)
    sr = _red_scan(ell, f)
    mism = []
    for n in _witness_cap(si.det_bad):
        mism.append({"ell": ell, "f": f, "case": "irreducible", "n": n})
    for n in _witness_cap(sr.det_bad):
        mism.append({"ell": ell, "f": f, "case": "reducible", "n1": n, "n2": 0})
    return si.checked + sr.checked, mism, len(si.det_bad) + len(sr.det_bad)


def _run_nonempty(ell: int, f: int):
    si = _irred_scan(ell, f)
    sr = _red_scan(ell, f)
    p = FieldParams(ell, f)
    N = np.arange(p.m_big, dtype=np.int64)
    valid = N % p.m_plus != 0
    empty_irred = valid & (si.labeled < 1)
    mism = [
        {"ell": ell, "f": f, "case": "irreducible", "n": int(n)}
        for n in N[empty_irred][:_MAX_WITNESSES]
    ]
    for n in _witness_cap(sr.certain_missing):
        mism.append({"ell": ell, "f": f, "case": "reducible-certain", "n1": n, "n2": 0})
    bad = int(empty_irred.sum()) + len(sr.certain_missing)
    return si.checked + sr.checked, mism, bad


def _run_generic_split(ell: int, f: int):
    sr = _red_scan(ell, f)
    gen = _generic_lut(ell, f)
    bad = gen & (sr.distinct != 2**f)
    mism = [
        {"ell": ell, "f": f, "n1": int(n), "n2": 0, "weights": int(sr.distinct[n]), "expected": 2**f}
        for n in np.nonzero(bad)[0][:_MAX_WITNESSES]
    ]
    return int(gen.sum()), mism, int(bad.sum())


def _shift_bcode(bcode: np.ndarray, ell: int, f: int) -> np.ndarray:
    """Digit code of the cyclically shifted digit vector (top digit wraps)."""
    top_pow = ell ** (f - 1)
    top = bcode // top_pow
    return (bcode - top * top_pow) * ell + top


def _run_symmetry(ell: int, f: int):
    p = FieldParams(ell, f)
    _check_params(p)
    D = max(p.m_minus, 1)
    q, P, M = p.q, p.m_plus, p.m_big
    nB = 1 << f
    mask = nB - 1
    mism = []
    bad_total = 0
    checked = 0

    conj_cols = np.array([subset_complement(B, f) for B in range(nB)])
    frob_cols = np.array(
        [((B << 1) & mask) | (0 if B >> (f - 1) & 1 else 1) for B in range(nB)]
    )

    def report(kind: str, ns):
        nonlocal bad_total
        bad_total += len(ns)
        for n in ns[:_MAX_WITNESSES]:
            if len(mism) < _MAX_WITNESSES:
                mism.append({"ell": ell, "f": f, "check": kind, "n": int(n)})

    for N in _valid_irred_chunks(p):
        admis, a_mat, bcode_mat = _irred_kernel(p, N)
        # conjugation: same weights at q n, labels complemented
        admis_c, a_c, bcode_c = _irred_kernel(p, (q * N) % M)
        ok = (
            (admis_c[:, conj_cols] == admis)
            & ((a_c[:, conj_cols] == a_mat) | ~admis)
            & ((bcode_c[:, conj_cols] == bcode_mat) | ~admis)
        ).all(axis=1)
        report("conjugation-irred", N[~ok])
        # frobenius: shifted everything at ell n
        admis_f, a_f, bcode_f = _irred_kernel(p, (ell * N) % M)
        ok = (
            (admis_f[:, frob_cols] == admis)
            & ((a_f[:, frob_cols] == (ell * a_mat) % D) | ~admis)
            & ((bcode_f[:, frob_cols] == _shift_bcode(bcode_mat, ell, f)) | ~admis)
        ).all(axis=1)
        report("frobenius-irred", N[~ok])
        # twist naturality at c = 1 (composition generates every twist)
        admis_t, a_t, bcode_t = _irred_kernel(p, (N + P) % M)
        ok = (
            (admis_t == admis)
            & ((a_t == (a_mat + 1) % D) | ~admis)
            & ((bcode_t == bcode_mat) | ~admis)
        ).all(axis=1)
        report("twist-irred", N[~ok])
        checked += len(N)

    # reducible symmetries along the ratio line
    N = np.arange(D, dtype=np.int64)
    Z = np.zeros_like(N)
    doubled, a_mat, bcode_mat = _red_kernel(p, N, Z)
    keys = a_mat + D * bcode_mat
    # pair up the two slots per subset: (lo, hi), collapsing the unused slot
    k2 = np.where(doubled, keys[:, :, 1], keys[:, :, 0])
    lo = np.minimum(keys[:, :, 0], k2)
    hi = np.maximum(keys[:, :, 0], k2)

    doubled_s, a_s, bcode_s = _red_kernel(p, Z, N)
    keys_s = a_s + D * bcode_s
    k2_s = np.where(doubled_s, keys_s[:, :, 1], keys_s[:, :, 0])
    lo_s = np.minimum(keys_s[:, :, 0], k2_s)
    hi_s = np.maximum(keys_s[:, :, 0], k2_s)
    ok = (
        (doubled_s[:, conj_cols] == doubled)
        & (lo_s[:, conj_cols] == lo)
        & (hi_s[:, conj_cols] == hi)
    ).all(axis=1)
    report("swap-red", N[~ok])

    frob_cols_red = np.array(
        [((B << 1) & mask) | (B >> (f - 1) & 1) for B in range(nB)]
    )
    doubled_f, a_f, bcode_f = _red_kernel(p, (ell * N) % D, Z)
    slot_ok = np.ones_like(doubled)[:, :, np.newaxis] & np.stack(
        [np.ones_like(doubled), doubled], axis=2
    )
    ok = (
        (doubled_f[:, frob_cols_red] == doubled)
        & ((a_f[:, frob_cols_red, :] == (ell * a_mat) % D) | ~slot_ok).all(axis=2)
        & (
            (bcode_f[:, frob_cols_red, :] == _shift_bcode(bcode_mat, ell, f)) | ~slot_ok
        ).all(axis=2)
    ).all(axis=1)
    report("frobenius-red", N[~ok])

    doubled_t, a_t, bcode_t = _red_kernel(p, (N + 1) % D, (Z + 1) % D)
    ok = (
        (doubled_t == doubled)
        & ((a_t == (a_mat + 1) % D) | ~slot_ok).all(axis=2)
        & ((bcode_t == bcode_mat) | ~slot_ok).all(axis=2)
    ).all(axis=1)
    report("twist-red", N[~ok])
    checked += 4 * D

    return checked, mism, bad_total


def _run_qtable(ell: int, f: int):
    # f is ignored; the tables live at f = 1
    mism = []
    bad = 0
    checked = 0
    for b in range(1, ell):
        checked += 1
        if not qtable.crosscheck_niveau2(ell, b):
            bad += 1
            mism.append({"ell": ell, "b": b, "check": "niveau2"})
        checked += 1
        if not qtable.crosscheck_split(ell, b):
            bad += 1
            mism.append({"ell": ell, "b": b, "check": "split"})
        # subset relations for the non-split rows
        params = FieldParams(ell, 1)
        d_unknown = red.niveau_one(params, b, 0, red.ExtClass.NONSPLIT_UNKNOWN)
        certain, possible = red.weight_sets_partial(d_unknown)
        split_set = red.weight_set_split(red.niveau_one(params, b, 0, red.ExtClass.SPLIT))
        for kind in (
            qtable.RationalShapeKind.NONSPLIT_GENERIC,
            qtable.RationalShapeKind.PEU,
            qtable.RationalShapeKind.TRES,
        ):
            try:
                shape = qtable.RationalShape(ell, b, kind)
            except Exception:
                continue
            checked += 1
            table = qtable.weights_over_Q(shape)
            if not (certain <= table <= split_set):
                bad += 1
                mism.append({"ell": ell, "b": b, "check": f"sandwich-{kind.value}"})
        checked += 1
        tres_ok = True
        if b == 1:
            tres = qtable.weights_over_Q(qtable.RationalShape(ell, 1, qtable.RationalShapeKind.TRES))
            peu = qtable.weights_over_Q(qtable.RationalShape(ell, 1, qtable.RationalShapeKind.PEU))
            tres_ok = tres <= peu
        if not tres_ok:
            bad += 1
            mism.append({"ell": ell, "b": b, "check": "tres-subset-peu"})
    return checked, mism, bad


_KIND_RUNNERS: dict[str, Callable[[int, int], tuple]] = {
    "counts-irred": _run_counts_irred,
    "counts-red": _run_counts_red,
    "injectivity-irred": _run_injectivity_irred,
    "injectivity-red": _run_injectivity_red,
    "det-law": _run_det_law,
    "symmetry": _run_symmetry,
    "nonempty": _run_nonempty,
    "generic-split": _run_generic_split,
    "qtable-crosscheck": _run_qtable,
}

ALL_KINDS = tuple(_KIND_RUNNERS)


# ---------------------------------------------------------------------------
# the public sweep


@dataclass
class VerificationReport:
    kind: str
    tasks: list[tuple[int, int]]
    checked: int
    mismatch_count: int
    mismatches: list[dict]
    elapsed_s: float = field(default=0.0, compare=False)

    @property
    def passed(self) -> bool:
        return self.mismatch_count == 0

    def to_dict(self) -> dict[str, Any]:
        """Deterministic payload; wall time deliberately excluded."""
        return {
            "kind": self.kind,
            "tasks": [{"ell": ell, "f": f} for ell, f in self.tasks],
            "checked": self.checked,
            "mismatch_count": self.mismatch_count,
            "mismatches": self.mismatches,
            "passed": self.passed,
        }


def _run_one(args: tuple[str, int, int]):
    kind, ell, f = args
    return _KIND_RUNNERS[kind](ell, f)


def verify_sweep(
    kind: str,
    ells: Sequence[int],
    f_max: int,
    budget: float = 1e7,
    space_cap: int | None = None,
    jobs: int = 1,
) -> VerificationReport:
    """Run one verification kind over every (ell, f) in range.

    Raises BudgetExceeded before doing any work when the planned cost
    (sum of ell^(2f) residue classes) exceeds the budget.  With jobs > 1 the
    tasks are distributed over a process pool; reports merge in task order,
    so the result is identical to a serial run.
    """
    if kind not in _KIND_RUNNERS:
        raise ParamError(f"unknown verification kind {kind!r}")
    if kind == "qtable-crosscheck":
        tasks = [(ell, 1) for ell in sorted(set(ells))]
    else:
        tasks = plan_tasks(ells, f_max, space_cap)
    for ell, f in tasks:
        _check_params(FieldParams(ell, f))
    cost = estimate_cost(tasks)
    if cost > budget:
        raise BudgetExceeded(
            f"planned sweep enumerates {cost} residue classes, budget is {budget:g}"
        )
    t0 = time.monotonic()
    args = [(kind, ell, f) for ell, f in tasks]
    if jobs > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_one, args))
    else:
        results = [_run_one(a) for a in args]
    checked = 0
    mismatches: list[dict] = []
    mismatch_count = 0
    for ck, mm, bad in results:
        checked += ck
        mismatch_count += bad
        for w in mm:
            if len(mismatches) < _MAX_WITNESSES:
                mismatches.append(w)
    return VerificationReport(
        kind=kind,
        tasks=tasks,
        checked=checked,
        mismatch_count=mismatch_count,
        mismatches=mismatches,
        elapsed_s=time.monotonic() - t0,
    )
