"""Mutual information over aligned symbol pairs, shifted variants, and the
diagonal-weighted forms.

The aligned joint distribution pairs w1[p] with w2[p] for p below
N = min(|w1|, |w2|); trailing symbols of the longer string have no partner and
are excluded.  Marginals come from the joint, not from full-string counts.
The weighted variant multiplies equal-symbol summands by m after rotating the
longer string (equal lengths rotate nothing: rotating both strings by the same
amount, as the displaced sum is written, leaves the alignment unchanged).
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Dict, Tuple

import numpy as np

from .strings import SymbolString, rotate


@dataclass(frozen=True)
class MiConfig:
    log_base: float = 2.0
    weight: float = 2.0
    # compatibility mode: count only positions where the two symbols agree
    diagonal_only: bool = False

    def __post_init__(self):
        if not self.log_base > 1.0:
            raise ValueError("log_base must be > 1")
        if not self.weight >= 1.0:
            raise ValueError("weight must be >= 1")


DEFAULT = MiConfig()


@dataclass
class AlignedJoint:
    joint: Dict[Tuple[int, int], float]
    marginal1: Dict[int, float]
    marginal2: Dict[int, float]
    positions: int


def _aligned_counts(w1, w2, diagonal_only=False):
    n = min(len(w1), len(w2))
    if n == 0:
        raise ValueError("empty alignment: both strings must be non-empty")
    pairs = zip(w1[:n] if len(w1) != n else w1, w2[:n] if len(w2) != n else w2)
    if diagonal_only:
        joint = Counter(p for p in pairs if p[0] == p[1])
    else:
        joint = Counter(pairs)
    return joint, n


def aligned_joint(w1: SymbolString, w2: SymbolString, diagonal_only: bool = False) -> AlignedJoint:
    """Joint and (joint-derived) marginal distributions of the aligned pairs."""
    joint, n = _aligned_counts(w1, w2, diagonal_only)
    m1: Counter = Counter()
    m2: Counter = Counter()
    for (c1, c2), c in joint.items():
        m1[c1] += c
        m2[c2] += c
    inv = 1.0 / n
    return AlignedJoint(
        joint={k: v * inv for k, v in joint.items()},
        marginal1={k: v * inv for k, v in m1.items()},
        marginal2={k: v * inv for k, v in m2.items()},
        positions=n,
    )


def _mi_from_counts(joint: Counter, n: int, log_base: float, weight: float) -> float:
    m1: Counter = Counter()
    m2: Counter = Counter()
    for (c1, c2), c in joint.items():
        m1[c1] += c
        m2[c2] += c
    lg = math.log(log_base)
    inv = 1.0 / n
    total = 0.0
    for (c1, c2), c in joint.items():
        p = c * inv
        term = p * math.log(p / ((m1[c1] * inv) * (m2[c2] * inv))) / lg
        if weight != 1.0 and c1 == c2:
            term *= weight
        total += term
    return total


def mutual_information(w1: SymbolString, w2: SymbolString, cfg: MiConfig = DEFAULT) -> float:
    """Sum of p(c1,c2) * log_g(p(c1,c2) / (p(c1) p(c2))) over the aligned pairs."""
    joint, n = _aligned_counts(w1, w2, cfg.diagonal_only)
    return _mi_from_counts(joint, n, cfg.log_base, 1.0)


def mi_shifted(w1: SymbolString, w2: SymbolString, d: int, cfg: MiConfig = DEFAULT) -> float:
    """mutual_information(w1, rotate(w2, d))."""
    return mutual_information(w1, rotate(w2, d), cfg)


def weighted_mi(w1: SymbolString, w2: SymbolString, d: int, cfg: MiConfig = DEFAULT) -> float:
    """MI with equal-symbol summands multiplied by cfg.weight, after rotating
    the longer string by d.  Equal lengths rotate nothing."""
    if len(w1) > len(w2):
        a, b = rotate(w1, d), w2
    elif len(w2) > len(w1):
        a, b = w1, rotate(w2, d)
    else:
        a, b = w1, w2
    joint, n = _aligned_counts(a, b, cfg.diagonal_only)
    return _mi_from_counts(joint, n, cfg.log_base, cfg.weight)


def _codes(fixed, rotating):
    joined = np.concatenate(
        [np.asarray(fixed, dtype=np.int64), np.asarray(rotating, dtype=np.int64)]
    )
    _, inv = np.unique(joined, return_inverse=True)
    k = int(inv.max()) + 1
    return inv[: len(fixed)].astype(np.int64), inv[len(fixed) :].astype(np.int64), k


def _run_counts(codes_2d, span):
    """Run-length encode (row, code) keys of a 2-D int matrix.

    Returns (keys, counts) with keys = row*span + code, sorted.  span must
    exceed every code.
    """
    nrot = codes_2d.shape[0]
    offs = (np.arange(nrot, dtype=np.int64) * span)[:, None]
    flat = np.sort((codes_2d + offs).ravel())
    change = np.empty(flat.size, dtype=bool)
    change[0] = True
    np.not_equal(flat[1:], flat[:-1], out=change[1:])
    starts = np.flatnonzero(change)
    counts = np.diff(np.append(starts, flat.size))
    return flat[starts], counts


def _shift_sum(fixed, rotating, n, repeat_to, log_base, weight):
    """Sum over all rotations of `rotating` of the (optionally diagonal-weighted)
    MI against `fixed`, with rotations beyond one period repeating.

    One entropy decomposition over all rotations at once:
    MI_d = log n + (S_joint(d) - S_fixed - S_window(d)) / n in natural log,
    where S = sum of c*ln(c) over the relevant count vector.
    """
    cf, cr, k = _codes(fixed, rotating)
    period = len(cr)
    nrot = period
    idx = (np.arange(nrot, dtype=np.int64)[:, None] + np.arange(n, dtype=np.int64)[None, :]) % period
    wins = cr[idx]
    cnt_f = np.bincount(cf, minlength=k).astype(np.float64)
    nz = cnt_f[cnt_f > 0]
    s_fixed = float((nz * np.log(nz)).sum())
    jkeys, jcounts = _run_counts(cf[None, :] * k + wins, k * k)
    wkeys, wcounts = _run_counts(wins, k)
    jc = jcounts.astype(np.float64)
    wc = wcounts.astype(np.float64)
    j_clogc = jc * np.log(jc)
    w_clogc = wc * np.log(wc)
    lg = math.log(log_base)
    logn = math.log(n)

    if repeat_to > period:
        reps = np.full(period, repeat_to // period, dtype=np.float64)
        reps[: repeat_to % period] += 1.0
        per_j = np.bincount((jkeys // (k * k)).astype(np.intp), weights=j_clogc, minlength=nrot)
        per_w = np.bincount((wkeys // k).astype(np.intp), weights=w_clogc, minlength=nrot)
        per_row = logn + (per_j - s_fixed - per_w) / n
        total = float((per_row * reps).sum()) / lg
        n_shifts = repeat_to
    else:
        total = (nrot * logn + (float(j_clogc.sum()) - nrot * s_fixed - float(w_clogc.sum())) / n) / lg
        n_shifts = nrot

    if weight == 1.0:
        return total

    # diagonal surcharge: (weight-1) * sum over rows and symbols c of
    # (cj/n) * log_g(cj*n / (m_fixed(c) * m_window(row, c)))
    eq_rows, eq_cols = np.nonzero(wins == cf[None, :])
    if eq_rows.size == 0:
        return total
    diag_keys, diag_counts = np.unique(eq_rows * np.int64(k) + wins[eq_rows, eq_cols], return_counts=True)
    sym = diag_keys % k
    mfix = cnt_f[sym]
    mwin = np.asarray(wcounts, dtype=np.float64)[np.searchsorted(wkeys, diag_keys)]
    cj = diag_counts.astype(np.float64)
    terms = cj * (np.log(cj) + logn - np.log(mfix) - np.log(mwin))
    if repeat_to > period:
        rows = (diag_keys // k).astype(np.intp)
        per_row_diag = np.bincount(rows, weights=terms, minlength=nrot)
        diag_total = float((per_row_diag * reps).sum()) / (n * lg)
    else:
        diag_total = float(terms.sum()) / (n * lg)
    return total + (weight - 1.0) * diag_total


def mi_shift_total(w1: SymbolString, w2: SymbolString, cfg: MiConfig = DEFAULT) -> float:
    """Sum of mi_shifted(w1, w2, d) for d in [0, max(|w1|, |w2|))."""
    n = min(len(w1), len(w2))
    if n == 0:
        raise ValueError("empty alignment: both strings must be non-empty")
    dmax = max(len(w1), len(w2))
    if cfg.diagonal_only:
        return sum(mi_shifted(w1, w2, d, cfg) for d in range(dmax))
    return _shift_sum(tuple(w1)[:n], tuple(w2), n, dmax, cfg.log_base, 1.0)


def weighted_mi_total(w1: SymbolString, w2: SymbolString, cfg: MiConfig = DEFAULT) -> float:
    """Sum of weighted_mi(w1, w2, d) for d in [0, max(|w1|, |w2|))."""
    n = min(len(w1), len(w2))
    if n == 0:
        raise ValueError("empty alignment: both strings must be non-empty")
    dmax = max(len(w1), len(w2))
    if cfg.diagonal_only:
        return sum(weighted_mi(w1, w2, d, cfg) for d in range(dmax))
    if len(w1) == len(w2):
        return dmax * weighted_mi(w1, w2, 0, cfg)
    fixed, rotating = (w2, w1) if len(w1) > len(w2) else (w1, w2)
    return _shift_sum(tuple(fixed), tuple(rotating), n, dmax, cfg.log_base, cfg.weight)
