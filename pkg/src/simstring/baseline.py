"""Length features and the classical comparison features: LCS/NLCS, the
consecutive-run (MCLCS) family, and the distance group (truncated Hamming,
Levenshtein, adjacent-transposition edit distance, Dice)."""

from __future__ import annotations

from typing import NamedTuple, Tuple, Union

import numpy as np

from .strings import SymbolString, shared_symbols, substring


class LengthFeatures(NamedTuple):
    len1: int
    len2: int
    diff: int
    abs_diff: int


def length_features(w1: SymbolString, w2: SymbolString) -> LengthFeatures:
    d = len(w2) - len(w1)
    return LengthFeatures(len(w1), len(w2), d, abs(d))


def lcs(w1: SymbolString, w2: SymbolString) -> SymbolString:
    """One longest common subsequence (its length is unique, the string may not be)."""
    m, n = len(w1), len(w2)
    table = [[0] * (n + 1) for _ in range(m + 1)]
    for i in range(1, m + 1):
        c = w1[i - 1]
        row = table[i]
        prev = table[i - 1]
        for j in range(1, n + 1):
            if c == w2[j - 1]:
                row[j] = prev[j - 1] + 1
            else:
                a = row[j - 1]
                b = prev[j]
                row[j] = a if a >= b else b
    out = []
    i, j = m, n
    while i > 0 and j > 0:
        if w1[i - 1] == w2[j - 1]:
            out.append(w1[i - 1])
            i -= 1
            j -= 1
        elif table[i - 1][j] >= table[i][j - 1]:
            i -= 1
        else:
            j -= 1
    return SymbolString(reversed(out))


def lcs_length(w1: SymbolString, w2: SymbolString) -> int:
    """LCS length via the bit-parallel row recurrence.

    Each set bit in `row` marks a column where the DP row increments; the
    update keeps the lowest borrow chain per block of matches, which is the
    classical bit-string formulation of the LCS row.  O(|w2| * |w1|/wordsize).
    """
    if not w1 or not w2:
        return 0
    masks = {}
    for i, c in enumerate(w1):
        masks[c] = masks.get(c, 0) | (1 << i)
    row = 0
    for c in w2:
        x = masks.get(c, 0) | row
        row = x & ~(x - ((row << 1) | 1))
    return row.bit_count()


def nlcs(w1: SymbolString, w2: SymbolString) -> float:
    """|LCS|^2 / (|w1|*|w2|); 0 when either string is empty."""
    if not w1 or not w2:
        return 0.0
    l = lcs_length(w1, w2)
    return (l * l) / (len(w1) * len(w2))


def common_run(w1: SymbolString, w2: SymbolString, n1: int, n2: int) -> SymbolString:
    """Longest common prefix of w1[n1:] and w2[n2:] (the anchored consecutive run)."""
    if not (0 <= n1 <= len(w1) and 0 <= n2 <= len(w2)):
        raise IndexError(f"anchors ({n1}, {n2}) out of bounds for lengths ({len(w1)}, {len(w2)})")
    k = 0
    limit = min(len(w1) - n1, len(w2) - n2)
    while k < limit and w1[n1 + k] == w2[n2 + k]:
        k += 1
    return substring(w1, n1, n1 + k)


def longest_common_substring(w1: SymbolString, w2: SymbolString) -> SymbolString:
    """Longest common contiguous substring (best common run over all anchors)."""
    m, n = len(w1), len(w2)
    if m == 0 or n == 0:
        return SymbolString()
    a = np.asarray(w1, dtype=np.int64)
    b = np.asarray(w2, dtype=np.int64)
    prev = np.zeros(n, dtype=np.int64)
    best_len = 0
    best_end = 0
    for i in range(m):
        cur = np.where(a[i] == b, 1, 0)
        cur[1:] += np.where(cur[1:] > 0, prev[:-1], 0)
        j = int(cur.argmax())
        if cur[j] > best_len:
            best_len = int(cur[j])
            best_end = i + 1
        prev = cur
    return substring(w1, best_end - best_len, best_end)


MID = "mid"
GLOBAL = "global"
RunAnchor = Union[Tuple[int, int], str]


def nmclcs(w1: SymbolString, w2: SymbolString, anchor: RunAnchor) -> float:
    """|run|^2 / (|w1|*|w2|) for the anchored common run; 0 when either is empty.

    anchor: an (n1, n2) offset pair, "mid" for both midpoints, or "global"
    for the longest common substring.
    """
    if not w1 or not w2:
        return 0.0
    if anchor == GLOBAL:
        l = len(longest_common_substring(w1, w2))
    else:
        if anchor == MID:
            n1, n2 = len(w1) // 2, len(w2) // 2
        else:
            n1, n2 = anchor
        if n1 > len(w1) or n2 > len(w2):
            return 0.0
        l = len(common_run(w1, w2, n1, n2))
    return (l * l) / (len(w1) * len(w2))


def hamming_truncated(w1: SymbolString, w2: SymbolString) -> int:
    """Hamming distance after truncating the longer string to the shorter length."""
    n = min(len(w1), len(w2))
    matches = sum(1 for p in range(n) if w1[p] == w2[p])
    return n - matches


def levenshtein(w1: SymbolString, w2: SymbolString) -> int:
    """Minimum insertions+deletions+substitutions, unit costs."""
    m, n = len(w1), len(w2)
    if m == 0 or n == 0:
        return max(m, n)
    a = np.asarray(w1, dtype=np.int64)
    b = np.asarray(w2, dtype=np.int64)
    idx = np.arange(n + 1, dtype=np.int64)
    prev = idx.copy()
    t = np.empty(n + 1, dtype=np.int64)
    for i in range(1, m + 1):
        t[0] = i
        np.minimum(prev[:-1] + (a[i - 1] != b), prev[1:] + 1, out=t[1:])
        # insertion chain cur[j] = min(t[j], cur[j-1]+1) unrolls to a prefix min
        prev = np.minimum.accumulate(t - idx) + idx
    return int(prev[n])


def damerau(w1: SymbolString, w2: SymbolString) -> int:
    """Edit distance with adjacent transpositions as a fourth operation.

    Full (unrestricted) variant: transposed symbols may be edited again, so
    the result is a true metric and never exceeds levenshtein.  Row-vectorized
    form of the last-occurrence algorithm; the transposition candidate for
    cell (i, j) reads D[k-1, l-1] where k is the last row matching w2[j-1]
    and l the last column matching w1[i-1], both strictly earlier.
    """
    m, n = len(w1), len(w2)
    if m == 0 or n == 0:
        return max(m, n)
    joined = np.concatenate([np.asarray(w1, dtype=np.int64), np.asarray(w2, dtype=np.int64)])
    _, codes = np.unique(joined, return_inverse=True)
    ca, cb = codes[:m], codes[m:]
    nsym = int(codes.max()) + 1

    inf = m + n + 1
    D = np.empty((m + 1, n + 1), dtype=np.int64)
    D[0] = np.arange(n + 1)
    D[:, 0] = np.arange(m + 1)
    idx = np.arange(n + 1, dtype=np.int64)
    cols = idx[1:]
    last_row = np.zeros(nsym, dtype=np.int64)
    t = np.empty(n + 1, dtype=np.int64)
    for i in range(1, m + 1):
        s = ca[i - 1]
        # larr[j] = last column j' < j with w2[j'-1] == w1[i-1], 0 if none
        seen = np.maximum.accumulate(np.where(cb == s, cols, 0))
        larr = np.concatenate(([0], seen[:-1]))
        karr = last_row[cb]
        valid = (karr > 0) & (larr > 0)
        k = np.where(valid, karr, 1)
        l = np.where(valid, larr, 1)
        trans = D[k - 1, l - 1] + (i - k) + (cols - l) - 1
        trans[~valid] = inf
        t[0] = i
        np.minimum(D[i - 1, :-1] + (s != cb), D[i - 1, 1:] + 1, out=t[1:])
        np.minimum(t[1:], trans, out=t[1:])
        D[i] = np.minimum.accumulate(t - idx) + idx
        last_row[s] = i
    return int(D[m, n])


def dice(w1: SymbolString, w2: SymbolString) -> float:
    """2*|multiset intersection| / (|w1|+|w2|); two empty strings give 1."""
    total = len(w1) + len(w2)
    if total == 0:
        return 1.0
    common = sum(shared_symbols(w1, w2).values())
    return 2.0 * common / total
