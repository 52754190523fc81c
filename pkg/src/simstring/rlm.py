"""Per-length shared-substring occurrence counts and their summary features.

The vector stores, for each length l in [1, |w1|], the sum over distinct
length-l substrings of w1 of their overlapping occurrence counts in w2.  That
equals the number of windows of w2 of length l whose content occurs somewhere
in w1, so the whole vector falls out of one pass: walk w2 through a suffix
automaton of w1, record at every end position the longest current match, and
take suffix sums of the match-length histogram.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

from .strings import SymbolString


class _SuffixAutomaton:
    """Recognizes every substring of the build word; integer symbols."""

    __slots__ = ("trans", "link", "length")

    def __init__(self, word):
        self.trans = [{}]
        self.link = [-1]
        self.length = [0]
        last = 0
        for c in word:
            last = self._extend(last, c)

    def _extend(self, last: int, c: int) -> int:
        trans, link, length = self.trans, self.link, self.length
        cur = len(length)
        length.append(length[last] + 1)
        link.append(-1)
        trans.append({})
        p = last
        while p != -1 and c not in trans[p]:
            trans[p][c] = cur
            p = link[p]
        if p == -1:
            link[cur] = 0
            return cur
        q = trans[p][c]
        if length[p] + 1 == length[q]:
            link[cur] = q
            return cur
        clone = len(length)
        length.append(length[p] + 1)
        link.append(link[q])
        trans.append(dict(trans[q]))
        while p != -1 and trans[p].get(c) == q:
            trans[p][c] = clone
            p = link[p]
        link[q] = clone
        link[cur] = clone
        return cur


@dataclass(frozen=True)
class RunLengthVector:
    counts: Tuple[int, ...]  # indexed by length; counts[0] is a zero pad
    len1: int


def build_run_lengths(w1: SymbolString, w2: SymbolString) -> RunLengthVector:
    if len(w1) < 1:
        raise ValueError("w1 must be non-empty")
    n1 = len(w1)
    hist = [0] * (n1 + 1)  # longest match never exceeds |w1|
    if len(w2):
        sa = _SuffixAutomaton(w1)
        v = m = 0
        for c in w2:
            if c in sa.trans[v]:
                v = sa.trans[v][c]
                m += 1
            else:
                while v != -1 and c not in sa.trans[v]:
                    v = sa.link[v]
                if v == -1:
                    v = m = 0
                else:
                    m = sa.length[v] + 1
                    v = sa.trans[v][c]
            if m:
                hist[m] += 1
    counts = [0] * (n1 + 1)
    running = 0
    for l in range(n1, 0, -1):
        running += hist[l]
        counts[l] = running
    return RunLengthVector(tuple(counts), n1)


def sum_occurrences(v: RunLengthVector) -> int:
    return sum(v.counts)


def weighted_occurrences(v: RunLengthVector, g: float = 1.0) -> float:
    return float(sum(l**g * n for l, n in enumerate(v.counts) if n))


def max_occurrences(v: RunLengthVector) -> int:
    return max(v.counts)


def max_occurrence_length(v: RunLengthVector) -> int:
    """Smallest length attaining the maximal count; 0 for an all-zero vector."""
    m = max(v.counts)
    return v.counts.index(m) if m else 0


def shortest_peak_length(v: RunLengthVector) -> int:
    """Minimal length whose count equals the maximum; 0 for an all-zero vector."""
    m = max(v.counts)
    if not m:
        return 0
    return min(l for l in range(1, v.len1 + 1) if v.counts[l] == m)


def biased_max_occurrences(v: RunLengthVector, g: float = 1.0) -> int:
    """Count at the length maximizing count / (l^g + 1); the division biases the
    argmax toward short lengths, the returned value is the raw count there.
    Ties go to the smallest length."""
    best_l = 0
    best = -1.0
    for l in range(1, v.len1 + 1):
        score = v.counts[l] / (l**g + 1.0)
        if score > best:
            best, best_l = score, l
    return v.counts[best_l] if best_l else 0


def longest_match_length(v: RunLengthVector) -> int:
    """Largest length with a nonzero count: the longest substring of w1 that
    occurs in w2.  0 when nothing is shared."""
    for l in range(v.len1, 0, -1):
        if v.counts[l]:
            return l
    return 0
