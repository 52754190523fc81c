"""Symbol co-occurrence counting over forward displacements.

The table records, per symbol c and displacement d, how many positions k of w1
satisfy w1[k] = c = w2[k+d].  Displacements run 0 <= d < |w1| with no
wrap-around; targets past the end of w2 contribute nothing.  Because the count
depends on a position only through its symbol, the table is keyed by symbol.
"""

from __future__ import annotations

from bisect import bisect_left
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Tuple

from .strings import SymbolString


@dataclass(frozen=True)
class CooccurrenceTable:
    counts: Dict[Tuple[int, int], int]
    source: SymbolString
    len2: int
    # aggregates derived at build time; keyed by displacement or symbol
    weighted_by_distance: Dict[int, int] = field(repr=False)  # sum over w2 occurrences
    column_by_distance: Dict[int, int] = field(repr=False)  # sum over w1 positions
    row_by_symbol: Dict[int, int] = field(repr=False)
    absent_occurrences: int = field(repr=False)

    @property
    def len1(self) -> int:
        return len(self.source)


def build_cooccurrence(w1: SymbolString, w2: SymbolString) -> CooccurrenceTable:
    if len(w1) < 1:
        raise ValueError("w1 must be non-empty")
    len1, len2 = len(w1), len(w2)
    pos1: Dict[int, list] = {}
    for k, c in enumerate(w1):
        pos1.setdefault(c, []).append(k)
    pos2: Dict[int, list] = {}
    for j, c in enumerate(w2):
        pos2.setdefault(c, []).append(j)

    counts: Dict[Tuple[int, int], int] = {}
    for c, ks in pos1.items():
        js = pos2.get(c)
        if not js:
            continue
        for k in ks:
            lo = bisect_left(js, k)
            hi = bisect_left(js, k + len1)
            for j in js[lo:hi]:
                key = (c, j - k)
                counts[key] = counts.get(key, 0) + 1

    occ1 = Counter(w1)
    occ2 = Counter(w2)
    weighted: Dict[int, int] = {}
    column: Dict[int, int] = {}
    rows: Dict[int, int] = {}
    for (c, d), n in counts.items():
        weighted[d] = weighted.get(d, 0) + occ2[c] * n
        column[d] = column.get(d, 0) + occ1[c] * n
        rows[c] = rows.get(c, 0) + n
    absent = sum(n for c, n in occ2.items() if c not in occ1)
    return CooccurrenceTable(counts, w1, len2, weighted, column, rows, absent)


def count_at(table: CooccurrenceTable, p: int, d: int) -> int:
    """Co-occurrence count for the symbol at w1[p] at displacement d."""
    if not (0 <= p < table.len1):
        raise IndexError(f"position {p} out of bounds for length {table.len1}")
    if not (0 <= d < table.len1):
        raise IndexError(f"displacement {d} out of bounds for length {table.len1}")
    return table.counts.get((table.source[p], d), 0)


def prob_at(table: CooccurrenceTable, p: int, d: int) -> float:
    """count_at / |w1|."""
    return count_at(table, p, d) / table.len1


def prob_over_distances(table: CooccurrenceTable, p: int) -> float:
    """Sum of count_at over every displacement, divided by |w1|.  May exceed 1."""
    if not (0 <= p < table.len1):
        raise IndexError(f"position {p} out of bounds for length {table.len1}")
    return table.row_by_symbol.get(table.source[p], 0) / table.len1


def position_score(table: CooccurrenceTable, d: int) -> float:
    """Per-position score at displacement d: symbols of w2 present in w1 add
    their co-occurrence probability, absent symbols add a -1 penalty."""
    return table.weighted_by_distance.get(d, 0) / table.len1 - table.absent_occurrences


def total_position_score(table: CooccurrenceTable) -> float:
    """position_score summed over d in [0, |w2|); d >= |w1| rows are all-zero
    but still incur the penalties."""
    total = sum(table.weighted_by_distance.values())  # every stored d < min(|w1|, |w2|)
    return total / table.len1 - table.len2 * table.absent_occurrences


def distance_balance(table: CooccurrenceTable, g: float = 1.0) -> float:
    """Near-half vs far-half column-sum differences, each raised to g and summed.
    Zero for |w1| < 2."""
    len1 = table.len1
    if len1 < 2:
        return 0.0
    shift = (len1 + 1) // 2
    col = table.column_by_distance
    total = 0.0
    for d in range(len1 // 2):
        diff = col.get(d, 0) - col.get(d + shift, 0)
        total += diff**g
    return total
