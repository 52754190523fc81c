"""Feature-group registry and batch extraction.

Groups bundle related features; every group also carries the four length
features, and the "all" group is the duplicate-free union plus two
length-normalized variants.  Extraction works per pair through a PairContext
that builds the co-occurrence table and the run-length vector at most once.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Tuple

from . import baseline, com, mutual_info, rlm
from .generator import ComparisonPair
from .strings import SymbolString


class PairContext:
    """One comparison pair plus lazily built shared structures."""

    __slots__ = ("w1", "w2", "_com", "_rlm")

    def __init__(self, w1: SymbolString, w2: SymbolString):
        self.w1 = w1
        self.w2 = w2
        self._com = None
        self._rlm = None

    @property
    def com_table(self) -> com.CooccurrenceTable:
        if self._com is None:
            self._com = com.build_cooccurrence(self.w1, self.w2)
        return self._com

    @property
    def run_lengths(self) -> rlm.RunLengthVector:
        if self._rlm is None:
            self._rlm = rlm.build_run_lengths(self.w1, self.w2)
        return self._rlm


def _acop_or_zero(ctx: PairContext, p: int) -> float:
    # single-symbol w1 has no position 1; totality demands a value, 0 carries
    # "no co-occurrence mass" semantics
    if p >= len(ctx.w1):
        return 0.0
    return com.prob_over_distances(ctx.com_table, p)


FEATURES: Dict[str, Callable[[PairContext], float]] = {
    "len1": lambda c: float(len(c.w1)),
    "len2": lambda c: float(len(c.w2)),
    "diff": lambda c: float(len(c.w2) - len(c.w1)),
    "abs_diff": lambda c: float(abs(len(c.w2) - len(c.w1))),
    "nlcs": lambda c: baseline.nlcs(c.w1, c.w2),
    "nmclcs_00": lambda c: baseline.nmclcs(c.w1, c.w2, (0, 0)),
    "nmclcs_01": lambda c: baseline.nmclcs(c.w1, c.w2, (0, 1)),
    "nmclcs_mid": lambda c: baseline.nmclcs(c.w1, c.w2, baseline.MID),
    "nmclcs_global": lambda c: baseline.nmclcs(c.w1, c.w2, baseline.GLOBAL),
    "mi_0": lambda c: mutual_info.mi_shifted(c.w1, c.w2, 0),
    "mi_1": lambda c: mutual_info.mi_shifted(c.w1, c.w2, 1),
    "mi_4": lambda c: mutual_info.mi_shifted(c.w1, c.w2, 4),
    "mi_shift_sum": lambda c: mutual_info.mi_shift_total(c.w1, c.w2),
    "mod_hamming": lambda c: float(baseline.hamming_truncated(c.w1, c.w2)),
    "levenshtein": lambda c: float(baseline.levenshtein(c.w1, c.w2)),
    "damerau": lambda c: float(baseline.damerau(c.w1, c.w2)),
    "dice": lambda c: baseline.dice(c.w1, c.w2),
    "pwmi_0": lambda c: mutual_info.weighted_mi(c.w1, c.w2, 0),
    "pwmi_1": lambda c: mutual_info.weighted_mi(c.w1, c.w2, 1),
    "pwmi_4": lambda c: mutual_info.weighted_mi(c.w1, c.w2, 4),
    "pwmis": lambda c: mutual_info.weighted_mi_total(c.w1, c.w2),
    "com_count_half": lambda c: float(com.count_at(c.com_table, 0, len(c.w1) // 2)),
    "acop_0": lambda c: _acop_or_zero(c, 0),
    "acop_1": lambda c: _acop_or_zero(c, 1),
    "tps": lambda c: com.total_position_score(c.com_table),
    "cod": lambda c: com.distance_balance(c.com_table),
    "so": lambda c: float(rlm.sum_occurrences(c.run_lengths)),
    "wso": lambda c: rlm.weighted_occurrences(c.run_lengths),
    "mo": lambda c: float(rlm.max_occurrences(c.run_lengths)),
    "moml": lambda c: float(rlm.biased_max_occurrences(c.run_lengths)),
    "morl": lambda c: float(rlm.max_occurrence_length(c.run_lengths)),
    "mlmo": lambda c: float(rlm.shortest_peak_length(c.run_lengths)),
    "rlm_mclcs": lambda c: float(rlm.longest_match_length(c.run_lengths)),
    "tps_over_len2": lambda c: com.total_position_score(c.com_table) / len(c.w2),
    "so_over_len2": lambda c: rlm.sum_occurrences(c.run_lengths) / len(c.w2),
}

LENGTH_NAMES: Tuple[str, ...] = ("len1", "len2", "diff", "abs_diff")

_GROUP_MEMBERS: Dict[str, Tuple[str, ...]] = {
    "length": (),
    "lcs": ("nlcs",),
    "mclcs": ("nmclcs_00", "nmclcs_01", "nmclcs_mid", "nmclcs_global"),
    "mi": ("mi_0", "mi_1", "mi_4", "mi_shift_sum"),
    "distance": ("mod_hamming", "levenshtein", "damerau", "dice"),
    "wmi": ("pwmi_0", "pwmi_1", "pwmi_4", "pwmis"),
    "com": ("com_count_half", "acop_0", "acop_1", "tps", "cod"),
    "rlm": ("so", "wso", "mo", "moml", "morl", "mlmo", "rlm_mclcs"),
}

_NORMALIZED: Tuple[str, ...] = ("tps_over_len2", "so_over_len2")

GROUP_NAMES: Tuple[str, ...] = tuple(_GROUP_MEMBERS) + ("all",)


def group_features(name: str) -> Tuple[str, ...]:
    """Ordered feature names for a group; each group ends with the length
    features, "all" is the dedup union plus the normalized variants."""
    if name == "all":
        seen: List[str] = list(LENGTH_NAMES)
        for members in _GROUP_MEMBERS.values():
            for f in members:
                if f not in seen:
                    seen.append(f)
        seen.extend(_NORMALIZED)
        return tuple(seen)
    if name == "length":
        return LENGTH_NAMES
    if name not in _GROUP_MEMBERS:
        raise KeyError(f"unknown feature group {name!r}; choose from {', '.join(GROUP_NAMES)}")
    return _GROUP_MEMBERS[name] + LENGTH_NAMES


@dataclass
class FeatureVector:
    names: Tuple[str, ...]
    values: Tuple[float, ...]
    label: Optional[str] = None

    def as_dict(self) -> Dict[str, float]:
        return dict(zip(self.names, self.values))


def extract_pair(pair: ComparisonPair, group: str) -> FeatureVector:
    """Raises ValueError on empty strings or (guarded) non-finite results."""
    if not pair.w1 or not pair.w2:
        raise ValueError("both strings must be non-empty")
    names = group_features(group)
    ctx = PairContext(pair.w1, pair.w2)
    values = []
    for name in names:
        v = FEATURES[name](ctx)
        if not math.isfinite(v):
            raise ValueError(f"feature {name} produced a non-finite value")
        values.append(v)
    return FeatureVector(names, tuple(values), pair.label)


def extract_stream(
    pairs: Iterable[ComparisonPair], group: str
) -> Iterator[Tuple[int, Optional[FeatureVector], Optional[str]]]:
    """Yields (input index, vector, error); exactly one of vector/error is set.
    Bad instances are reported, never silently dropped."""
    for i, pair in enumerate(pairs):
        try:
            yield i, extract_pair(pair, group), None
        except ValueError as exc:
            yield i, None, str(exc)
