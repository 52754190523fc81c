"""Per-feature extraction timing.

Times every registered feature over a pair sample, with the shared-table build
cost (co-occurrence table, run-length vector) measured separately and reported
once per owning group, since member features reuse one build.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Dict, Iterable, Sequence, Tuple

from .features import FEATURES, PairContext, group_features
from .generator import ComparisonPair


@dataclass
class TimingReport:
    feature_ns: Dict[str, float]  # mean per pair
    build_ns: Dict[str, float]  # group -> mean shared-build time per pair
    pairs: int

    def group_total_ns(self, group: str) -> float:
        total = sum(self.feature_ns[f] for f in group_features(group))
        return total + self.build_ns.get(group, 0.0)


def time_features(pairs: Sequence[ComparisonPair], groups: Iterable[str] = ("all",)) -> TimingReport:
    pairs = [p for p in pairs if p.w1 and p.w2]
    if len(pairs) < 100:
        raise ValueError("need at least 100 pairs for stable timing")
    wanted = []
    for g in groups:
        for f in group_features(g):
            if f not in wanted:
                wanted.append(f)
    com_needed = any(f in wanted for f in ("com_count_half", "acop_0", "acop_1", "tps", "cod", "tps_over_len2"))
    rlm_needed = any(
        f in wanted
        for f in ("so", "wso", "mo", "moml", "morl", "mlmo", "rlm_mclcs", "so_over_len2")
    )

    contexts = [PairContext(p.w1, p.w2) for p in pairs]
    build_ns: Dict[str, float] = {}
    if com_needed:
        t0 = time.perf_counter_ns()
        for ctx in contexts:
            ctx.com_table
        build_ns["com"] = (time.perf_counter_ns() - t0) / len(pairs)
    if rlm_needed:
        t0 = time.perf_counter_ns()
        for ctx in contexts:
            ctx.run_lengths
        build_ns["rlm"] = (time.perf_counter_ns() - t0) / len(pairs)

    feature_ns: Dict[str, float] = {}
    for name in wanted:
        fn = FEATURES[name]
        t0 = time.perf_counter_ns()
        for ctx in contexts:
            fn(ctx)
        feature_ns[name] = (time.perf_counter_ns() - t0) / len(pairs)
    return TimingReport(feature_ns, build_ns, len(pairs))
