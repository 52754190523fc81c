import math

import pytest
from hypothesis import given, settings, strategies as st

from simstring import baseline, com, mutual_info, rlm
from simstring.features import (
    FEATURES,
    GROUP_NAMES,
    LENGTH_NAMES,
    PairContext,
    extract_pair,
    extract_stream,
    group_features,
)
from simstring.generator import ComparisonPair
from simstring.strings import SymbolString


def s(text):
    return SymbolString.from_text(text)


def pair(a, b, label="SAME"):
    return ComparisonPair(s(a), s(b), label)


nonempty = st.lists(st.integers(min_value=0, max_value=6), min_size=1, max_size=10).map(SymbolString)


class TestGroups:
    def test_group_names(self):
        assert GROUP_NAMES == ("length", "lcs", "mclcs", "mi", "distance", "wmi", "com", "rlm", "all")

    def test_length_group(self):
        assert group_features("length") == ("len1", "len2", "diff", "abs_diff")

    def test_groups_end_with_length_features(self):
        for name in GROUP_NAMES:
            if name in ("length", "all"):
                continue
            feats = group_features(name)
            assert feats[-4:] == LENGTH_NAMES

    def test_member_lists(self):
        assert group_features("lcs")[:-4] == ("nlcs",)
        assert group_features("mclcs")[:-4] == ("nmclcs_00", "nmclcs_01", "nmclcs_mid", "nmclcs_global")
        assert group_features("mi")[:-4] == ("mi_0", "mi_1", "mi_4", "mi_shift_sum")
        assert group_features("distance")[:-4] == ("mod_hamming", "levenshtein", "damerau", "dice")
        assert group_features("wmi")[:-4] == ("pwmi_0", "pwmi_1", "pwmi_4", "pwmis")
        assert group_features("com")[:-4] == ("com_count_half", "acop_0", "acop_1", "tps", "cod")
        assert group_features("rlm")[:-4] == ("so", "wso", "mo", "moml", "morl", "mlmo", "rlm_mclcs")

    def test_all_is_dedup_union_plus_normalized(self):
        feats = group_features("all")
        assert len(feats) == len(set(feats)) == 35
        for name in GROUP_NAMES[:-1]:
            assert set(group_features(name)) <= set(feats)
        assert feats[-2:] == ("tps_over_len2", "so_over_len2")

    def test_every_registered_feature_reachable(self):
        assert set(group_features("all")) == set(FEATURES)

    def test_unknown_group(self):
        with pytest.raises(KeyError):
            group_features("bogus")


class TestExtract:
    def test_length_worked_example(self):
        v = extract_pair(pair("abc", "abcd"), "length")
        assert v.as_dict() == {"len1": 3.0, "len2": 4.0, "diff": 1.0, "abs_diff": 1.0}
        assert v.label == "SAME"

    def test_rlm_identical_strings(self):
        v = extract_pair(pair("ab", "ab"), "rlm").as_dict()
        assert v["rlm_mclcs"] == 2.0
        assert v["so"] == 3.0
        assert v["len1"] == 2.0 and v["len2"] == 2.0

    def test_normalized_variants(self):
        v = extract_pair(pair("abc", "xyz"), "all").as_dict()
        assert v["tps_over_len2"] == pytest.approx(-3.0)
        w = extract_pair(pair("a", "a"), "all").as_dict()
        assert w["so_over_len2"] == pytest.approx(1.0)

    def test_acop_positions(self):
        v = extract_pair(pair("ab", "ab"), "com").as_dict()
        t = com.build_cooccurrence(s("ab"), s("ab"))
        assert v["acop_0"] == com.prob_over_distances(t, 0)
        assert v["acop_1"] == com.prob_over_distances(t, 1)

    def test_acop_1_single_symbol_w1(self):
        v = extract_pair(pair("a", "abc"), "com").as_dict()
        assert v["acop_1"] == 0.0

    def test_shift_features_wrap(self):
        # d = 4 against len-3 strings lands on the d = 1 rotation
        p = pair("abc", "bca")
        v = extract_pair(p, "all").as_dict()
        assert v["mi_4"] == pytest.approx(mutual_info.mi_shifted(p.w1, p.w2, 1))
        assert v["pwmi_4"] == pytest.approx(mutual_info.weighted_mi(p.w1, p.w2, 1))

    def test_all_values_match_direct_calls(self):
        p = pair("aaabb", "aaabc")
        v = extract_pair(p, "all").as_dict()
        t = com.build_cooccurrence(p.w1, p.w2)
        r = rlm.build_run_lengths(p.w1, p.w2)
        assert v["nlcs"] == baseline.nlcs(p.w1, p.w2)
        assert v["nmclcs_global"] == baseline.nmclcs(p.w1, p.w2, baseline.GLOBAL)
        assert v["mi_0"] == mutual_info.mutual_information(p.w1, p.w2)
        assert v["mi_shift_sum"] == mutual_info.mi_shift_total(p.w1, p.w2)
        assert v["levenshtein"] == float(baseline.levenshtein(p.w1, p.w2))
        assert v["damerau"] == float(baseline.damerau(p.w1, p.w2))
        assert v["dice"] == baseline.dice(p.w1, p.w2)
        assert v["pwmis"] == mutual_info.weighted_mi_total(p.w1, p.w2)
        assert v["com_count_half"] == float(com.count_at(t, 0, 2))
        assert v["tps"] == com.total_position_score(t)
        assert v["cod"] == com.distance_balance(t)
        assert v["so"] == float(rlm.sum_occurrences(r))
        assert v["wso"] == rlm.weighted_occurrences(r)
        assert v["moml"] == float(rlm.biased_max_occurrences(r))

    def test_context_builds_once(self):
        ctx = PairContext(s("abc"), s("abd"))
        assert ctx.com_table is ctx.com_table
        assert ctx.run_lengths is ctx.run_lengths

    @given(nonempty, nonempty)
    @settings(max_examples=200, deadline=None)
    def test_totality_all_finite(self, w1, w2):
        v = extract_pair(ComparisonPair(w1, w2, None), "all")
        assert all(math.isfinite(x) for x in v.values)
        assert len(v.values) == 35

    def test_empty_string_rejected(self):
        with pytest.raises(ValueError):
            extract_pair(ComparisonPair(s(""), s("a"), "SAME"), "all")
        with pytest.raises(ValueError):
            extract_pair(ComparisonPair(s("a"), s(""), "SAME"), "all")


class TestExtractStream:
    def test_errors_reported_not_dropped(self):
        pairs = [
            pair("ab", "ab"),
            ComparisonPair(s(""), s("x"), "SAME"),
            pair("cd", "ce"),
        ]
        rows = list(extract_stream(pairs, "lcs"))
        assert [i for i, _, _ in rows] == [0, 1, 2]
        assert rows[0][1] is not None and rows[0][2] is None
        assert rows[1][1] is None and "non-empty" in rows[1][2]
        assert rows[2][1] is not None
