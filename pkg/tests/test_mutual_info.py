import math

import pytest
from hypothesis import given, settings, strategies as st

from simstring.mutual_info import (
    DEFAULT,
    MiConfig,
    aligned_joint,
    mi_shift_total,
    mi_shifted,
    mutual_information,
    weighted_mi,
    weighted_mi_total,
)
from simstring.strings import SymbolString, rotate

import oracles


def s(text):
    return SymbolString.from_text(text)


nonempty = st.lists(st.integers(min_value=0, max_value=6), min_size=1, max_size=10).map(SymbolString)
nonempty_wide = st.lists(st.integers(min_value=0, max_value=500), min_size=1, max_size=14).map(SymbolString)


class TestConfig:
    def test_defaults(self):
        assert DEFAULT.log_base == 2.0 and DEFAULT.weight == 2.0

    def test_validation(self):
        with pytest.raises(ValueError):
            MiConfig(log_base=1.0)
        with pytest.raises(ValueError):
            MiConfig(weight=0.5)
        MiConfig(weight=1.0)  # boundary allowed: reduces to unweighted


class TestAlignedJoint:
    def test_worked_pair(self):
        d = aligned_joint(SymbolString((0, 1, 1, 3)), SymbolString((0, 1, 1, 4)))
        assert d.joint[(1, 1)] == pytest.approx(2 / 4)
        assert d.joint.get((3, 3), 0.0) == 0.0
        assert d.positions == 4

    def test_identical(self):
        d = aligned_joint(s("ab"), s("ab"))
        assert d.joint[(ord("a"), ord("a"))] == pytest.approx(0.5)
        assert d.joint[(ord("b"), ord("b"))] == pytest.approx(0.5)
        assert len(d.joint) == 2

    def test_empty_alignment_rejected(self):
        with pytest.raises(ValueError):
            aligned_joint(s(""), s("ab"))

    def test_diagonal_only_mode(self):
        d = aligned_joint(s("abc"), s("axc"), diagonal_only=True)
        assert set(d.joint) == {(ord("a"), ord("a")), (ord("c"), ord("c"))}

    @given(nonempty_wide, nonempty_wide)
    def test_marginal_consistency_and_normalization(self, a, b):
        d = aligned_joint(a, b)
        assert sum(d.joint.values()) == pytest.approx(1.0)
        for c1 in d.marginal1:
            assert d.marginal1[c1] == pytest.approx(
                sum(p for (x, _), p in d.joint.items() if x == c1)
            )
        for c2 in d.marginal2:
            assert d.marginal2[c2] == pytest.approx(
                sum(p for (_, y), p in d.joint.items() if y == c2)
            )


class TestMutualInformation:
    def test_same_value_on_rotated_triple(self):
        assert mutual_information(s("213"), s("321")) == pytest.approx(
            mutual_information(s("321"), s("321"))
        )

    def test_uniform_diagonal(self):
        assert mutual_information(s("321"), s("321")) == pytest.approx(math.log2(3))

    def test_degenerate_alphabet(self):
        assert mutual_information(s("aaa"), s("aaa")) == pytest.approx(0.0)

    @given(nonempty_wide, nonempty_wide)
    def test_oracle_equivalence(self, a, b):
        assert mutual_information(a, b) == pytest.approx(oracles.naive_mi(a, b), abs=1e-12)

    @given(nonempty_wide, nonempty_wide)
    def test_nonnegative(self, a, b):
        assert mutual_information(a, b) >= -1e-12

    @given(nonempty_wide)
    def test_symmetric_equal_lengths(self, a):
        b = SymbolString(reversed(a))
        assert mutual_information(a, b) == pytest.approx(mutual_information(b, a))

    @given(nonempty)
    def test_relabel_invariance(self, a):
        b = rotate(a, 1)
        relabel = {c: c + 1000 for c in set(a) | set(b)}
        ra = SymbolString(relabel[c] for c in a)
        rb = SymbolString(relabel[c] for c in b)
        assert mutual_information(a, b) == pytest.approx(mutual_information(ra, rb))


class TestMiShifted:
    def test_d0_is_mi(self):
        assert mi_shifted(s("abc"), s("bca"), 0) == pytest.approx(mutual_information(s("abc"), s("bca")))

    def test_definition_unfolding(self):
        assert mi_shifted(s("abc"), s("bca"), 1) == pytest.approx(
            mutual_information(s("abc"), s("cab"))
        )

    def test_full_rotation(self):
        assert mi_shifted(s("abc"), s("abc"), 3) == pytest.approx(
            mutual_information(s("abc"), s("abc"))
        )


class TestWeightedMi:
    def test_all_diagonal(self):
        assert weighted_mi(s("321"), s("321"), 0) == pytest.approx(2 * math.log2(3))

    def test_no_diagonal(self):
        assert weighted_mi(s("213"), s("321"), 0) == pytest.approx(math.log2(3))

    def test_weight_one_reduces_to_unweighted(self):
        cfg = MiConfig(weight=1.0)
        # w2 longer: the weighted form rotates w2, exactly the shifted MI alignment
        assert weighted_mi(s("ab"), s("abcd"), 2, cfg) == pytest.approx(
            mi_shifted(s("ab"), s("abcd"), 2, cfg)
        )

    @given(nonempty, nonempty, st.integers(min_value=0, max_value=12))
    def test_oracle_equivalence(self, a, b, d):
        assert weighted_mi(a, b, d) == pytest.approx(oracles.naive_pwmi(a, b, d), abs=1e-12)


class TestShiftTotals:
    def test_ordering_at_worked_triple(self):
        assert weighted_mi_total(s("213"), s("321")) < weighted_mi_total(s("321"), s("321"))

    def test_ordering_holds_for_other_weights_and_bases(self):
        for m in (1.5, 2.0, 4.0):
            for g in (2.0, 10.0, math.e):
                cfg = MiConfig(log_base=g, weight=m)
                assert weighted_mi_total(s("213"), s("321"), cfg) < weighted_mi_total(
                    s("321"), s("321"), cfg
                )

    def test_degenerate_single_symbol(self):
        assert weighted_mi_total(s("a"), s("a")) == pytest.approx(0.0)

    def test_equal_length_total_is_shift_count_times_one_value(self):
        v = weighted_mi_total(s("321"), s("321"))
        per = weighted_mi(s("321"), s("321"), 0)
        assert v == pytest.approx(3 * per)

    @settings(max_examples=200)
    @given(nonempty, nonempty)
    def test_weighted_total_oracle(self, a, b):
        assert weighted_mi_total(a, b) == pytest.approx(oracles.naive_pwmis(a, b), rel=1e-9, abs=1e-9)

    @settings(max_examples=200)
    @given(nonempty, nonempty)
    def test_shift_total_oracle(self, a, b):
        assert mi_shift_total(a, b) == pytest.approx(
            oracles.naive_mi_shift_total(a, b), rel=1e-9, abs=1e-9
        )

    @settings(max_examples=100)
    @given(nonempty_wide, nonempty_wide)
    def test_totals_match_per_shift_sums(self, a, b):
        total = sum(weighted_mi(a, b, d) for d in range(max(len(a), len(b))))
        assert weighted_mi_total(a, b) == pytest.approx(total, rel=1e-9, abs=1e-9)
        total2 = sum(mi_shifted(a, b, d) for d in range(max(len(a), len(b))))
        assert mi_shift_total(a, b) == pytest.approx(total2, rel=1e-9, abs=1e-9)

    @given(nonempty)
    def test_weighting_strictly_helps_on_identical(self, a):
        heavy = weighted_mi_total(a, a)
        flat = weighted_mi_total(a, a, MiConfig(weight=1.0))
        if mutual_information(a, a) > 0:
            assert heavy > flat
        else:
            assert heavy == pytest.approx(flat)
