import itertools

import pytest
from hypothesis import given, settings, strategies as st

from simstring.com import (
    build_cooccurrence,
    count_at,
    distance_balance,
    position_score,
    prob_at,
    prob_over_distances,
    total_position_score,
)
from simstring.strings import SymbolString

import oracles


def s(text):
    return SymbolString.from_text(text)


nonempty = st.lists(st.integers(min_value=0, max_value=4), min_size=1, max_size=12).map(SymbolString)
anystr = st.lists(st.integers(min_value=0, max_value=4), min_size=0, max_size=12).map(SymbolString)


class TestBuild:
    def test_three_a_cooccurrences(self):
        t = build_cooccurrence(s("aaabb"), s("aaabc"))
        assert t.counts[(ord("a"), 0)] == 3

    def test_one_b_cooccurrence(self):
        t = build_cooccurrence(s("aaabb"), s("aaabc"))
        assert t.counts[(ord("b"), 0)] == 1

    def test_disjoint_alphabets_empty(self):
        t = build_cooccurrence(s("ab"), s("xy"))
        assert not t.counts

    def test_empty_w1_rejected(self):
        with pytest.raises(ValueError):
            build_cooccurrence(s(""), s("ab"))

    def test_empty_w2_allowed(self):
        t = build_cooccurrence(s("ab"), s(""))
        assert not t.counts and t.len2 == 0


class TestCountAt:
    def test_first_position(self):
        t = build_cooccurrence(s("aaabb"), s("aaabc"))
        assert count_at(t, 0, 0) == 3

    def test_fourth_position(self):
        t = build_cooccurrence(s("aaabb"), s("aaabc"))
        assert count_at(t, 3, 0) == 1

    def test_shifted_miss(self):
        t = build_cooccurrence(s("ab"), s("ab"))
        assert count_at(t, 0, 1) == 0

    def test_bounds(self):
        t = build_cooccurrence(s("ab"), s("ab"))
        with pytest.raises(IndexError):
            count_at(t, 2, 0)
        with pytest.raises(IndexError):
            count_at(t, 0, 2)
        with pytest.raises(IndexError):
            count_at(t, -1, 0)
        with pytest.raises(IndexError):
            count_at(t, 0, -1)


class TestProbAt:
    def test_worked_values(self):
        t = build_cooccurrence(s("aaabb"), s("aaabc"))
        assert prob_at(t, 0, 0) == pytest.approx(3 / 5)
        assert prob_at(t, 3, 0) == pytest.approx(1 / 5)

    def test_identical_single_symbol(self):
        t = build_cooccurrence(s("aaa"), s("aaa"))
        assert prob_at(t, 0, 0) == pytest.approx(1.0)


class TestProbOverDistances:
    def test_two_symbols(self):
        t = build_cooccurrence(s("ab"), s("ab"))
        assert prob_over_distances(t, 0) == pytest.approx(0.5)

    def test_may_exceed_one(self):
        t = build_cooccurrence(s("aa"), s("aa"))
        assert prob_over_distances(t, 0) == pytest.approx(1.5)

    def test_disjoint(self):
        t = build_cooccurrence(s("a"), s("x"))
        assert prob_over_distances(t, 0) == 0.0

    def test_bounds(self):
        t = build_cooccurrence(s("ab"), s("ab"))
        with pytest.raises(IndexError):
            prob_over_distances(t, 2)


class TestPositionScore:
    def test_all_penalties(self):
        t = build_cooccurrence(s("abc"), s("xyz"))
        assert position_score(t, 0) == pytest.approx(-3.0)

    def test_mixed(self):
        t = build_cooccurrence(s("aaabb"), s("aaabc"))
        assert position_score(t, 0) == pytest.approx(1.0)

    def test_identical_repeat(self):
        t = build_cooccurrence(s("aa"), s("aa"))
        assert position_score(t, 0) == pytest.approx(2.0)


class TestTotalPositionScore:
    def test_all_penalties(self):
        assert total_position_score(build_cooccurrence(s("abc"), s("xyz"))) == pytest.approx(-9.0)

    def test_single(self):
        assert total_position_score(build_cooccurrence(s("a"), s("a"))) == pytest.approx(1.0)

    def test_repeat_pair(self):
        assert total_position_score(build_cooccurrence(s("aa"), s("aa"))) == pytest.approx(3.0)


class TestDistanceBalance:
    def test_repeat_pair(self):
        assert distance_balance(build_cooccurrence(s("aa"), s("aa"))) == pytest.approx(2.0)

    def test_disjoint(self):
        assert distance_balance(build_cooccurrence(s("ab"), s("xy"))) == pytest.approx(0.0)

    def test_short_w1_is_zero(self):
        assert distance_balance(build_cooccurrence(s("a"), s("abc"))) == 0.0

    def test_linear_in_halves_at_unit_exponent(self):
        # g=1 collapses to the difference of the two half-sums
        t = build_cooccurrence(s("abab"), s("abab"))
        near = sum(t.column_by_distance.get(d, 0) for d in range(2))
        far = sum(t.column_by_distance.get(d + 2, 0) for d in range(2))
        assert distance_balance(t, 1.0) == pytest.approx(near - far)


class TestInvariants:
    @given(nonempty, anystr)
    @settings(max_examples=300, deadline=None)
    def test_counts_bounded_by_occurrences(self, w1, w2):
        t = build_cooccurrence(w1, w2)
        occ1, occ2 = {}, {}
        for c in w1:
            occ1[c] = occ1.get(c, 0) + 1
        for c in w2:
            occ2[c] = occ2.get(c, 0) + 1
        for (c, d), n in t.counts.items():
            assert 0 <= d < len(w1)
            assert 1 <= n <= min(occ1[c], occ2.get(c, 0))

    @given(nonempty, anystr, st.data())
    @settings(max_examples=300, deadline=None)
    def test_prob_in_unit_interval(self, w1, w2, data):
        t = build_cooccurrence(w1, w2)
        p = data.draw(st.integers(0, len(w1) - 1))
        d = data.draw(st.integers(0, len(w1) - 1))
        assert 0.0 <= prob_at(t, p, d) <= 1.0

    @given(nonempty, nonempty)
    @settings(max_examples=300, deadline=None)
    def test_score_floors(self, w1, w2):
        t = build_cooccurrence(w1, w2)
        disjoint = not (set(w1) & set(w2))
        for d in range(len(w2)):
            score = position_score(t, d)
            assert score >= -len(w2) - 1e-9
            if disjoint:
                assert score == pytest.approx(-len(w2))
        total = total_position_score(t)
        assert total >= -len(w2) ** 2 - 1e-9
        if disjoint:
            assert total == pytest.approx(-(len(w2) ** 2))

    def test_self_table_counts_occurrences_exhaustive(self):
        # every string of length <= 5 over a 3-symbol alphabet
        for n in range(1, 6):
            for tup in itertools.product((0, 1, 2), repeat=n):
                w = SymbolString(tup)
                t = build_cooccurrence(w, w)
                occ = {}
                for c in tup:
                    occ[c] = occ.get(c, 0) + 1
                for p in range(n):
                    assert count_at(t, p, 0) == occ[tup[p]]


class TestOracleEquivalence:
    @given(nonempty, anystr)
    @settings(max_examples=400, deadline=None)
    def test_full_table(self, w1, w2):
        t = build_cooccurrence(w1, w2)
        expected = oracles.naive_com_counts(w1, w2)
        assert dict(t.counts) == {k: v for k, v in expected.items() if v}

    @given(nonempty, anystr, st.data())
    @settings(max_examples=300, deadline=None)
    def test_prob_ops(self, w1, w2, data):
        t = build_cooccurrence(w1, w2)
        p = data.draw(st.integers(0, len(w1) - 1))
        d = data.draw(st.integers(0, len(w1) - 1))
        assert prob_at(t, p, d) == pytest.approx(oracles.naive_cop(w1, w2, p, d))
        assert prob_over_distances(t, p) == pytest.approx(oracles.naive_acop(w1, w2, p))

    @given(nonempty, nonempty, st.data())
    @settings(max_examples=300, deadline=None)
    def test_position_scores(self, w1, w2, data):
        t = build_cooccurrence(w1, w2)
        d = data.draw(st.integers(0, len(w2) - 1))
        assert position_score(t, d) == pytest.approx(oracles.naive_ps(w1, w2, d))
        assert total_position_score(t) == pytest.approx(oracles.naive_tps(w1, w2))

    @given(nonempty, anystr, st.sampled_from([1.0, 2.0, 3.0]))
    @settings(max_examples=300, deadline=None)
    def test_distance_balance(self, w1, w2, g):
        t = build_cooccurrence(w1, w2)
        assert distance_balance(t, g) == pytest.approx(oracles.naive_cod(w1, w2, g))
