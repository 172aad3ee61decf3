import itertools
import math

import numpy as np
import pandas as pd
import pytest

from conftest import make_table
from configs.label_config import PREFERRED_FEATURES
from transform.feature_selection import PERFECT_SEPARATION, FeatureSelector, SelectionMethod
from transform.feature_transform import FeatureTable
from utilidades.errors import SelectionError


def brute_force_tau(x, y) -> float:
    concordant = discordant = 0
    for i, j in itertools.combinations(range(len(x)), 2):
        product = (x[i] - x[j]) * (y[i] - y[j])
        concordant += product > 0
        discordant += product < 0
    return (concordant - discordant) / (concordant + discordant)


class TestKendallTau:

    def test_known_value(self):
        assert FeatureSelector.kendall_tau([1, 2, 3, 4], [1, 3, 2, 4]) == pytest.approx(4 / 6)

    def test_perfect_agreement_and_reversal(self):
        assert FeatureSelector.kendall_tau([1, 2, 3], [10, 20, 30]) == 1.0
        assert FeatureSelector.kendall_tau([1, 2, 3], [30, 20, 10]) == -1.0

    def test_sampled_sequences_match_pair_enumeration(self):
        rng = np.random.default_rng(7)
        checked = 0
        for _ in range(10_000):
            n = int(rng.integers(2, 13))
            x = rng.integers(0, 4, size=n).astype(float)
            y = rng.integers(0, 4, size=n).astype(float)
            if not any((x[i] - x[j]) * (y[i] - y[j]) for i, j in itertools.combinations(range(n), 2)):
                with pytest.raises(SelectionError):
                    FeatureSelector.kendall_tau(x, y)
                continue
            assert FeatureSelector.kendall_tau(x, y) == pytest.approx(brute_force_tau(x, y), abs=1e-12)
            checked += 1
        assert checked > 9_000

    @pytest.mark.parametrize("seed", range(20))
    def test_antisymmetry(self, seed):
        rng = np.random.default_rng(seed)
        x = rng.normal(size=25)
        for y in (rng.normal(size=25), rng.integers(0, 2, size=25).astype(float)):
            assert FeatureSelector.kendall_tau(x, -y) == pytest.approx(-FeatureSelector.kendall_tau(x, y), abs=1e-12)

    @pytest.mark.parametrize("seed", range(20))
    def test_monotone_transforms_leave_tau_unchanged(self, seed):
        rng = np.random.default_rng(50 + seed)
        x = rng.normal(size=30)
        y = rng.integers(0, 2, size=30).astype(float)
        y[:2] = [0.0, 1.0]
        tau = FeatureSelector.kendall_tau(x, y)
        for transformed in (np.exp(x), x ** 3 + 2.0 * x, 10.0 * x - 4.0):
            assert FeatureSelector.kendall_tau(transformed, y) == pytest.approx(tau, abs=1e-12)

    @pytest.mark.parametrize("seed", range(6))
    def test_matches_pair_enumeration(self, seed):
        rng = np.random.default_rng(seed)
        x = rng.integers(0, 5, size=12).astype(float)
        y = rng.integers(0, 4, size=12).astype(float)
        assert FeatureSelector.kendall_tau(x, y) == pytest.approx(brute_force_tau(x, y))

    @pytest.mark.parametrize("seed", range(4))
    def test_binary_labels_match_pair_enumeration(self, seed):
        rng = np.random.default_rng(100 + seed)
        x = rng.integers(0, 6, size=15).astype(float)
        y = np.r_[np.zeros(7), np.ones(8)]
        assert FeatureSelector.kendall_tau(x, y) == pytest.approx(brute_force_tau(x, y))

    def test_all_pairs_tied(self):
        with pytest.raises(SelectionError):
            FeatureSelector.kendall_tau([1, 1, 1], [0, 1, 0])

    def test_bad_input(self):
        with pytest.raises(SelectionError):
            FeatureSelector.kendall_tau([1], [1])
        with pytest.raises(SelectionError):
            FeatureSelector.kendall_tau([1, 2, 3], [1, 2])


class TestAnova:

    def test_known_value(self):
        assert FeatureSelector.anova_f([1, 2, 3, 4, 5, 6], [0, 0, 0, 1, 1, 1]) == pytest.approx(13.5)

    def test_equal_means_score_zero(self):
        assert FeatureSelector.anova_f([1, 2, 3, 3, 2, 1], [0, 0, 0, 1, 1, 1]) == 0.0

    def test_perfect_separation(self):
        assert FeatureSelector.anova_f([1, 1, 5, 5], [0, 0, 1, 1]) == PERFECT_SEPARATION
        assert math.isinf(PERFECT_SEPARATION)

    def test_matches_sums_of_squares(self):
        rng = np.random.default_rng(3)
        for _ in range(1000):
            n0, n1 = (int(v) for v in rng.integers(2, 20, size=2))
            a = rng.normal(rng.normal(), rng.uniform(0.1, 3.0), size=n0)
            b = rng.normal(rng.normal(), rng.uniform(0.1, 3.0), size=n1)
            values = np.concatenate([a, b]).tolist()
            grand = sum(values) / len(values)
            mean_a, mean_b = sum(a) / n0, sum(b) / n1
            ss_between = n0 * (mean_a - grand) ** 2 + n1 * (mean_b - grand) ** 2
            ss_within = sum((v - mean_a) ** 2 for v in a) + sum((v - mean_b) ** 2 for v in b)
            expected = ss_between / (ss_within / (n0 + n1 - 2))
            labels = [0] * n0 + [1] * n1
            assert FeatureSelector.anova_f(values, labels) == pytest.approx(expected, rel=1e-9, abs=1e-12)

    @pytest.mark.parametrize("scale, shift", [(3.0, 1.0), (-0.5, 100.0), (1e3, -7.0)])
    def test_affine_transforms_leave_f_unchanged(self, scale, shift):
        rng = np.random.default_rng(11)
        values = rng.normal(size=40)
        values[20:] += 0.8
        labels = np.r_[np.zeros(20), np.ones(20)].astype(int)
        f = FeatureSelector.anova_f(values, labels)
        assert FeatureSelector.anova_f(scale * values + shift, labels) == pytest.approx(f, rel=1e-9)

    def test_undefined_and_invalid(self):
        with pytest.raises(SelectionError):
            FeatureSelector.anova_f([2, 2, 2, 2], [0, 0, 1, 1])
        with pytest.raises(SelectionError):
            FeatureSelector.anova_f([1, 2], [0, 1])
        with pytest.raises(SelectionError):
            FeatureSelector.anova_f([1, 2, 3], [0, 0, 0])


class TestRanking:

    @pytest.mark.parametrize("method", list(SelectionMethod))
    def test_informative_feature_ranks_first(self, separable_table, method):
        report = FeatureSelector().rank_features(separable_table, method)
        assert report.ranking[0] == "f0"
        assert sorted(report.ranking) == sorted(separable_table.feature_names)
        assert not report.failures

    def test_constant_feature_is_ranked_last(self):
        table = make_table()
        frame = table.frame.assign(const=1.0)
        report = FeatureSelector().rank_features(FeatureTable(frame))
        assert report.ranking[-1] == "const"
        assert "const" in report.failures
        out = report.to_frame()
        assert list(out.columns) == ['feature', 'score', 'rank']
        assert pd.isna(out['score'].iloc[-1])
        assert out['rank'].tolist() == list(range(1, len(out) + 1))

    def test_tau_ranks_by_signed_value(self):
        table = make_table()
        #a feature that falls towards NoBee gets a negative tau
        frame = table.frame.assign(flipped=-table.frame['f0'])
        report = FeatureSelector().rank_features(FeatureTable(frame), SelectionMethod.KENDALL_TAU)
        assert report.scores["flipped"] == pytest.approx(-report.scores["f0"])
        assert report.ranking[-1] == "flipped"

    def test_threads_give_same_report(self, separable_table):
        single = FeatureSelector(threads=1).rank_features(separable_table)
        multi = FeatureSelector(threads=4).rank_features(separable_table)
        assert single.ranking == multi.ranking
        assert single.scores == multi.scores

    def test_single_class_table(self):
        with pytest.raises(SelectionError):
            FeatureSelector().rank_features(make_table(n_nobee=0))


class TestSelect:

    def test_k_one_keeps_the_informative_feature(self, separable_table):
        reduced = FeatureSelector().select_k_best(separable_table, 1)
        assert reduced.feature_names == ["f0"]
        assert reduced.source_ids == separable_table.source_ids

    def test_all_features_is_identity(self, separable_table):
        reduced = FeatureSelector().select_k_best(separable_table, 6)
        assert reduced.feature_names == separable_table.feature_names
        assert np.array_equal(reduced.X, separable_table.X)

    def test_kept_columns_follow_table_order(self, separable_table):
        reduced = FeatureSelector().select_k_best(separable_table, 3)
        order = [separable_table.feature_names.index(n) for n in reduced.feature_names]
        assert order == sorted(order)

    @pytest.mark.parametrize("k", [0, 7])
    def test_k_out_of_range(self, separable_table, k):
        with pytest.raises(SelectionError):
            FeatureSelector().select_k_best(separable_table, k)

    def test_select_by_name(self, separable_table):
        reduced = FeatureSelector.select_by_name(separable_table, ["f3", "f1"])
        assert reduced.feature_names == ["f1", "f3"]
        with pytest.raises(SelectionError):
            FeatureSelector.select_by_name(separable_table, ["f1", "mfcc1"])

    def test_preferred_features(self):
        assert len(PREFERRED_FEATURES) == 26
        assert PREFERRED_FEATURES[-1] == "mfcc20"
