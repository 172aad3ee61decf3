import numpy as np
import pytest

from conftest import make_table
from configs.label_config import Label
from evaluate import DataSplitter, EvalReport, Evaluator, accuracy, confusion
from models import TreeClassifier
from utilidades.errors import EvaluationError, FeatureMismatchError

B, N = Label.BEE, Label.NOBEE


class TestMetrics:

    def test_accuracy_and_confusion(self):
        preds, labels = [B, B, N, N], [B, N, N, N]
        assert accuracy(preds, labels) == 0.75
        assert confusion(preds, labels).tolist() == [[1, 0], [1, 2]]

    def test_mixed_label_forms(self):
        assert accuracy(["bee", 1, N], [0, "NoBee", "nobee"]) == 1.0

    def test_errors(self):
        with pytest.raises(EvaluationError):
            accuracy([B], [B, N])
        with pytest.raises(EvaluationError):
            confusion([], [])
        with pytest.raises(EvaluationError):
            accuracy([2], [1])

    def test_report_consistency(self):
        report = EvalReport.from_predictions([B, B, N, N], [B, N, N, N], seed=3, model_kind="gnb", k_features=26)
        assert report.accuracy == 0.75
        assert report.n_rows == 4
        row = report.to_frame().iloc[0]
        assert row['nobee_as_bee'] == 1
        assert row['fold_accuracies'] == ""
        with pytest.raises(EvaluationError):
            EvalReport(accuracy=0.5, confusion=[[1, 0], [1, 2]], seed=0, model_kind="gnb", k_features=1)


class TestSplits:

    def test_stratified_split(self, separable_table):
        train, test = DataSplitter().stratified_split_indices(separable_table, 0.2, seed=5)
        assert train.size + test.size == 60
        assert not set(train) & set(test)
        y = separable_table.y
        assert (y[test] == 0).sum() == 6 and (y[test] == 1).sum() == 6

    def test_split_is_reproducible(self, separable_table):
        splitter = DataSplitter()
        first = splitter.stratified_split_indices(separable_table, 0.2, seed=1)
        again = splitter.stratified_split_indices(separable_table, 0.2, seed=1)
        other = splitter.stratified_split_indices(separable_table, 0.2, seed=2)
        assert np.array_equal(first[1], again[1])
        assert not np.array_equal(first[1], other[1])

    def test_each_side_keeps_every_class(self):
        table = make_table(n_bee=2, n_nobee=10)
        train, test = DataSplitter().stratified_split(table, 0.2, seed=0)
        assert train.class_counts()[B] == 1 and test.class_counts()[B] == 1

    @pytest.mark.parametrize("fraction", [0.0, 1.0, -0.1])
    def test_fraction_out_of_range(self, separable_table, fraction):
        with pytest.raises(EvaluationError):
            DataSplitter().stratified_split_indices(separable_table, fraction)

    def test_tiny_class(self):
        with pytest.raises(EvaluationError):
            DataSplitter().stratified_split_indices(make_table(n_bee=1, n_nobee=5), 0.2)

    def test_kfold_partitions_rows(self, separable_table):
        folds = DataSplitter().kfold_indices(separable_table, k=7, seed=0)
        validation = np.concatenate([v for _, v in folds])
        assert sorted(validation.tolist()) == list(range(60))
        sizes = [v.size for _, v in folds]
        assert max(sizes) - min(sizes) <= 1
        for train, v in folds:
            assert train.size + v.size == 60

    def test_leave_one_out(self):
        table = make_table(n_bee=3, n_nobee=3)
        folds = DataSplitter().kfold_indices(table, k=6)
        assert all(v.size == 1 for _, v in folds)

    def test_bad_k(self, separable_table):
        with pytest.raises(EvaluationError):
            DataSplitter().kfold_indices(separable_table, k=61)
        with pytest.raises(EvaluationError):
            DataSplitter().kfold_indices(separable_table, k=1)


class TestEvaluator:

    def test_holdout(self, separable_table):
        model, report = Evaluator().train_and_evaluate("gnb", {}, separable_table, seed=0)
        assert report.n_rows == 12
        assert report.protocol == "holdout"
        assert report.accuracy >= 0.8
        assert model.kind.value == "gnb"

    def test_cross_validation(self, separable_table):
        report = Evaluator().cross_validate("tree", {"max_depth": 3}, separable_table, k=5, seed=0)
        assert report.n_rows == 60
        assert report.protocol == "kfold5"
        assert len(report.fold_accuracies) == 5
        assert report.accuracy == pytest.approx(np.trace(report.confusion) / 60)

    def test_cross_validation_threads(self, separable_table):
        single = Evaluator(threads=1).cross_validate("gnb", {}, separable_table, k=4, seed=2)
        multi = Evaluator(threads=3).cross_validate("gnb", {}, separable_table, k=4, seed=2)
        assert single.fold_accuracies == multi.fold_accuracies
        assert np.array_equal(single.confusion, multi.confusion)

    def test_mismatched_table(self, separable_table):
        model = TreeClassifier().fit(separable_table)
        with pytest.raises(FeatureMismatchError):
            Evaluator().evaluate(model, separable_table.select_columns(["f0"]))
