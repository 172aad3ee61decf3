__all__ = ['Evaluator']

import sys
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

import numpy as np

PROJECT_ROOT = Path(__file__).resolve().parent.parent
if str(PROJECT_ROOT) not in sys.path:
    sys.path.append(str(PROJECT_ROOT))

from evaluate._metrics import EvalReport, confusion
from evaluate.data_splitter import DataSplitter
from models import ModelKind, TrainedModel, build_classifier, predict_table
from transform.feature_transform import FeatureTable
from utilidades.parallel_utils import map_ordered
from utilidades.progress_utils import log_status


class Evaluator:
    """
    Holdout and k-fold evaluation of the classifier families.

    Models are described by ``(kind, hyperparams)`` so each fold can build a fresh classifier.
    """

    def __init__(self, threads: int = 1, quiet: bool = True):
        self.threads = threads
        self.quiet = quiet
        self.splitter = DataSplitter(quiet=quiet)

    def evaluate(self, model: TrainedModel, table: FeatureTable, seed: int = 0,
                 protocol: str = "holdout") -> EvalReport:
        """
        Scores a trained model on every row of ``table``.

        Raises:
            FeatureMismatchError: Table columns differ from the model's feature names.
        """
        predictions = predict_table(model, table)
        report = EvalReport.from_predictions([p.label for p in predictions], table.labels, seed=seed,
                                             model_kind=model.kind.value,
                                             k_features=len(model.feature_names), protocol=protocol)
        log_status(f"🎯 {model.kind.value} {protocol} accuracy: {report.accuracy:.4f} on {report.n_rows} rows", self.quiet)
        return report

    def train_and_evaluate(self, kind: str, hyperparams: Optional[Dict[str, Any]], table: FeatureTable,
                           test_fraction: float = 0.2, seed: int = 0) -> Tuple[TrainedModel, EvalReport]:
        """Trains on the stratified training partition and evaluates on the held-out rows."""
        train, test = self.splitter.stratified_split(table, test_fraction, seed)
        model = build_classifier(kind, hyperparams, threads=self.threads, quiet=self.quiet).fit(train)
        return model, self.evaluate(model, test, seed=seed, protocol="holdout")

    def cross_validate(self, kind: str, hyperparams: Optional[Dict[str, Any]], table: FeatureTable,
                       k: int = 10, seed: int = 0) -> EvalReport:
        """
        Stratified k-fold cross-validation.

        Folds may train concurrently; the pooled confusion and ``fold_accuracies`` are in fold order.
        """
        kind = ModelKind.parse(kind)
        folds = self.splitter.kfold(table, k, seed)

        def run_fold(fold: Tuple[FeatureTable, FeatureTable]) -> np.ndarray:
            train, validation = fold
            #folds already run in parallel, trees stay sequential
            model = build_classifier(kind, hyperparams, threads=1, quiet=True).fit(train)
            predictions = predict_table(model, validation)
            return confusion([p.label for p in predictions], validation.labels)

        log_status(f"🔁 {k}-fold cross-validation of {kind.value}", self.quiet)
        matrices = map_ordered(run_fold, folds, threads=self.threads, message="Cross-validating", quiet=self.quiet)

        pooled = np.sum(matrices, axis=0)
        fold_accuracies = [float(np.trace(m) / m.sum()) for m in matrices]
        report = EvalReport(accuracy=float(np.trace(pooled) / pooled.sum()), confusion=pooled, seed=seed,
                            model_kind=kind.value, k_features=len(table.feature_names),
                            protocol=f"kfold{k}", fold_accuracies=fold_accuracies)
        log_status(f"🎯 {kind.value} {k}-fold accuracy: {report.accuracy:.4f} "
                   f"(fold mean {np.mean(fold_accuracies):.4f} ± {np.std(fold_accuracies):.4f})", self.quiet)
        return report
