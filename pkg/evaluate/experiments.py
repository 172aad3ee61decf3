"""
Model-selection experiments: the activation x optimizer sweep, the feature-count experiment and
the cross-family classifier comparison. Every experiment shares one stratified split per seed.
"""

__all__ = ['SweepResult', 'ExperimentRunner', 'DEFAULT_ACTIVATIONS', 'DEFAULT_OPTIMIZERS', 'EXTRA_FEATURES']

import sys
from dataclasses import dataclass, replace
from itertools import product
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

PROJECT_ROOT = Path(__file__).resolve().parent.parent
if str(PROJECT_ROOT) not in sys.path:
    sys.path.append(str(PROJECT_ROOT))

from configs.label_config import PREFERRED_FEATURES
from evaluate.data_splitter import DataSplitter
from evaluate.evaluator import Evaluator
from models import ModelKind, MlpClassifier, MlpSpec
from transform.feature_selection import FeatureSelector
from transform.feature_transform import FeatureTable
from utilidades.errors import TrainingError
from utilidades.parallel_utils import map_ordered
from utilidades.progress_utils import log_status

DEFAULT_ACTIVATIONS = ("relu", "sigmoid", "tanh")
DEFAULT_OPTIMIZERS = ("adam", "adadelta", "adagrad", "adamax", "ftrl", "nadam", "rmsprop", "sgd")
#added one at a time after the 26 preferred features
EXTRA_FEATURES = ("mfcc21", "mfcc22")


@dataclass
class SweepResult:
    """Holdout accuracy per (activation, optimizer); failed cells are NaN with their error kept."""
    activations: List[str]
    optimizers: List[str]
    accuracies: np.ndarray
    errors: Dict[Tuple[str, str], str]

    @property
    def n_cells(self) -> int:
        return self.accuracies.size

    def best(self) -> Tuple[str, str, float]:
        i, j = np.unravel_index(np.nanargmax(self.accuracies), self.accuracies.shape)
        return self.activations[i], self.optimizers[j], float(self.accuracies[i, j])

    def to_frame(self) -> pd.DataFrame:
        """One row per activation, one column per optimizer."""
        frame = pd.DataFrame(self.accuracies, columns=self.optimizers)
        frame.insert(0, 'activation', self.activations)
        return frame


class ExperimentRunner:

    def __init__(self, test_fraction: float = 0.2, threads: int = 1, quiet: bool = True):
        self.test_fraction = test_fraction
        self.threads = threads
        self.quiet = quiet
        self.splitter = DataSplitter(quiet=True)
        self.evaluator = Evaluator(threads=threads, quiet=True)

    def activation_optimizer_sweep(self, table: FeatureTable, activations: Sequence[str] = DEFAULT_ACTIVATIONS,
                                   optimizers: Sequence[str] = DEFAULT_OPTIMIZERS, seed: int = 0,
                                   base_spec: Optional[MlpSpec] = None) -> SweepResult:
        """
        Trains one MLP per (activation, optimizer) cell on a shared split, every cell with ``seed``.

        A cell whose training diverges is recorded in ``errors`` and left empty; the sweep goes on.
        """
        base_spec = base_spec or MlpSpec()
        train, test = self.splitter.stratified_split(table, self.test_fraction, seed)
        cells = list(product(activations, optimizers))

        def run_cell(cell: Tuple[str, str]):
            activation, optimizer = cell
            spec = replace(base_spec, activation=activation, optimizer=optimizer, seed=seed)
            try:
                model = MlpClassifier(spec, quiet=True).fit(train)
            except TrainingError as e:
                return None, str(e)
            return self.evaluator.evaluate(model, test, seed=seed).accuracy, None

        log_status(f"🧮 Sweeping {len(cells)} activation x optimizer cells", self.quiet)
        outcomes = map_ordered(run_cell, cells, threads=self.threads, message="Sweep", quiet=self.quiet)

        accuracies = np.full((len(activations), len(optimizers)), np.nan)
        errors = {}
        for (activation, optimizer), (accuracy, error) in zip(cells, outcomes):
            i, j = list(activations).index(activation), list(optimizers).index(optimizer)
            if error is None:
                accuracies[i, j] = accuracy
            else:
                errors[(activation, optimizer)] = error
                log_status(f"⚠️  {activation}/{optimizer} failed: {error}", self.quiet)

        return SweepResult(activations=list(activations), optimizers=list(optimizers),
                           accuracies=accuracies, errors=errors)

    def feature_count_experiment(self, table: FeatureTable, seed: int = 0, spec: Optional[MlpSpec] = None,
                                 base_features: Sequence[str] = tuple(PREFERRED_FEATURES),
                                 extra_features: Sequence[str] = EXTRA_FEATURES) -> pd.DataFrame:
        """
        Holdout MLP accuracy on the base features, then with each extra feature added in turn.

        Returns:
            pd.DataFrame: Rows ``n_features, added_feature, accuracy``; the first row has no added feature.

        Raises:
            SelectionError: A base or extra feature is not a column of the table.
        """
        spec = replace(spec or MlpSpec(), seed=seed)
        rows = []
        for n_extra in range(len(extra_features) + 1):
            names = list(base_features) + list(extra_features[:n_extra])
            reduced = FeatureSelector.select_by_name(table, names)
            model, report = self.evaluator.train_and_evaluate(ModelKind.MLP, self.hyperparams(spec), reduced,
                                                              self.test_fraction, seed)
            rows.append({
                'n_features': len(names),
                'added_feature': extra_features[n_extra - 1] if n_extra else "",
                'accuracy': report.accuracy,
            })
            log_status(f"   {len(names)} features: accuracy {report.accuracy:.4f}", self.quiet)
        return pd.DataFrame(rows)

    @staticmethod
    def hyperparams(spec: MlpSpec) -> Dict[str, Any]:
        return MlpClassifier(spec).hyperparams()

    def compare_classifiers(self, table: FeatureTable, hyperparams: Dict[str, Dict[str, Any]],
                            seed: int = 0, kfold: Optional[int] = 10) -> pd.DataFrame:
        """
        Holdout and k-fold accuracy of several classifier families on the same split and folds.

        Args:
            table (FeatureTable): Feature table, already reduced to the wanted features.
            hyperparams (dict): Model kind -> hyperparameters, in report order.
            seed (int): Split, fold and model seed.
            kfold (int, optional): Folds for cross-validation; None skips it.

        Returns:
            pd.DataFrame: Rows ``model_kind, holdout_accuracy, cv_mean_accuracy, cv_std_accuracy``.
        """
        rows = []
        for kind, params in hyperparams.items():
            kind = ModelKind.parse(kind)
            log_status(f"⚖️  Comparing {kind.value}", self.quiet)
            _, holdout = self.evaluator.train_and_evaluate(kind, params, table, self.test_fraction, seed)
            row = {'model_kind': kind.value, 'holdout_accuracy': holdout.accuracy,
                   'cv_mean_accuracy': np.nan, 'cv_std_accuracy': np.nan}
            if kfold:
                folds = self.evaluator.cross_validate(kind, params, table, kfold, seed).fold_accuracies
                row['cv_mean_accuracy'] = float(np.mean(folds))
                row['cv_std_accuracy'] = float(np.std(folds))
            rows.append(row)
        return pd.DataFrame(rows)
