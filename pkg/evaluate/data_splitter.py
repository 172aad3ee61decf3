__all__ = ['DataSplitter']

import sys
from pathlib import Path
from typing import List, Tuple

import numpy as np

PROJECT_ROOT = Path(__file__).resolve().parent.parent
if str(PROJECT_ROOT) not in sys.path:
    sys.path.append(str(PROJECT_ROOT))

from configs.label_config import Label
from transform.feature_transform import FeatureTable
from utilidades.errors import EvaluationError
from utilidades.progress_utils import log_status
from utilidades.random_utils import make_rng


class DataSplitter:
    """
    Stratified holdout splits and k-fold partitions of a FeatureTable.

    Both draw one permutation per class from ``seed`` (Bee first, then NoBee), so membership is
    reproducible for a given seed and table.
    """

    def __init__(self, quiet: bool = True):
        self.quiet = quiet

    @staticmethod
    def _class_permutations(y: np.ndarray, seed: int) -> List[np.ndarray]:
        rng = make_rng(seed)
        return [rng.permutation(np.nonzero(y == label.encoded)[0]) for label in Label]

    def stratified_split_indices(self, table: FeatureTable, test_fraction: float = 0.2,
                                 seed: int = 0) -> Tuple[np.ndarray, np.ndarray]:
        """
        Sorted (train, test) row indices.

        Each class contributes ``round(count * test_fraction)`` rows to the test set, clamped so both
        sides keep at least one row of the class.

        Raises:
            EvaluationError: test_fraction outside (0, 1) or a class with fewer than 2 rows.
        """
        if not 0.0 < test_fraction < 1.0:
            raise EvaluationError(f"test_fraction must be in (0, 1), got {test_fraction}")

        test_parts = []
        for label, permutation in zip(Label, self._class_permutations(table.y, seed)):
            count = permutation.size
            if count < 2:
                raise EvaluationError(f"class {label.value} has {count} row(s); a stratified split needs at least 2")
            n_test = min(max(int(np.floor(count * test_fraction + 0.5)), 1), count - 1)
            test_parts.append(permutation[:n_test])

        test = np.sort(np.concatenate(test_parts))
        train = np.setdiff1d(np.arange(len(table)), test)
        return train, test

    def stratified_split(self, table: FeatureTable, test_fraction: float = 0.2,
                         seed: int = 0) -> Tuple[FeatureTable, FeatureTable]:
        """(train, test) tables; rows keep their original relative order."""
        train, test = self.stratified_split_indices(table, test_fraction, seed)
        log_status(f"✂️  Stratified split: {train.size} train / {test.size} test rows (seed {seed})", self.quiet)
        return table.take(train), table.take(test)

    def kfold_indices(self, table: FeatureTable, k: int = 10, seed: int = 0) -> List[Tuple[np.ndarray, np.ndarray]]:
        """
        Stratified folds as sorted (train, validation) index pairs, in fold order.

        The class permutations are laid end to end and position i goes to fold ``i mod k``, so
        fold sizes differ by at most one and each class is spread as evenly as possible.

        Raises:
            EvaluationError: k < 2 or k greater than the row count.
        """
        n = len(table)
        if k < 2:
            raise EvaluationError(f"k must be >= 2, got {k}")
        if k > n:
            raise EvaluationError(f"k={k} exceeds the {n} rows of the table")

        permutations = self._class_permutations(table.y, seed)
        for label, permutation in zip(Label, permutations):
            if 0 < permutation.size < k:
                log_status(f"⚠️  class {label.value} has {permutation.size} rows, fewer than k={k}: "
                           f"some folds will not contain it", self.quiet)

        order = np.concatenate(permutations)
        fold_of = np.empty(n, dtype=np.int64)
        fold_of[order] = np.arange(n) % k

        folds = []
        for fold in range(k):
            validation = np.nonzero(fold_of == fold)[0]
            train = np.nonzero(fold_of != fold)[0]
            folds.append((train, validation))
        return folds

    def kfold(self, table: FeatureTable, k: int = 10, seed: int = 0) -> List[Tuple[FeatureTable, FeatureTable]]:
        return [(table.take(train), table.take(validation))
                for train, validation in self.kfold_indices(table, k, seed)]
