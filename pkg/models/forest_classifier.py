__all__ = ['ForestClassifier']

import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

import numpy as np

PROJECT_ROOT = Path(__file__).resolve().parent.parent
if str(PROJECT_ROOT) not in sys.path:
    sys.path.append(str(PROJECT_ROOT))

from configs.label_config import Label
from models._base_classifier import BaseClassifier, ModelKind, TrainedModel
from models.tree_classifier import LEAF, TREE_ARRAYS, Criterion, apply_tree, grow_tree, resolve_max_features
from utilidades.errors import ConfigError
from utilidades.parallel_utils import map_ordered
from utilidades.progress_utils import log_status
from utilidades.random_utils import make_rng


class ForestClassifier(BaseClassifier):
    """
    Random forest of CART trees voting by majority.

    Tree i draws its bootstrap sample and its per-split feature subsets from the stream
    ``(seed, i)``, so trees can be grown in any order or in parallel with identical results.
    A tied vote goes to ``tie_label`` (NoBee unless configured).
    """

    kind = ModelKind.FOREST
    needs_both_classes = False
    min_rows = 1

    def __init__(self, n_trees: int = 100, max_features: Union[None, int, str] = "sqrt", bootstrap: bool = True,
                 criterion: str = "gini", max_depth: Optional[int] = None, min_samples_split: int = 2,
                 tie_label: str = "nobee", seed: int = 0, threads: int = 1, quiet: bool = True):
        super().__init__(quiet)
        if n_trees < 1:
            raise ConfigError(f"n_trees must be >= 1, got {n_trees}")
        try:
            self.criterion = Criterion(criterion.lower())
            self.tie_label = Label.parse(tie_label)
        except ValueError as e:
            raise ConfigError(str(e))
        self.n_trees = n_trees
        self.max_features = max_features
        self.bootstrap = bootstrap
        self.max_depth = max_depth
        self.min_samples_split = min_samples_split
        self.seed = seed
        self.threads = threads
        self._oob_accuracy: Optional[float] = None

    def hyperparams(self) -> Dict[str, Any]:
        return {
            "n_trees": self.n_trees,
            "max_features": self.max_features,
            "bootstrap": self.bootstrap,
            "criterion": self.criterion.value,
            "max_depth": self.max_depth,
            "min_samples_split": self.min_samples_split,
            "tie_label": self.tie_label.value,
            "seed": self.seed,
        }

    @staticmethod
    def pack_trees(trees: Sequence[Dict[str, np.ndarray]]) -> Dict[str, np.ndarray]:
        """
        Concatenates tree node arrays into one parameter set; ``roots`` holds each tree's first node.
        """
        offsets = np.cumsum([0] + [tree["feature"].size for tree in trees])
        packed = {}
        for name in TREE_ARRAYS:
            parts = []
            for tree, offset in zip(trees, offsets):
                part = np.asarray(tree[name])
                if name in ("left", "right"):
                    part = np.where(part == LEAF, LEAF, part + offset)
                parts.append(part)
            packed[name] = np.concatenate(parts)
        packed["roots"] = offsets[:-1].astype(np.int64)
        importances = np.mean([tree["feature_importances"] for tree in trees], axis=0)
        total = importances.sum()
        packed["feature_importances"] = importances / total if total > 0 else importances
        return packed

    def _grow(self, i: int, X: np.ndarray, y: np.ndarray, max_features: int):
        rng = make_rng(self.seed, i)
        sample = rng.integers(0, X.shape[0], X.shape[0]) if self.bootstrap else np.arange(X.shape[0])
        tree = grow_tree(X[sample], y[sample], self.criterion, self.max_depth, self.min_samples_split,
                         max_features, rng)
        return tree, sample

    def _fit(self, X: np.ndarray, y: np.ndarray) -> Dict[str, np.ndarray]:
        max_features = resolve_max_features(self.max_features, X.shape[1])
        grown = map_ordered(lambda i: self._grow(i, X, y, max_features), range(self.n_trees),
                            threads=self.threads, message="Growing trees", quiet=self.quiet)
        trees: List[Dict[str, np.ndarray]] = [tree for tree, _ in grown]

        self._oob_accuracy = None
        if self.bootstrap:
            #votes from the trees that did not see each row
            votes = np.zeros(X.shape[0])
            counts = np.zeros(X.shape[0])
            for tree, sample in grown:
                oob = np.ones(X.shape[0], dtype=bool)
                oob[sample] = False
                if oob.any():
                    votes[oob] += apply_tree(tree, X[oob]) >= 0.5
                    counts[oob] += 1
            covered = counts > 0
            if covered.any():
                fraction = votes[covered] / counts[covered]
                predicted = np.where(fraction == 0.5, self.tie_label.encoded, fraction > 0.5)
                self._oob_accuracy = float(np.mean(predicted == y[covered]))
                log_status(f"🌲 Out-of-bag accuracy: {self._oob_accuracy:.4f} over {int(covered.sum())} rows", self.quiet)

        return self.pack_trees(trees)

    def fit_metrics(self) -> Dict[str, float]:
        return {} if self._oob_accuracy is None else {"oob_accuracy": self._oob_accuracy}

    @staticmethod
    def tree_votes(model: TrainedModel, X: np.ndarray) -> np.ndarray:
        """rows x trees matrix of 1 for a NoBee vote."""
        return np.stack([apply_tree(model.parameters, X, root) >= 0.5 for root in model.parameters["roots"]],
                        axis=1).astype(np.int64)

    @classmethod
    def _scores(cls, model: TrainedModel, X: np.ndarray) -> np.ndarray:
        scores = cls.tree_votes(model, X).mean(axis=1)
        if Label.parse(model.hyperparams.get("tie_label", "nobee")) is Label.BEE:
            #a tie must land below the 0.5 threshold
            scores = np.where(scores == 0.5, np.nextafter(0.5, 0.0), scores)
        return scores

    @staticmethod
    def feature_importances(model: TrainedModel) -> Dict[str, float]:
        """Mean normalised impurity decrease per feature across the trees."""
        return dict(zip(model.feature_names, model.parameters["feature_importances"].tolist()))
