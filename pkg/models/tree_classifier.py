__all__ = ['Criterion', 'TreeClassifier', 'grow_tree', 'apply_tree', 'resolve_max_features']

import math
import sys
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Optional, Union

import numpy as np

PROJECT_ROOT = Path(__file__).resolve().parent.parent
if str(PROJECT_ROOT) not in sys.path:
    sys.path.append(str(PROJECT_ROOT))

from models._base_classifier import BaseClassifier, ModelKind, TrainedModel
from utilidades.errors import ConfigError
from utilidades.random_utils import make_rng

#node arrays of a fitted tree, in this order
TREE_ARRAYS = ("feature", "threshold", "left", "right", "value", "n_samples")
LEAF = -1


class Criterion(str, Enum):
    GINI = "gini"
    ENTROPY = "entropy"


def _impurity(n_pos: np.ndarray, n: np.ndarray, criterion: Criterion) -> np.ndarray:
    p = np.asarray(n_pos, dtype=np.float64) / n
    if criterion is Criterion.GINI:
        return 2.0 * p * (1.0 - p)
    q = 1.0 - p
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(p > 0, p * np.log2(p), 0.0) + np.where(q > 0, q * np.log2(q), 0.0)
    return -terms


def resolve_max_features(max_features: Union[None, int, str], n_features: int) -> int:
    """Number of features drawn per split: all (None), floor(sqrt(n)) ("sqrt") or an explicit count."""
    if max_features is None:
        return n_features
    if isinstance(max_features, str):
        if max_features.lower() != "sqrt":
            raise ConfigError(f"max_features must be None, 'sqrt' or an int, got {max_features!r}")
        return max(1, math.isqrt(n_features))
    if int(max_features) < 1:
        raise ConfigError(f"max_features must be >= 1, got {max_features}")
    return min(int(max_features), n_features)


def _best_split(X: np.ndarray, y: np.ndarray, features: np.ndarray, criterion: Criterion):
    """
    Lowest weighted child impurity over ``features`` (ascending) and their midpoint thresholds.

    Ties keep the first candidate found, i.e. the lowest feature index then the lowest threshold.
    Returns None when no feature has two distinct values.
    """
    n = y.size
    best = None
    for f in features:
        order = np.argsort(X[:, f], kind="stable")
        xs = X[order, f]
        #left-child sizes where the sorted value changes
        cut = np.nonzero(xs[1:] > xs[:-1])[0] + 1
        if cut.size == 0:
            continue
        positives = np.cumsum(y[order])
        n_left = cut
        pos_left = positives[cut - 1]
        n_right = n - n_left
        pos_right = positives[-1] - pos_left
        weighted = (n_left * _impurity(pos_left, n_left, criterion) +
                    n_right * _impurity(pos_right, n_right, criterion)) / n

        j = int(np.argmin(weighted))
        if best is None or weighted[j] < best[0]:
            low, high = xs[cut[j] - 1], xs[cut[j]]
            threshold = (low + high) / 2.0
            if threshold >= high:
                #adjacent floats: the midpoint rounds up onto the right value
                threshold = low
            best = (float(weighted[j]), int(f), float(threshold))
    return best


def grow_tree(X: np.ndarray, y: np.ndarray, criterion: Criterion = Criterion.GINI,
              max_depth: Optional[int] = None, min_samples_split: int = 2,
              max_features: Optional[int] = None,
              rng: Optional[np.random.Generator] = None) -> Dict[str, np.ndarray]:
    """
    Grows a CART tree greedily.

    A node becomes a leaf when it is pure, holds fewer than ``min_samples_split`` rows, sits at
    ``max_depth`` or has no valid threshold among its candidate features. With ``max_features``
    below the feature count, each split draws that many candidates from ``rng``.

    Returns:
        dict: Node arrays (``feature`` is -1 on leaves, ``value`` is the NoBee fraction) plus
            ``feature_importances``, the impurity decrease per feature normalised to sum 1.
    """
    criterion = Criterion(criterion)
    n_features = X.shape[1]
    y = y.astype(np.int64)
    nodes = {name: [] for name in TREE_ARRAYS}
    importances = np.zeros(n_features)

    def new_node(idx: np.ndarray) -> int:
        nodes["feature"].append(LEAF)
        nodes["threshold"].append(0.0)
        nodes["left"].append(LEAF)
        nodes["right"].append(LEAF)
        nodes["value"].append(float(y[idx].mean()))
        nodes["n_samples"].append(int(idx.size))
        return len(nodes["feature"]) - 1

    stack = [(new_node(np.arange(y.size)), np.arange(y.size), 0)]
    while stack:
        node, idx, depth = stack.pop()
        n_pos = int(y[idx].sum())
        if n_pos in (0, idx.size) or idx.size < min_samples_split:
            continue
        if max_depth is not None and depth >= max_depth:
            continue

        if max_features is None or max_features >= n_features:
            candidates = np.arange(n_features)
        else:
            candidates = np.sort(rng.choice(n_features, size=max_features, replace=False))
        split = _best_split(X[idx], y[idx], candidates, criterion)
        if split is None:
            continue

        child_impurity, feature, threshold = split
        goes_left = X[idx, feature] <= threshold
        left_idx, right_idx = idx[goes_left], idx[~goes_left]
        node_impurity = float(_impurity(n_pos, idx.size, criterion))
        importances[feature] += idx.size * (node_impurity - child_impurity)

        nodes["feature"][node] = feature
        nodes["threshold"][node] = threshold
        nodes["left"][node] = new_node(left_idx)
        nodes["right"][node] = new_node(right_idx)
        stack.append((nodes["right"][node], right_idx, depth + 1))
        stack.append((nodes["left"][node], left_idx, depth + 1))

    total = importances.sum()
    tree = {
        "feature": np.array(nodes["feature"], dtype=np.int64),
        "threshold": np.array(nodes["threshold"], dtype=np.float64),
        "left": np.array(nodes["left"], dtype=np.int64),
        "right": np.array(nodes["right"], dtype=np.int64),
        "value": np.array(nodes["value"], dtype=np.float64),
        "n_samples": np.array(nodes["n_samples"], dtype=np.int64),
        "feature_importances": importances / total if total > 0 else importances,
    }
    return tree


def apply_tree(parameters: Dict[str, np.ndarray], X: np.ndarray, roots=0) -> np.ndarray:
    """Leaf ``value`` reached by each row, starting from ``roots`` (a node index or one per row)."""
    feature, threshold = parameters["feature"], parameters["threshold"]
    left, right = parameters["left"], parameters["right"]
    node = np.broadcast_to(np.asarray(roots, dtype=np.int64), (X.shape[0],)).copy()
    active = np.nonzero(feature[node] != LEAF)[0]
    while active.size:
        current = node[active]
        goes_left = X[active, feature[current]] <= threshold[current]
        node[active] = np.where(goes_left, left[current], right[current])
        active = active[feature[node[active]] != LEAF]
    return parameters["value"][node]


class TreeClassifier(BaseClassifier):
    """
    CART decision tree on raw features. Rows go left when ``x[feature] <= threshold``; a leaf
    predicts NoBee when its NoBee fraction is at least 0.5.
    """

    kind = ModelKind.TREE
    needs_both_classes = False
    min_rows = 1

    def __init__(self, criterion: str = "gini", max_depth: Optional[int] = None, min_samples_split: int = 2,
                 max_features: Union[None, int, str] = None, seed: int = 0, quiet: bool = True):
        super().__init__(quiet)
        try:
            self.criterion = Criterion(criterion.lower())
        except ValueError:
            raise ConfigError(f"criterion must be gini or entropy, got {criterion!r}")
        if max_depth is not None and max_depth < 1:
            raise ConfigError(f"max_depth must be >= 1 or None, got {max_depth}")
        if min_samples_split < 2:
            raise ConfigError(f"min_samples_split must be >= 2, got {min_samples_split}")
        self.max_depth = max_depth
        self.min_samples_split = min_samples_split
        self.max_features = max_features
        self.seed = seed

    def hyperparams(self) -> Dict[str, Any]:
        return {
            "criterion": self.criterion.value,
            "max_depth": self.max_depth,
            "min_samples_split": self.min_samples_split,
            "max_features": self.max_features,
            "seed": self.seed,
        }

    def _fit(self, X: np.ndarray, y: np.ndarray) -> Dict[str, np.ndarray]:
        #a lone tree draws from the stream of forest tree 0
        return grow_tree(X, y, self.criterion, self.max_depth, self.min_samples_split,
                         resolve_max_features(self.max_features, X.shape[1]), make_rng(self.seed, 0))

    @classmethod
    def _scores(cls, model: TrainedModel, X: np.ndarray) -> np.ndarray:
        return apply_tree(model.parameters, X)

    @staticmethod
    def depth(model: TrainedModel) -> int:
        left, right = model.parameters["left"], model.parameters["right"]
        depth, frontier = 0, [0]
        while True:
            children = [c for n in frontier for c in (left[n], right[n]) if c != LEAF]
            if not children:
                return depth
            depth, frontier = depth + 1, children
