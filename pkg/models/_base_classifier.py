"""
Classifier base class and the model types shared by every classifier family.

Classifiers train on a FeatureTable and return a TrainedModel, a plain container of arrays
that can be serialized and used for prediction without the classifier instance that built it.
"""

import sys
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Optional, Sequence, Tuple

import numpy as np

# Get the absolute path to the project root directory
PROJECT_ROOT = Path(__file__).resolve().parent.parent
if str(PROJECT_ROOT) not in sys.path:
    sys.path.append(str(PROJECT_ROOT))

from configs.label_config import Label
from transform.feature_transform import FeatureTable, FeatureVector
from utilidades.errors import FeatureMismatchError, TrainingError
from utilidades.progress_utils import log_status


class ModelKind(str, Enum):
    MLP = "mlp"
    GNB = "gnb"
    TREE = "tree"
    FOREST = "forest"
    SVM = "svm"

    @classmethod
    def parse(cls, value) -> "ModelKind":
        if isinstance(value, ModelKind):
            return value
        return cls(str(value).strip().lower())


@dataclass(frozen=True, eq=False)
class Normalization:
    """Per-feature z-score parameters captured at fit time. Constant features get std 1 and are flagged."""
    means: np.ndarray
    stds: np.ndarray
    constant: np.ndarray

    @classmethod
    def fit(cls, X: np.ndarray) -> "Normalization":
        means = X.mean(axis=0)
        stds = X.std(axis=0)
        constant = stds == 0.0
        stds = np.where(constant, 1.0, stds)
        return cls(means=means, stds=stds, constant=constant)

    def apply(self, X: np.ndarray) -> np.ndarray:
        return (X - self.means) / self.stds


@dataclass(frozen=True)
class Prediction:
    """A label with its score in [0, 1]; the label is NoBee exactly when score >= 0.5."""
    label: Label
    score: float

    @classmethod
    def from_score(cls, score: float) -> "Prediction":
        score = float(score)
        return cls(label=Label.NOBEE if score >= 0.5 else Label.BEE, score=score)


@dataclass(eq=False)
class TrainedModel:
    """
    A fitted classifier.

    Attributes:
        kind (ModelKind): Classifier family.
        hyperparams (dict): Settings the classifier was built with (str, int, float, bool or list of int).
        feature_names (tuple): Feature columns, in the order the model expects them.
        parameters (dict): Named numeric arrays, kind-specific.
        normalization (Normalization, optional): Standardization applied before scoring.
        metrics (dict): Training-time metrics (training accuracy, out-of-bag accuracy, ...).
    """
    kind: ModelKind
    hyperparams: Dict[str, Any]
    feature_names: Tuple[str, ...]
    parameters: Dict[str, np.ndarray]
    normalization: Optional[Normalization] = None
    metrics: Dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        self.kind = ModelKind(self.kind)
        self.feature_names = tuple(self.feature_names)

    def check_features(self, names: Sequence[str]) -> None:
        """
        Raises:
            FeatureMismatchError: If ``names`` differ from the fit-time feature names or order.
        """
        if tuple(names) != self.feature_names:
            missing = [n for n in self.feature_names if n not in names]
            raise FeatureMismatchError(
                f"model expects {len(self.feature_names)} features in fit order, got {len(names)} "
                f"(missing {missing[:5]})")


class BaseClassifier(ABC):
    """
    Abstract base class for classifiers.

    Subclasses implement ``_fit`` on encoded labels (Bee=0, NoBee=1) and ``_scores`` which maps
    already-normalized rows to P(NoBee)-like scores in [0, 1].
    """

    kind: ModelKind
    #standardize features inside fit
    standardize: bool = False
    #fit needs both classes present
    needs_both_classes: bool = True
    min_rows: int = 2

    def __init__(self, quiet: bool = True):
        self.quiet = quiet

    @abstractmethod
    def hyperparams(self) -> Dict[str, Any]:
        """Settings that reproduce this classifier, stored on the TrainedModel."""
        pass

    @abstractmethod
    def _fit(self, X: np.ndarray, y: np.ndarray) -> Dict[str, np.ndarray]:
        """Returns the fitted parameter arrays."""
        pass

    @classmethod
    @abstractmethod
    def _scores(cls, model: TrainedModel, X: np.ndarray) -> np.ndarray:
        pass

    def fit(self, table: FeatureTable) -> TrainedModel:
        """
        Trains on every row of ``table``.

        Raises:
            TrainingError: Too few rows or a single class where both are required.
        """
        X, y = table.X, table.y
        if len(table) < self.min_rows:
            raise TrainingError(f"{self.kind.value} needs at least {self.min_rows} training row(s), got {len(table)}")
        if self.needs_both_classes and y.min() == y.max():
            raise TrainingError(f"{self.kind.value} needs both bee and nobee rows, got only {Label.from_encoded(y[0]).value}")

        normalization = None
        if self.standardize:
            normalization = Normalization.fit(X)
            if normalization.constant.any():
                constant = [n for n, c in zip(table.feature_names, normalization.constant) if c]
                log_status(f"⚠️  constant feature(s) kept with std 1: {constant[:5]}", self.quiet)
            X = normalization.apply(X)

        log_status(f"🧠 Training {self.kind.value} on {len(table)} rows x {X.shape[1]} features", self.quiet)
        parameters = self._fit(X, y)
        model = TrainedModel(kind=self.kind, hyperparams=self.hyperparams(),
                             feature_names=tuple(table.feature_names), parameters=parameters,
                             normalization=normalization, metrics=self.fit_metrics())

        model.metrics["train_accuracy"] = float(np.mean((self.predict_scores(model, table.X) >= 0.5) == y))
        return model

    def fit_metrics(self) -> Dict[str, float]:
        """Extra training metrics recorded by the last ``_fit``."""
        return {}

    @classmethod
    def predict_scores(cls, model: TrainedModel, X: np.ndarray) -> np.ndarray:
        """Scores for raw feature rows, applying the stored normalization."""
        X = np.asarray(X, dtype=np.float64)
        if X.ndim == 1:
            X = X[None, :]
        if X.shape[1] != len(model.feature_names):
            raise FeatureMismatchError(f"model expects {len(model.feature_names)} features, got {X.shape[1]}")
        if model.normalization is not None:
            X = model.normalization.apply(X)
        return cls._scores(model, X)

    @classmethod
    def predict(cls, model: TrainedModel, vector: FeatureVector) -> Prediction:
        model.check_features(vector.names)
        return Prediction.from_score(cls.predict_scores(model, vector.values)[0])
