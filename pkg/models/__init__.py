"""
Classifier package.

Every family trains on a FeatureTable and returns a TrainedModel; ``predict`` and
``predict_scores`` dispatch on the model's kind, so loaded models need no classifier instance.
"""

import sys
from pathlib import Path
from typing import Any, Dict, List, Type

import numpy as np

PROJECT_ROOT = Path(__file__).resolve().parent.parent
if str(PROJECT_ROOT) not in sys.path:
    sys.path.append(str(PROJECT_ROOT))

from models._base_classifier import BaseClassifier, ModelKind, Normalization, Prediction, TrainedModel
from models.forest_classifier import ForestClassifier
from models.mlp_classifier import Activation, MlpClassifier, MlpSpec
from models.model_serializer import ModelSerializer
from models.naive_bayes_classifier import GaussianNBClassifier
from models.svm_classifier import SvmClassifier
from models.tree_classifier import Criterion, TreeClassifier
from transform.feature_transform import FeatureTable, FeatureVector
from utilidades.errors import ConfigError

CLASSIFIERS: Dict[ModelKind, Type[BaseClassifier]] = {
    ModelKind.MLP: MlpClassifier,
    ModelKind.GNB: GaussianNBClassifier,
    ModelKind.TREE: TreeClassifier,
    ModelKind.FOREST: ForestClassifier,
    ModelKind.SVM: SvmClassifier,
}


def build_classifier(kind: str, hyperparams: Dict[str, Any] = None, threads: int = 1,
                     quiet: bool = True) -> BaseClassifier:
    """
    Classifier of ``kind`` built from a hyperparameter dict (the same keys a TrainedModel stores).

    Raises:
        ConfigError: Unknown kind or unknown hyperparameter.
    """
    try:
        kind = ModelKind.parse(kind)
    except ValueError:
        raise ConfigError(f"unknown model kind {kind!r}, expected one of {[k.value for k in ModelKind]}")
    hyperparams = dict(hyperparams or {})

    try:
        if kind is ModelKind.MLP:
            return MlpClassifier(MlpSpec(**hyperparams), quiet=quiet)
        if kind is ModelKind.FOREST:
            return ForestClassifier(**hyperparams, threads=threads, quiet=quiet)
        return CLASSIFIERS[kind](**hyperparams, quiet=quiet)
    except TypeError as e:
        raise ConfigError(f"bad hyperparameters for {kind.value}: {e}")


def predict_scores(model: TrainedModel, X: np.ndarray) -> np.ndarray:
    return CLASSIFIERS[model.kind].predict_scores(model, X)


def predict(model: TrainedModel, vector: FeatureVector) -> Prediction:
    """
    Label and score of one feature vector.

    Raises:
        FeatureMismatchError: Vector names or order differ from the model's feature names.
    """
    return CLASSIFIERS[model.kind].predict(model, vector)


def predict_table(model: TrainedModel, table: FeatureTable) -> List[Prediction]:
    """One prediction per row; the table's feature columns must match the model exactly."""
    model.check_features(table.feature_names)
    return [Prediction.from_score(s) for s in predict_scores(model, table.X)]


__all__ = [
    'BaseClassifier', 'ModelKind', 'Normalization', 'Prediction', 'TrainedModel',
    'MlpClassifier', 'MlpSpec', 'Activation', 'GaussianNBClassifier', 'TreeClassifier', 'Criterion',
    'ForestClassifier', 'SvmClassifier', 'ModelSerializer', 'CLASSIFIERS',
    'build_classifier', 'predict', 'predict_scores', 'predict_table',
]
