__all__ = ['GaussianNBClassifier']

import sys
from pathlib import Path
from typing import Any, Dict

import numpy as np
from scipy.special import logsumexp

PROJECT_ROOT = Path(__file__).resolve().parent.parent
if str(PROJECT_ROOT) not in sys.path:
    sys.path.append(str(PROJECT_ROOT))

from models._base_classifier import BaseClassifier, ModelKind, TrainedModel


class GaussianNBClassifier(BaseClassifier):
    """
    Gaussian naive Bayes on raw features.

    Per class and feature a normal density with variance smoothed by ``var_smoothing`` times the
    largest feature variance; class priors from the training frequencies. The score is the
    posterior P(NoBee | x).
    """

    kind = ModelKind.GNB

    def __init__(self, var_smoothing: float = 1e-9, quiet: bool = True):
        super().__init__(quiet)
        self.var_smoothing = var_smoothing

    def hyperparams(self) -> Dict[str, Any]:
        return {"var_smoothing": self.var_smoothing}

    def _fit(self, X: np.ndarray, y: np.ndarray) -> Dict[str, np.ndarray]:
        #all-constant input still needs positive variances
        epsilon = self.var_smoothing * (float(X.var(axis=0).max()) or 1.0)
        groups = [X[y == c] for c in (0, 1)]
        return {
            "means": np.stack([g.mean(axis=0) for g in groups]),
            "variances": np.stack([g.var(axis=0) for g in groups]) + epsilon,
            "priors": np.array([g.shape[0] for g in groups], dtype=np.float64) / X.shape[0],
        }

    @staticmethod
    def joint_log_likelihood(parameters: Dict[str, np.ndarray], X: np.ndarray) -> np.ndarray:
        """rows x 2 matrix of log P(c) + log P(x | c)."""
        means, variances = parameters["means"], parameters["variances"]
        columns = []
        for c in (0, 1):
            log_density = -0.5 * (np.log(2.0 * np.pi * variances[c]) + (X - means[c]) ** 2 / variances[c])
            columns.append(np.log(parameters["priors"][c]) + log_density.sum(axis=1))
        return np.stack(columns, axis=1)

    @classmethod
    def posteriors(cls, model: TrainedModel, X: np.ndarray) -> np.ndarray:
        """rows x 2 class posteriors (Bee, NoBee); each row sums to 1."""
        jll = cls.joint_log_likelihood(model.parameters, X)
        return np.exp(jll - logsumexp(jll, axis=1, keepdims=True))

    @classmethod
    def _scores(cls, model: TrainedModel, X: np.ndarray) -> np.ndarray:
        return cls.posteriors(model, X)[:, 1]
