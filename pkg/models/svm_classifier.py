__all__ = ['SvmClassifier']

import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np
from scipy.special import expit

PROJECT_ROOT = Path(__file__).resolve().parent.parent
if str(PROJECT_ROOT) not in sys.path:
    sys.path.append(str(PROJECT_ROOT))

from models._base_classifier import BaseClassifier, ModelKind, TrainedModel
from utilidades.errors import ConfigError, DivergenceError
from utilidades.progress_utils import track
from utilidades.random_utils import make_rng


class SvmClassifier(BaseClassifier):
    """
    Linear SVM on standardized features.

    Minimizes ``lambda/2 * |w|^2 + mean(max(0, 1 - y * w.x))`` with labels mapped to -1 (Bee) and
    +1 (NoBee), ``lambda = 1 / (c * n)`` and a constant 1 appended to every row for the bias.
    Every step is a subgradient step of size ``1 / (lambda * t)`` followed by a projection onto the
    ball of radius ``1 / sqrt(lambda)``. With ``batch_size=None`` each epoch is one full-batch step
    and ``seed`` is unused; otherwise each epoch walks the rows in minibatches, in an order drawn
    from ``seed``.

    The returned weights are the iterate with the lowest full objective. ``objective_history_``
    holds that best objective after every epoch, so it never increases. The score is the logistic
    of the margin.
    """

    kind = ModelKind.SVM
    standardize = True

    def __init__(self, c: float = 1.0, epochs: int = 1000, batch_size: Optional[int] = None, seed: int = 0,
                 quiet: bool = True):
        super().__init__(quiet)
        if c <= 0:
            raise ConfigError(f"c must be > 0, got {c}")
        if epochs < 1:
            raise ConfigError(f"epochs must be >= 1, got {epochs}")
        if batch_size is not None and batch_size < 1:
            raise ConfigError(f"batch_size must be >= 1 or None, got {batch_size}")
        self.c = c
        self.epochs = epochs
        self.batch_size = batch_size
        self.seed = seed
        self.objective_history_: List[float] = []

    def hyperparams(self) -> Dict[str, Any]:
        return {"c": self.c, "epochs": self.epochs, "batch_size": self.batch_size, "seed": self.seed}

    @staticmethod
    def objective(w: np.ndarray, X: np.ndarray, signs: np.ndarray, lam: float) -> float:
        hinge = np.maximum(0.0, 1.0 - signs * (X @ w))
        return float(0.5 * lam * w @ w + hinge.mean())

    def _batches(self, n: int, rng: np.random.Generator) -> List[np.ndarray]:
        if self.batch_size is None or self.batch_size >= n:
            return [np.arange(n)]
        order = rng.permutation(n)
        return [order[start:start + self.batch_size] for start in range(0, n, self.batch_size)]

    def _fit(self, X: np.ndarray, y: np.ndarray) -> Dict[str, np.ndarray]:
        n = X.shape[0]
        Xb = np.hstack([X, np.ones((n, 1))])
        signs = np.where(y == 1, 1.0, -1.0)
        lam = 1.0 / (self.c * n)
        radius = 1.0 / np.sqrt(lam)
        rng = make_rng(self.seed)

        w = np.zeros(Xb.shape[1])
        best_w, best_objective = w.copy(), self.objective(w, Xb, signs, lam)
        self.objective_history_ = []
        t = 0
        for epoch in track(range(self.epochs), "Training svm", total=self.epochs, quiet=self.quiet):
            for rows in self._batches(n, rng):
                t += 1
                Xr, sr = Xb[rows], signs[rows]
                violating = sr * (Xr @ w) < 1.0
                gradient = lam * w - (sr[violating, None] * Xr[violating]).sum(axis=0) / rows.size
                w = w - gradient / (lam * t)
                norm = np.linalg.norm(w)
                if norm > radius:
                    w = w * (radius / norm)
                if not np.isfinite(w).all():
                    raise DivergenceError("svm weights became non-finite", epoch)

            value = self.objective(w, Xb, signs, lam)
            if value < best_objective:
                best_w, best_objective = w.copy(), value
            self.objective_history_.append(best_objective)

        return {"weights": best_w[:-1], "bias": best_w[-1:]}

    def fit_metrics(self) -> Dict[str, float]:
        return {"objective": float(self.objective_history_[-1])} if self.objective_history_ else {}

    @staticmethod
    def margins(model: TrainedModel, X: np.ndarray) -> np.ndarray:
        """``w.x + b`` for already-standardized rows; positive means NoBee."""
        return X @ model.parameters["weights"] + model.parameters["bias"][0]

    @classmethod
    def _scores(cls, model: TrainedModel, X: np.ndarray) -> np.ndarray:
        return expit(cls.margins(model, X))
