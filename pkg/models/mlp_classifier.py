__all__ = ['Activation', 'MlpSpec', 'MlpClassifier']

import sys
from dataclasses import asdict, dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Tuple

import numpy as np
from scipy.special import expit

PROJECT_ROOT = Path(__file__).resolve().parent.parent
if str(PROJECT_ROOT) not in sys.path:
    sys.path.append(str(PROJECT_ROOT))

from models._base_classifier import BaseClassifier, ModelKind, TrainedModel
from models._optimizers import OptimizerName, make_optimizer
from utilidades.errors import ConfigError, DivergenceError
from utilidades.progress_utils import track
from utilidades.random_utils import make_rng


class Activation(str, Enum):
    RELU = "relu"
    SIGMOID = "sigmoid"
    TANH = "tanh"


def _activate(z: np.ndarray, activation: Activation) -> np.ndarray:
    if activation is Activation.RELU:
        return np.maximum(z, 0.0)
    if activation is Activation.SIGMOID:
        return expit(z)
    return np.tanh(z)


def _activation_grad(a: np.ndarray, z: np.ndarray, activation: Activation) -> np.ndarray:
    #derivative from the cached pre-activation z and output a
    if activation is Activation.RELU:
        return (z > 0.0).astype(np.float64)
    if activation is Activation.SIGMOID:
        return a * (1.0 - a)
    return 1.0 - a * a


@dataclass
class MlpSpec:
    """
    Dense network settings: hidden layers, one sigmoid output unit, binary cross-entropy loss.

    The learning rate decays per optimizer step t (1-based) as ``lr / (1 + decay * t)``.
    """
    hidden_layers: List[int] = field(default_factory=lambda: [256, 128, 64])
    activation: Activation = Activation.SIGMOID
    optimizer: OptimizerName = OptimizerName.ADAMAX
    learning_rate: float = 1e-3
    decay: float = 1e-5
    epochs: int = 1000
    batch_size: int = 128
    seed: int = 0

    def __post_init__(self):
        try:
            self.activation = Activation(self.activation.lower())
            self.optimizer = OptimizerName(self.optimizer.lower())
        except ValueError as e:
            raise ConfigError(str(e))
        self.hidden_layers = [int(size) for size in self.hidden_layers]
        if any(size < 1 for size in self.hidden_layers):
            raise ConfigError(f"layer sizes must be >= 1, got {self.hidden_layers}")
        if self.epochs < 1:
            raise ConfigError(f"epochs must be >= 1, got {self.epochs}")
        if self.batch_size < 1:
            raise ConfigError(f"batch_size must be >= 1, got {self.batch_size}")
        if self.learning_rate <= 0 or self.decay < 0:
            raise ConfigError(f"need learning_rate > 0 and decay >= 0, got {self.learning_rate}, {self.decay}")


class MlpClassifier(BaseClassifier):
    """
    Feed-forward network trained by mini-batch backpropagation.

    Parameters are stored as ``W1, b1, ..., WL, bL`` with ``WL`` mapping to the single output unit.
    """

    kind = ModelKind.MLP
    standardize = True

    def __init__(self, spec: MlpSpec = None, quiet: bool = True):
        super().__init__(quiet)
        self.spec = spec or MlpSpec()
        self.loss_history_: List[float] = []

    def hyperparams(self) -> Dict[str, Any]:
        params = asdict(self.spec)
        params["activation"] = self.spec.activation.value
        params["optimizer"] = self.spec.optimizer.value
        return params

    @staticmethod
    def init_parameters(layer_sizes: List[int], rng: np.random.Generator) -> Dict[str, np.ndarray]:
        """Glorot-uniform weights, zero biases."""
        parameters = {}
        for i, (fan_in, fan_out) in enumerate(zip(layer_sizes[:-1], layer_sizes[1:]), start=1):
            limit = np.sqrt(6.0 / (fan_in + fan_out))
            parameters[f"W{i}"] = rng.uniform(-limit, limit, size=(fan_in, fan_out))
            parameters[f"b{i}"] = np.zeros(fan_out)
        return parameters

    @staticmethod
    def _n_layers(parameters: Dict[str, np.ndarray]) -> int:
        return sum(1 for name in parameters if name.startswith("W"))

    @staticmethod
    def forward(parameters: Dict[str, np.ndarray], X: np.ndarray,
                activation: Activation) -> Tuple[np.ndarray, List[Tuple[np.ndarray, np.ndarray]]]:
        """
        Returns the output logits and the per-hidden-layer cache of (pre-activation, activation).
        """
        n_layers = MlpClassifier._n_layers(parameters)
        cache = []
        a = X
        for i in range(1, n_layers):
            z = a @ parameters[f"W{i}"] + parameters[f"b{i}"]
            a = _activate(z, activation)
            cache.append((z, a))
        logits = (a @ parameters[f"W{n_layers}"] + parameters[f"b{n_layers}"])[:, 0]
        return logits, cache

    @staticmethod
    def loss_and_gradients(parameters: Dict[str, np.ndarray], X: np.ndarray, y: np.ndarray,
                           activation: Activation) -> Tuple[float, Dict[str, np.ndarray]]:
        """
        Mean binary cross-entropy of the batch and its gradient for every parameter.

        The loss is computed from the logits, ``max(z, 0) - z*y + log(1 + exp(-|z|))``, which is
        finite for any finite logit.
        """
        activation = Activation(activation)
        n_layers = MlpClassifier._n_layers(parameters)
        m = X.shape[0]
        logits, cache = MlpClassifier.forward(parameters, X, activation)
        loss = float(np.mean(np.maximum(logits, 0.0) - logits * y + np.log1p(np.exp(-np.abs(logits)))))

        grads = {}
        delta = ((expit(logits) - y) / m)[:, None]
        for i in range(n_layers, 0, -1):
            a_prev = cache[i - 2][1] if i > 1 else X
            grads[f"W{i}"] = a_prev.T @ delta
            grads[f"b{i}"] = delta.sum(axis=0)
            if i > 1:
                z_prev, a_prev_act = cache[i - 2]
                delta = (delta @ parameters[f"W{i}"].T) * _activation_grad(a_prev_act, z_prev, activation)
        return loss, grads

    def _fit(self, X: np.ndarray, y: np.ndarray) -> Dict[str, np.ndarray]:
        spec = self.spec
        rng = make_rng(spec.seed)
        parameters = self.init_parameters([X.shape[1]] + spec.hidden_layers + [1], rng)
        names = list(parameters)
        optimizer = make_optimizer(spec.optimizer)
        y = y.astype(np.float64)
        n = X.shape[0]
        batch_size = min(spec.batch_size, n)

        self.loss_history_ = []
        step = 0
        for epoch in track(range(1, spec.epochs + 1), f"Training mlp ({spec.activation.value}/{spec.optimizer.value})",
                           total=spec.epochs, quiet=self.quiet):
            order = rng.permutation(n)
            epoch_loss = 0.0
            for start in range(0, n, batch_size):
                batch = order[start:start + batch_size]
                loss, grads = self.loss_and_gradients(parameters, X[batch], y[batch], spec.activation)
                if not np.isfinite(loss):
                    raise DivergenceError("mlp loss became non-finite", epoch)
                step += 1
                optimizer.step([parameters[k] for k in names], [grads[k] for k in names],
                               spec.learning_rate / (1.0 + spec.decay * step))
                epoch_loss += loss * batch.size

            if not all(np.isfinite(parameters[k]).all() for k in names):
                raise DivergenceError("mlp weights became non-finite", epoch)
            self.loss_history_.append(epoch_loss / n)

        return parameters

    def fit_metrics(self) -> Dict[str, float]:
        return {"final_loss": float(self.loss_history_[-1])} if self.loss_history_ else {}

    @classmethod
    def _scores(cls, model: TrainedModel, X: np.ndarray) -> np.ndarray:
        logits, _ = cls.forward(model.parameters, X, Activation(model.hyperparams["activation"]))
        return expit(logits)
