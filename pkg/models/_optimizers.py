"""
Gradient-descent update rules for the MLP.

Every optimizer updates a list of parameter arrays in place, element-wise, given their gradients
and the current learning rate. State (moments, accumulators) is created lazily on the first step
and the step counter ``t`` is 1-based. Constants follow the common Keras defaults.
"""

__all__ = ['OptimizerName', 'Optimizer', 'make_optimizer', 'EPSILON']

from abc import ABC, abstractmethod
import sys
from enum import Enum
from pathlib import Path
from typing import Dict, List

import numpy as np

PROJECT_ROOT = Path(__file__).resolve().parent.parent
if str(PROJECT_ROOT) not in sys.path:
    sys.path.append(str(PROJECT_ROOT))

from utilidades.errors import ConfigError

EPSILON = 1e-7


class OptimizerName(str, Enum):
    SGD = "sgd"
    ADAM = "adam"
    ADAMAX = "adamax"
    RMSPROP = "rmsprop"
    ADAGRAD = "adagrad"
    ADADELTA = "adadelta"
    NADAM = "nadam"
    FTRL = "ftrl"


class Optimizer(ABC):

    def __init__(self):
        self.t = 0
        self.state: Dict[str, List[np.ndarray]] = {}

    def _slots(self, name: str, params: List[np.ndarray], fill: float = 0.0) -> List[np.ndarray]:
        if name not in self.state:
            self.state[name] = [np.full_like(p, fill, dtype=np.float64) for p in params]
        return self.state[name]

    def step(self, params: List[np.ndarray], grads: List[np.ndarray], lr: float) -> None:
        """Applies one update to ``params`` in place."""
        if len(params) != len(grads):
            raise ValueError(f"{len(params)} parameter arrays but {len(grads)} gradients")
        for p, g in zip(params, grads):
            if p.shape != g.shape:
                raise ValueError(f"parameter shape {p.shape} does not match gradient shape {g.shape}")
        self.t += 1
        self._update(params, grads, lr)

    @abstractmethod
    def _update(self, params: List[np.ndarray], grads: List[np.ndarray], lr: float) -> None:
        pass


class SGD(Optimizer):
    def _update(self, params, grads, lr):
        for p, g in zip(params, grads):
            p -= lr * g


class Adam(Optimizer):
    def __init__(self, beta_1: float = 0.9, beta_2: float = 0.999):
        super().__init__()
        self.beta_1, self.beta_2 = beta_1, beta_2

    def _update(self, params, grads, lr):
        ms, vs = self._slots("m", params), self._slots("v", params)
        lr_t = lr * np.sqrt(1.0 - self.beta_2 ** self.t) / (1.0 - self.beta_1 ** self.t)
        for p, g, m, v in zip(params, grads, ms, vs):
            m[...] = self.beta_1 * m + (1.0 - self.beta_1) * g
            v[...] = self.beta_2 * v + (1.0 - self.beta_2) * g * g
            p -= lr_t * m / (np.sqrt(v) + EPSILON)


class AdaMax(Optimizer):
    """Infinity-norm Adam: u <- max(beta_2 * u, |g|), theta <- theta - lr / (1 - beta_1^t) * m / u."""

    def __init__(self, beta_1: float = 0.9, beta_2: float = 0.999):
        super().__init__()
        self.beta_1, self.beta_2 = beta_1, beta_2

    def _update(self, params, grads, lr):
        ms, us = self._slots("m", params), self._slots("u", params)
        lr_t = lr / (1.0 - self.beta_1 ** self.t)
        for p, g, m, u in zip(params, grads, ms, us):
            m[...] = self.beta_1 * m + (1.0 - self.beta_1) * g
            u[...] = np.maximum(self.beta_2 * u, np.abs(g))
            #u stays 0 until the first nonzero gradient
            p -= lr_t * m / (u + EPSILON)


class RMSProp(Optimizer):
    def __init__(self, rho: float = 0.9):
        super().__init__()
        self.rho = rho

    def _update(self, params, grads, lr):
        for p, g, v in zip(params, grads, self._slots("v", params)):
            v[...] = self.rho * v + (1.0 - self.rho) * g * g
            p -= lr * g / (np.sqrt(v) + EPSILON)


class AdaGrad(Optimizer):
    def __init__(self, initial_accumulator: float = 0.1):
        super().__init__()
        self.initial_accumulator = initial_accumulator

    def _update(self, params, grads, lr):
        for p, g, acc in zip(params, grads, self._slots("acc", params, self.initial_accumulator)):
            acc += g * g
            p -= lr * g / (np.sqrt(acc) + EPSILON)


class AdaDelta(Optimizer):
    def __init__(self, rho: float = 0.95):
        super().__init__()
        self.rho = rho

    def _update(self, params, grads, lr):
        accs, deltas = self._slots("acc", params), self._slots("delta", params)
        for p, g, acc, delta in zip(params, grads, accs, deltas):
            acc[...] = self.rho * acc + (1.0 - self.rho) * g * g
            update = g * np.sqrt(delta + EPSILON) / np.sqrt(acc + EPSILON)
            delta[...] = self.rho * delta + (1.0 - self.rho) * update * update
            p -= lr * update


class Nadam(Optimizer):
    """Adam with a Nesterov look-ahead on the first moment."""

    def __init__(self, beta_1: float = 0.9, beta_2: float = 0.999):
        super().__init__()
        self.beta_1, self.beta_2 = beta_1, beta_2

    def _update(self, params, grads, lr):
        ms, vs = self._slots("m", params), self._slots("v", params)
        bias_1 = 1.0 - self.beta_1 ** self.t
        bias_2 = 1.0 - self.beta_2 ** self.t
        for p, g, m, v in zip(params, grads, ms, vs):
            m[...] = self.beta_1 * m + (1.0 - self.beta_1) * g
            v[...] = self.beta_2 * v + (1.0 - self.beta_2) * g * g
            m_bar = self.beta_1 * m / bias_1 + (1.0 - self.beta_1) * g / bias_1
            p -= lr * m_bar / (np.sqrt(v / bias_2) + EPSILON)


class Ftrl(Optimizer):
    """
    Follow-the-regularized-leader with learning-rate power -0.5 and no l1/l2 penalty.

    The linear accumulator z starts at the value that reproduces the current parameters, so
    training continues from the initialised weights.
    """

    def __init__(self, initial_accumulator: float = 0.1):
        super().__init__()
        self.initial_accumulator = initial_accumulator

    def _update(self, params, grads, lr):
        accs = self._slots("acc", params, self.initial_accumulator)
        if "z" not in self.state:
            self.state["z"] = [-p * np.sqrt(acc) / lr for p, acc in zip(params, accs)]
        for p, g, acc, z in zip(params, grads, accs, self.state["z"]):
            new_acc = acc + g * g
            sigma = (np.sqrt(new_acc) - np.sqrt(acc)) / lr
            z += g - sigma * p
            acc[...] = new_acc
            p[...] = -z * lr / np.sqrt(new_acc)


_OPTIMIZERS = {
    OptimizerName.SGD: SGD,
    OptimizerName.ADAM: Adam,
    OptimizerName.ADAMAX: AdaMax,
    OptimizerName.RMSPROP: RMSProp,
    OptimizerName.ADAGRAD: AdaGrad,
    OptimizerName.ADADELTA: AdaDelta,
    OptimizerName.NADAM: Nadam,
    OptimizerName.FTRL: Ftrl,
}


def make_optimizer(name: str) -> Optimizer:
    """Fresh optimizer with default constants. ``name`` is case-insensitive."""
    try:
        return _OPTIMIZERS[OptimizerName(name.lower())]()
    except ValueError:
        raise ConfigError(f"unknown optimizer {name!r}, expected one of {[o.value for o in OptimizerName]}")
