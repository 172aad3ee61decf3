import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Sequence, Union

import numpy as np
import pandas as pd

PROJECT_ROOT = Path(__file__).resolve().parent.parent
if str(PROJECT_ROOT) not in sys.path:
    sys.path.append(str(PROJECT_ROOT))

from configs.label_config import Label
from utilidades.errors import EvaluationError

LabelLike = Union[Label, str, int]


def _encode(labels: Sequence[LabelLike]) -> np.ndarray:
    encoded = []
    for label in labels:
        if isinstance(label, (int, np.integer)) and not isinstance(label, bool):
            if int(label) not in (0, 1):
                raise EvaluationError(f"encoded labels must be 0 or 1, got {label}")
            encoded.append(int(label))
        else:
            encoded.append(Label.parse(label).encoded)
    return np.array(encoded, dtype=np.int64)


def _check_lengths(preds: Sequence[LabelLike], labels: Sequence[LabelLike]) -> None:
    if len(preds) != len(labels):
        raise EvaluationError(f"{len(preds)} predictions but {len(labels)} labels")
    if len(preds) < 1:
        raise EvaluationError("cannot score an empty prediction set")


def confusion(preds: Sequence[LabelLike], labels: Sequence[LabelLike]) -> np.ndarray:
    """
    2x2 counts, rows the true label and columns the predicted label, both ordered (Bee, NoBee).

    Raises:
        EvaluationError: Length mismatch or empty input.
    """
    _check_lengths(preds, labels)
    matrix = np.zeros((2, 2), dtype=np.int64)
    np.add.at(matrix, (_encode(labels), _encode(preds)), 1)
    return matrix


def accuracy(preds: Sequence[LabelLike], labels: Sequence[LabelLike]) -> float:
    """
    Fraction of predictions equal to the label.

    Raises:
        EvaluationError: Length mismatch or empty input.
    """
    _check_lengths(preds, labels)
    return float(np.mean(_encode(preds) == _encode(labels)))


@dataclass
class EvalReport:
    """
    Accuracy and confusion matrix of one evaluation, with provenance.

    For k-fold runs ``confusion`` pools every validation fold and ``fold_accuracies`` keeps the
    per-fold values in fold order.
    """
    accuracy: float
    confusion: np.ndarray
    seed: int
    model_kind: str
    k_features: int
    protocol: str = "holdout"
    fold_accuracies: Optional[List[float]] = field(default=None)

    def __post_init__(self):
        self.confusion = np.asarray(self.confusion, dtype=np.int64)
        total = int(self.confusion.sum())
        if self.confusion.shape != (2, 2) or total < 1:
            raise EvaluationError("confusion must be a non-empty 2x2 count matrix")
        if abs(self.accuracy - np.trace(self.confusion) / total) > 1e-12:
            raise EvaluationError(f"accuracy {self.accuracy} disagrees with the confusion matrix")

    @classmethod
    def from_predictions(cls, preds: Sequence[LabelLike], labels: Sequence[LabelLike], **provenance) -> "EvalReport":
        matrix = confusion(preds, labels)
        return cls(accuracy=float(np.trace(matrix) / matrix.sum()), confusion=matrix, **provenance)

    @property
    def n_rows(self) -> int:
        return int(self.confusion.sum())

    def to_frame(self) -> pd.DataFrame:
        """One row with provenance, accuracy, the four confusion counts and the fold accuracies."""
        folds = "" if self.fold_accuracies is None else ";".join(f"{a:.9g}" for a in self.fold_accuracies)
        return pd.DataFrame([{
            'model_kind': self.model_kind,
            'protocol': self.protocol,
            'k_features': self.k_features,
            'seed': self.seed,
            'n_rows': self.n_rows,
            'accuracy': self.accuracy,
            'bee_as_bee': int(self.confusion[0, 0]),
            'bee_as_nobee': int(self.confusion[0, 1]),
            'nobee_as_bee': int(self.confusion[1, 0]),
            'nobee_as_nobee': int(self.confusion[1, 1]),
            'fold_accuracies': folds,
        }])
