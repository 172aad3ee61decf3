"""
Feature ranking against the binary label and Select-K-Best reduction.

Scores use the label encoding Bee=0, NoBee=1, so a positive Kendall tau means the feature grows
towards NoBee.
"""

__all__ = ['SelectionMethod', 'SelectionReport', 'FeatureSelector', 'PERFECT_SEPARATION']

import math
import sys
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

PROJECT_ROOT = Path(__file__).resolve().parent.parent
if str(PROJECT_ROOT) not in sys.path:
    sys.path.append(str(PROJECT_ROOT))

from configs.label_config import PREFERRED_FEATURES
from transform.feature_transform import FeatureTable
from utilidades.errors import SelectionError
from utilidades.parallel_utils import map_ordered
from utilidades.progress_utils import log_status

#F statistic for zero within-group variance with distinct group means
PERFECT_SEPARATION = math.inf

#pairs compared per block in the general tau path
_TAU_BLOCK_PAIRS = 4_000_000


class SelectionMethod(str, Enum):
    KENDALL_TAU = "kendall_tau"
    ANOVA_F = "anova_f"


@dataclass
class SelectionReport:
    """
    Scores and ranking of every feature of a table.

    ``scores`` holds the features that could be scored; ``failures`` maps the rest to the scorer's
    message. ``ranking`` lists all features, scored ones first by descending score.
    """
    method: SelectionMethod
    scores: Dict[str, float]
    ranking: List[str]
    failures: Dict[str, str] = field(default_factory=dict)

    def top(self, k: int) -> List[str]:
        return self.ranking[:k]

    def to_frame(self) -> pd.DataFrame:
        """Rows ``feature, score, rank`` in ranking order; failed features have an empty score."""
        return pd.DataFrame({
            'feature': self.ranking,
            'score': [self.scores.get(name, np.nan) for name in self.ranking],
            'rank': range(1, len(self.ranking) + 1),
        })


class FeatureSelector:

    def __init__(self, threads: int = 1, quiet: bool = True):
        self.threads = threads
        self.quiet = quiet

    @staticmethod
    def _pair_counts_binary(x: np.ndarray, y: np.ndarray, low: float) -> Tuple[int, int]:
        #every pair with tied y is excluded, so only cross-group pairs count
        group_low = np.sort(x[y == low])
        group_high = x[y != low]
        below = np.searchsorted(group_low, group_high, side="left")
        above = group_low.size - np.searchsorted(group_low, group_high, side="right")
        return int(below.sum()), int(above.sum())

    @staticmethod
    def _pair_counts_general(x: np.ndarray, y: np.ndarray) -> Tuple[int, int]:
        n = x.size
        block = max(1, _TAU_BLOCK_PAIRS // n)
        signed = 0
        untied = 0
        for start in range(0, n, block):
            stop = min(start + block, n)
            product = (np.sign(x[start:stop, None] - x[None, :]) *
                       np.sign(y[start:stop, None] - y[None, :])).astype(np.int64)
            signed += int(product.sum())
            untied += int(np.abs(product).sum())
        #each unordered pair was visited twice
        concordant = (untied + signed) // 4
        discordant = (untied - signed) // 4
        return concordant, discordant

    @staticmethod
    def kendall_tau(x: Sequence[float], y: Sequence[float]) -> float:
        """
        Kendall rank correlation ``(C - D) / (C + D)``.

        A pair is concordant when ``(x_i - x_j)(y_i - y_j) > 0`` and discordant when it is < 0; pairs
        tied in x or y are counted in neither. No tie correction is applied.

        Raises:
            SelectionError: Length mismatch, fewer than 2 values, or every pair tied.
        """
        x = np.asarray(x, dtype=np.float64)
        y = np.asarray(y, dtype=np.float64)
        if x.shape != y.shape or x.ndim != 1:
            raise SelectionError(f"x and y must be 1-D of equal length, got {x.shape} and {y.shape}")
        if x.size < 2:
            raise SelectionError("kendall tau needs at least 2 observations")

        distinct_y = np.unique(y)
        if distinct_y.size == 2:
            concordant, discordant = FeatureSelector._pair_counts_binary(x, y, distinct_y[0])
        else:
            concordant, discordant = FeatureSelector._pair_counts_general(x, y)

        if concordant + discordant == 0:
            raise SelectionError("kendall tau is undefined: every pair is tied")
        return (concordant - discordant) / (concordant + discordant)

    @staticmethod
    def anova_f(values: Sequence[float], labels: Sequence[int]) -> float:
        """
        One-way ANOVA F statistic for two groups: ``(SS_between / 1) / (SS_within / (n - 2))``.

        Returns:
            float: F >= 0, or PERFECT_SEPARATION when both groups are constant with different means.

        Raises:
            SelectionError: Fewer than 3 values, a missing class, or both groups constant and equal.
        """
        values = np.asarray(values, dtype=np.float64)
        labels = np.asarray(labels)
        if values.shape != labels.shape or values.ndim != 1:
            raise SelectionError(f"values and labels must be 1-D of equal length, got {values.shape} and {labels.shape}")
        if values.size < 3:
            raise SelectionError(f"anova F needs n >= 3, got {values.size}")

        groups = [values[labels == 0], values[labels == 1]]
        if groups[0].size == 0 or groups[1].size == 0:
            raise SelectionError("anova F needs both classes present")
        if groups[0].size + groups[1].size != values.size:
            raise SelectionError("labels must be encoded 0/1")

        grand_mean = values.mean()
        means = [g.mean() for g in groups]
        ss_between = sum(g.size * (m - grand_mean) ** 2 for g, m in zip(groups, means))

        if all(np.ptp(g) == 0 for g in groups):
            if means[0] == means[1]:
                raise SelectionError("anova F is undefined: zero variance and zero effect")
            return PERFECT_SEPARATION

        ss_within = sum(float(((g - m) ** 2).sum()) for g, m in zip(groups, means))
        return float(ss_between / (ss_within / (values.size - 2)))

    def _score(self, column: np.ndarray, y: np.ndarray, method: SelectionMethod) -> float:
        if method is SelectionMethod.KENDALL_TAU:
            return self.kendall_tau(column, y)
        return self.anova_f(column, y)

    def rank_features(self, table: FeatureTable,
                      method: SelectionMethod = SelectionMethod.ANOVA_F) -> SelectionReport:
        """
        Scores every feature of ``table`` against its label and ranks them.

        Tau is ranked by signed value, F by magnitude, both descending; ties keep the table's
        column order. A feature the scorer rejects (a constant column, say) is recorded in
        ``failures`` and ranked after every scored feature.

        Raises:
            SelectionError: Empty table or a table with one class only.
        """
        method = SelectionMethod(method)
        if len(table) == 0:
            raise SelectionError("cannot rank features of an empty table")
        y = table.y
        if y.min() == y.max():
            raise SelectionError("ranking needs both bee and nobee rows")

        names = table.feature_names
        X = table.X

        def score_one(index: int):
            try:
                return self._score(X[:, index], y, method), None
            except SelectionError as e:
                return None, str(e)

        log_status(f"📊 Ranking {len(names)} features by {method.value}", self.quiet)
        results = map_ordered(score_one, range(len(names)), threads=self.threads,
                              message=f"Scoring ({method.value})", quiet=self.quiet)

        scores = {name: score for name, (score, _) in zip(names, results) if score is not None}
        failures = {name: error for name, (_, error) in zip(names, results) if error is not None}
        if failures:
            log_status(f"⚠️  {len(failures)} feature(s) could not be scored: {list(failures)[:5]}", self.quiet)

        #sorted() is stable, so equal scores keep column order
        ranking = sorted(scores, key=lambda name: -scores[name])
        ranking += [name for name in names if name in failures]
        return SelectionReport(method=method, scores=scores, ranking=ranking, failures=failures)

    def select_k_best(self, table: FeatureTable, k: int,
                      method: SelectionMethod = SelectionMethod.ANOVA_F,
                      report: Optional[SelectionReport] = None) -> FeatureTable:
        """
        Reduced table with the top-k ranked features.

        The kept columns appear in the table's original column order, not in rank order, so
        ``k`` equal to the feature count returns the table unchanged.

        Raises:
            SelectionError: k outside [1, feature count].
        """
        n_features = len(table.feature_names)
        if not 1 <= k <= n_features:
            raise SelectionError(f"k must be in [1, {n_features}], got {k}")
        report = report or self.rank_features(table, method)
        chosen = set(report.top(k))
        return table.select_columns([name for name in table.feature_names if name in chosen])

    @staticmethod
    def select_by_name(table: FeatureTable, names: Sequence[str] = tuple(PREFERRED_FEATURES)) -> FeatureTable:
        """
        Reduced table with the named features, in the table's column order.

        Raises:
            SelectionError: A name is not a column of the table.
        """
        missing = [name for name in names if name not in table.feature_names]
        if missing:
            raise SelectionError(f"features not in table: {missing[:5]}")
        wanted = set(names)
        return table.select_columns([name for name in table.feature_names if name in wanted])
