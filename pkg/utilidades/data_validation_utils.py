import sys
from pathlib import Path
from typing import Optional, Sequence

import numpy as np
import pandas as pd

PROJECT_ROOT = Path(__file__).resolve().parent.parent
if str(PROJECT_ROOT) not in sys.path:
    sys.path.append(str(PROJECT_ROOT))

from configs.label_config import Label
from utilidades.errors import FeatureError, FeatureMismatchError


class DataValidationUtils:
    """
    Validate feature frames for structure and data types before they are used for training or written to CSV.
    """

    #every feature frame starts with these columns
    KEY_COLUMNS = ['source_id', 'label']

    def validate_feature_frame(self, df: pd.DataFrame,
                               feature_names: Optional[Sequence[str]] = None) -> pd.DataFrame:
        """
        Validate a feature frame for structural and data type issues.

        Args:
            df (pd.DataFrame): Frame with source_id, label and one float column per feature.
            feature_names (Sequence[str], optional): Required feature columns, in order. When omitted,
                every column after the key columns is a feature.

        Returns:
            pd.DataFrame: Validated copy with normalised dtypes and lowercase label tokens.

        Raises:
            FeatureError: Missing key columns, unknown labels or non-finite values.
            FeatureMismatchError: Feature columns differ from ``feature_names``.
        """
        df = self._validate_columns(df, feature_names)
        df = self._validate_dtypes(df)
        return df

    def _validate_columns(self, df: pd.DataFrame, feature_names: Optional[Sequence[str]]) -> pd.DataFrame:
        missing = [c for c in self.KEY_COLUMNS if c not in df.columns]
        if missing:
            raise FeatureError(f"feature frame is missing key columns: {missing}")

        present = [c for c in df.columns if c not in self.KEY_COLUMNS]
        if not present:
            raise FeatureError("feature frame has no feature columns")
        if len(set(present)) != len(present):
            raise FeatureError("feature frame has duplicate feature columns")

        if feature_names is not None:
            feature_names = list(feature_names)
            absent = [name for name in feature_names if name not in present]
            extra = [name for name in present if name not in feature_names]
            if absent or extra:
                raise FeatureMismatchError(
                    f"feature columns do not match: missing {absent[:5]}, unexpected {extra[:5]}")
            present = feature_names

        return df[self.KEY_COLUMNS + present]

    def _validate_dtypes(self, df: pd.DataFrame) -> pd.DataFrame:
        # Create a copy to avoid modifying the original
        df = df.copy()
        df['source_id'] = df['source_id'].astype('str')

        try:
            df['label'] = [Label.parse(str(token)).value for token in df['label']]
        except ValueError as e:
            raise FeatureError(f"invalid label column: {e}")

        feature_cols = [c for c in df.columns if c not in self.KEY_COLUMNS]
        try:
            df[feature_cols] = df[feature_cols].astype('float64')
        except (TypeError, ValueError) as e:
            raise FeatureError(f"feature columns must be numeric: {e}")

        values = df[feature_cols].to_numpy()
        if not np.isfinite(values).all():
            bad = [c for c in feature_cols if not np.isfinite(df[c].to_numpy()).all()]
            raise FeatureError(f"non-finite feature values in columns {bad[:5]}")

        return df
