"""
Artifact loader base class.
This module provides the abstract base class for writing pipeline artifacts (tables, reports, models, segment audio).
"""

import sys
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Sequence, Union

import pandas as pd

PROJECT_ROOT = Path(__file__).resolve().parent.parent
if str(PROJECT_ROOT) not in sys.path:
    sys.path.append(str(PROJECT_ROOT))

from configs.storage_config import OUTPUT_BASE_PATH, VALID_ARTIFACT_TYPES
from extract.segment_extractor import Segment
from models import TrainedModel
from utilidades.errors import ConfigError


class ArtifactLoader(ABC):
    """
    Abstract base class for artifact loaders.

    This class defines the interface for saving the pipeline's products (CSV tables and
    reports, model files and segment WAVs) to a storage layer.
    """

    def __init__(self, base_path: Union[str, Path, None] = None):
        self.base_path = Path(base_path) if base_path is not None else OUTPUT_BASE_PATH

    @staticmethod
    def validate_artifact_type(artifact_type: str) -> str:
        """
        Raises:
            ConfigError: If the artifact type is not one of VALID_ARTIFACT_TYPES.
        """
        if artifact_type not in VALID_ARTIFACT_TYPES:
            raise ConfigError(f"invalid artifact type {artifact_type!r}, expected one of {VALID_ARTIFACT_TYPES}")
        return artifact_type

    def default_path(self, artifact_type: str, suffix: str = ".csv") -> Path:
        """Where an artifact goes when the caller names no path: ``<base>/<artifact_type><suffix>``."""
        return self.base_path / f"{self.validate_artifact_type(artifact_type)}{suffix}"

    @abstractmethod
    def save_table(self, df: pd.DataFrame, path: Union[str, Path], artifact_type: str) -> Path:
        """
        Saves a DataFrame artifact as CSV.

        Args:
            df (pd.DataFrame): Table to save.
            path (str or Path): Target file.
            artifact_type (str): One of VALID_ARTIFACT_TYPES.

        Returns:
            Path: The written file.
        """
        pass

    @abstractmethod
    def save_model(self, model: TrainedModel, path: Union[str, Path]) -> Path:
        pass

    @abstractmethod
    def write_segments(self, segments: Sequence[Segment], out_dir: Union[str, Path]) -> Path:
        """
        Writes one WAV per segment plus a manifest CSV ``file,source_id,label,offset``.

        Returns:
            Path: The manifest file.
        """
        pass
