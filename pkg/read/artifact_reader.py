"""
Readers for the artifacts the loaders write: feature table CSVs, segment manifests and model files.
"""

__all__ = ['ArtifactReader']

import sys
from pathlib import Path
from typing import List, Optional, Sequence, Union

import pandas as pd

PROJECT_ROOT = Path(__file__).resolve().parent.parent
if str(PROJECT_ROOT) not in sys.path:
    sys.path.append(str(PROJECT_ROOT))

from configs.label_config import Label
from extract.segment_extractor import Segment
from load import MANIFEST_COLUMNS, MANIFEST_NAME
from models import ModelSerializer, TrainedModel
from transform.feature_transform import FeatureTable
from utilidades.audio_utils import AudioUtils
from utilidades.data_validation_utils import DataValidationUtils
from utilidades.errors import FeatureError, SegmentationError
from utilidades.progress_utils import log_status, track


class ArtifactReader:
    """
    Clase para leer los artefactos del pipeline desde disco.
    """

    def __init__(self, quiet: bool = True):
        self.quiet = quiet

    @staticmethod
    def _require(path: Union[str, Path]) -> Path:
        path = Path(path)
        if not path.exists():
            raise FileNotFoundError(f"file not found: {path}")
        return path

    def read_feature_table(self, path: Union[str, Path],
                           feature_names: Optional[Sequence[str]] = None) -> FeatureTable:
        """
        Parses a feature table CSV back into a FeatureTable.

        The header must start with ``source_id,label``; every following column is a feature.

        Args:
            path (str or Path): CSV written by the ``extract`` or ``select`` step.
            feature_names (Sequence[str], optional): Required feature columns, in order.

        Raises:
            FileNotFoundError: If the file does not exist.
            FeatureError: Header layout, labels or values are invalid.
            FeatureMismatchError: Feature columns differ from ``feature_names``.
        """
        path = self._require(path)
        #string keys as written: "nan" or "001" stay source ids
        df = pd.read_csv(path, dtype={'source_id': str, 'label': str}, keep_default_na=False,
                         float_precision="round_trip")
        header = list(df.columns[:2])
        if header != DataValidationUtils.KEY_COLUMNS:
            raise FeatureError(f"{path.name}: header must start with source_id,label, got {header}")

        table = FeatureTable(df, feature_names)
        log_status(f"📖 {path.name}: {len(table)} rows x {len(table.feature_names)} features", self.quiet)
        return table

    def read_segments(self, manifest_path: Union[str, Path]) -> List[Segment]:
        """
        Reads a segment manifest and the WAVs it lists.

        ``manifest_path`` may be the manifest file or the directory holding ``manifest.csv``.

        Raises:
            FileNotFoundError: Missing manifest or WAV.
            SegmentationError: Manifest columns are wrong or the manifest is empty.
        """
        manifest_path = Path(manifest_path)
        if manifest_path.is_dir():
            manifest_path = manifest_path / MANIFEST_NAME
        manifest_path = self._require(manifest_path)

        df = pd.read_csv(manifest_path, dtype={'file': str, 'source_id': str, 'label': str},
                         keep_default_na=False)
        if list(df.columns) != MANIFEST_COLUMNS:
            raise SegmentationError(f"{manifest_path.name}: expected columns {MANIFEST_COLUMNS}, got {list(df.columns)}")
        if df.empty:
            raise SegmentationError(f"{manifest_path.name} lists no segments")

        segments = []
        for row in track(df.itertuples(index=False), "Reading segments", total=len(df), quiet=self.quiet):
            clip = AudioUtils.read_wav(self._require(manifest_path.parent / row.file))
            segments.append(Segment(clip=clip, label=Label.parse(row.label), source_id=row.source_id,
                                    offset=float(row.offset)))
        log_status(f"📖 {len(segments)} segments from {manifest_path}", self.quiet)
        return segments

    def read_model(self, path: Union[str, Path]) -> TrainedModel:
        return ModelSerializer.load(self._require(path))
