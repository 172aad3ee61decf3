"""
LocalArtifactLoader implementation for storing artifacts in the local filesystem.
"""

import sys
from pathlib import Path
from typing import Sequence, Union

import pandas as pd

PROJECT_ROOT = Path(__file__).resolve().parent.parent
if str(PROJECT_ROOT) not in sys.path:
    sys.path.append(str(PROJECT_ROOT))

from evaluate import EvalReport, MixedValidationReport, SweepResult
from extract.segment_extractor import Segment
from load._artifact_loader import ArtifactLoader
from models import ModelSerializer, TrainedModel
from transform.feature_selection import SelectionReport
from transform.feature_transform import FeatureTable
from utilidades.audio_utils import AudioUtils
from utilidades.errors import SegmentationError
from utilidades.progress_utils import log_status, track

#every CSV, feature tables included, carries 9 significant digits
CSV_FLOAT_FORMAT = "%.9g"
MANIFEST_NAME = "manifest.csv"
MANIFEST_COLUMNS = ['file', 'source_id', 'label', 'offset']


class LocalArtifactLoader(ArtifactLoader):
    """
    Writes artifacts to local files.

    Every CSV is written with ``\\n`` line endings and a fixed float format, so identical inputs
    and seed give byte-identical files.
    """

    def __init__(self, base_path: Union[str, Path, None] = None, quiet: bool = True):
        super().__init__(base_path)
        self.quiet = quiet

    @staticmethod
    def _prepare(path: Union[str, Path]) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        return path

    def save_table(self, df: pd.DataFrame, path: Union[str, Path], artifact_type: str) -> Path:
        self.validate_artifact_type(artifact_type)
        path = self._prepare(path)
        df.to_csv(path, index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n", na_rep="")
        log_status(f"💾 {artifact_type}: {len(df)} rows -> {path}", self.quiet)
        return path

    def save_feature_table(self, table: FeatureTable, path: Union[str, Path]) -> Path:
        return self.save_table(table.frame, path, 'features')

    def save_selection_report(self, report: SelectionReport, path: Union[str, Path]) -> Path:
        return self.save_table(report.to_frame(), path, 'selection_report')

    def save_eval_report(self, report: EvalReport, path: Union[str, Path]) -> Path:
        return self.save_table(report.to_frame(), path, 'eval_report')

    def save_sweep(self, result: SweepResult, path: Union[str, Path]) -> Path:
        return self.save_table(result.to_frame(), path, 'sweep_grid')

    def save_mixed_validation(self, report: MixedValidationReport, path: Union[str, Path]) -> Path:
        return self.save_table(report.to_frame(), path, 'mixed_validation')

    def save_model(self, model: TrainedModel, path: Union[str, Path]) -> Path:
        path = ModelSerializer.save(model, self._prepare(path))
        log_status(f"💾 model ({model.kind.value}, {len(model.feature_names)} features) -> {path}", self.quiet)
        return path

    def write_segments(self, segments: Sequence[Segment], out_dir: Union[str, Path]) -> Path:
        """
        Writes ``<index>_<source_id>.wav`` per segment (PCM-16) and ``manifest.csv`` listing them
        in input order. WAV paths in the manifest are relative to the manifest's directory.

        Raises:
            SegmentationError: Empty segment list.
        """
        if not segments:
            raise SegmentationError("no segments to write")
        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)

        rows = []
        for i, segment in enumerate(track(segments, "Writing segments", total=len(segments), quiet=self.quiet)):
            name = f"{i:05d}_{segment.source_id}.wav"
            AudioUtils.write_wav(segment.clip, out_dir / name)
            rows.append({'file': name, 'source_id': segment.source_id,
                         'label': segment.label.value, 'offset': segment.offset})

        manifest = pd.DataFrame(rows, columns=MANIFEST_COLUMNS)
        return self.save_table(manifest, out_dir / MANIFEST_NAME, 'segments_manifest')
