__all__ = ['FEATURE_NAMES', 'FeatureVector', 'FeatureTable', 'FeatureTransformer']

import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

# Add necessary imports
PROJECT_ROOT = Path(__file__).resolve().parent.parent
if str(PROJECT_ROOT) not in sys.path:
    sys.path.append(str(PROJECT_ROOT))

from configs.label_config import Label
from extract.segment_extractor import Segment
from transform._feature_processor import FeatureProcessor
from utilidades.data_validation_utils import DataValidationUtils
from utilidades.dsp_utils import DSPUtils, MelFilterbank, StftConfig
from utilidades.errors import FeatureError, FeatureMismatchError
from utilidades.parallel_utils import map_ordered
from utilidades.progress_utils import log_status

N_MFCC = 128
N_MELS = 128

#canonical ordering of the 134 features
FEATURE_NAMES: Tuple[str, ...] = (
    "chroma_stft", "rmse", "spectral_centroid", "spectral_bandwidth", "rolloff", "zero_crossing_rate",
) + tuple(f"mfcc{i}" for i in range(1, N_MFCC + 1))


@dataclass(frozen=True, eq=False)
class FeatureVector:
    """Named feature values in a fixed order."""
    names: Tuple[str, ...]
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "values", values)
        if values.shape != (len(self.names),):
            raise FeatureError(f"{len(self.names)} names but values of shape {values.shape}")

    def __len__(self) -> int:
        return len(self.names)

    def __getitem__(self, name: str) -> float:
        try:
            return float(self.values[self.names.index(name)])
        except ValueError:
            raise KeyError(name)

    def as_dict(self) -> dict:
        return dict(zip(self.names, self.values.tolist()))

    def subset(self, names: Sequence[str]) -> "FeatureVector":
        missing = [n for n in names if n not in self.names]
        if missing:
            raise FeatureMismatchError(f"features not present in vector: {missing[:5]}")
        return FeatureVector(names=tuple(names), values=np.array([self[n] for n in names]))

    def check_ranges(self, sample_rate: int) -> None:
        """
        Raises FeatureError if any value is non-finite or a bounded feature leaves its range.
        """
        if not np.isfinite(self.values).all():
            raise FeatureError("feature vector holds non-finite values")
        nyquist = sample_rate / 2.0
        bounds = {
            "spectral_centroid": (0.0, nyquist),
            "spectral_bandwidth": (0.0, nyquist),
            "rolloff": (0.0, nyquist),
            "zero_crossing_rate": (0.0, 1.0),
            "rmse": (0.0, np.inf),
            "chroma_stft": (0.0, 1.0),
        }
        for name, (low, high) in bounds.items():
            if name in self.names and not low <= self[name] <= high:
                raise FeatureError(f"{name}={self[name]} outside [{low}, {high}]")


class FeatureTable:
    """
    Per-segment feature rows backed by a DataFrame with columns ``source_id, label, <features...>``.

    Labels are stored as their lowercase tokens. Row order is the order segments were given.
    """

    def __init__(self, frame: pd.DataFrame, feature_names: Optional[Sequence[str]] = None):
        self.frame = DataValidationUtils().validate_feature_frame(frame, feature_names).reset_index(drop=True)

    @classmethod
    def from_rows(cls, rows: Iterable[Tuple[str, FeatureVector, Label]]) -> "FeatureTable":
        rows = list(rows)
        if not rows:
            raise FeatureError("cannot build a feature table from zero rows")
        names = rows[0][1].names
        records = []
        for source_id, vector, label in rows:
            if vector.names != names:
                raise FeatureMismatchError(f"row {source_id} has a different feature ordering")
            records.append([source_id, Label.parse(label).value, *vector.values.tolist()])
        return cls(pd.DataFrame(records, columns=DataValidationUtils.KEY_COLUMNS + list(names)))

    def __len__(self) -> int:
        return len(self.frame)

    @property
    def feature_names(self) -> List[str]:
        return [c for c in self.frame.columns if c not in DataValidationUtils.KEY_COLUMNS]

    @property
    def source_ids(self) -> List[str]:
        return self.frame['source_id'].tolist()

    @property
    def labels(self) -> List[Label]:
        return [Label(token) for token in self.frame['label']]

    @property
    def y(self) -> np.ndarray:
        """Encoded labels, Bee=0 and NoBee=1."""
        return (self.frame['label'].to_numpy() == Label.NOBEE.value).astype(np.int64)

    @property
    def X(self) -> np.ndarray:
        return self.frame[self.feature_names].to_numpy(dtype=np.float64)

    def column(self, name: str) -> np.ndarray:
        if name not in self.feature_names:
            raise FeatureMismatchError(f"unknown feature {name!r}")
        return self.frame[name].to_numpy(dtype=np.float64)

    def vector(self, index: int) -> FeatureVector:
        return FeatureVector(names=tuple(self.feature_names), values=self.X[index])

    def select_columns(self, names: Sequence[str]) -> "FeatureTable":
        """Reduced table with ``names`` as feature columns in the given order; rows untouched."""
        missing = [n for n in names if n not in self.feature_names]
        if missing:
            raise FeatureMismatchError(f"features not present in table: {missing[:5]}")
        return FeatureTable(self.frame[DataValidationUtils.KEY_COLUMNS + list(names)])

    def take(self, indices: Sequence[int]) -> "FeatureTable":
        """Rows at ``indices``, in that order."""
        return FeatureTable(self.frame.iloc[list(indices)])

    def class_counts(self) -> dict:
        counts = self.frame['label'].value_counts()
        return {label: int(counts.get(label.value, 0)) for label in Label}


class FeatureTransformer:
    """
    Turns segments into feature vectors and feature tables.

    The mel filterbank is built once per transformer and shared read-only across threads.
    """

    def __init__(self, sample_rate: int = 22050, stft_config: Optional[StftConfig] = None,
                 n_mels: int = N_MELS, n_mfcc: int = N_MFCC, rolloff_pct: float = 0.85,
                 threads: int = 1, quiet: bool = True):
        self.sample_rate = sample_rate
        self.stft_config = stft_config or StftConfig()
        self.n_mfcc = n_mfcc
        self.rolloff_pct = rolloff_pct
        self.threads = threads
        self.quiet = quiet

        self.processor = FeatureProcessor()
        self.filterbank: MelFilterbank = DSPUtils.mel_filterbank(n_mels, self.stft_config.n_fft, sample_rate)
        self.feature_names: Tuple[str, ...] = FEATURE_NAMES[:6] + tuple(
            f"mfcc{i}" for i in range(1, n_mfcc + 1))

    def extract_features(self, segment: Segment) -> FeatureVector:
        """
        Computes the full feature vector of one segment.

        Args:
            segment (Segment): Segment at the transformer's sample rate.

        Returns:
            FeatureVector: chroma_stft, rmse, centroid, bandwidth, rolloff, ZCR, mfcc1..mfccN.

        Raises:
            FeatureError: Sample rate mismatch or a clip too short for the transforms.
        """
        clip = segment.clip
        if clip.sample_rate != self.sample_rate:
            raise FeatureError(
                f"segment {segment.source_id} is at {clip.sample_rate} Hz, extractor expects {self.sample_rate} Hz")

        spec = DSPUtils.stft(clip, self.stft_config)
        frames = self.processor.frames(clip, self.stft_config)

        centroids = self.processor.centroid_series(spec)
        values = [
            self.processor.chroma_stft(spec),
            self.processor.rmse(frames),
            float(np.mean(centroids)),
            self.processor.spectral_bandwidth(spec, centroids),
            self.processor.rolloff(spec, self.rolloff_pct),
            self.processor.zero_crossing_rate(frames),
        ]
        mfccs = self.processor.mfcc_from_spectrogram(spec, self.filterbank, self.n_mfcc)

        return FeatureVector(names=self.feature_names, values=np.concatenate([values, mfccs]))

    def build_table(self, segments: Sequence[Segment]) -> FeatureTable:
        """
        One row per segment, in input order.

        Raises:
            FeatureError: Empty segment list.
        """
        if not segments:
            raise FeatureError("cannot build a feature table from an empty segment list")

        log_status(f"🔊 Extracting {len(self.feature_names)} features from {len(segments)} segments", self.quiet)
        vectors = map_ordered(self.extract_features, segments, threads=self.threads,
                              message="Extracting features", quiet=self.quiet)
        table = FeatureTable.from_rows(
            (segment.source_id, vector, segment.label) for segment, vector in zip(segments, vectors))
        log_status(f"✅ Feature table ready: {len(table)} rows x {len(self.feature_names)} features", self.quiet)
        return table
