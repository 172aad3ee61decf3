import sys
from pathlib import Path

import numpy as np
import pandas as pd
import pytest

# Add the project root to Python path
PROJECT_ROOT = Path(__file__).resolve().parent.parent
if str(PROJECT_ROOT) not in sys.path:
    sys.path.append(str(PROJECT_ROOT))

from configs.label_config import Label
from extract.segment_extractor import Segment
from transform.feature_transform import FeatureTable
from utilidades.audio_utils import AudioClip

SAMPLE_RATE = 22050


def sine(freq: float, seconds: float = 1.0, sample_rate: int = SAMPLE_RATE, amplitude: float = 1.0) -> AudioClip:
    t = np.arange(int(round(seconds * sample_rate))) / sample_rate
    return AudioClip(samples=amplitude * np.sin(2 * np.pi * freq * t), sample_rate=sample_rate)


def make_table(n_bee: int = 30, n_nobee: int = 30, n_features: int = 6, seed: int = 0,
               separation: float = 4.0) -> FeatureTable:
    """Gaussian rows; feature 0 is shifted by ``separation`` for NoBee, the rest is noise."""
    rng = np.random.default_rng(seed)
    X = rng.normal(size=(n_bee + n_nobee, n_features))
    X[n_bee:, 0] += separation
    labels = [Label.BEE.value] * n_bee + [Label.NOBEE.value] * n_nobee
    frame = pd.DataFrame(X, columns=[f"f{i}" for i in range(n_features)])
    frame.insert(0, 'label', labels)
    frame.insert(0, 'source_id', [f"row{i:03d}" for i in range(n_bee + n_nobee)])
    return FeatureTable(frame)


@pytest.fixture
def separable_table() -> FeatureTable:
    return make_table()


@pytest.fixture
def bee_segment() -> Segment:
    return Segment(clip=sine(220.0, 2.0, amplitude=0.5), label=Label.BEE, source_id="bee", offset=0.0)


@pytest.fixture
def nobee_segment() -> Segment:
    rng = np.random.default_rng(7)
    noise = AudioClip(samples=rng.uniform(-0.5, 0.5, 2 * SAMPLE_RATE), sample_rate=SAMPLE_RATE)
    return Segment(clip=noise, label=Label.NOBEE, source_id="nobee", offset=0.0)
