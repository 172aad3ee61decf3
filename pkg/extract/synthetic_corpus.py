"""
Synthetic bee / non-bee corpus used when the original hive recordings are not available.

Bee segments are harmonic buzzes; NoBee segments are broadband noise, chirp sweeps or
impulsive clicks, optionally over a faint buzz. The only contract is class separability
and determinism per seed.
"""

__all__ = ['SyntheticCorpusGenerator']

import sys
from pathlib import Path
from typing import List

import numpy as np

PROJECT_ROOT = Path(__file__).resolve().parent.parent
if str(PROJECT_ROOT) not in sys.path:
    sys.path.append(str(PROJECT_ROOT))

from configs.label_config import Label
from extract.segment_extractor import Segment
from utilidades.audio_utils import AudioClip
from utilidades.errors import SegmentationError
from utilidades.progress_utils import log_status
from utilidades.random_utils import make_rng

#class stream counters for derive_seed
_BEE_STREAM = 0
_NOBEE_STREAM = 1
NOBEE_KINDS = ("white_noise", "chirp", "clicks")


def _db_to_gain(db: float) -> float:
    return 10.0 ** (db / 20.0)


def _rms(x: np.ndarray) -> float:
    return float(np.sqrt(np.mean(x ** 2)))


class SyntheticCorpusGenerator:

    def __init__(self, sample_rate: int = 22050, block_seconds: float = 2.0, quiet: bool = True):
        self.sample_rate = sample_rate
        self.block_seconds = block_seconds
        self.n_samples = int(round(block_seconds * sample_rate))
        self.t = np.arange(self.n_samples, dtype=np.float64) / sample_rate
        self.quiet = quiet

    def _buzz(self, rng: np.random.Generator) -> np.ndarray:
        """Harmonic buzz: f0 in 190-260 Hz, 4-8 harmonics at 1/h, slow amplitude modulation."""
        f0 = rng.uniform(190.0, 260.0)
        n_harmonics = int(rng.integers(4, 9))
        signal = np.zeros(self.n_samples)
        for h in range(1, n_harmonics + 1):
            phase = rng.uniform(0.0, 2.0 * np.pi)
            signal += np.sin(2.0 * np.pi * h * f0 * self.t + phase) / h

        am_rate = rng.uniform(0.5, 4.0)
        am_depth = rng.uniform(0.1, 0.4)
        signal *= 1.0 + am_depth * np.sin(2.0 * np.pi * am_rate * self.t + rng.uniform(0.0, 2.0 * np.pi))
        return signal / np.max(np.abs(signal))

    def _bee_signal(self, rng: np.random.Generator) -> np.ndarray:
        buzz = self._buzz(rng)
        #noise floor 30 dB under the buzz
        noise = rng.standard_normal(self.n_samples) * _rms(buzz) * _db_to_gain(-30.0)
        return buzz + noise

    def _nobee_signal(self, rng: np.random.Generator) -> np.ndarray:
        kind = NOBEE_KINDS[int(rng.integers(len(NOBEE_KINDS)))]

        if kind == "white_noise":
            signal = rng.standard_normal(self.n_samples)

        elif kind == "chirp":
            #repeated linear sweeps between 1 and 6 kHz
            n_sweeps = int(rng.integers(1, 5))
            sweep_len = self.block_seconds / n_sweeps
            local_t = np.mod(self.t, sweep_len)
            f_start, f_end = (1000.0, 6000.0) if rng.random() < 0.5 else (6000.0, 1000.0)
            phase = 2.0 * np.pi * (f_start * local_t + (f_end - f_start) * local_t ** 2 / (2.0 * sweep_len))
            signal = np.sin(phase) + 0.1 * rng.standard_normal(self.n_samples)

        else:
            #decaying broadband bursts over a noise bed
            signal = 0.05 * rng.standard_normal(self.n_samples)
            n_clicks = int(rng.integers(15, 41))
            for start in rng.integers(0, self.n_samples, n_clicks):
                length = int(rng.integers(int(0.002 * self.sample_rate), int(0.006 * self.sample_rate)))
                stop = min(start + length, self.n_samples)
                envelope = np.exp(-np.arange(stop - start) / (0.25 * length))
                signal[start:stop] += rng.standard_normal(stop - start) * envelope

        signal = signal / np.max(np.abs(signal))
        if rng.random() < 0.5:
            signal = signal + self._buzz(rng) * _db_to_gain(-15.0)
        return signal

    def _finish(self, signal: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        #random peak level shared by both classes so loudness alone does not separate them
        peak = rng.uniform(0.2, 0.9)
        return signal * (peak / np.max(np.abs(signal)))

    def generate(self, n_bee: int, n_nobee: int, seed: int) -> List[Segment]:
        """
        Generates ``n_bee`` Bee segments followed by ``n_nobee`` NoBee segments.

        Segment i of each class draws from its own stream ``(seed, class, i)``, so the corpus is
        identical for equal seeds and any prefix is stable when counts grow.

        Raises:
            SegmentationError: If a count is below 1.
        """
        if n_bee < 1 or n_nobee < 1:
            raise SegmentationError(f"counts must be >= 1, got n_bee={n_bee}, n_nobee={n_nobee}")

        log_status(f"🐝 Generating synthetic corpus: {n_bee} bee + {n_nobee} nobee (seed {seed})", self.quiet)
        segments = []
        for label, stream, count, build in (
            (Label.BEE, _BEE_STREAM, n_bee, self._bee_signal),
            (Label.NOBEE, _NOBEE_STREAM, n_nobee, self._nobee_signal),
        ):
            for i in range(count):
                rng = make_rng(seed, stream, i)
                samples = self._finish(build(rng), rng)
                segments.append(Segment(
                    clip=AudioClip(samples=samples, sample_rate=self.sample_rate),
                    label=label,
                    source_id=f"synth_{label.value}_{i:05d}",
                    offset=0.0,
                ))
        return segments
