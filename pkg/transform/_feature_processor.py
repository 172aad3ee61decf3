from typing import Optional, Tuple
import sys
from pathlib import Path

import numpy as np

# Add necessary imports
PROJECT_ROOT = Path(__file__).resolve().parent.parent
if str(PROJECT_ROOT) not in sys.path:
    sys.path.append(str(PROJECT_ROOT))

from utilidades.audio_utils import AudioClip
from utilidades.dsp_utils import DSPUtils, MelFilterbank, Spectrogram, StftConfig
from utilidades.errors import FeatureError

#C4, chroma reference pitch
CHROMA_REF_HZ = 261.626
CHROMA_MIN_HZ = 20.0


class FeatureProcessor:
    """
    Per-clip spectral and temporal features.

    Spectral features take a magnitude Spectrogram and are computed frame by frame; every
    clip feature is the arithmetic mean of its per-frame series. Frequencies are in Hz.
    """

    @staticmethod
    def frames(clip: AudioClip, cfg: StftConfig) -> np.ndarray:
        """Unwindowed frames with the STFT's frame length, hop and centering."""
        samples = clip.samples
        if samples.size == 0:
            raise FeatureError("cannot frame an empty clip")
        if cfg.center_pad:
            samples = DSPUtils.center_pad(samples, cfg.n_fft)
        return DSPUtils.frame_signal(samples, cfg.n_fft, cfg.hop)

    @staticmethod
    def _safe_ratio(numerator: np.ndarray, denominator: np.ndarray) -> np.ndarray:
        #all-zero frames contribute 0
        out = np.zeros_like(numerator, dtype=np.float64)
        np.divide(numerator, denominator, out=out, where=denominator > 0)
        return out

    @staticmethod
    def centroid_series(spec: Spectrogram) -> np.ndarray:
        """C_t = sum(f[n] * M_t[n]) / sum(M_t[n]) per frame."""
        mags = spec.magnitudes
        return FeatureProcessor._safe_ratio(mags @ spec.bin_freqs, mags.sum(axis=1))

    @staticmethod
    def spectral_centroid(spec: Spectrogram) -> float:
        return float(np.mean(FeatureProcessor.centroid_series(spec)))

    @staticmethod
    def bandwidth_series(spec: Spectrogram, centroid_series: Optional[np.ndarray] = None) -> np.ndarray:
        if centroid_series is None:
            centroid_series = FeatureProcessor.centroid_series(spec)
        mags = spec.magnitudes
        deviation = (spec.bin_freqs[None, :] - centroid_series[:, None]) ** 2
        variance = FeatureProcessor._safe_ratio((mags * deviation).sum(axis=1), mags.sum(axis=1))
        return np.sqrt(variance)

    @staticmethod
    def spectral_bandwidth(spec: Spectrogram, centroid_series: Optional[np.ndarray] = None) -> float:
        """Mean over frames of the magnitude-weighted spread of frequency around the centroid."""
        return float(np.mean(FeatureProcessor.bandwidth_series(spec, centroid_series)))

    @staticmethod
    def rolloff_series(spec: Spectrogram, pct: float = 0.85) -> np.ndarray:
        if not 0.0 < pct < 1.0:
            raise FeatureError(f"rolloff percentage must be in (0, 1), got {pct}")
        mags = spec.magnitudes
        cumulative = np.cumsum(mags, axis=1)
        threshold = pct * cumulative[:, -1]
        #first bin whose cumulative magnitude reaches the threshold
        index = np.argmax(cumulative >= threshold[:, None], axis=1)
        series = spec.bin_freqs[index]
        series[cumulative[:, -1] <= 0] = 0.0
        return series

    @staticmethod
    def rolloff(spec: Spectrogram, pct: float = 0.85) -> float:
        return float(np.mean(FeatureProcessor.rolloff_series(spec, pct)))

    @staticmethod
    def zcr_series(frames: np.ndarray) -> np.ndarray:
        """Sign changes per sample in each frame, with sign(0) taken as +1."""
        signs = np.where(frames >= 0.0, 1.0, -1.0)
        crossings = 0.5 * np.abs(np.diff(signs, axis=1)).sum(axis=1)
        return crossings / frames.shape[1]

    @staticmethod
    def zero_crossing_rate(frames: np.ndarray) -> float:
        return float(np.mean(FeatureProcessor.zcr_series(frames)))

    @staticmethod
    def rmse_series(frames: np.ndarray) -> np.ndarray:
        return np.sqrt(np.mean(frames ** 2, axis=1))

    @staticmethod
    def rmse(frames: np.ndarray) -> float:
        return float(np.mean(FeatureProcessor.rmse_series(frames)))

    @staticmethod
    def pitch_classes(bin_freqs: np.ndarray) -> np.ndarray:
        """Pitch class 0..11 (C = 0) per bin; -1 for bins below 20 Hz."""
        classes = np.full(bin_freqs.shape, -1, dtype=np.int64)
        audible = bin_freqs >= CHROMA_MIN_HZ
        classes[audible] = np.mod(np.round(12.0 * np.log2(bin_freqs[audible] / CHROMA_REF_HZ)), 12).astype(np.int64)
        return classes

    @staticmethod
    def chroma_series(spec: Spectrogram) -> np.ndarray:
        """frames x 12 chroma energies, each frame normalised by its maximum."""
        classes = FeatureProcessor.pitch_classes(spec.bin_freqs)
        projection = np.zeros((spec.bin_freqs.size, 12))
        audible = np.nonzero(classes >= 0)[0]
        projection[audible, classes[audible]] = 1.0

        chroma = spec.power @ projection
        peak = chroma.max(axis=1, keepdims=True)
        return FeatureProcessor._safe_ratio(chroma, np.broadcast_to(peak, chroma.shape))

    @staticmethod
    def chroma_stft(spec: Spectrogram) -> float:
        """Mean over all frames and all 12 classes of the max-normalised chromagram."""
        return float(np.mean(FeatureProcessor.chroma_series(spec)))

    @staticmethod
    def mfcc_series(spec: Spectrogram, fb: MelFilterbank, n_coeffs: int = 128) -> np.ndarray:
        """coeffs x frames: power spectrum -> mel filterbank -> dB -> orthonormal DCT-II."""
        if fb.weights.shape[1] != spec.bin_freqs.size:
            raise FeatureError(
                f"filterbank built for {fb.weights.shape[1]} bins, spectrogram has {spec.bin_freqs.size}")
        if n_coeffs > fb.n_mels:
            raise FeatureError(f"n_coeffs ({n_coeffs}) must not exceed n_mels ({fb.n_mels})")
        mel_power = fb.weights @ spec.power.T
        return DSPUtils.dct_ii(DSPUtils.power_to_db(mel_power), n_coeffs)

    @staticmethod
    def mfcc_from_spectrogram(spec: Spectrogram, fb: MelFilterbank, n_coeffs: int = 128) -> np.ndarray:
        """Per-clip means; entry 0 is mfcc1 (the DC / loudness coefficient)."""
        return FeatureProcessor.mfcc_series(spec, fb, n_coeffs).mean(axis=1)

    @staticmethod
    def mfcc(clip: AudioClip, fb: MelFilterbank, n_coeffs: int = 128,
             cfg: Optional[StftConfig] = None) -> np.ndarray:
        """
        MFCC means of a clip: mfcc1..mfcc{n_coeffs}.

        Raises:
            FeatureError: Clip too short for one frame, or n_coeffs > n_mels.
        """
        cfg = cfg or StftConfig()
        if not cfg.center_pad and len(clip) < cfg.n_fft:
            raise FeatureError(f"clip of {len(clip)} samples is too short for one {cfg.n_fft}-sample frame")
        return FeatureProcessor.mfcc_from_spectrogram(DSPUtils.stft(clip, cfg), fb, n_coeffs)

    @staticmethod
    def spectral_summary(spec: Spectrogram) -> Tuple[float, float, float]:
        """(centroid, bandwidth, rolloff) sharing one centroid series."""
        centroids = FeatureProcessor.centroid_series(spec)
        return (float(np.mean(centroids)),
                FeatureProcessor.spectral_bandwidth(spec, centroids),
                FeatureProcessor.rolloff(spec))
