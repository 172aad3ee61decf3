"""
Core transforms shared by every feature extractor: framing, STFT, mel filterbank,
log compression and DCT-II.

Defaults (n_fft 2048, hop 512, Hann window, reflection centering) follow the reference
audio toolchain family the features were originally computed with.
"""

__all__ = ['Window', 'StftConfig', 'Spectrogram', 'MelFilterbank', 'DSPUtils', 'AMIN']

import sys
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Optional, Union

import numpy as np
from scipy.fft import dct
from scipy.signal import get_window

PROJECT_ROOT = Path(__file__).resolve().parent.parent
if str(PROJECT_ROOT) not in sys.path:
    sys.path.append(str(PROJECT_ROOT))

from utilidades.audio_utils import AudioClip
from utilidades.errors import FeatureError

#log-compression floor
AMIN = 1e-10


class Window(str, Enum):
    HANN = "hann"
    RECTANGULAR = "rectangular"


@dataclass(frozen=True)
class StftConfig:
    """STFT parameters. n_fft must be a power of two and 0 < hop <= n_fft."""
    n_fft: int = 2048
    hop: int = 512
    window: Window = Window.HANN
    center_pad: bool = True

    def __post_init__(self):
        if self.n_fft < 1 or (self.n_fft & (self.n_fft - 1)) != 0:
            raise FeatureError(f"n_fft must be a power of two, got {self.n_fft}")
        if not 0 < self.hop <= self.n_fft:
            raise FeatureError(f"hop must satisfy 0 < hop <= n_fft, got hop={self.hop}, n_fft={self.n_fft}")
        #accept plain strings for the window
        object.__setattr__(self, "window", Window(self.window))

    @property
    def n_bins(self) -> int:
        return self.n_fft // 2 + 1


@dataclass(frozen=True, eq=False)
class Spectrogram:
    """Magnitude STFT: ``magnitudes`` is frames x bins, non-negative and finite."""
    magnitudes: np.ndarray
    bin_freqs: np.ndarray
    frame_times: np.ndarray
    sample_rate: int
    n_fft: int

    @property
    def n_frames(self) -> int:
        return int(self.magnitudes.shape[0])

    @property
    def power(self) -> np.ndarray:
        return self.magnitudes ** 2


@dataclass(frozen=True, eq=False)
class MelFilterbank:
    """Triangular mel filters, ``weights`` is n_mels x bins. Immutable after construction."""
    weights: np.ndarray
    center_freqs: np.ndarray
    sample_rate: int
    n_fft: int

    @property
    def n_mels(self) -> int:
        return int(self.weights.shape[0])


class DSPUtils:
    """Pure DSP transforms. No state; safe to share across threads."""

    @staticmethod
    def hz_to_mel(freqs: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
        return 2595.0 * np.log10(1.0 + np.asarray(freqs, dtype=np.float64) / 700.0)

    @staticmethod
    def mel_to_hz(mels: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
        return 700.0 * (10.0 ** (np.asarray(mels, dtype=np.float64) / 2595.0) - 1.0)

    @staticmethod
    def _samples(signal: Union[AudioClip, np.ndarray]) -> np.ndarray:
        if isinstance(signal, AudioClip):
            return signal.samples
        return np.asarray(signal, dtype=np.float64)

    @staticmethod
    def center_pad(samples: np.ndarray, n_fft: int) -> np.ndarray:
        """
        Reflection-pads by n_fft/2 on both ends. Signals too short to reflect are zero-padded.
        """
        pad = n_fft // 2
        mode = "reflect" if samples.size > pad else "constant"
        return np.pad(samples, pad, mode=mode)

    @staticmethod
    def frame_signal(signal: Union[AudioClip, np.ndarray], frame_len: int, hop: int) -> np.ndarray:
        """
        Cuts consecutive windows of ``frame_len`` samples every ``hop`` samples (no centering).

        Args:
            signal (AudioClip or np.ndarray): Input samples.
            frame_len (int): Samples per frame, >= 1.
            hop (int): Samples between frame starts, >= 1.

        Returns:
            np.ndarray: frames x frame_len copy, with ``1 + (N - frame_len) // hop`` frames.

        Raises:
            FeatureError: If the signal is shorter than one frame or the sizes are invalid.
        """
        if frame_len < 1 or hop < 1:
            raise FeatureError(f"frame_len and hop must be >= 1, got frame_len={frame_len}, hop={hop}")
        samples = DSPUtils._samples(signal)
        if samples.size < frame_len:
            raise FeatureError(f"signal of {samples.size} samples is shorter than one frame ({frame_len})")
        windows = np.lib.stride_tricks.sliding_window_view(samples, frame_len)
        return windows[::hop].copy()

    @staticmethod
    def stft(clip: AudioClip, cfg: Optional[StftConfig] = None) -> Spectrogram:
        """
        Magnitude short-time Fourier transform.

        Each frame is multiplied by the window (periodic Hann or rectangular) and transformed with a
        real FFT of size n_fft. ``bin_freqs[k] = k * sample_rate / n_fft``. With ``center_pad`` the
        signal is reflection-padded by n_fft/2 on both ends and frame t is centred at ``t * hop``.

        Raises:
            FeatureError: Empty clip, or a clip shorter than one frame without centering.
        """
        cfg = cfg or StftConfig()
        samples = clip.samples
        if samples.size == 0:
            raise FeatureError("cannot compute the STFT of an empty clip")

        if cfg.center_pad:
            samples = DSPUtils.center_pad(samples, cfg.n_fft)
        frames = DSPUtils.frame_signal(samples, cfg.n_fft, cfg.hop)

        if cfg.window is Window.HANN:
            window = get_window("hann", cfg.n_fft, fftbins=True)
        else:
            window = np.ones(cfg.n_fft)

        magnitudes = np.abs(np.fft.rfft(frames * window, n=cfg.n_fft, axis=1))
        bin_freqs = np.arange(cfg.n_bins, dtype=np.float64) * clip.sample_rate / cfg.n_fft

        starts = np.arange(frames.shape[0], dtype=np.float64) * cfg.hop
        if not cfg.center_pad:
            starts = starts + cfg.n_fft / 2
        frame_times = starts / clip.sample_rate

        return Spectrogram(magnitudes=magnitudes, bin_freqs=bin_freqs, frame_times=frame_times,
                           sample_rate=clip.sample_rate, n_fft=cfg.n_fft)

    @staticmethod
    def mel_filterbank(n_mels: int, n_fft: int, sample_rate: int,
                       f_min: float = 0.0, f_max: Optional[float] = None) -> MelFilterbank:
        """
        Builds area-normalised triangular filters on the HTK mel scale ``2595 * log10(1 + f / 700)``.

        Filter j spans (f_lower, f_upper) with its peak at the j-th of n_mels centers equally spaced
        in mel between f_min and f_max, and is scaled by ``2 / (f_upper - f_lower)``.

        Raises:
            FeatureError: Invalid range, or n_mels too large for the FFT resolution (an empty filter).
        """
        if f_max is None:
            f_max = sample_rate / 2.0
        if n_mels < 1:
            raise FeatureError(f"n_mels must be >= 1, got {n_mels}")
        if not (0.0 <= f_min < f_max <= sample_rate / 2.0):
            raise FeatureError(f"need 0 <= f_min < f_max <= sample_rate/2, got f_min={f_min}, f_max={f_max}")

        bin_freqs = np.arange(n_fft // 2 + 1, dtype=np.float64) * sample_rate / n_fft
        mel_points = np.linspace(DSPUtils.hz_to_mel(f_min), DSPUtils.hz_to_mel(f_max), n_mels + 2)
        hz_points = DSPUtils.mel_to_hz(mel_points)
        #pin the edges so float round-off in the mel round trip cannot move them
        hz_points[0], hz_points[-1] = f_min, f_max

        lower = hz_points[:-2, None]
        center = hz_points[1:-1, None]
        upper = hz_points[2:, None]
        rising = (bin_freqs[None, :] - lower) / (center - lower)
        falling = (upper - bin_freqs[None, :]) / (upper - center)
        weights = np.maximum(0.0, np.minimum(rising, falling))
        weights *= 2.0 / (upper - lower)

        empty = np.nonzero(weights.sum(axis=1) <= 0.0)[0]
        if empty.size:
            raise FeatureError(
                f"n_mels={n_mels} is too large for n_fft={n_fft} at {sample_rate} Hz: "
                f"{empty.size} filter(s) cover no FFT bin (first empty filter {int(empty[0])})")

        return MelFilterbank(weights=weights, center_freqs=hz_points[1:-1].copy(),
                             sample_rate=sample_rate, n_fft=n_fft)

    @staticmethod
    def dct_ii(matrix: np.ndarray, n_coeffs: int) -> np.ndarray:
        """
        Orthonormal DCT-II along axis 0 (the mel axis), truncated to ``n_coeffs`` rows.

        Args:
            matrix (np.ndarray): mels x frames (a 1-D vector is treated as one column).
            n_coeffs (int): Coefficients to keep, <= number of mels.
        """
        matrix = np.asarray(matrix, dtype=np.float64)
        n_mels = matrix.shape[0]
        if not 1 <= n_coeffs <= n_mels:
            raise FeatureError(f"n_coeffs must be in [1, {n_mels}], got {n_coeffs}")
        return dct(matrix, type=2, norm="ortho", axis=0)[:n_coeffs]

    @staticmethod
    def power_to_db(power: Union[float, np.ndarray], amin: float = AMIN) -> Union[float, np.ndarray]:
        """``10 * log10(max(power, amin))``."""
        db = 10.0 * np.log10(np.maximum(np.asarray(power, dtype=np.float64), amin))
        return float(db) if np.ndim(db) == 0 else db
