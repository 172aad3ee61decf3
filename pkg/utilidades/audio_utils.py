"""
Audio clip container and WAV / resampling utilities.

WAV containers are parsed by soundfile (libsndfile); the PCM-16 scaling is done here
so that read/write round-trips do not depend on the libsndfile version.
"""

__all__ = ['AudioClip', 'AudioUtils']

import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Union

import numpy as np
import soundfile as sf

PROJECT_ROOT = Path(__file__).resolve().parent.parent
if str(PROJECT_ROOT) not in sys.path:
    sys.path.append(str(PROJECT_ROOT))

from utilidades.errors import AudioFormatError

#PCM-16 full scale; reads divide by it, writes multiply and clip to int16
PCM16_SCALE = 32768.0
SUPPORTED_SUBTYPES = ("PCM_16", "FLOAT")


@dataclass(eq=False)
class AudioClip:
    """
    Mono sample buffer plus sample rate, the unit of all DSP.

    Samples are stored as float64 and must be finite and within [-1, 1].
    """
    samples: np.ndarray
    sample_rate: int

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=np.float64)
        if samples.ndim != 1:
            raise AudioFormatError(f"AudioClip samples must be 1-D, got shape {samples.shape}")
        if int(self.sample_rate) != self.sample_rate or self.sample_rate <= 0:
            raise AudioFormatError(f"sample_rate must be a positive integer, got {self.sample_rate}")
        if samples.size and not np.all(np.isfinite(samples)):
            raise AudioFormatError("AudioClip samples must be finite")
        if samples.size and np.max(np.abs(samples)) > 1.0:
            raise AudioFormatError(
                f"AudioClip samples exceed [-1, 1] (peak {np.max(np.abs(samples)):.6f}); clipping is rejected at ingest")
        self.samples = samples
        self.sample_rate = int(self.sample_rate)

    def __len__(self) -> int:
        return int(self.samples.size)

    @property
    def duration(self) -> float:
        """Duration in seconds."""
        return self.samples.size / self.sample_rate

    def require_non_empty(self) -> "AudioClip":
        if self.samples.size == 0:
            raise AudioFormatError("AudioClip is empty")
        return self


class AudioUtils:
    """Read, write and resample AudioClips."""

    @staticmethod
    def read_wav(path: Union[str, Path]) -> AudioClip:
        """
        Reads a RIFF/WAVE file into a mono AudioClip.

        Stereo input is downmixed by channel mean. PCM-16 samples are scaled by 1/32768;
        float-32 samples are taken as-is (and rejected if they clip).

        Args:
            path (str or Path): WAV file path.

        Returns:
            AudioClip: Mono clip with the header's sample rate.

        Raises:
            FileNotFoundError: If the file does not exist.
            AudioFormatError: Malformed header, unsupported encoding or channel count, or empty data chunk.
        """
        path = Path(path)
        if not path.exists():
            raise FileNotFoundError(f"WAV file not found: {path}")

        try:
            info = sf.info(str(path))
        except (sf.SoundFileError, RuntimeError) as e:
            raise AudioFormatError(f"malformed WAV header in {path}: {e}")

        if info.format != "WAV":
            raise AudioFormatError(f"{path} is not a RIFF/WAVE container (format {info.format})")
        if info.subtype not in SUPPORTED_SUBTYPES:
            raise AudioFormatError(f"unsupported WAV encoding {info.subtype} in {path}, expected PCM-16 or float-32")
        if info.channels not in (1, 2):
            raise AudioFormatError(f"unsupported channel count {info.channels} in {path}, expected 1 or 2")

        try:
            if info.subtype == "PCM_16":
                raw, sample_rate = sf.read(str(path), dtype="int16", always_2d=True)
                data = raw.astype(np.float64) / PCM16_SCALE
            else:
                raw, sample_rate = sf.read(str(path), dtype="float32", always_2d=True)
                data = raw.astype(np.float64)
        except (sf.SoundFileError, RuntimeError) as e:
            raise AudioFormatError(f"could not decode {path}: {e}")

        if data.shape[0] == 0:
            raise AudioFormatError(f"zero-length data chunk in {path}")

        #downmix by channel mean
        samples = data.mean(axis=1) if data.shape[1] > 1 else data[:, 0]
        return AudioClip(samples=samples, sample_rate=int(sample_rate))

    @staticmethod
    def write_wav(clip: AudioClip, path: Union[str, Path]) -> None:
        """
        Writes a clip as a PCM-16 mono WAV file.

        Args:
            clip (AudioClip): Non-empty clip.
            path (str or Path): Destination; parent directories must exist.

        Raises:
            AudioFormatError: If the clip is empty.
            OSError: On I/O failure.
        """
        clip.require_non_empty()
        quantized = np.clip(np.round(clip.samples * PCM16_SCALE), -32768, 32767).astype(np.int16)
        try:
            sf.write(str(path), quantized, clip.sample_rate, subtype="PCM_16", format="WAV")
        except (sf.SoundFileError, RuntimeError) as e:
            raise OSError(f"could not write WAV file {path}: {e}")

    @staticmethod
    def resample(clip: AudioClip, target_rate: int) -> AudioClip:
        """
        Resamples by linear interpolation.

        The output holds ``round(N * target_rate / sample_rate)`` samples, so its duration matches
        the input within one output sample period. Positions past the last input sample hold the
        last value.

        Args:
            clip (AudioClip): Input clip.
            target_rate (int): Output sample rate in Hz, > 0.

        Returns:
            AudioClip: Resampled clip (a copy when the rates already match).
        """
        if int(target_rate) != target_rate or target_rate <= 0:
            raise AudioFormatError(f"target_rate must be a positive integer, got {target_rate}")
        target_rate = int(target_rate)

        if target_rate == clip.sample_rate:
            return AudioClip(samples=clip.samples.copy(), sample_rate=target_rate)

        n_in = clip.samples.size
        if n_in == 0:
            return AudioClip(samples=np.zeros(0), sample_rate=target_rate)

        n_out = max(int(round(n_in * target_rate / clip.sample_rate)), 1)
        positions = np.arange(n_out, dtype=np.float64) * (clip.sample_rate / target_rate)
        resampled = np.interp(positions, np.arange(n_in, dtype=np.float64), clip.samples)
        return AudioClip(samples=resampled, sample_rate=target_rate)
