__all__ = ['Segment', 'SegmentExtractor']

import sys
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

# Add the project root to Python path
PROJECT_ROOT = Path(__file__).resolve().parent.parent
if str(PROJECT_ROOT) not in sys.path:
    sys.path.append(str(PROJECT_ROOT))

from configs.label_config import Label
from extract._annotation_parser import AnnotationParser, LabeledInterval
from utilidades.audio_utils import AudioClip, AudioUtils
from utilidades.errors import SegmentationError
from utilidades.progress_utils import log_status


@dataclass(eq=False)
class Segment:
    """
    A labeled fixed-length clip cut from a source recording.

    ``n_source_samples`` counts the samples that came from the source before repeat-padding;
    the rest of the clip repeats them cyclically.
    """
    clip: AudioClip
    label: Label
    source_id: str
    offset: float
    n_source_samples: Optional[int] = None

    def __post_init__(self):
        if self.n_source_samples is None:
            self.n_source_samples = len(self.clip)


class SegmentExtractor:
    """
    Cuts annotated recordings into labeled blocks.

    The pipeline rate (22050 Hz) and block length (2 s) come from the caller's configuration.
    """

    def __init__(self, sample_rate: int = 22050, block_seconds: float = 2.0, quiet: bool = True):
        if block_seconds <= 0:
            raise SegmentationError(f"block_seconds must be > 0, got {block_seconds}")
        self.sample_rate = sample_rate
        self.block_seconds = block_seconds
        self.quiet = quiet

    @staticmethod
    def block_length(block_seconds: float, sample_rate: int) -> int:
        return int(round(block_seconds * sample_rate))

    @staticmethod
    def blocks(clip: AudioClip, block_seconds: float = 2.0) -> List[Tuple[float, AudioClip, int]]:
        """
        Splits a clip into consecutive non-overlapping blocks, repeat-padding the last one.

        A trailing short block is completed by cyclically repeating its own samples,
        so padded sample k equals ``tail[k mod len(tail)]``.

        Returns:
            List of (offset seconds, block clip, samples taken from the source).

        Raises:
            SegmentationError: If the clip holds no samples.
        """
        if len(clip) < 1:
            raise SegmentationError("clip is shorter than one sample")

        block_len = SegmentExtractor.block_length(block_seconds, clip.sample_rate)
        if block_len < 1:
            raise SegmentationError(f"block of {block_seconds} s holds no samples at {clip.sample_rate} Hz")

        result = []
        for start in range(0, len(clip), block_len):
            chunk = clip.samples[start:start + block_len]
            n_real = chunk.size
            if n_real < block_len:
                #np.resize repeats the array cyclically
                chunk = np.resize(chunk, block_len)
            result.append((start / clip.sample_rate, AudioClip(samples=chunk.copy(), sample_rate=clip.sample_rate), n_real))
        return result

    @staticmethod
    def segment(clip: AudioClip, annotations: Sequence[LabeledInterval], block_seconds: float = 2.0,
                source_id: str = "clip", quiet: bool = True) -> List[Segment]:
        """
        Cuts a clip into labeled blocks of ``block_seconds``.

        A block whose nominal range [offset, offset + block_seconds) overlaps any NoBee interval by
        more than zero duration is NoBee; otherwise it is Bee. That includes blocks no annotation
        reaches, which are counted in a warning, so the segments always partition the clip.

        Args:
            clip (AudioClip): Clip already at the pipeline rate.
            annotations (Sequence[LabeledInterval]): Intervals of the clip.
            block_seconds (float): Block length in seconds.
            source_id (str): Provenance recorded on each segment.
            quiet (bool): Silence the coverage warning.

        Returns:
            List[Segment]: Segments in time order.

        Raises:
            SegmentationError: Empty clip or empty annotation list.
        """
        if not annotations:
            raise SegmentationError(f"no annotations for {source_id}: labels cannot be derived")

        nobee = [a for a in annotations if a.label is Label.NOBEE]
        segments = []
        uncovered = 0
        for offset, block, n_real in SegmentExtractor.blocks(clip, block_seconds):
            end = offset + block_seconds
            if not any(a.overlap(offset, end) > 0.0 for a in annotations):
                uncovered += 1
            label = Label.NOBEE if any(a.overlap(offset, end) > 0.0 for a in nobee) else Label.BEE
            segments.append(Segment(clip=block, label=label, source_id=source_id, offset=offset,
                                    n_source_samples=n_real))

        if uncovered:
            log_status(f"⚠️  {source_id}: {uncovered} block(s) outside every annotated interval labeled bee", quiet)
        return segments

    @staticmethod
    def mix_segments(a: Segment, b: Segment, split_at: float, block_seconds: float = 2.0) -> AudioClip:
        """
        Builds a mixed validation wave: a's first ``split_at`` seconds followed by b's first
        ``block_seconds - split_at`` seconds.

        ``split_at == block_seconds`` returns a's block unchanged.

        Raises:
            SegmentationError: split_at outside (0, block_seconds], mismatched sample rates,
                or a source shorter than the block.
        """
        if not 0.0 < split_at <= block_seconds:
            raise SegmentationError(f"split_at must be in (0, {block_seconds}], got {split_at}")
        if a.clip.sample_rate != b.clip.sample_rate:
            raise SegmentationError(
                f"sample rates differ: {a.clip.sample_rate} Hz vs {b.clip.sample_rate} Hz")

        sample_rate = a.clip.sample_rate
        block_len = SegmentExtractor.block_length(block_seconds, sample_rate)
        if len(a.clip) < block_len or len(b.clip) < block_len:
            raise SegmentationError(f"both sources must hold at least {block_len} samples")

        n_a = SegmentExtractor.block_length(split_at, sample_rate)
        samples = np.concatenate([a.clip.samples[:n_a], b.clip.samples[:block_len - n_a]])
        return AudioClip(samples=samples, sample_rate=sample_rate)

    def extract_file(self, wav_path: Union[str, Path], annotation_path: Union[str, Path],
                     source_id: Optional[str] = None) -> List[Segment]:
        """
        Reads a recording and its annotation TSV, resamples to the pipeline rate and segments it.
        """
        wav_path = Path(wav_path)
        source_id = source_id or wav_path.stem

        log_status(f"🎧 Reading {wav_path.name}", self.quiet)
        clip = AudioUtils.read_wav(wav_path)
        if clip.sample_rate != self.sample_rate:
            log_status(f"   Resampling {clip.sample_rate} Hz -> {self.sample_rate} Hz", self.quiet)
            clip = AudioUtils.resample(clip, self.sample_rate)

        annotations = AnnotationParser.read_annotations(annotation_path)
        segments = self.segment(clip, annotations, self.block_seconds, source_id=source_id, quiet=self.quiet)

        n_bee = sum(1 for s in segments if s.label is Label.BEE)
        log_status(f"✅ {len(segments)} segments ({n_bee} bee, {len(segments) - n_bee} nobee)", self.quiet)
        return segments
