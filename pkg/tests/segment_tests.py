import numpy as np
import pytest

from conftest import SAMPLE_RATE, sine
from configs.label_config import Label
from extract._annotation_parser import AnnotationParser, LabeledInterval
from extract.segment_extractor import Segment, SegmentExtractor
from utilidades.audio_utils import AudioClip, AudioUtils
from utilidades.errors import AnnotationError, SegmentationError


def ramp(seconds: float) -> AudioClip:
    n = int(round(seconds * SAMPLE_RATE))
    return AudioClip(samples=np.linspace(-1.0, 1.0, n), sample_rate=SAMPLE_RATE)


class TestAnnotations:

    def test_happy_path(self):
        intervals = AnnotationParser.parse_annotations("0.0\t3.5\tbee\n3.5\t4.2\tnobee")
        assert intervals == [LabeledInterval(0.0, 3.5, Label.BEE), LabeledInterval(3.5, 4.2, Label.NOBEE)]

    def test_end_before_start_reports_line(self):
        with pytest.raises(AnnotationError) as info:
            AnnotationParser.parse_annotations("# header\n1.0\t0.5\tbee")
        assert info.value.line_number == 2

    def test_out_of_order_lines_are_sorted(self):
        intervals = AnnotationParser.parse_annotations("5\t6\tNoBee\n0\t2\tBEE\n\n2\t5\tbee\n")
        assert [i.start for i in intervals] == [0.0, 2.0, 5.0]
        assert intervals[-1].label is Label.NOBEE

    def test_unknown_label(self):
        with pytest.raises(AnnotationError):
            AnnotationParser.parse_annotations("0\t1\twasp")

    def test_overlap_is_an_ingest_error(self):
        with pytest.raises(AnnotationError):
            AnnotationParser.parse_annotations("0\t2\tbee\n1.5\t3\tnobee")

    def test_bad_field_count(self):
        with pytest.raises(AnnotationError):
            AnnotationParser.parse_annotations("0\t1")

    def test_read_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            AnnotationParser.read_annotations(tmp_path / "none.tsv")


class TestSegment:

    def test_all_bee_clip(self):
        segments = SegmentExtractor.segment(ramp(4.0), [LabeledInterval(0.0, 4.0, Label.BEE)])
        assert [s.label for s in segments] == [Label.BEE, Label.BEE]
        assert all(len(s.clip) == 2 * SAMPLE_RATE for s in segments)
        assert [s.offset for s in segments] == [0.0, 2.0]

    def test_short_nobee_overlap_marks_block(self):
        annotations = [LabeledInterval(0.0, 1.9, Label.BEE), LabeledInterval(1.9, 2.0, Label.NOBEE),
                       LabeledInterval(2.0, 4.0, Label.BEE)]
        segments = SegmentExtractor.segment(ramp(4.0), annotations)
        assert [s.label for s in segments] == [Label.NOBEE, Label.BEE]

    def test_tail_is_repeat_padded(self):
        clip = ramp(3.0)
        segments = SegmentExtractor.segment(clip, [LabeledInterval(0.0, 3.0, Label.BEE)])
        tail = clip.samples[2 * SAMPLE_RATE:]

        last = segments[1]
        assert last.n_source_samples == SAMPLE_RATE
        k = np.arange(2 * SAMPLE_RATE)
        assert np.array_equal(last.clip.samples, tail[k % SAMPLE_RATE])

    def test_source_is_partitioned(self):
        clip = ramp(5.3)
        segments = SegmentExtractor.segment(clip, [LabeledInterval(0.0, 6.0, Label.BEE)])
        rebuilt = np.concatenate([s.clip.samples[:s.n_source_samples] for s in segments])
        assert np.array_equal(rebuilt, clip.samples)

    def test_deterministic(self):
        clip = ramp(3.0)
        annotations = [LabeledInterval(0.0, 3.0, Label.NOBEE)]
        first = SegmentExtractor.segment(clip, annotations)
        second = SegmentExtractor.segment(clip, annotations)
        assert all(np.array_equal(a.clip.samples, b.clip.samples) for a, b in zip(first, second))

    def test_bee_segments_avoid_nobee_intervals(self):
        annotations = AnnotationParser.parse_annotations("0\t3\tbee\n3\t3.5\tnobee\n3.5\t10\tbee")
        segments = SegmentExtractor.segment(ramp(10.0), annotations)
        nobee = [a for a in annotations if a.label is Label.NOBEE]
        for s in segments:
            if s.label is Label.BEE:
                assert all(a.overlap(s.offset, s.offset + 2.0) == 0.0 for a in nobee)
        assert [s.label for s in segments] == [Label.BEE, Label.NOBEE, Label.BEE, Label.BEE, Label.BEE]

    def test_unannotated_blocks_are_bee(self):
        clip = ramp(6.0)
        segments = SegmentExtractor.segment(clip, [LabeledInterval(0.0, 1.0, Label.BEE)])
        assert [s.label for s in segments] == [Label.BEE, Label.BEE, Label.BEE]
        rebuilt = np.concatenate([s.clip.samples[:s.n_source_samples] for s in segments])
        assert np.array_equal(rebuilt, clip.samples)

    def test_partial_nobee_annotation_leaves_the_rest_bee(self):
        segments = SegmentExtractor.segment(ramp(6.0), [LabeledInterval(2.5, 3.0, Label.NOBEE)])
        assert [s.label for s in segments] == [Label.BEE, Label.NOBEE, Label.BEE]

    def test_errors(self):
        with pytest.raises(SegmentationError):
            SegmentExtractor.segment(ramp(2.0), [])
        with pytest.raises(SegmentationError):
            SegmentExtractor.segment(AudioClip(samples=np.zeros(0), sample_rate=SAMPLE_RATE),
                                     [LabeledInterval(0.0, 1.0, Label.BEE)])

    def test_extract_file_resamples(self, tmp_path):
        wav = tmp_path / "hive.wav"
        AudioUtils.write_wav(sine(200.0, 4.0, sample_rate=44100, amplitude=0.5), wav)
        tsv = tmp_path / "hive.tsv"
        tsv.write_text("0\t2\tbee\n2\t4\tnobee\n", encoding="utf-8")

        segments = SegmentExtractor(quiet=True).extract_file(wav, tsv)
        assert [s.label for s in segments] == [Label.BEE, Label.NOBEE]
        assert all(s.clip.sample_rate == SAMPLE_RATE and s.source_id == "hive" for s in segments)


class TestMixSegments:

    def _segments(self):
        a = Segment(clip=AudioClip(samples=np.full(2 * SAMPLE_RATE, 0.5), sample_rate=SAMPLE_RATE),
                    label=Label.BEE, source_id="a", offset=0.0)
        b = Segment(clip=AudioClip(samples=np.full(2 * SAMPLE_RATE, -0.5), sample_rate=SAMPLE_RATE),
                    label=Label.NOBEE, source_id="b", offset=0.0)
        return a, b

    def test_full_split_is_pure_a(self):
        a, b = self._segments()
        assert np.array_equal(SegmentExtractor.mix_segments(a, b, 2.0).samples, a.clip.samples)

    @pytest.mark.parametrize("split_at", [1.0, 1.25, 0.75])
    def test_split_lengths(self, split_at):
        a, b = self._segments()
        mixed = SegmentExtractor.mix_segments(a, b, split_at)
        n_a = int(round(split_at * SAMPLE_RATE))
        assert len(mixed) == 2 * SAMPLE_RATE
        assert np.all(mixed.samples[:n_a] == 0.5)
        assert np.all(mixed.samples[n_a:] == -0.5)

    @pytest.mark.parametrize("split_at", [0.0, -1.0, 2.5])
    def test_split_out_of_range(self, split_at):
        a, b = self._segments()
        with pytest.raises(SegmentationError):
            SegmentExtractor.mix_segments(a, b, split_at)

    def test_sample_rate_mismatch(self):
        a, _ = self._segments()
        other = Segment(clip=AudioClip(samples=np.zeros(4 * SAMPLE_RATE), sample_rate=2 * SAMPLE_RATE),
                        label=Label.NOBEE, source_id="c", offset=0.0)
        with pytest.raises(SegmentationError):
            SegmentExtractor.mix_segments(a, other, 1.0)
