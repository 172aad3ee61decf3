"""
Validation on mixed bee / non-bee waves.

Five 2-second waves are built from one Bee and one NoBee source segment: pure bee, pure nobee,
an even 1 s + 1 s mix and two uneven mixes. A wave counts as correct when the prediction matches
the label holding the longer duration; the even mix is a don't-care case and always counts.
"""

__all__ = ['Expected', 'MixedValidationCase', 'MixedCaseResult', 'MixedValidationReport',
           'MixedValidator', 'DEFAULT_CASES']

import sys
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import List, Sequence, Tuple

import pandas as pd

PROJECT_ROOT = Path(__file__).resolve().parent.parent
if str(PROJECT_ROOT) not in sys.path:
    sys.path.append(str(PROJECT_ROOT))

from configs.label_config import Label
from extract.segment_extractor import Segment, SegmentExtractor
from models import Prediction, TrainedModel, predict
from transform.feature_transform import FeatureTransformer
from utilidades.audio_utils import AudioClip
from utilidades.errors import EvaluationError
from utilidades.progress_utils import log_status


class Expected(str, Enum):
    BEE = "bee"
    NOBEE = "nobee"
    DONT_CARE = "dontcare"


@dataclass(frozen=True)
class MixedValidationCase:
    """A wave made of one or two labeled parts, in playing order."""
    name: str
    composition: Tuple[Tuple[Label, float], ...]

    def __post_init__(self):
        if not 1 <= len(self.composition) <= 2:
            raise EvaluationError(f"{self.name}: a case has one or two parts, got {len(self.composition)}")
        if len(self.composition) == 2 and self.composition[0][0] is self.composition[1][0]:
            raise EvaluationError(f"{self.name}: the two parts must carry different labels")
        if any(seconds <= 0 for _, seconds in self.composition):
            raise EvaluationError(f"{self.name}: part durations must be positive")

    @property
    def duration(self) -> float:
        return sum(seconds for _, seconds in self.composition)

    @property
    def expected(self) -> Expected:
        if len(self.composition) == 1:
            return Expected(self.composition[0][0].value)
        (first, first_seconds), (second, second_seconds) = self.composition
        if first_seconds == second_seconds:
            return Expected.DONT_CARE
        return Expected((first if first_seconds > second_seconds else second).value)

    @property
    def description(self) -> str:
        return " + ".join(f"{seconds:.2f} sec {label.value}" for label, seconds in self.composition)


DEFAULT_CASES: Tuple[MixedValidationCase, ...] = (
    MixedValidationCase("wave1", ((Label.BEE, 2.0),)),
    MixedValidationCase("wave2", ((Label.NOBEE, 2.0),)),
    MixedValidationCase("wave3", ((Label.BEE, 1.0), (Label.NOBEE, 1.0))),
    MixedValidationCase("wave4", ((Label.BEE, 1.25), (Label.NOBEE, 0.75))),
    MixedValidationCase("wave5", ((Label.BEE, 0.75), (Label.NOBEE, 1.25))),
)


@dataclass(frozen=True)
class MixedCaseResult:
    case: MixedValidationCase
    prediction: Prediction

    @property
    def correct(self) -> bool:
        expected = self.case.expected
        return expected is Expected.DONT_CARE or expected.value == self.prediction.label.value


@dataclass
class MixedValidationReport:
    model_kind: str
    results: List[MixedCaseResult]

    @property
    def matching_accuracy(self) -> float:
        return sum(r.correct for r in self.results) / len(self.results)

    def to_frame(self) -> pd.DataFrame:
        """Per-case rows ``case, composition, expected, predicted, score, correct``."""
        return pd.DataFrame([{
            'case': r.case.name,
            'composition': r.case.description,
            'expected': r.case.expected.value,
            'predicted': r.prediction.label.value,
            'score': r.prediction.score,
            'correct': r.correct,
        } for r in self.results])


class MixedValidator:

    def __init__(self, transformer: FeatureTransformer, block_seconds: float = 2.0, quiet: bool = True):
        self.transformer = transformer
        self.block_seconds = block_seconds
        self.quiet = quiet

    def build_wave(self, case: MixedValidationCase, bee_src: Segment, nobee_src: Segment) -> AudioClip:
        """
        Concatenates the case's parts, each taken from the start of its label's source.

        Raises:
            EvaluationError: Case duration differs from the block length.
            SegmentationError: Sources shorter than a block or at different sample rates.
        """
        if abs(case.duration - self.block_seconds) > 1e-9:
            raise EvaluationError(f"{case.name} lasts {case.duration} s, blocks last {self.block_seconds} s")
        sources = {Label.BEE: bee_src, Label.NOBEE: nobee_src}
        first, first_seconds = case.composition[0]
        second = Label.NOBEE if first is Label.BEE else Label.BEE
        return SegmentExtractor.mix_segments(sources[first], sources[second], first_seconds, self.block_seconds)

    def run_mixed_validation(self, model: TrainedModel, bee_src: Segment, nobee_src: Segment,
                             cases: Sequence[MixedValidationCase] = DEFAULT_CASES) -> MixedValidationReport:
        """
        Predicts every case wave with ``model`` and scores the matches.

        Returns:
            MixedValidationReport: Per-case results and the matching accuracy over all cases.
        """
        if bee_src.label is not Label.BEE or nobee_src.label is not Label.NOBEE:
            raise EvaluationError("mixed validation needs a bee source and a nobee source segment")

        results = []
        for case in cases:
            wave = self.build_wave(case, bee_src, nobee_src)
            segment = Segment(clip=wave, label=case.composition[0][0], source_id=case.name, offset=0.0)
            vector = self.transformer.extract_features(segment).subset(model.feature_names)
            results.append(MixedCaseResult(case=case, prediction=predict(model, vector)))

        report = MixedValidationReport(model_kind=model.kind.value, results=results)
        log_status(f"🧪 Mixed-wave matching accuracy: {report.matching_accuracy:.0%} "
                   f"({sum(r.correct for r in results)}/{len(results)})", self.quiet)
        return report
