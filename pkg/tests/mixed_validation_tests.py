import numpy as np
import pytest

from configs.label_config import Label
from evaluate import DEFAULT_CASES, Expected, MixedValidationCase, MixedValidator
from models import ModelKind, TrainedModel
from transform.feature_transform import FeatureTransformer
from utilidades.errors import EvaluationError


def constant_model(score: float) -> TrainedModel:
    """One-leaf tree that gives every row the same score."""
    parameters = {"feature": np.array([-1]), "threshold": np.array([0.0]), "left": np.array([-1]),
                  "right": np.array([-1]), "value": np.array([score]), "n_samples": np.array([1])}
    return TrainedModel(kind=ModelKind.TREE, hyperparams={}, feature_names=("rmse", "mfcc1"),
                        parameters=parameters)


@pytest.fixture(scope="module")
def validator() -> MixedValidator:
    return MixedValidator(FeatureTransformer(n_mfcc=20))


def test_default_case_expectations():
    assert [c.expected for c in DEFAULT_CASES] == [
        Expected.BEE, Expected.NOBEE, Expected.DONT_CARE, Expected.BEE, Expected.NOBEE]
    assert all(c.duration == pytest.approx(2.0) for c in DEFAULT_CASES)
    assert DEFAULT_CASES[3].description == "1.25 sec bee + 0.75 sec nobee"


@pytest.mark.parametrize("score, expected_accuracy", [(0.6, 0.6), (0.0, 0.6)])
def test_constant_model(validator, bee_segment, nobee_segment, score, expected_accuracy):
    report = validator.run_mixed_validation(constant_model(score), bee_segment, nobee_segment)
    assert report.matching_accuracy == pytest.approx(expected_accuracy)
    assert len(report.results) == 5
    frame = report.to_frame()
    assert list(frame.columns) == ['case', 'composition', 'expected', 'predicted', 'score', 'correct']
    assert frame['correct'].iloc[2]


def test_accuracy_is_a_multiple_of_a_fifth(validator, bee_segment, nobee_segment):
    for score in (0.1, 0.5, 0.9):
        accuracy = validator.run_mixed_validation(constant_model(score), bee_segment, nobee_segment).matching_accuracy
        assert accuracy in {0.2, 0.4, 0.6, 0.8, 1.0}


def test_waves_are_cut_from_the_sources(validator, bee_segment, nobee_segment):
    wave = validator.build_wave(DEFAULT_CASES[4], bee_segment, nobee_segment)
    n_bee = int(round(0.75 * 22050))
    assert len(wave) == 2 * 22050
    assert np.array_equal(wave.samples[:n_bee], bee_segment.clip.samples[:n_bee])
    assert np.array_equal(wave.samples[n_bee:], nobee_segment.clip.samples[:2 * 22050 - n_bee])


def test_sources_must_carry_their_labels(validator, bee_segment, nobee_segment):
    with pytest.raises(EvaluationError):
        validator.run_mixed_validation(constant_model(0.5), nobee_segment, bee_segment)


def test_invalid_cases(validator, bee_segment, nobee_segment):
    with pytest.raises(EvaluationError):
        MixedValidationCase("same", ((Label.BEE, 1.0), (Label.BEE, 1.0)))
    with pytest.raises(EvaluationError):
        MixedValidationCase("empty", ())
    with pytest.raises(EvaluationError):
        validator.build_wave(MixedValidationCase("long", ((Label.BEE, 3.0),)), bee_segment, nobee_segment)
