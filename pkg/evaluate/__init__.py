"""
Evaluation package: metrics, stratified splits and folds, holdout / k-fold evaluation,
mixed-wave validation and the model-selection experiments.
"""

from evaluate._metrics import EvalReport, accuracy, confusion
from evaluate.data_splitter import DataSplitter
from evaluate.evaluator import Evaluator
from evaluate.experiments import ExperimentRunner, SweepResult
from evaluate.mixed_validation import (DEFAULT_CASES, Expected, MixedCaseResult, MixedValidationCase,
                                       MixedValidationReport, MixedValidator)

__all__ = [
    'EvalReport', 'accuracy', 'confusion', 'DataSplitter', 'Evaluator', 'ExperimentRunner', 'SweepResult',
    'DEFAULT_CASES', 'Expected', 'MixedCaseResult', 'MixedValidationCase', 'MixedValidationReport',
    'MixedValidator',
]
