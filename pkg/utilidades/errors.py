"""
Exception hierarchy for the beehive sound pipeline.

Every error carries a stable ``code`` so the command line can prefix what it prints
on stderr and callers can branch on the failure family without parsing messages.
"""

__all__ = [
    'BeehiveError', 'AudioFormatError', 'AnnotationError', 'SegmentationError',
    'FeatureError', 'FeatureMismatchError', 'SelectionError', 'TrainingError',
    'DivergenceError', 'ModelFormatError', 'EvaluationError', 'ConfigError',
]

from typing import Optional


class BeehiveError(Exception):
    """Base class for every expected failure raised by the pipeline."""
    code = "E_BEEHIVE"


class AudioFormatError(BeehiveError, ValueError):
    """Malformed or unsupported WAV input, or a sample buffer that breaks the AudioClip contract."""
    code = "E_AUDIO"


class AnnotationError(BeehiveError, ValueError):
    """Annotation TSV that cannot be parsed or holds inconsistent intervals."""
    code = "E_ANNOT"

    def __init__(self, message: str, line_number: Optional[int] = None):
        #keep the line number apart so callers can point at it
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class SegmentationError(BeehiveError, ValueError):
    code = "E_SEGMENT"


class FeatureError(BeehiveError, ValueError):
    code = "E_FEATURE"


class FeatureMismatchError(FeatureError):
    """Feature names or order differ from what a model was fitted on."""
    code = "E_FEATURE_MISMATCH"


class SelectionError(BeehiveError, ValueError):
    code = "E_SELECT"


class TrainingError(BeehiveError, ValueError):
    code = "E_TRAIN"


class DivergenceError(TrainingError):
    """Training produced a non-finite loss or non-finite weights."""
    code = "E_DIVERGE"

    def __init__(self, message: str, epoch: Optional[int] = None):
        self.epoch = epoch
        if epoch is not None:
            message = f"{message} (epoch {epoch})"
        super().__init__(message)


class ModelFormatError(BeehiveError, ValueError):
    code = "E_MODEL"


class EvaluationError(BeehiveError, ValueError):
    code = "E_EVAL"


class ConfigError(BeehiveError, ValueError):
    """Bad configuration value or unknown configuration key (a usage error for the CLI)."""
    code = "E_CONFIG"
