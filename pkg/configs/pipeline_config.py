"""
Pipeline configuration: every tunable of the segment -> extract -> select -> train -> evaluate chain.

Values come from the defaults below, then an optional ``key=value`` file, then command-line flags
(flags win). Unknown keys are rejected.
"""

from __future__ import annotations

__all__ = ['PipelineConfig']

import sys
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Union

from dotenv import dotenv_values

PROJECT_ROOT = Path(__file__).resolve().parent.parent
if str(PROJECT_ROOT) not in sys.path:
    sys.path.append(str(PROJECT_ROOT))

from configs.storage_config import OUTPUT_BASE_PATH
from models import ModelKind
from utilidades.dsp_utils import StftConfig
from utilidades.errors import ConfigError, FeatureError

_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}
_NONE = {"", "none", "null"}


def _parse_bool(raw: str) -> bool:
    token = raw.strip().lower()
    if token in _TRUE:
        return True
    if token in _FALSE:
        return False
    raise ValueError(f"expected a boolean, got {raw!r}")


def _parse_optional_int(raw: str) -> Optional[int]:
    return None if raw.strip().lower() in _NONE else int(raw)


def _parse_int_list(raw: str) -> List[int]:
    return [int(part) for part in raw.replace(" ", "").split(",") if part]


def _parse_max_features(raw: str) -> Union[None, int, str]:
    token = raw.strip().lower()
    if token in _NONE:
        return None
    return "sqrt" if token == "sqrt" else int(token)


@dataclass
class PipelineConfig:
    #audio and segmentation
    sample_rate: int = 22050
    block_seconds: float = 2.0
    #stft / features
    n_fft: int = 2048
    hop: int = 512
    window: str = "hann"
    n_mels: int = 128
    n_mfcc: int = 128
    rolloff_pct: float = 0.85
    #selection
    k_features: int = 26
    select_by_name: bool = True
    selection_method: str = "anova_f"
    #model
    model: str = "mlp"
    hidden_layers: List[int] = field(default_factory=lambda: [256, 128, 64])
    activation: str = "sigmoid"
    optimizer: str = "adamax"
    learning_rate: float = 1e-3
    decay: float = 1e-5
    epochs: int = 1000
    batch_size: int = 128
    criterion: str = "gini"
    max_depth: Optional[int] = None
    min_samples_split: int = 2
    n_trees: int = 100
    max_features: Union[None, int, str] = "sqrt"
    bootstrap: bool = True
    tie_label: str = "nobee"
    svm_c: float = 1.0
    svm_epochs: int = 1000
    svm_batch_size: Optional[int] = None
    var_smoothing: float = 1e-9
    #evaluation
    test_fraction: float = 0.2
    kfold: int = 10
    #run
    seed: int = 0
    threads: int = 0
    quiet: bool = False
    output_dir: str = str(OUTPUT_BASE_PATH)

    #field -> parser for raw text values
    _PARSERS = {
        'bool': _parse_bool,
        'int': int,
        'float': float,
        'str': str,
        'Optional[int]': _parse_optional_int,
        'List[int]': _parse_int_list,
        'Union[None, int, str]': _parse_max_features,
    }

    def __post_init__(self):
        try:
            self.model = ModelKind.parse(self.model).value
        except ValueError:
            raise ConfigError(f"unknown model {self.model!r}, expected one of {[k.value for k in ModelKind]}")
        if self.sample_rate < 1:
            raise ConfigError(f"sample_rate must be >= 1, got {self.sample_rate}")
        if self.block_seconds <= 0:
            raise ConfigError(f"block_seconds must be > 0, got {self.block_seconds}")
        if self.k_features < 1:
            raise ConfigError(f"k_features must be >= 1, got {self.k_features}")
        if not 0.0 < self.test_fraction < 1.0:
            raise ConfigError(f"test_fraction must be in (0, 1), got {self.test_fraction}")
        if self.threads < 0:
            raise ConfigError(f"threads must be >= 0, got {self.threads}")
        #SeedSequence only takes non-negative entropy
        if self.seed < 0:
            raise ConfigError(f"seed must be >= 0, got {self.seed}")

    @classmethod
    def field_names(cls) -> List[str]:
        return [f.name for f in fields(cls)]

    @classmethod
    def coerce(cls, key: str, raw: Any) -> Any:
        """
        Converts a raw value (text from a file or flag) to the type of field ``key``.

        Raises:
            ConfigError: Unknown key or a value that does not parse.
        """
        types = {f.name: f.type for f in fields(cls)}
        if key not in types:
            raise ConfigError(f"unknown configuration key {key!r}")
        if not isinstance(raw, str):
            return raw
        #annotations are strings under postponed evaluation
        type_name = types[key]
        try:
            return cls._PARSERS[type_name](raw)
        except (KeyError, ValueError) as e:
            raise ConfigError(f"bad value for {key}: {raw!r} ({e})")

    @classmethod
    def from_mapping(cls, values: Mapping[str, Any]) -> "PipelineConfig":
        return cls(**{key.strip().lower(): cls.coerce(key.strip().lower(), raw) for key, raw in values.items()})

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> "PipelineConfig":
        """
        Reads a ``key=value`` config file (``#`` comments allowed).

        Raises:
            ConfigError: Missing file, unknown key or unparseable value.
        """
        path = Path(path)
        if not path.is_file():
            raise ConfigError(f"config file not found: {path}")
        values = {key: ("" if raw is None else raw) for key, raw in dotenv_values(path).items()}
        return cls.from_mapping(values)

    def merged(self, overrides: Mapping[str, Any]) -> "PipelineConfig":
        """New config with every non-None override applied on top of this one."""
        changes = {key: self.coerce(key, raw) for key, raw in overrides.items() if raw is not None}
        return replace(self, **changes)

    def stft_config(self) -> StftConfig:
        try:
            return StftConfig(n_fft=self.n_fft, hop=self.hop, window=self.window.lower())
        except (FeatureError, ValueError) as e:
            raise ConfigError(f"bad stft settings: {e}")

    def hyperparams_for(self, kind: Union[str, ModelKind, None] = None) -> Dict[str, Any]:
        """Hyperparameter dict for ``kind`` (default: the configured model), seeded with ``seed``."""
        try:
            kind = ModelKind.parse(kind or self.model)
        except ValueError:
            raise ConfigError(f"unknown model kind {kind!r}, expected one of {[k.value for k in ModelKind]}")
        if kind is ModelKind.MLP:
            return {
                'hidden_layers': list(self.hidden_layers), 'activation': self.activation,
                'optimizer': self.optimizer, 'learning_rate': self.learning_rate, 'decay': self.decay,
                'epochs': self.epochs, 'batch_size': self.batch_size, 'seed': self.seed,
            }
        if kind is ModelKind.GNB:
            return {'var_smoothing': self.var_smoothing}
        if kind is ModelKind.TREE:
            return {
                'criterion': self.criterion, 'max_depth': self.max_depth,
                'min_samples_split': self.min_samples_split, 'max_features': None, 'seed': self.seed,
            }
        if kind is ModelKind.FOREST:
            return {
                'n_trees': self.n_trees, 'max_features': self.max_features, 'bootstrap': self.bootstrap,
                'criterion': self.criterion, 'max_depth': self.max_depth,
                'min_samples_split': self.min_samples_split, 'tie_label': self.tie_label, 'seed': self.seed,
            }
        return {'c': self.svm_c, 'epochs': self.svm_epochs, 'batch_size': self.svm_batch_size, 'seed': self.seed}

    def as_dict(self) -> Dict[str, Any]:
        return asdict(self)
