"""
Versioned plain-text model format.

    beehive-model 1
    kind <mlp|gnb|tree|forest|svm>
    hyper <name> <none|bool|int|float|str|ints> <value...>
    features <count>
    feature <name>
    normalization <none|count>
    norm_mean <floats>
    norm_std <floats>
    norm_constant <0|1 ...>
    metric <name> <float>
    param <name> <float64|int64> <shape, e.g. 26x256>
    <values>
    end

Floats are written with ``repr`` so a load reproduces every bit of the saved arrays.
"""

__all__ = ['ModelSerializer', 'FORMAT_HEADER']

import sys
from pathlib import Path
from typing import Any, Iterator, List, Tuple, Union

import numpy as np

PROJECT_ROOT = Path(__file__).resolve().parent.parent
if str(PROJECT_ROOT) not in sys.path:
    sys.path.append(str(PROJECT_ROOT))

from models._base_classifier import ModelKind, Normalization, TrainedModel
from utilidades.errors import ModelFormatError

FORMAT_NAME = "beehive-model"
FORMAT_VERSION = 1
FORMAT_HEADER = f"{FORMAT_NAME} {FORMAT_VERSION}"


def _floats(values: np.ndarray) -> str:
    return " ".join(repr(float(v)) for v in np.ravel(values))


def _hyper_line(name: str, value: Any) -> str:
    if value is None:
        return f"hyper {name} none -"
    if isinstance(value, bool):
        return f"hyper {name} bool {'true' if value else 'false'}"
    if isinstance(value, (int, np.integer)):
        return f"hyper {name} int {int(value)}"
    if isinstance(value, (float, np.floating)):
        return f"hyper {name} float {float(value)!r}"
    if isinstance(value, str):
        return f"hyper {name} str {value}"
    if isinstance(value, (list, tuple)) and all(isinstance(v, (int, np.integer)) for v in value):
        return f"hyper {name} ints {' '.join(str(int(v)) for v in value)}".rstrip()
    raise ModelFormatError(f"hyperparameter {name} has unsupported type {type(value).__name__}")


def _parse_hyper(kind: str, raw: str, line_number: int) -> Any:
    try:
        if kind == "none":
            return None
        if kind == "bool":
            if raw not in ("true", "false"):
                raise ValueError(raw)
            return raw == "true"
        if kind == "int":
            return int(raw)
        if kind == "float":
            return float(raw)
        if kind == "str":
            return raw
        if kind == "ints":
            return [int(v) for v in raw.split()]
    except ValueError:
        raise ModelFormatError(f"line {line_number}: bad {kind} value {raw!r}")
    raise ModelFormatError(f"line {line_number}: unknown hyperparameter type {kind!r}")


class ModelSerializer:

    @staticmethod
    def dumps(model: TrainedModel) -> str:
        """Renders ``model`` in the text format, ending with a newline."""
        lines = [FORMAT_HEADER, f"kind {model.kind.value}"]
        for name in sorted(model.hyperparams):
            lines.append(_hyper_line(name, model.hyperparams[name]))

        lines.append(f"features {len(model.feature_names)}")
        for name in model.feature_names:
            if not name or any(ch.isspace() for ch in name):
                raise ModelFormatError(f"feature name {name!r} cannot be serialized")
            lines.append(f"feature {name}")

        norm = model.normalization
        if norm is None:
            lines.append("normalization none")
        else:
            lines.append(f"normalization {norm.means.size}")
            lines.append(f"norm_mean {_floats(norm.means)}")
            lines.append(f"norm_std {_floats(norm.stds)}")
            lines.append(f"norm_constant {' '.join('1' if c else '0' for c in norm.constant)}")

        for name in sorted(model.metrics):
            lines.append(f"metric {name} {float(model.metrics[name])!r}")

        for name in sorted(model.parameters):
            array = np.asarray(model.parameters[name])
            if np.issubdtype(array.dtype, np.integer):
                dtype, values = "int64", " ".join(str(int(v)) for v in array.ravel())
            else:
                dtype, values = "float64", _floats(array)
            shape = "x".join(str(s) for s in array.shape) or "scalar"
            lines.append(f"param {name} {dtype} {shape}")
            lines.append(values)

        lines.append("end")
        return "\n".join(lines) + "\n"

    @staticmethod
    def _records(text: str) -> Iterator[Tuple[int, str]]:
        for line_number, line in enumerate(text.split("\n"), start=1):
            yield line_number, line

    @staticmethod
    def loads(text: str) -> TrainedModel:
        """
        Parses the text format.

        Raises:
            ModelFormatError: Wrong header or version, unknown kind, malformed or truncated content.
        """
        records = ModelSerializer._records(text)

        def next_line(expect: str) -> Tuple[int, str]:
            try:
                return next(records)
            except StopIteration:
                raise ModelFormatError(f"unexpected end of model file, expected {expect}")

        def split(line_number: int, line: str, keyword: str, min_fields: int) -> List[str]:
            fields = line.split(" ")
            if fields[0] != keyword or len(fields) < min_fields:
                raise ModelFormatError(f"line {line_number}: expected '{keyword}', got {line[:60]!r}")
            return fields

        line_number, header = next_line("header")
        if header.split(" ")[0] != FORMAT_NAME:
            raise ModelFormatError(f"not a model file (header {header[:40]!r})")
        if header != FORMAT_HEADER:
            raise ModelFormatError(f"unsupported model format version {header!r}, expected {FORMAT_HEADER!r}")

        line_number, line = next_line("kind")
        try:
            kind = ModelKind(split(line_number, line, "kind", 2)[1])
        except ValueError:
            raise ModelFormatError(f"line {line_number}: unknown model kind in {line!r}")

        hyperparams = {}
        line_number, line = next_line("hyper or features")
        while line.startswith("hyper "):
            fields = line.split(" ", 3)
            if len(fields) < 3:
                raise ModelFormatError(f"line {line_number}: malformed hyperparameter {line!r}")
            hyperparams[fields[1]] = _parse_hyper(fields[2], fields[3] if len(fields) > 3 else "", line_number)
            line_number, line = next_line("hyper or features")

        try:
            n_features = int(split(line_number, line, "features", 2)[1])
        except ValueError:
            raise ModelFormatError(f"line {line_number}: bad feature count")
        feature_names = []
        for _ in range(n_features):
            line_number, line = next_line("feature")
            feature_names.append(split(line_number, line, "feature", 2)[1])

        line_number, line = next_line("normalization")
        fields = split(line_number, line, "normalization", 2)
        normalization = None
        if fields[1] != "none":
            try:
                rows = {}
                for keyword in ("norm_mean", "norm_std", "norm_constant"):
                    line_number, line = next_line(keyword)
                    rows[keyword] = [float(v) for v in split(line_number, line, keyword, 1)[1:] if v]
                normalization = Normalization(means=np.array(rows["norm_mean"]), stds=np.array(rows["norm_std"]),
                                              constant=np.array(rows["norm_constant"]) == 1.0)
            except ValueError:
                raise ModelFormatError(f"line {line_number}: bad normalization values")
            if not normalization.means.size == normalization.stds.size == normalization.constant.size == n_features:
                raise ModelFormatError("normalization length does not match the feature count")

        metrics = {}
        line_number, line = next_line("metric, param or end")
        while line.startswith("metric "):
            fields = split(line_number, line, "metric", 3)
            try:
                metrics[fields[1]] = float(fields[2])
            except ValueError:
                raise ModelFormatError(f"line {line_number}: bad metric value")
            line_number, line = next_line("metric, param or end")

        parameters = {}
        while line.startswith("param "):
            _, name, dtype, shape_text = split(line_number, line, "param", 4)[:4]
            values_line_number, values_line = next_line(f"values of {name}")
            try:
                shape = () if shape_text == "scalar" else tuple(int(s) for s in shape_text.split("x"))
                cast = int if dtype == "int64" else float
                if dtype not in ("int64", "float64"):
                    raise ValueError(dtype)
                values = [cast(v) for v in values_line.split(" ") if v]
                array = np.array(values, dtype=dtype).reshape(shape)
            except ValueError:
                raise ModelFormatError(f"line {values_line_number}: bad values for parameter {name}")
            parameters[name] = array
            line_number, line = next_line("param or end")

        if line != "end":
            raise ModelFormatError(f"line {line_number}: expected 'end', got {line[:60]!r}")

        return TrainedModel(kind=kind, hyperparams=hyperparams, feature_names=tuple(feature_names),
                            parameters=parameters, normalization=normalization, metrics=metrics)

    @staticmethod
    def save(model: TrainedModel, path: Union[str, Path]) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(ModelSerializer.dumps(model), encoding="utf-8")
        return path

    @staticmethod
    def load(path: Union[str, Path]) -> TrainedModel:
        path = Path(path)
        if not path.exists():
            raise FileNotFoundError(f"model file not found: {path}")
        return ModelSerializer.loads(path.read_text(encoding="utf-8"))
