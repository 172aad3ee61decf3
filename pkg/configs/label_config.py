from enum import Enum
import sys
from pathlib import Path

# Get the absolute path to the project root directory
PROJECT_ROOT = Path(__file__).resolve().parent.parent
if str(PROJECT_ROOT) not in sys.path:
    sys.path.append(str(PROJECT_ROOT))

from utilidades.errors import AnnotationError


class Label(str, Enum):
    """
    The two segment labels. NoBee marks any interval that contains an external (non-hive) sound.

    The serialized token is the lowercase value (``bee`` / ``nobee``); the numeric encoding used by
    every statistic and classifier is Bee=0, NoBee=1.
    """
    BEE = "bee"
    NOBEE = "nobee"

    @classmethod
    def parse(cls, token: str) -> "Label":
        """
        Parses a label token case-insensitively.

        Raises:
            AnnotationError: If the token is not ``bee`` or ``nobee``.
        """
        if isinstance(token, Label):
            return token
        normalized = str(token).strip().lower()
        for label in cls:
            if label.value == normalized:
                return label
        raise AnnotationError(f"unknown label token {token!r}, expected bee|nobee")

    @classmethod
    def from_encoded(cls, value: int) -> "Label":
        return cls.NOBEE if int(value) == 1 else cls.BEE

    @property
    def encoded(self) -> int:
        return 1 if self is Label.NOBEE else 0

    @property
    def display(self) -> str:
        return "NoBee" if self is Label.NOBEE else "Bee"


#default 26-feature training set, by name
PREFERRED_FEATURES = [
    "spectral_bandwidth", "spectral_centroid", "rolloff", "zero_crossing_rate",
    "rmse", "chroma_stft",
] + [f"mfcc{i}" for i in range(1, 21)]
