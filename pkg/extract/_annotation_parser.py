"""
Parser for the annotation TSV format:

    start_seconds<TAB>end_seconds<TAB>label

one interval per line, labels ``bee|nobee`` in any case, ``#`` lines are comments.
"""

__all__ = ['LabeledInterval', 'AnnotationParser']

import sys
from dataclasses import dataclass
from pathlib import Path
from typing import List, Union

PROJECT_ROOT = Path(__file__).resolve().parent.parent
if str(PROJECT_ROOT) not in sys.path:
    sys.path.append(str(PROJECT_ROOT))

from configs.label_config import Label
from utilidades.errors import AnnotationError


@dataclass(frozen=True)
class LabeledInterval:
    start: float
    end: float
    label: Label

    def overlap(self, start: float, end: float) -> float:
        """Duration in seconds shared with [start, end); 0 when disjoint."""
        return max(0.0, min(self.end, end) - max(self.start, start))


class AnnotationParser:

    @staticmethod
    def parse_annotations(text: str) -> List[LabeledInterval]:
        """
        Parses annotation TSV text into intervals sorted by start.

        Args:
            text (str): File contents.

        Returns:
            List[LabeledInterval]: Sorted, non-overlapping intervals.

        Raises:
            AnnotationError: Unparseable line (with its line number), end <= start, negative start,
                unknown label token, or overlapping intervals.
        """
        intervals = []
        for line_number, raw_line in enumerate(text.splitlines(), start=1):
            line = raw_line.strip()
            #skip blanks and comments
            if not line or line.startswith("#"):
                continue

            fields = [f.strip() for f in raw_line.split("\t")]
            fields = [f for f in fields if f != ""]
            if len(fields) != 3:
                raise AnnotationError(f"expected 3 tab-separated fields, got {len(fields)}: {raw_line!r}", line_number)

            try:
                start, end = float(fields[0]), float(fields[1])
            except ValueError:
                raise AnnotationError(f"start/end are not numbers: {raw_line!r}", line_number)

            if start < 0:
                raise AnnotationError(f"start must be >= 0, got {start}", line_number)
            if end <= start:
                raise AnnotationError(f"end ({end}) must be greater than start ({start})", line_number)

            try:
                label = Label.parse(fields[2])
            except AnnotationError as e:
                raise AnnotationError(str(e), line_number)

            intervals.append(LabeledInterval(start=start, end=end, label=label))

        intervals.sort(key=lambda interval: (interval.start, interval.end))

        #overlaps are an ingest error
        for previous, current in zip(intervals, intervals[1:]):
            if current.start < previous.end:
                raise AnnotationError(
                    f"overlapping intervals [{previous.start}, {previous.end}) and [{current.start}, {current.end})")

        return intervals

    @staticmethod
    def read_annotations(path: Union[str, Path]) -> List[LabeledInterval]:
        path = Path(path)
        if not path.exists():
            raise FileNotFoundError(f"annotation file not found: {path}")
        return AnnotationParser.parse_annotations(path.read_text(encoding="utf-8"))
