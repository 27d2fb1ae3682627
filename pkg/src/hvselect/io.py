"""Point-set CSV files: header ``f1,...,fd``, one point per row."""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path

import numpy as np


class PointSetFormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def header(dim: int) -> list[str]:
    return [f"f{j + 1}" for j in range(dim)]


def format_value(x: float) -> str:
    # 17 significant digits round-trip every double
    return format(float(x), ".17g")


def write_points(path: str | Path, points: np.ndarray) -> None:
    points = np.asarray(points, dtype=np.float64)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header(points.shape[1]))
        for row in points:
            writer.writerow([format_value(x) for x in row])


def read_points(path: str | Path) -> np.ndarray:
    """Parse a point-set CSV into an ``(n, d)`` array.

    Raises:
        PointSetFormatError: bad header, wrong column count, or a value that
            is not a finite decimal number; the message carries the line.
    """
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            head = next(reader)
        except StopIteration:
            raise PointSetFormatError("empty file, expected a header row", 1) from None
        head = [h.strip() for h in head]
        dim = len(head)
        if dim < 2 or head != header(dim):
            raise PointSetFormatError(f"header must be f1,...,fd with d >= 2, got {head}", 1)
        rows = []
        for row in reader:
            line = reader.line_num
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != dim:
                raise PointSetFormatError(f"expected {dim} values, got {len(row)}", line)
            try:
                values = [float(cell) for cell in row]
            except ValueError:
                raise PointSetFormatError(f"non-numeric value in {row}", line) from None
            if not all(math.isfinite(v) for v in values):
                raise PointSetFormatError("values must be finite", line)
            rows.append(values)
    if not rows:
        return np.empty((0, dim))
    return np.array(rows, dtype=np.float64)


def write_json(path: str | Path, payload) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
