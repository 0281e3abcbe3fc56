"""Labelled crescent observations and their CSV form."""
from __future__ import annotations

import csv
import datetime as dt
import io
import math
import os
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

FEATURES = ("arcv", "w")
REQUIRED_COLUMNS = ("arcv", "w", "output")


class DatasetError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class Observation:
    arcv: float
    w: float
    output: int  # 1 seen, 0 not seen
    date: Optional[dt.date] = None

    def __post_init__(self):
        if not math.isfinite(self.arcv):
            raise ValueError(f"arcv must be finite, got {self.arcv}")
        if not (math.isfinite(self.w) and self.w >= 0):
            raise ValueError(f"w must be finite and >= 0, got {self.w}")
        if self.output not in (0, 1):
            raise ValueError(f"output must be 0 or 1, got {self.output}")


@dataclass
class Dataset:
    rows: list = field(default_factory=list)

    def __len__(self):
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    @property
    def X(self) -> np.ndarray:
        """Feature matrix with columns in FEATURES order."""
        return np.array([[r.arcv, r.w] for r in self.rows], dtype=float).reshape(-1, 2)

    @property
    def y(self) -> np.ndarray:
        return np.array([r.output for r in self.rows], dtype=int)

    def class_counts(self) -> dict:
        y = self.y
        return {0: int((y == 0).sum()), 1: int((y == 1).sum())}

    def subset(self, indices) -> "Dataset":
        return Dataset([self.rows[i] for i in indices])

    @classmethod
    def from_arrays(cls, X, y) -> "Dataset":
        return cls([Observation(float(a), float(b), int(c)) for (a, b), c in zip(np.asarray(X), y)])

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        with_date = any(r.date is not None for r in self.rows)
        writer.writerow((["date"] if with_date else []) + list(REQUIRED_COLUMNS))
        for r in self.rows:
            cells = [repr(r.arcv), repr(r.w), str(r.output)]
            if with_date:
                cells.insert(0, r.date.isoformat() if r.date else "")
            writer.writerow(cells)
        return buf.getvalue()


def _number(cell: str, column: str, line: int) -> float:
    try:
        value = float(cell)
    except ValueError:
        raise DatasetError(f"non-numeric {column} value {cell!r}", line) from None
    if not math.isfinite(value):
        raise DatasetError(f"non-finite {column} value {cell!r}", line)
    return value


def parse_dataset(text: str) -> Dataset:
    """Parse CSV text with a header containing arcv, w, output (date optional)."""
    reader = csv.reader(io.StringIO(text.lstrip("\ufeff"), newline=""))
    try:
        header = [h.strip().lower() for h in next(reader)]
    except StopIteration:
        raise DatasetError("empty input, expected a header row", 1) from None
    missing = [c for c in REQUIRED_COLUMNS if c not in header]
    if missing:
        raise DatasetError(f"missing column(s): {', '.join(missing)}", 1)
    col = {name: header.index(name) for name in header}

    rows = []
    for cells in reader:
        line = reader.line_num
        if not cells or all(not c.strip() for c in cells):
            continue
        if len(cells) != len(header):
            raise DatasetError(f"expected {len(header)} fields, found {len(cells)}", line)
        arcv = _number(cells[col["arcv"]], "arcv", line)
        w = _number(cells[col["w"]], "w", line)
        if w < 0:
            raise DatasetError(f"negative w value {w}", line)
        out = _number(cells[col["output"]], "output", line)
        if out not in (0.0, 1.0):
            raise DatasetError(f"output must be 0 or 1, got {cells[col['output']]!r}", line)
        date = None
        if "date" in col and cells[col["date"]].strip():
            try:
                date = dt.date.fromisoformat(cells[col["date"]].strip())
            except ValueError:
                raise DatasetError(f"bad date {cells[col['date']]!r}", line) from None
        rows.append(Observation(arcv, w, int(out), date))
    return Dataset(rows)


def load_dataset(source) -> Dataset:
    """Read a dataset from a path or an open text file."""
    if isinstance(source, (str, os.PathLike)):
        with open(source, encoding="utf-8", newline="") as fh:
            return parse_dataset(fh.read())
    return parse_dataset(source.read())
