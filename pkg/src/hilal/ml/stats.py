"""Descriptive statistics and the Odeh-zone breakdown of a dataset."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np

from ..crescent import Zone, classify_zone, odeh_value
from .dataset import Dataset

STAT_NAMES = ("count", "mean", "std", "min", "25%", "50%", "75%", "max")


class EmptyDatasetError(ValueError):
    pass


@dataclass(frozen=True)
class VariableStats:
    count: int
    mean: float
    std: float  # sample (n - 1); 0 for a single row
    min: float
    p25: float
    p50: float
    p75: float
    max: float

    def values(self) -> tuple:
        return (self.count, self.mean, self.std, self.min, self.p25, self.p50, self.p75, self.max)


def describe(values) -> VariableStats:
    x = np.asarray(values, dtype=float)
    if x.size == 0:
        raise EmptyDatasetError("no values to summarise")
    p25, p50, p75 = np.percentile(x, [25, 50, 75])
    return VariableStats(
        count=int(x.size),
        mean=float(x.mean()),
        std=float(x.std(ddof=1)) if x.size > 1 else 0.0,
        min=float(x.min()),
        p25=float(p25), p50=float(p50), p75=float(p75),
        max=float(x.max()),
    )


def summary_stats(d: Dataset) -> dict:
    """Per-variable statistics for arcv, w and output (quartiles interpolate linearly)."""
    if len(d) == 0:
        raise EmptyDatasetError("summary statistics need at least one row")
    X, y = d.X, d.y
    return {"arcv": describe(X[:, 0]), "w": describe(X[:, 1]), "output": describe(y)}


def format_summary(stats: dict, precision: int = 4) -> str:
    names = ["Variable", *STAT_NAMES]
    lines = ["  ".join(f"{n:>10}" for n in names)]
    for var, s in stats.items():
        cells = [f"{var:>10}", f"{s.count:>10d}"]
        cells += [f"{v:>10.{precision}f}" for v in s.values()[1:]]
        lines.append("  ".join(cells))
    return "\n".join(lines)


@dataclass(frozen=True)
class ZoneDistribution:
    counts: dict  # (zone, output) -> count

    def total(self, zone: Zone) -> int:
        return self.counts.get((zone, 0), 0) + self.counts.get((zone, 1), 0)

    def zones(self) -> list:
        return [z for z in Zone if self.total(z) > 0]

    def positive_rate(self, zone: Zone) -> float:
        n = self.total(zone)
        return self.counts.get((zone, 1), 0) / n if n else float("nan")

    def rows(self) -> list:
        """(zone, output, count) for every non-zero cell, zone-major."""
        return [(z.value, o, self.counts[(z, o)]) for z in Zone for o in (0, 1)
                if self.counts.get((z, o), 0) > 0]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["zone", "output", "count"])
        writer.writerows(self.rows())
        return buf.getvalue()

    def format(self, precision: int = 4) -> str:
        lines = [f"{'zone':>4}  {'seen':>6}  {'unseen':>6}  {'total':>6}  {'seen rate':>9}"]
        for z in self.zones():
            lines.append(f"{z.value:>4}  {self.counts.get((z, 1), 0):>6d}  {self.counts.get((z, 0), 0):>6d}"
                         f"  {self.total(z):>6d}  {self.positive_rate(z):>9.{precision}f}")
        return "\n".join(lines)


def zone_distribution(d: Dataset) -> ZoneDistribution:
    if len(d) == 0:
        raise EmptyDatasetError("zone distribution needs at least one row")
    counts: dict = {}
    for row in d:
        key = (classify_zone(odeh_value(row.arcv, row.w)), row.output)
        counts[key] = counts.get(key, 0) + 1
    return ZoneDistribution(counts)
