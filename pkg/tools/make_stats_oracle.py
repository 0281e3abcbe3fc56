"""Freeze summary statistics of the 257-row fixture, computed exactly.

Every value is converted to a Fraction and run through the standard
library's ``statistics`` module (sample std, inclusive quantiles, i.e. the
spreadsheet PERCENTILE.INC / STDEV.S conventions), so the numbers share no
code with ``hilal.ml.stats``.

    python tools/make_stats_oracle.py
"""
import csv
import json
import statistics
from fractions import Fraction
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
SRC = ROOT / "src" / "hilal" / "data" / "surrogate_rabat.csv"
OUT = ROOT / "tests" / "data" / "surrogate_stats_oracle.json"


def describe(values):
    xs = [Fraction(v) for v in values]
    q = statistics.quantiles(xs, n=4, method="inclusive")
    mean = statistics.mean(xs)
    var = sum((x - mean) ** 2 for x in xs) / (len(xs) - 1)
    return {
        "count": len(xs),
        "mean": float(mean),
        "std": float(var) ** 0.5,
        "min": float(min(xs)),
        "25%": float(q[0]),
        "50%": float(q[1]),
        "75%": float(q[2]),
        "max": float(max(xs)),
    }


def main():
    with open(SRC, newline="") as fh:
        rows = list(csv.DictReader(fh))
    out = {col: describe([float(r[col]) for r in rows]) for col in ("arcv", "w", "output")}
    OUT.write_text(json.dumps(out, indent=2) + "\n")
    print(json.dumps(out, indent=2))


if __name__ == "__main__":
    main()
