"""
Sighting records: summary statistics and zone distribution
==========================================================

The package ships a generated 257-row stand-in for the Moroccan record
(same columns, same class balance, no observational content).  Pass the
path of a real record as the first argument to use it instead.
"""

import sys
from pathlib import Path

import numpy as np

import hilal
from hilal.crescent import Zone
from hilal.ml import load_dataset, summary_stats, zone_distribution
from hilal.ml.stats import format_summary

path = sys.argv[1] if len(sys.argv) > 1 else Path(hilal.__file__).parent / "data" / "surrogate_rabat.csv"
d = load_dataset(path)
print(len(d), "rows;", d.class_counts())

print(format_summary(summary_stats(d)))

z = zone_distribution(d)
print()
print(z.format())
print()
print(z.to_csv())

# seen rate climbs with ARCV
X, y = d.X, d.y
edges = np.arange(0, 32, 4)
for lo, hi in zip(edges, edges[1:]):
    sel = (X[:, 0] >= lo) & (X[:, 0] < hi)
    if sel.any():
        print(f"ARCV {lo:2d}-{hi:2d}: {sel.sum():3d} rows, seen {y[sel].mean():.2f}")

print("zone A share seen:", z.positive_rate(Zone.A))
