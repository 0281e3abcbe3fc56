"""
Hijri month starts
==================

The arithmetic calendar gives a baseline date for the 1st of a month.  The
model is then asked about the evenings from the day before that baseline
onwards, and the month starts the day after the first evening with a
predicted sighting.
"""

import datetime as dt
import time
from pathlib import Path

import hilal
from hilal import hijri
from hilal.ephemeris import RABAT
from hilal.ml import HyperParams, load_dataset, train

d = load_dataset(Path(hilal.__file__).parent / "data" / "surrogate_rabat.csv")
model = train(d, HyperParams("logreg", C=10))

print("tabular 1 Ramadan 1445:", hijri.hijri_to_gregorian_tabular(hijri.HijriDate(1445, 9)))
print("2024-03-12 is", hijri.gregorian_to_hijri_tabular(dt.date(2024, 3, 12)), "(tabular)")

res = hijri.determine_month_start(1445, 9, RABAT, model)
for p in res.probes:
    g = p.geometry
    print(f"  evening {p.evening} (offset {p.offset:+d}): ARCV {g.arcv:6.2f} W {g.w:.3f} -> {p.visible}")
print("1 Ramadan 1445 starts", res.g_first)

t = time.perf_counter()
lengths = []
for year in range(1432, 1445):
    cal = hijri.generate_year(year, RABAT, model)
    lengths += cal.month_lengths()
    print(year, cal.month_lengths(), cal.total_days, cal.violations or "")
print("29-day months: %.3f of %d, %.1f s" % (lengths.count(29) / len(lengths), len(lengths),
                                              time.perf_counter() - t))
