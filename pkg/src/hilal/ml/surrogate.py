"""Synthetic stand-in for the Moroccan sighting record.

Evenings at Rabat on the first two days after each conjunction are
labelled "seen" with probability sigmoid((V - 4) / 0.5), V being Odeh's
criterion value, and then subsampled to a fixed class balance.  The output
has the shape of the real record (arcv, w, output, date) but carries no
observational information: use it for demonstrations and tests only.
"""
from __future__ import annotations

import datetime as dt

import numpy as np

from ..crescent import compute_geometry, odeh_value
from ..ephemeris import RABAT, calendar_from_jd, julian_day
from ..ephemeris.events import conjunctions
from .dataset import Dataset, Observation

SURROGATE_SEED = 20250101


def candidate_evenings(start: dt.date, end: dt.date, site=RABAT) -> list:
    """Geometries for the two evenings following each conjunction."""
    out = []
    for jd in conjunctions(julian_day(start).jd_ut, julian_day(end).jd_ut):
        first = calendar_from_jd(jd + 0.5 + site.longitude / 360.0).date()
        geom = compute_geometry(first, site)
        if geom.sunset.jd_ut < jd:
            first += dt.timedelta(days=1)
            geom = None
        for k in range(2):
            day = first + dt.timedelta(days=k)
            g = geom if (k == 0 and geom is not None) else compute_geometry(day, site)
            if not g.below_horizon and g.arcv > 0:
                out.append((day, g))
    return out


def make_surrogate(n_seen: int = 153, n_unseen: int = 104, seed: int = SURROGATE_SEED,
                   start: dt.date = dt.date(2011, 1, 1), end: dt.date = dt.date(2024, 12, 31),
                   site=RABAT) -> Dataset:
    rng = np.random.default_rng(seed)
    rows = []
    for day, g in candidate_evenings(start, end, site):
        v = odeh_value(g.arcv, g.w)
        seen = rng.random() < 1.0 / (1.0 + np.exp(-(v - 4.0) / 0.5))
        rows.append(Observation(round(g.arcv, 6), round(g.w, 6), int(seen), day))
    pos = [i for i, r in enumerate(rows) if r.output == 1]
    neg = [i for i, r in enumerate(rows) if r.output == 0]
    if len(pos) < n_seen or len(neg) < n_unseen:
        raise ValueError(f"only {len(pos)} seen / {len(neg)} unseen evenings available")
    keep = np.sort(np.concatenate([rng.choice(pos, n_seen, replace=False),
                                   rng.choice(neg, n_unseen, replace=False)]))
    return Dataset([rows[i] for i in keep])
