"""Freeze an independent ephemeris reference table for the test suite.

Uses Astronomy Engine (VSOP87 Sun, Brown/ILE-based Moon) for positions and
PyEphem (libastro) for Rabat rise/set times, so neither depends on the
series evaluated by ``hilal.ephemeris``.  Re-run only to regenerate
``tests/data/ephemeris_oracle.csv``::

    pip install astronomy-engine ephem
    python tools/make_ephemeris_oracle.py
"""
import csv
import datetime as dt
from pathlib import Path

import astronomy
import ephem

RABAT = (34.02, -6.84, 75.0)

# Evenings near new moon (Alg.-style probes) plus a few arbitrary dates.
DATES = [
    "2011-08-29", "2013-07-09", "2015-06-17", "2017-05-26", "2019-05-05",
    "2020-04-24", "2022-04-01", "2023-03-22", "2024-03-10", "2024-03-11",
]


def _tt(when):
    t = astronomy.Time.Make(when.year, when.month, when.day, when.hour, when.minute, when.second)
    # Interpret the civil timestamp directly on the TT scale.
    return astronomy.Time.FromTerrestrialTime(t.ut)


def _ephem_event(date, body, utc_noon_local):
    obs = ephem.Observer()
    obs.lat, obs.lon = str(RABAT[0]), str(RABAT[1])
    obs.elevation = RABAT[2]
    obs.pressure = 0
    obs.horizon = "-0:34"
    obs.date = ephem.Date(utc_noon_local)
    return obs.next_setting(body).datetime()


def main():
    rows = []
    for d in DATES:
        day = dt.date.fromisoformat(d)
        epoch = dt.datetime(day.year, day.month, day.day, 19, 0, 0)
        t = _tt(epoch)
        sun = astronomy.SunPosition(t)
        moon = astronomy.EclipticGeoMoon(t)
        noon = dt.datetime(day.year, day.month, day.day, 12) - dt.timedelta(hours=RABAT[1] / 15.0)
        sunset = _ephem_event(day, ephem.Sun(), noon)
        # moonset nearest to sunset
        cands = []
        for start in (sunset - dt.timedelta(hours=12), sunset):
            obs_start = start
            ms = _ephem_event(day, ephem.Moon(), obs_start)
            cands.append(ms)
        moonset = min(cands, key=lambda m: abs((m - sunset).total_seconds()))
        rows.append({
            "date": d,
            "tt": epoch.isoformat(),
            "sun_apparent_lon": f"{sun.elon:.6f}",
            "moon_lon": f"{moon.lon:.6f}",
            "moon_lat": f"{moon.lat:.6f}",
            "moon_dist_km": f"{moon.dist * astronomy.KM_PER_AU:.1f}",
            "sunset_utc": sunset.replace(microsecond=0).isoformat(),
            "moonset_utc": moonset.replace(microsecond=0).isoformat(),
        })
    out = Path(__file__).resolve().parents[1] / "tests" / "data" / "ephemeris_oracle.csv"
    with out.open("w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    print(out.read_text())


if __name__ == "__main__":
    main()
