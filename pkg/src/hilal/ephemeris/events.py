"""Sunset, moonset, lag and best observing time for one evening."""
from __future__ import annotations

import datetime as dt
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .positions import GeoLocation, moon_ecliptic, sun_ecliptic, topocentric
from .timescale import Instant, at_jd, decimal_year, delta_t, julian_day

SUNSET_ALTITUDE = -0.8333  # centre, airless: 34' refraction + 16' semidiameter
HORIZON_REFRACTION = 34.0 / 60.0
BEST_TIME_FRACTION = 4.0 / 9.0

_MINUTE = 1.0 / 1440.0
_SECOND = 1.0 / 86400.0


class NoEventError(RuntimeError):
    """The Sun does not set at the site on the requested date."""


@dataclass(frozen=True)
class EveningEvents:
    sunset: Instant
    moonset: Optional[Instant]
    lag: Optional[float]  # minutes, moonset - sunset
    best_time: Instant

    @property
    def moonset_missing(self) -> bool:
        return self.moonset is None


def _height_fn(body: str, site: GeoLocation) -> Callable[[np.ndarray], np.ndarray]:
    if body == "sun":
        def height(jd):
            return topocentric("sun", jd, site)["true_alt"] - SUNSET_ALTITUDE
    else:
        def height(jd):
            q = topocentric("moon", jd, site)
            # upper limb on the apparent horizon
            return q["true_alt"] + HORIZON_REFRACTION + q["semidiameter"] / 60.0
    return height


def _bisect(height, lo: float, hi: float) -> float:
    """Refine a descending zero crossing bracketed by [lo, hi] to 1 s."""
    while hi - lo > _SECOND:
        mid = 0.5 * (lo + hi)
        if height(np.array([mid]))[0] > 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def setting_times(height, start: float, stop: float) -> list[float]:
    """All descending zero crossings of ``height`` in [start, stop] (UT JD).

    Samples every minute, then bisects each bracketed crossing.
    """
    n = int(np.ceil((stop - start) / _MINUTE)) + 1
    grid = start + np.arange(n) * _MINUTE
    h = height(grid)
    idx = np.nonzero((h[:-1] > 0) & (h[1:] <= 0))[0]
    return [_bisect(height, grid[i], grid[i + 1]) for i in idx]


def local_noon_jd(date: dt.date, site: GeoLocation) -> float:
    """UT Julian date of local mean noon on the civil ``date`` at ``site``."""
    return julian_day(date).jd_ut + 0.5 - site.longitude / 360.0


def sunset(date: dt.date, site: GeoLocation) -> Instant:
    noon = local_noon_jd(date, site)
    sets = setting_times(_height_fn("sun", site), noon, noon + 14 / 24)
    if not sets:
        raise NoEventError(f"no sunset at ({site.latitude}, {site.longitude}) on {date}")
    return at_jd(sets[0])


def evening_events(date: dt.date, site: GeoLocation) -> EveningEvents:
    """Sunset, the moonset nearest to it, the lag and Yallop's best time.

    The moonset is searched within 12 h either side of sunset; if none falls
    in that window ``moonset`` and ``lag`` are ``None``.
    """
    s = sunset(date, site)
    sets = setting_times(_height_fn("moon", site), s.jd_ut - 0.5, s.jd_ut + 0.5)
    if not sets:
        return EveningEvents(s, None, None, s)
    m_jd = min(sets, key=lambda j: abs(j - s.jd_ut))
    lag = (m_jd - s.jd_ut) * 1440.0
    best = at_jd(s.jd_ut + BEST_TIME_FRACTION * lag * _MINUTE) if lag > 0 else s
    return EveningEvents(s, at_jd(m_jd), lag, best)


def conjunctions(jd_start: float, jd_end: float) -> list[float]:
    """UT Julian dates of geocentric Sun-Moon conjunctions in longitude."""
    def elongation(jd):
        jd = np.atleast_1d(jd)
        tt = jd + delta_t(decimal_year(jd)) / 86400.0
        diff = moon_ecliptic(tt)[0] - sun_ecliptic(tt)[0]
        return (diff + 180.0) % 360.0 - 180.0

    grid = np.arange(jd_start, jd_end + 0.25, 0.25)
    e = elongation(grid)
    found = []
    for i in np.nonzero((e[:-1] < 0) & (e[1:] >= 0))[0]:
        lo, hi = grid[i], grid[i + 1]
        while hi - lo > _SECOND:
            mid = 0.5 * (lo + hi)
            if elongation(mid)[0] < 0:
                lo = mid
            else:
                hi = mid
        found.append(0.5 * (lo + hi))
    return found
