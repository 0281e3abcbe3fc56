"""Julian dates and the TT - UT offset."""
from __future__ import annotations

import datetime as dt
from dataclasses import dataclass

import numpy as np

J2000 = 2451545.0
SECONDS_PER_DAY = 86400.0
# date.toordinal() of 0001-01-01 is 1; its midnight is JD 1721425.5
_ORDINAL_TO_JD = 1721424.5

MIN_YEAR = 1900
MAX_YEAR = 2100


class UnsupportedEpochError(ValueError):
    """Raised for instants outside the 1900-2100 validity window."""


@dataclass(frozen=True)
class Instant:
    """A moment on the UT scale with the TT - UT offset used for dynamics."""

    jd_ut: float
    delta_t: float  # seconds

    def __post_init__(self):
        if not self.jd_ut > 0:
            raise ValueError(f"jd_ut must be positive, got {self.jd_ut}")

    @property
    def jd_tt(self) -> float:
        return self.jd_ut + self.delta_t / SECONDS_PER_DAY

    def to_datetime(self) -> dt.datetime:
        return calendar_from_jd(self.jd_ut)

    def shifted(self, minutes: float) -> "Instant":
        return at_jd(self.jd_ut + minutes / 1440.0)

    def __lt__(self, other: "Instant") -> bool:
        return self.jd_ut < other.jd_ut

    def __str__(self):
        return self.to_datetime().strftime("%Y-%m-%d %H:%M:%S UTC")


def delta_t(year):
    """TT - UT in seconds from the Espenak & Meeus (2006) polynomial fits.

    `year` is a decimal year and may be an array.
    """
    y = np.asarray(year, dtype=float)
    if np.any((y < MIN_YEAR) | (y > MAX_YEAR + 1)):
        raise UnsupportedEpochError(f"delta_t supports {MIN_YEAR}-{MAX_YEAR}, got {year}")
    t1 = y - 1900
    t2 = y - 1920
    t3 = y - 1950
    t4 = y - 1975
    t5 = y - 2000
    u = (y - 1820) / 100
    out = np.select(
        [y < 1920, y < 1941, y < 1961, y < 1986, y < 2005, y < 2050],
        [
            -2.79 + 1.494119 * t1 - 0.0598939 * t1**2 + 0.0061966 * t1**3 - 0.000197 * t1**4,
            21.20 + 0.84493 * t2 - 0.076100 * t2**2 + 0.0020936 * t2**3,
            29.07 + 0.407 * t3 - t3**2 / 233 + t3**3 / 2547,
            45.45 + 1.067 * t4 - t4**2 / 260 - t4**3 / 718,
            63.86 + 0.3345 * t5 - 0.060374 * t5**2 + 0.0017275 * t5**3
            + 0.000651814 * t5**4 + 0.00002373599 * t5**5,
            62.92 + 0.32217 * t5 + 0.005589 * t5**2,
        ],
        -20 + 32 * u**2 - 0.5628 * (2150 - y),
    )
    return float(out) if np.ndim(out) == 0 else out


def decimal_year(jd_ut):
    return 2000.0 + (np.asarray(jd_ut) - J2000) / 365.25


def julian_day(when: dt.datetime | dt.date) -> Instant:
    """Continuous Julian Date (UT) for a proleptic Gregorian UTC timestamp.

    Naive datetimes are taken as UTC; a bare ``date`` means 00:00 UTC.

    >>> julian_day(dt.datetime(2000, 1, 1, 12)).jd_ut
    2451545.0
    """
    if not isinstance(when, dt.datetime):
        when = dt.datetime(when.year, when.month, when.day)
    if when.tzinfo is not None:
        when = when.astimezone(dt.timezone.utc).replace(tzinfo=None)
    if not MIN_YEAR <= when.year <= MAX_YEAR:
        raise UnsupportedEpochError(f"year {when.year} outside {MIN_YEAR}-{MAX_YEAR}")
    day_seconds = when.hour * 3600 + when.minute * 60 + when.second + when.microsecond / 1e6
    jd = _ORDINAL_TO_JD + when.toordinal() + day_seconds / SECONDS_PER_DAY
    return Instant(jd, delta_t(decimal_year(jd)))


def at_jd(jd_ut: float) -> Instant:
    """Instant for a raw UT Julian date, with delta T filled in."""
    return Instant(float(jd_ut), delta_t(decimal_year(jd_ut)))


def calendar_from_jd(jd_ut: float) -> dt.datetime:
    """Inverse of :func:`julian_day`, rounded to the microsecond (naive UTC)."""
    shifted = jd_ut - _ORDINAL_TO_JD
    ordinal = int(np.floor(shifted))
    micros = round((shifted - ordinal) * SECONDS_PER_DAY * 1e6)
    return dt.datetime.fromordinal(ordinal) + dt.timedelta(microseconds=micros)
