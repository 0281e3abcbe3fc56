"""Hijri month starts from predicted crescent sightings.

The tabular (arithmetic) Islamic calendar supplies a baseline Gregorian date
for the first of each month; the sighting model is then asked about the
evenings around it, starting the day before the baseline, and the month
begins the day after the first evening with a predicted sighting.
"""
from __future__ import annotations

import datetime as dt
from dataclasses import dataclass, field
from typing import Callable, Optional

from .crescent import CrescentGeometry, compute_geometry
from .ephemeris import RABAT, GeoLocation

# 1 Muharram AH 1 (civil epoch) = 16 July 622 Julian = 19 July 622 Gregorian,
# the day starting at JD 1948439.5.
EPOCH = dt.date(622, 7, 19)
EPOCH_JD = 1948439.5
LEAP_YEARS_IN_CYCLE = frozenset({2, 5, 7, 10, 13, 16, 18, 21, 24, 26, 29})
DEFAULT_N_MAX = 3

MONTH_NAMES = (
    "Muharram", "Safar", "Rabi al-Awwal", "Rabi al-Thani", "Jumada al-Ula", "Jumada al-Akhira",
    "Rajab", "Shaban", "Ramadan", "Shawwal", "Dhu al-Qada", "Dhu al-Hijja",
)

Classifier = Callable[[float, float], int]


class HijriDateError(ValueError):
    pass


class NoVisibilityError(RuntimeError):
    """No evening in the search window produced a predicted sighting."""

    def __init__(self, hijri, probes):
        self.hijri = hijri
        self.probes = probes
        super().__init__(f"no crescent predicted visible for {hijri} within {len(probes)} evenings")


@dataclass(frozen=True, order=True)
class HijriDate:
    year: int
    month: int
    day: int = 1

    def __post_init__(self):
        if not 1 <= self.year <= 9999:
            raise HijriDateError(f"Hijri year {self.year} outside 1-9999")
        if not 1 <= self.month <= 12:
            raise HijriDateError(f"Hijri month {self.month} outside 1-12")
        if not 1 <= self.day <= month_length(self.year, self.month):
            raise HijriDateError(f"day {self.day} invalid for {self.year}-{self.month:02d}")

    def __str__(self):
        return f"{self.year}-{self.month:02d}-{self.day:02d} AH"


def is_leap(year: int) -> bool:
    return (year - 1) % 30 + 1 in LEAP_YEARS_IN_CYCLE


def month_length(year: int, month: int) -> int:
    if month == 12 and is_leap(year):
        return 30
    return 30 if month % 2 else 29


def year_length(year: int) -> int:
    return 355 if is_leap(year) else 354


def days_before(year: int, month: int, day: int = 1) -> int:
    """Days elapsed from 1 Muharram AH 1 to the given tabular date."""
    return (354 * (year - 1) + (3 + 11 * year) // 30
            + 29 * (month - 1) + month // 2 + day - 1)


def hijri_to_gregorian_tabular(h: HijriDate) -> dt.date:
    """Arithmetic-calendar conversion (leap years 2, 5, 7, ... 29 of each 30)."""
    return EPOCH + dt.timedelta(days=days_before(h.year, h.month, h.day))


def gregorian_to_hijri_tabular(g: dt.date) -> HijriDate:
    n = (g - EPOCH).days
    if n < 0:
        raise HijriDateError(f"{g} precedes the Hijri epoch")
    year = (30 * n + 10646) // 10631
    while days_before(year + 1, 1) <= n:
        year += 1
    while days_before(year, 1) > n:
        year -= 1
    month = 1
    while month < 12 and days_before(year, month + 1) <= n:
        month += 1
    return HijriDate(year, month, n - days_before(year, month) + 1)


@dataclass(frozen=True)
class Probe:
    offset: int
    evening: dt.date
    geometry: CrescentGeometry
    visible: int


@dataclass
class MonthStartResult:
    hijri: HijriDate
    g_base: dt.date
    g_doubt: dt.date
    g_first: dt.date
    offset_used: int
    geometry: CrescentGeometry
    probes: list = field(default_factory=list)


def evaluate_evening(evening: dt.date, site: GeoLocation, model: Classifier) -> Probe:
    geom = compute_geometry(evening, site)
    # Moon down at sunset: not sightable, the model is not consulted.
    seen = 0 if geom.below_horizon else int(model(geom.arcv, geom.w))
    return Probe(0, evening, geom, seen)


def determine_month_start(h_year: int, h_month: int, site: GeoLocation = RABAT,
                          model: Optional[Classifier] = None, n_max: int = DEFAULT_N_MAX
                          ) -> MonthStartResult:
    """First day of a Hijri month by iterated visibility checks.

    ``model`` is any callable ``(arcv, w) -> 0/1``, e.g. a
    :class:`~hilal.ml.TrainedClassifier`.  Evenings ``g_base + offset`` are
    probed for offset = -1, 0, ..., n_max; the month starts the day after the
    first evening predicted visible.
    """
    if model is None:
        raise ValueError("a visibility model is required")
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    hijri = HijriDate(h_year, h_month, 1)
    g_base = hijri_to_gregorian_tabular(hijri)
    probes = []
    offset = -1
    while offset <= n_max:
        evening = g_base + dt.timedelta(days=offset)
        p = evaluate_evening(evening, site, model)
        p = Probe(offset, evening, p.geometry, p.visible)
        probes.append(p)
        if p.visible == 1:
            return MonthStartResult(hijri, g_base, evening, evening + dt.timedelta(days=1),
                                    offset, p.geometry, probes)
        offset += 1
    raise NoVisibilityError(hijri, probes)


@dataclass
class YearCalendar:
    year: int
    months: list  # MonthStartResult, or the exception raised for that month
    next_start: object  # start of Muharram of the following year (result or exception)
    violations: list = field(default_factory=list)

    def month_lengths(self) -> list:
        """Lengths in days; None where either bounding month failed."""
        starts = [*self.months, self.next_start]
        out = []
        for a, b in zip(starts, starts[1:]):
            ok = isinstance(a, MonthStartResult) and isinstance(b, MonthStartResult)
            out.append((b.g_first - a.g_first).days if ok else None)
        return out

    @property
    def total_days(self) -> Optional[int]:
        lengths = self.month_lengths()
        return None if None in lengths else sum(lengths)


def generate_year(h_year: int, site: GeoLocation = RABAT, model: Optional[Classifier] = None,
                  n_max: int = DEFAULT_N_MAX) -> YearCalendar:
    """All twelve month starts of ``h_year``, each found independently.

    Failed months are kept as their exception.  Month lengths outside 29-30
    days and a year total outside 354-355 are listed in ``violations``.
    """
    def attempt(y, m):
        try:
            return determine_month_start(y, m, site, model, n_max)
        except NoVisibilityError as exc:
            return exc

    months = [attempt(h_year, m) for m in range(1, 13)]
    cal = YearCalendar(h_year, months, attempt(h_year + 1, 1))
    for m, length in enumerate(cal.month_lengths(), start=1):
        if length is None:
            cal.violations.append(f"month {m}: start undetermined")
        elif length not in (29, 30):
            cal.violations.append(f"month {m}: {length} days")
    total = cal.total_days
    if total is not None and total not in (354, 355):
        cal.violations.append(f"year total {total} days")
    return cal
