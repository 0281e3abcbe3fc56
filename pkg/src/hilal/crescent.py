"""Crescent geometry (ARCV, DAZ, ARCL, W) and the Odeh visibility criterion."""
from __future__ import annotations

import datetime as dt
import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .ephemeris import GeoLocation, Instant, evening_events
from .ephemeris.positions import topocentric


class Zone(str, enum.Enum):
    A = "A"  # visible by naked eye
    B = "B"  # visible by optical aid, may be seen by naked eye
    C = "C"  # visible by optical aid only
    D = "D"  # not visible even with optical aid


@dataclass(frozen=True)
class OdehCriterion:
    """Cubic in crescent width and the zone cut points on V = ARCV - cubic(W).

    ``coefficients`` are for W**3, W**2, W, 1 (W in arcminutes);
    ``thresholds`` are the lower edges of zones A, B and C.
    """

    coefficients: tuple = (-0.1018, 0.7319, -6.3226, 7.1651)
    thresholds: tuple = (5.65, 2.0, -0.96)


ODEH = OdehCriterion()


@dataclass(frozen=True)
class OdehAssessment:
    v: float
    zone: Zone


@dataclass(frozen=True)
class CrescentGeometry:
    arcv: float  # degrees
    daz: float  # degrees
    arcl: float  # degrees
    w: float  # arcminutes
    lag: Optional[float]  # minutes
    evaluated_at: Instant
    sunset: Instant
    moonset: Optional[Instant]
    sun_altitude: float
    moon_altitude: float
    sun_azimuth: float
    moon_azimuth: float
    semidiameter: float  # topocentric lunar, arcminutes
    # Moon already set at sunset (or no moonset found): cannot be sighted.
    below_horizon: bool = False


def arc_of_vision(moon_altitude: float, sun_altitude: float) -> float:
    return moon_altitude - sun_altitude


def relative_azimuth(sun_azimuth: float, moon_azimuth: float) -> float:
    """Absolute azimuth difference folded into [0, 180]."""
    d = abs(sun_azimuth - moon_azimuth) % 360.0
    return 360.0 - d if d > 180.0 else d


def arc_of_light(arcv: float, daz: float) -> float:
    """Elongation from the spherical right-triangle relation cos L = cos V cos Z."""
    c = math.cos(math.radians(arcv)) * math.cos(math.radians(daz))
    return math.degrees(math.acos(max(-1.0, min(1.0, c))))


def crescent_width(semidiameter: float, arcl: float) -> float:
    """Width of the lit crescent in arcminutes: SD * (1 - cos ARCL)."""
    if semidiameter <= 0:
        raise ValueError("semidiameter must be positive")
    if not 0 <= arcl <= 180:
        raise ValueError(f"arcl {arcl} outside [0, 180]")
    return semidiameter * (1.0 - math.cos(math.radians(arcl)))


def visibility_curve(w, criterion: OdehCriterion = ODEH):
    """ARCV at which V = 0 for crescent width ``w``; falls as the crescent widens."""
    c = np.polyval(criterion.coefficients, np.asarray(w, dtype=float))
    return float(c) if c.ndim == 0 else c


def odeh_value(arcv, w, criterion: OdehCriterion = ODEH):
    """Odeh's V: arc of vision minus the visibility curve at width ``w``.

    Works elementwise on arrays.
    """
    v = np.asarray(arcv, dtype=float) - visibility_curve(w, criterion)
    return float(v) if v.ndim == 0 else v


def classify_zone(v: float, criterion: OdehCriterion = ODEH) -> Zone:
    if not math.isfinite(v):
        raise ValueError(f"non-finite criterion value {v}")
    a, b, c = criterion.thresholds
    if v >= a:
        return Zone.A
    if v >= b:
        return Zone.B
    if v >= c:
        return Zone.C
    return Zone.D


def assess(arcv: float, w: float, criterion: OdehCriterion = ODEH) -> OdehAssessment:
    v = float(odeh_value(arcv, w, criterion))
    return OdehAssessment(v, classify_zone(v, criterion))


def compute_geometry(date: dt.date, site: GeoLocation, *, epoch: str = "best",
                     refraction: bool = False) -> CrescentGeometry:
    """Crescent observables for the evening of ``date`` at ``site``.

    ``epoch`` is ``"best"`` (sunset + 4/9 lag) or ``"sunset"``.  Altitudes are
    topocentric and airless unless ``refraction`` is set.  When the Moon sets
    before the Sun the quantities are taken at sunset and ``below_horizon``
    is set.
    """
    if epoch not in ("best", "sunset"):
        raise ValueError(f"epoch must be 'best' or 'sunset', got {epoch!r}")
    ev = evening_events(date, site)
    below = ev.lag is None or ev.lag <= 0
    at = ev.best_time if epoch == "best" else ev.sunset
    key = "alt" if refraction else "true_alt"
    sun = topocentric("sun", at.jd_ut, site)
    moon = topocentric("moon", at.jd_ut, site)
    sun_alt, moon_alt = float(sun[key][0]), float(moon[key][0])
    sun_az, moon_az = float(sun["az"][0]), float(moon["az"][0])
    sd = float(moon["semidiameter"][0])
    arcv = arc_of_vision(moon_alt, sun_alt)
    daz = relative_azimuth(sun_az, moon_az)
    arcl = arc_of_light(arcv, daz)
    return CrescentGeometry(
        arcv=arcv, daz=daz, arcl=arcl, w=crescent_width(sd, arcl), lag=ev.lag,
        evaluated_at=at, sunset=ev.sunset, moonset=ev.moonset,
        sun_altitude=sun_alt, moon_altitude=moon_alt, sun_azimuth=sun_az, moon_azimuth=moon_az,
        semidiameter=sd, below_horizon=below,
    )
