"""Apparent topocentric positions of the Sun and Moon.

Abridged analytic theories: truncated VSOP87 for the Earth, the 60+60 term
ELP-2000/82 lunar series, low-precision nutation, and Saemundsson's
refraction at standard pressure and temperature.  Accuracy is a few
arcseconds for the Sun and ~10" for the Moon over 1900-2100.

Internal helpers work on numpy arrays of Julian dates so that event searches
can sample hundreds of instants per call.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _series
from .timescale import J2000, SECONDS_PER_DAY, Instant, decimal_year, delta_t

AU_KM = 149597870.7
EARTH_RADIUS_KM = 6378.14
EARTH_FLATTENING_RATIO = 0.99664719  # b/a
MOON_RADIUS_KM = 1737.4
SUN_RADIUS_KM = 696000.0

# True altitude at which the apparent horizon sits; refraction is held at its
# horizon value for lower bodies.
REFRACTION_FLOOR_DEG = -0.575


@dataclass(frozen=True)
class GeoLocation:
    latitude: float  # degrees north
    longitude: float  # degrees east
    elevation: float = 0.0  # metres
    name: str = ""

    def __post_init__(self):
        if not -90 <= self.latitude <= 90:
            raise ValueError(f"latitude {self.latitude} outside [-90, 90]")
        if not -180 <= self.longitude <= 180:
            raise ValueError(f"longitude {self.longitude} outside [-180, 180]")
        if self.elevation < -430:
            raise ValueError(f"elevation {self.elevation} m below -430 m")


RABAT = GeoLocation(34.02, -6.84, 75.0, name="rabat")
SITES = {"rabat": RABAT}


@dataclass(frozen=True)
class HorizontalCoord:
    altitude: float  # degrees, apparent (refracted)
    azimuth: float  # degrees east of north, [0, 360)


@dataclass(frozen=True)
class BodyState:
    """Topocentric state of a body at one instant.

    ``horizontal.altitude`` includes refraction; ``true_altitude`` is the
    airless topocentric altitude of the centre.  ``distance`` is geocentric,
    ``semidiameter`` is topocentric (arcminutes).
    """

    horizontal: HorizontalCoord
    true_altitude: float
    distance: float
    semidiameter: float
    ecliptic_longitude: float  # geocentric apparent, degrees
    ecliptic_latitude: float


# --- fundamental arguments ---------------------------------------------------

def _centuries(jd_tt):
    return (np.asarray(jd_tt, dtype=float) - J2000) / 36525.0


def nutation(jd_tt):
    """Nutation in longitude and obliquity (degrees) and true obliquity."""
    t = _centuries(jd_tt)
    omega = np.radians(125.04452 - 1934.136261 * t + 0.0020708 * t**2 + t**3 / 450000)
    l_sun = np.radians(280.4665 + 36000.7698 * t)
    l_moon = np.radians(218.3165 + 481267.8813 * t)
    dpsi = (-17.20 * np.sin(omega) - 1.32 * np.sin(2 * l_sun)
            - 0.23 * np.sin(2 * l_moon) + 0.21 * np.sin(2 * omega)) / 3600
    deps = (9.20 * np.cos(omega) + 0.57 * np.cos(2 * l_sun)
            + 0.10 * np.cos(2 * l_moon) - 0.09 * np.cos(2 * omega)) / 3600
    eps0 = (23.0 + 26.0 / 60 + 21.448 / 3600
            + (-46.8150 * t - 0.00059 * t**2 + 0.001813 * t**3) / 3600)
    return dpsi, deps, eps0 + deps


def _series_sum(tables, tau):
    total = 0.0
    for power, table in enumerate(tables):
        a, b, c = table[:, 0], table[:, 1], table[:, 2]
        terms = a[:, None] * np.cos(b[:, None] + c[:, None] * tau[None, :])
        total = total + terms.sum(axis=0) * tau**power
    return total / 1e8


def sun_ecliptic(jd_tt):
    """Geocentric apparent ecliptic longitude, latitude (deg) and distance (AU)."""
    jd_tt = np.atleast_1d(np.asarray(jd_tt, dtype=float))
    tau = (jd_tt - J2000) / 365250.0
    t = tau * 10
    big_l = _series_sum(_series.EARTH_L, tau)
    big_b = _series_sum(_series.EARTH_B, tau)
    radius = _series_sum(_series.EARTH_R, tau)
    lon = np.degrees(big_l) + 180.0
    lat = -np.degrees(big_b)
    # FK5 frame correction
    lam1 = np.radians(lon - 1.397 * t - 0.00031 * t**2)
    lon = lon - 0.09033 / 3600
    lat = lat + 0.03916 / 3600 * (np.cos(lam1) - np.sin(lam1))
    dpsi, _, _ = nutation(jd_tt)
    aberration = -20.4898 / 3600 / radius
    return np.mod(lon + dpsi + aberration, 360.0), lat, radius


def moon_ecliptic_mean(jd_tt):
    """Geocentric lunar longitude/latitude (deg, mean equinox of date) and distance (km)."""
    jd_tt = np.atleast_1d(np.asarray(jd_tt, dtype=float))
    t = _centuries(jd_tt)
    lp = 218.3164477 + 481267.88123421 * t - 0.0015786 * t**2 + t**3 / 538841 - t**4 / 65194000
    d = 297.8501921 + 445267.1114034 * t - 0.0018819 * t**2 + t**3 / 545868 - t**4 / 113065000
    m = 357.5291092 + 35999.0502909 * t - 0.0001536 * t**2 + t**3 / 24490000
    mp = 134.9633964 + 477198.8675055 * t + 0.0087414 * t**2 + t**3 / 69699 - t**4 / 14712000
    f = 93.2720950 + 483202.0175233 * t - 0.0036539 * t**2 - t**3 / 3526000 + t**4 / 863310000
    a1 = np.radians(119.75 + 131.849 * t)
    a2 = np.radians(53.09 + 479264.290 * t)
    a3 = np.radians(313.45 + 481266.484 * t)
    e = 1 - 0.002516 * t - 0.0000074 * t**2
    fund = np.radians(np.vstack([np.mod(x, 360.0) for x in (d, m, mp, f)]))  # (4, n)

    lr = _series.MOON_LR
    arg = lr[:, :4] @ fund
    efac = e[None, :] ** np.abs(lr[:, 1])[:, None]
    sigma_l = (lr[:, 4, None] * efac * np.sin(arg)).sum(axis=0)
    sigma_r = (lr[:, 5, None] * efac * np.cos(arg)).sum(axis=0)

    tb = _series.MOON_B
    arg = tb[:, :4] @ fund
    efac = e[None, :] ** np.abs(tb[:, 1])[:, None]
    sigma_b = (tb[:, 4, None] * efac * np.sin(arg)).sum(axis=0)

    lp_r, f_r, mp_r = np.radians(lp), fund[3], fund[2]
    sigma_l += 3958 * np.sin(a1) + 1962 * np.sin(lp_r - f_r) + 318 * np.sin(a2)
    sigma_b += (-2235 * np.sin(lp_r) + 382 * np.sin(a3) + 175 * np.sin(a1 - f_r)
                + 175 * np.sin(a1 + f_r) + 127 * np.sin(lp_r - mp_r) - 115 * np.sin(lp_r + mp_r))
    lon = np.mod(lp + sigma_l / 1e6, 360.0)
    return lon, sigma_b / 1e6, 385000.56 + sigma_r / 1000


def moon_ecliptic(jd_tt):
    """Geocentric apparent lunar longitude/latitude (deg) and distance (km)."""
    lon, lat, dist = moon_ecliptic_mean(jd_tt)
    dpsi, _, _ = nutation(jd_tt)
    return np.mod(lon + dpsi, 360.0), lat, dist


def apparent_sidereal_time(jd_ut, jd_tt):
    """Greenwich apparent sidereal time in degrees."""
    jd_ut = np.asarray(jd_ut, dtype=float)
    t = (jd_ut - J2000) / 36525.0
    gmst = (280.46061837 + 360.98564736629 * (jd_ut - J2000)
            + 0.000387933 * t**2 - t**3 / 38710000)
    dpsi, _, eps = nutation(jd_tt)
    return np.mod(gmst + dpsi * np.cos(np.radians(eps)), 360.0)


def refraction(true_altitude):
    """Atmospheric refraction in degrees for a true (airless) altitude."""
    h = np.maximum(np.asarray(true_altitude, dtype=float), REFRACTION_FLOOR_DEG)
    r = 1.02 / np.tan(np.radians(h + 10.3 / (h + 5.11))) + 0.0019279
    return np.clip(r, 0.0, None) / 60.0


def _equatorial_vector(lon, lat, dist, eps):
    lam, beta, eps = np.radians(lon), np.radians(lat), np.radians(eps)
    x = np.cos(beta) * np.cos(lam)
    y = np.cos(beta) * np.sin(lam)
    z = np.sin(beta)
    return dist * np.vstack([x, y * np.cos(eps) - z * np.sin(eps), y * np.sin(eps) + z * np.cos(eps)])


def _observer_vector(site: GeoLocation, lst_deg):
    phi = np.radians(site.latitude)
    u = np.arctan(EARTH_FLATTENING_RATIO * np.tan(phi))
    h = site.elevation / 1000.0 / EARTH_RADIUS_KM
    rho_sin = EARTH_FLATTENING_RATIO * np.sin(u) + h * np.sin(phi)
    rho_cos = np.cos(u) + h * np.cos(phi)
    theta = np.radians(lst_deg)
    return EARTH_RADIUS_KM * np.vstack([rho_cos * np.cos(theta), rho_cos * np.sin(theta),
                                        np.full_like(theta, rho_sin)])


def topocentric(body: str, jd_ut, site: GeoLocation):
    """Vectorised topocentric quantities for ``body`` ('sun' or 'moon').

    Returns a dict of arrays: true_alt, alt, az (deg), distance (geocentric km),
    topo_distance (km), semidiameter (arcmin), lon, lat (geocentric apparent).
    """
    jd_ut = np.atleast_1d(np.asarray(jd_ut, dtype=float))
    jd_tt = jd_ut + delta_t(decimal_year(jd_ut)) / SECONDS_PER_DAY
    if body == "sun":
        lon, lat, r_au = sun_ecliptic(jd_tt)
        dist = r_au * AU_KM
        radius = SUN_RADIUS_KM
    elif body == "moon":
        lon, lat, dist = moon_ecliptic(jd_tt)
        radius = MOON_RADIUS_KM
    else:
        raise ValueError(f"unknown body {body!r}")
    _, _, eps = nutation(jd_tt)
    lst = apparent_sidereal_time(jd_ut, jd_tt) + site.longitude
    vec = _equatorial_vector(lon, lat, dist, eps) - _observer_vector(site, lst)
    topo_dist = np.linalg.norm(vec, axis=0)
    ra = np.arctan2(vec[1], vec[0])
    dec = np.arcsin(vec[2] / topo_dist)
    ha = np.radians(lst) - ra
    phi = np.radians(site.latitude)
    sin_alt = np.sin(phi) * np.sin(dec) + np.cos(phi) * np.cos(dec) * np.cos(ha)
    true_alt = np.degrees(np.arcsin(np.clip(sin_alt, -1.0, 1.0)))
    az = np.degrees(np.arctan2(np.cos(dec) * np.sin(ha),
                               np.cos(dec) * np.cos(ha) * np.sin(phi) - np.sin(dec) * np.cos(phi)))
    az = np.mod(az + 180.0, 360.0)
    return {
        "true_alt": true_alt,
        "alt": true_alt + refraction(true_alt),
        "az": az,
        "distance": dist,
        "topo_distance": topo_dist,
        "semidiameter": np.degrees(np.arcsin(radius / topo_dist)) * 60.0,
        "lon": lon,
        "lat": lat,
    }


def _state(body: str, t: Instant, site: GeoLocation) -> BodyState:
    q = {k: float(v[0]) for k, v in topocentric(body, t.jd_ut, site).items()}
    return BodyState(
        horizontal=HorizontalCoord(q["alt"], q["az"]),
        true_altitude=q["true_alt"],
        distance=q["distance"],
        semidiameter=q["semidiameter"],
        ecliptic_longitude=q["lon"],
        ecliptic_latitude=q["lat"],
    )


def sun_position(t: Instant, site: GeoLocation) -> BodyState:
    return _state("sun", t, site)


def moon_position(t: Instant, site: GeoLocation) -> BodyState:
    return _state("moon", t, site)
