"""
Sun and Moon over Rabat
=======================

Positions come from truncated analytic series; events are found by sampling
the altitude every minute and bisecting each crossing to one second.
"""

import datetime as dt

import numpy as np

from hilal.ephemeris import RABAT, evening_events, julian_day, moon_position, sun_position
from hilal.ephemeris.positions import topocentric

# an instant: UT Julian date plus the TT - UT offset used for the dynamics
t = julian_day(dt.datetime(2024, 3, 11, 19, 0))
print(t, "JD", t.jd_ut, "delta T", round(t.delta_t, 2), "s")

sun = sun_position(t, RABAT)
moon = moon_position(t, RABAT)
print("sun  alt %.3f az %.3f lon %.4f" % (sun.horizontal.altitude, sun.horizontal.azimuth, sun.ecliptic_longitude))
print("moon alt %.3f az %.3f dist %.0f km SD %.2f'" % (
    moon.horizontal.altitude, moon.horizontal.azimuth, moon.distance, moon.semidiameter))

# the evening around the start of Ramadan 1445
for day in (dt.date(2024, 3, 9), dt.date(2024, 3, 10), dt.date(2024, 3, 11)):
    ev = evening_events(day, RABAT)
    lag = "moon set first" if ev.lag is None or ev.lag <= 0 else "lag %.1f min" % ev.lag
    print(day, "sunset", ev.sunset.to_datetime().time(), "moonset",
          ev.moonset.to_datetime().time() if ev.moonset else "-", lag)

# the vectorised core: a whole evening of altitudes in one call
jd = julian_day(dt.date(2024, 3, 11)).jd_ut + np.arange(17, 22, 0.25) / 24
alt = topocentric("moon", jd, RABAT)["alt"]
for j, a in zip(jd, alt):
    print("%5.2f h UT  moon apparent altitude %6.2f" % ((j % 1 - 0.5) * 24 % 24, a))
