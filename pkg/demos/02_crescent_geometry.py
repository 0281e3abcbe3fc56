"""
Crescent geometry and the Odeh zones
====================================

ARCV (Moon-Sun altitude gap), DAZ (azimuth gap), ARCL (elongation) and the
crescent width W decide how visible a young Moon is.  Odeh's criterion
turns (ARCV, W) into one number V and a zone A-D.
"""

import datetime as dt

import numpy as np

from hilal.crescent import assess, compute_geometry, odeh_value, visibility_curve
from hilal.ephemeris import RABAT

for day in (dt.date(2024, 3, 10), dt.date(2024, 3, 11), dt.date(2024, 4, 8), dt.date(2024, 4, 9)):
    g = compute_geometry(day, RABAT)
    a = assess(g.arcv, g.w)
    print(f"{day}  ARCV {g.arcv:6.3f}  DAZ {g.daz:6.3f}  ARCL {g.arcl:6.3f}  "
          f"W {g.w:6.4f}'  V {a.v:7.3f}  zone {a.zone.value}")

# The curve is the ARCV needed at each width; wider crescents need less.
w = np.linspace(0, 1.6, 9)
print("W     ", np.round(w, 2))
print("ARCV_0", np.round(visibility_curve(w), 3))
print("V at ARCV 10:", np.round(odeh_value(10.0, w), 3))

# Where in the evening the geometry is taken matters.  The default is the
# best time (sunset + 4/9 of the lag); compare with sunset itself.
print("\nepoch sensitivity, Rabat")
for day in (dt.date(2024, 3, 10), dt.date(2024, 3, 11), dt.date(2023, 3, 22)):
    best = compute_geometry(day, RABAT)
    at_sunset = compute_geometry(day, RABAT, epoch="sunset")
    refr = compute_geometry(day, RABAT, refraction=True)
    print(f"{day}  ARCV best {best.arcv:6.3f}  sunset {at_sunset.arcv:6.3f}  "
          f"with refraction {refr.arcv:6.3f}  zone best/sunset "
          f"{assess(best.arcv, best.w).zone.value}/{assess(at_sunset.arcv, at_sunset.w).zone.value}")
