"""Time scales, Sun/Moon positions and evening horizon events."""
from .events import EveningEvents, NoEventError, evening_events, sunset
from .positions import (
    RABAT,
    SITES,
    BodyState,
    GeoLocation,
    HorizontalCoord,
    moon_position,
    refraction,
    sun_position,
)
from .timescale import Instant, UnsupportedEpochError, at_jd, calendar_from_jd, delta_t, julian_day

__all__ = [
    "BodyState", "EveningEvents", "GeoLocation", "HorizontalCoord", "Instant", "NoEventError",
    "RABAT", "SITES", "UnsupportedEpochError", "at_jd", "calendar_from_jd", "delta_t",
    "evening_events", "julian_day", "moon_position", "refraction", "sun_position", "sunset",
]
