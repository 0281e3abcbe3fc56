import datetime as dt

import numpy as np
import pytest

from hilal.ephemeris import (
    RABAT,
    GeoLocation,
    NoEventError,
    calendar_from_jd,
    evening_events,
    julian_day,
    sunset,
)
from hilal.ephemeris.events import BEST_TIME_FRACTION, SUNSET_ALTITUDE, conjunctions
from hilal.ephemeris.positions import topocentric


def _utc(text):
    return dt.datetime.fromisoformat(text).replace(tzinfo=None)


def test_sunset_and_moonset_against_independent_ephemeris(ephemeris_oracle):
    for row in ephemeris_oracle:
        ev = evening_events(row["date"], RABAT)
        assert abs((ev.sunset.to_datetime() - _utc(row["sunset_utc"])).total_seconds()) < 120
        assert abs((ev.moonset.to_datetime() - _utc(row["moonset_utc"])).total_seconds()) < 120


def test_sun_centre_at_reference_altitude_at_sunset():
    s = sunset(dt.date(2024, 3, 10), RABAT)
    q = topocentric("sun", s.jd_ut, RABAT)
    assert q["true_alt"][0] == pytest.approx(SUNSET_ALTITUDE, abs=0.01)


def test_sunset_is_bracketed_by_sign_change():
    s = sunset(dt.date(2024, 6, 21), RABAT)
    before = topocentric("sun", s.jd_ut - 1 / 1440, RABAT)["true_alt"][0]
    after = topocentric("sun", s.jd_ut + 1 / 1440, RABAT)["true_alt"][0]
    assert before > SUNSET_ALTITUDE > after


@pytest.mark.parametrize("date", [dt.date(2024, m, 15) for m in range(1, 13)])
def test_rabat_sunset_window(date):
    # Rabat civil sunsets stay between about 17:10 and 19:50 UT all year
    t = sunset(date, RABAT).to_datetime()
    assert dt.time(17, 0) < t.time() < dt.time(20, 0)


def test_lag_definition_and_best_time():
    ev = evening_events(dt.date(2024, 3, 11), RABAT)
    assert ev.lag == pytest.approx((ev.moonset.jd_ut - ev.sunset.jd_ut) * 1440, abs=1e-6)
    assert ev.lag > 0
    expected = ev.sunset.jd_ut + BEST_TIME_FRACTION * ev.lag / 1440
    assert ev.best_time.jd_ut == pytest.approx(expected, abs=1e-9)


def test_moon_setting_before_sun_gives_negative_lag():
    # 2024-03-09: day before conjunction (Mar 10 09:00 UT); Moon sets first
    ev = evening_events(dt.date(2024, 3, 9), RABAT)
    assert ev.lag < 0
    assert ev.best_time == ev.sunset


def test_polar_day_has_no_sunset():
    with pytest.raises(NoEventError):
        sunset(dt.date(2024, 6, 21), GeoLocation(78.0, 15.0))


def test_conjunction_of_march_2024():
    jds = conjunctions(julian_day(dt.date(2024, 3, 1)).jd_ut, julian_day(dt.date(2024, 3, 31)).jd_ut)
    assert len(jds) == 1
    when = calendar_from_jd(jds[0])
    # published new moon: 2024-03-10 09:00 UT
    assert abs((when - dt.datetime(2024, 3, 10, 9, 0)).total_seconds()) < 300


def test_synodic_month_spacing():
    start = julian_day(dt.date(2020, 1, 1)).jd_ut
    jds = np.array(conjunctions(start, start + 365))
    gaps = np.diff(jds)
    assert np.all((gaps > 29.2) & (gaps < 29.9))
    assert gaps.mean() == pytest.approx(29.53, abs=0.05)
