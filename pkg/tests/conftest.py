import csv
import datetime as dt
from pathlib import Path

import pytest

from hilal.ml import load_dataset

DATA = Path(__file__).parent / "data"
SURROGATE = Path(__file__).parents[1] / "src" / "hilal" / "data" / "surrogate_rabat.csv"


@pytest.fixture(scope="session")
def surrogate():
    return load_dataset(SURROGATE)


@pytest.fixture(scope="session")
def ephemeris_oracle():
    with open(DATA / "ephemeris_oracle.csv", newline="") as fh:
        rows = list(csv.DictReader(fh))
    for r in rows:
        r["date"] = dt.date.fromisoformat(r["date"])
    return rows
