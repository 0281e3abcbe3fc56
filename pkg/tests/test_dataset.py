import io
import json
import statistics

import numpy as np
import pytest

from hilal.crescent import Zone
from hilal.ml import Dataset, DatasetError, Observation, load_dataset, parse_dataset
from hilal.ml.stats import EmptyDatasetError, format_summary, summary_stats, zone_distribution

from conftest import DATA

GOOD = "date,arcv,w,output\n2024-03-10,4.2985,0.0666,0\n2024-03-11,18.7978,0.9301,1\n"


def test_parse_minimal():
    d = parse_dataset(GOOD)
    assert len(d) == 2
    assert d.X.shape == (2, 2)
    assert list(d.y) == [0, 1]
    assert d.rows[0].date.isoformat() == "2024-03-10"


def test_column_order_bom_and_blank_lines():
    d = parse_dataset("\ufeffoutput,w,arcv\n\n1,0.5,10\n\n0,0.1,2\n")
    assert d.X.tolist() == [[10.0, 0.5], [2.0, 0.1]]
    assert list(d.y) == [1, 0]


@pytest.mark.parametrize("text, line, needle", [
    ("", 1, "header"),
    ("arcv,w\n1,2\n", 1, "output"),
    ("arcv,w,output\n1,0.5,1\n2,abc,0\n", 3, "non-numeric"),
    ("arcv,w,output\n1,0.5,2\n", 2, "0 or 1"),
    ("arcv,w,output\n1,0.5\n", 2, "fields"),
    ("arcv,w,output\n1,-0.5,1\n", 2, "negative"),
    ("arcv,w,output\nnan,0.5,1\n", 2, "non-finite"),
    ("date,arcv,w,output\n2024-13-01,1,0.5,1\n", 2, "date"),
])
def test_parse_errors_carry_line_numbers(text, line, needle):
    with pytest.raises(DatasetError) as exc:
        parse_dataset(text)
    assert exc.value.line == line
    assert needle in str(exc.value)
    assert f"line {line}" in str(exc.value)


def test_csv_round_trip(surrogate):
    back = parse_dataset(surrogate.to_csv())
    assert np.array_equal(back.X, surrogate.X)
    assert np.array_equal(back.y, surrogate.y)
    assert [r.date for r in back] == [r.date for r in surrogate]


def test_load_from_file_object():
    assert len(load_dataset(io.StringIO(GOOD))) == 2


def test_observation_validation():
    with pytest.raises(ValueError):
        Observation(1.0, -0.1, 1)
    with pytest.raises(ValueError):
        Observation(1.0, 0.1, 3)


def test_surrogate_shape(surrogate):
    assert len(surrogate) == 257
    assert surrogate.class_counts() == {0: 104, 1: 153}


def test_stats_match_frozen_exact_oracle(surrogate):
    oracle = json.loads((DATA / "surrogate_stats_oracle.json").read_text())
    stats = summary_stats(surrogate)
    for var, expected in oracle.items():
        got = stats[var]
        for key, attr in (("count", "count"), ("mean", "mean"), ("std", "std"), ("min", "min"),
                          ("25%", "p25"), ("50%", "p50"), ("75%", "p75"), ("max", "max")):
            assert getattr(got, attr) == pytest.approx(expected[key], abs=1e-9), (var, key)


def test_stats_match_statistics_module_on_random_data():
    rng = np.random.default_rng(5)
    for n in (1, 2, 3, 7, 50):
        X = rng.uniform(0, 20, (n, 2))
        y = rng.integers(0, 2, n)
        s = summary_stats(Dataset.from_arrays(X, y))["arcv"]
        col = X[:, 0].tolist()
        assert s.mean == pytest.approx(statistics.fmean(col), abs=1e-12)
        if n > 1:
            assert s.std == pytest.approx(statistics.stdev(col), abs=1e-12)
            q = statistics.quantiles(col, n=4, method="inclusive")
            assert (s.p25, s.p50, s.p75) == pytest.approx(q, abs=1e-12)
        else:
            assert s.std == 0.0 and s.p50 == col[0]


def test_empty_dataset_rejected():
    with pytest.raises(EmptyDatasetError):
        summary_stats(parse_dataset("arcv,w,output\n"))


def test_format_summary_four_decimals(surrogate):
    text = format_summary(summary_stats(surrogate))
    assert "11.1383" in text and "257" in text


def test_zone_distribution(surrogate):
    z = zone_distribution(surrogate)
    assert sum(n for *_, n in z.rows()) == 257
    assert z.positive_rate(Zone.A) == 1.0
    lines = z.to_csv().splitlines()
    assert lines[0] == "zone,output,count"
    assert len(lines) - 1 == len(z.rows())
    assert {row.split(",")[0] for row in lines[1:]} == {zz.value for zz in z.zones()}
