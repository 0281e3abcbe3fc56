import csv
import io
import re

import pytest

from hilal.cli import EXIT_EXHAUSTED, EXIT_INPUT, EXIT_NO_EVENT, EXIT_OK, load_config, main

from conftest import SURROGATE


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_geometry_table():
    code, text = run("geometry", "--date", "2024-03-10", "--site", "rabat")
    assert code == EXIT_OK
    assert re.search(r"zone: [ABCD]", text)
    for key in ("arcv", "daz", "arcl", "w", "lag_min", "best_time", "odeh_v"):
        assert f"{key}:" in text


def test_geometry_csv_is_one_header_one_row():
    code, text = run("geometry", "--date", "2024-03-10", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(text)))
    assert code == EXIT_OK and len(text.splitlines()) == 2
    assert rows[0]["zone"] == "D" and float(rows[0]["arcv"]) == pytest.approx(4.2985, abs=1e-4)


def test_precision_flag():
    _, text = run("--precision", "2", "geometry", "--date", "2024-03-10", "--format", "csv")
    assert list(csv.DictReader(io.StringIO(text)))[0]["arcv"] == "4.30"


def test_unknown_site(capsys):
    code, _ = run("geometry", "--date", "2024-03-10", "--site", "fes")
    assert code == EXIT_INPUT
    assert "fes" in capsys.readouterr().err


def test_custom_coordinates_and_polar_no_event():
    assert run("geometry", "--date", "2024-03-11", "--lat", "33.57", "--lon", "-7.59")[0] == EXIT_OK
    assert run("geometry", "--date", "2024-06-21", "--lat", "78", "--lon", "15")[0] == EXIT_NO_EVENT


def test_bad_date_is_input_error():
    assert run("geometry", "--date", "2024-02-30")[0] == EXIT_INPUT


def test_config_sites_and_defaults(tmp_path):
    cfg = tmp_path / "hilal.ini"
    cfg.write_text(f"[defaults]\ndataset = {SURROGATE}\nseed = 3\n[sites]\nfes = 34.03, -5.00, 410\n")
    config = load_config(cfg)
    assert "rabat" in config.sites and config.sites["fes"].elevation == 410
    assert config.seed == 3
    code, text = run("--config", str(cfg), "geometry", "--date", "2024-03-11", "--site", "fes")
    assert code == EXIT_OK and "fes" in text
    assert run("--config", str(cfg), "stats")[0] == EXIT_OK


def test_stats_and_zone_emission(tmp_path):
    out = tmp_path / "zones.csv"
    code, text = run("stats", str(SURROGATE), "--emit-zones", str(out))
    assert code == EXIT_OK and "257" in text and "11.1383" in text
    lines = out.read_text().splitlines()
    assert lines[0] == "zone,output,count"
    assert sum(int(r.split(",")[2]) for r in lines[1:]) == 257


def test_stats_errors(tmp_path):
    empty = tmp_path / "empty.csv"
    empty.write_text("arcv,w,output\n")
    assert run("stats", str(empty))[0] == EXIT_INPUT
    bad = tmp_path / "bad.csv"
    bad.write_text("arcv,w,output\n1,x,1\n")
    assert run("stats", str(bad))[0] == EXIT_INPUT
    assert run("stats", str(tmp_path / "missing.csv"))[0] == EXIT_INPUT


def test_train_is_deterministic_and_round_trips(tmp_path):
    model = tmp_path / "lr.model"
    code, first = run("train", str(SURROGATE), "logreg", "--grid", "--out", str(model))
    _, second = run("train", str(SURROGATE), "logreg", "--grid")
    assert code == EXIT_OK
    assert first.split("saved")[0] == second
    overall = re.search(r"overall CV accuracy (\S+)", first).group(1)
    code, text = run("evaluate", str(SURROGATE), "--model", str(model))
    assert code == EXIT_OK
    assert re.search(r"overall CV accuracy (\S+)", text).group(1) == overall


def test_train_forest_is_repeatable_with_seed():
    a = run("train", str(SURROGATE), "forest", "--seed", "1")[1]
    b = run("train", str(SURROGATE), "forest", "--seed", "1")[1]
    assert a == b


def test_month_start_with_model(tmp_path):
    model = tmp_path / "lr.model"
    run("train", str(SURROGATE), "logreg", "--out", str(model))
    code, text = run("month-start", "--hijri", "1445-09", "--site", "rabat", "--model", str(model))
    assert code == EXIT_OK
    assert text.splitlines()[0] == "2024-03-12"


def test_month_start_stubs():
    code, text = run("month-start", "--hijri", "1445-09", "--model-stub", "one")
    assert code == EXIT_OK and text.splitlines()[0] == "2024-03-11"
    code, text = run("month-start", "--hijri", "1445-09", "--model-stub", "zero")
    assert code == EXIT_EXHAUSTED and "offset" in text
    assert run("month-start", "--hijri", "1445-13", "--model-stub", "one")[0] == EXIT_INPUT
    assert run("month-start", "--hijri", "1445-09")[0] == EXIT_INPUT


def test_calendar_csv(tmp_path):
    code, text = run("calendar", "--year", "1445", "--model-stub", "one", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(text)))
    assert code == EXIT_OK and len(rows) == 12
    assert {int(r["days"]) for r in rows} <= {29, 30}
    assert sum(int(r["days"]) for r in rows) in (354, 355)


def test_missing_command_is_input_error():
    assert run()[0] == EXIT_INPUT
