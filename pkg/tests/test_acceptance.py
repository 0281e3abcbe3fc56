"""Acceptance criteria, one test each, each printing a PASS/FAIL line.

Criteria 1 and 2 need the Moroccan sighting record (257 rows).  It is not
redistributed with this package; point HILAL_MOROCCO_CSV at it or place it
at tests/data/morocco_sightings.csv.  Without it criterion 1 falls back to
the generated 257-row fixture and criterion 2 fails.
"""
import datetime as dt
import io
import json
import os
import time
from pathlib import Path

import numpy as np
import pytest

from hilal import hijri
from hilal.cli import main as cli_main
from hilal.crescent import Zone, classify_zone, odeh_value, visibility_curve
from hilal.ephemeris import RABAT, evening_events, julian_day
from hilal.ephemeris.positions import moon_ecliptic, sun_ecliptic
from hilal.ml import (
    FAMILIES,
    Dataset,
    HyperParams,
    cross_val_predict,
    kfold_split,
    load_dataset,
    load_model,
    save_model,
    summary_stats,
    train,
    tune,
)
from hilal.ml.models import hinge_objective, logistic_gradient

from conftest import DATA, SURROGATE
from oracles import knn_oracle, logistic_loss, nodes_to_nested, svm_grid_minimum, tree_oracle

MOROCCO_CSV = Path(os.environ.get("HILAL_MOROCCO_CSV", DATA / "morocco_sightings.csv"))

PUBLISHED_STATS = {
    "arcv": {"count": 257, "mean": 9.5620, "std": 5.0969, "min": 0.6054, "p25": 5.1224,
             "p50": 9.0396, "p75": 13.1915, "max": 22.5345},
    "w": {"mean": 0.4911},
    "output": {"mean": 0.5953},
}
PUBLISHED_OVERALL = {"logreg": 0.9883, "tree": 0.9767, "forest": 0.9844, "svm": 0.9844, "knn": 0.9844}
PUBLISHED_LOGREG_BEST = 0.9922


@pytest.fixture
def verdict(capsys):
    def report(n, title, ok, detail):
        with capsys.disabled():
            print(f"\nACCEPTANCE {n} {'PASS' if ok else 'FAIL'}: {title} -- {detail}")
        assert ok, detail
    return report


def _time(fn):
    t = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t


def test_criterion_1_summary_statistics(verdict):
    if MOROCCO_CSV.is_file():
        stats, elapsed = _time(lambda: summary_stats(load_dataset(MOROCCO_CSV)))
        bad = [f"{var}.{k}={getattr(stats[var], k):.4f} (want {v})"
               for var, cells in PUBLISHED_STATS.items() for k, v in cells.items()
               if round(getattr(stats[var], k), 4) != v]
        ok = not bad and elapsed < 1.0
        verdict(1, "published summary statistics on the Moroccan CSV", ok,
                f"{'all cells match' if not bad else '; '.join(bad)}, {elapsed:.3f} s")
        return
    oracle = json.loads((DATA / "surrogate_stats_oracle.json").read_text())
    stats, elapsed = _time(lambda: summary_stats(load_dataset(SURROGATE)))
    keys = {"count": "count", "mean": "mean", "std": "std", "min": "min", "25%": "p25",
            "50%": "p50", "75%": "p75", "max": "max"}
    worst = max(abs(getattr(stats[var], attr) - oracle[var][key])
                for var in oracle for key, attr in keys.items())
    ok = worst <= 1e-9 and elapsed < 1.0
    verdict(1, "fallback: 257-row fixture vs exact-arithmetic oracle", ok,
            f"Moroccan CSV not found at {MOROCCO_CSV}; max deviation {worst:.2e}, {elapsed:.3f} s")


def test_criterion_2_published_cv_results(verdict):
    if not MOROCCO_CSV.is_file():
        verdict(2, "published cross-validation results", False,
                f"Moroccan sighting CSV not available (looked at {MOROCCO_CSV}); cannot be evaluated")
    d = load_dataset(MOROCCO_CSV)
    reports, elapsed = _time(lambda: {f: tune(d, f) for f in FAMILIES})
    lr = reports["logreg"]
    problems = []
    if abs(lr.best_score - PUBLISHED_LOGREG_BEST) > 0.01:
        problems.append(f"logreg best CV {lr.best_score:.4f} vs {PUBLISHED_LOGREG_BEST}")
    for f, target in PUBLISHED_OVERALL.items():
        tol = 0.01 if f == "logreg" else 0.015
        got = reports[f].overall_accuracy
        if got is None or abs(got - target) > tol:
            problems.append(f"{f} overall {got} vs {target}")
    ok = not problems and elapsed < 60
    summary = ", ".join(f"{f} {r.overall_accuracy:.4f}" for f, r in reports.items())
    verdict(2, "published cross-validation results", ok, f"{'; '.join(problems) or summary}, {elapsed:.1f} s")


def test_criterion_3_oracle_equivalence(verdict):
    rng = np.random.default_rng(2024)
    failures = []

    X = rng.uniform(0, 4, (40, 2))
    y = rng.integers(0, 2, 40)
    d = Dataset.from_arrays(X, y)
    queries = rng.uniform(0, 4, (50, 2))
    for k, wts in ((1, "uniform"), (3, "uniform"), (5, "distance"), (7, "distance")):
        m = train(d, HyperParams("knn", n_neighbors=k, weights=wts))
        if list(m.predict(queries)) != [knn_oracle(X, y, q, k, wts) for q in queries]:
            failures.append(f"knn k={k} {wts}")

    for i in range(100):
        Xt = rng.integers(0, 5, (12, 2)).astype(float) if i % 2 else rng.uniform(0, 4, (12, 2))
        yt = rng.integers(0, 2, 12)
        m = train(Dataset.from_arrays(Xt, yt), HyperParams("tree"))
        if nodes_to_nested(m.model.nodes) != tree_oracle(Xt, yt):
            failures.append(f"tree instance {i}")

    gaps = []
    for _ in range(10):
        Xs = rng.uniform(0, 4, (8, 2))
        ys = np.r_[0, 1, rng.integers(0, 2, 6)]
        m = train(Dataset.from_arrays(Xs, ys), HyperParams("svm", C=1)).model
        f_svm = hinge_objective(m.weights, m.intercept, Xs, np.where(ys == 1, 1.0, -1.0), 1.0)
        gaps.append(abs(f_svm - svm_grid_minimum(Xs, ys, 1.0, w_range=4.0, b_range=20.0)))
    if max(gaps) > 1e-3:
        failures.append(f"svm objective gap {max(gaps):.2e}")

    Xl = rng.uniform(0, 20, (30, 2))
    yl = np.where(rng.integers(0, 2, 30) == 1, 1.0, -1.0)
    rel = []
    for _ in range(20):
        theta = rng.normal(0, 1, 3)
        g = logistic_gradient(theta, Xl, yl, 1.0)
        h = 1e-6
        fd = np.array([(logistic_loss(theta + h * e, Xl, yl, 1.0) - logistic_loss(theta - h * e, Xl, yl, 1.0))
                       / (2 * h) for e in np.eye(3)])
        rel.append(np.linalg.norm(g - fd) / np.linalg.norm(fd))
    if max(rel) > 1e-4:
        failures.append(f"logreg gradient rel err {max(rel):.2e}")

    verdict(3, "oracle equivalence (knn, tree, svm, logreg gradient)", not failures,
            "; ".join(failures) or f"svm max gap {max(gaps):.1e}, gradient max rel err {max(rel):.1e}")


def test_criterion_4_odeh(verdict):
    v = odeh_value(10, 0.5)
    zones = [classify_zone(x) for x in (5.65, 2.0, -0.96, -0.9600001)]
    w = np.linspace(0, 1.7, 1000)
    curve_ok = bool(np.all(np.diff(visibility_curve(w)) < 0))
    ok = abs(v - 5.8260) <= 1e-4 and zones == [Zone.A, Zone.B, Zone.C, Zone.D] and curve_ok
    verdict(4, "ODEH criterion", ok,
            f"V(10, 0.5) = {v:.5f}, zones {''.join(z.value for z in zones)}, "
            f"visibility curve decreasing in W on 1000 points: {curve_ok}")


def test_criterion_5_ephemeris(verdict, ephemeris_oracle):
    def run():
        errs = {"sun": 0.0, "moon": 0.0, "sunset": 0.0, "moonset": 0.0}
        for row in ephemeris_oracle:
            tt = julian_day(dt.datetime.fromisoformat(row["tt"])).jd_ut
            sun = float(np.ravel(sun_ecliptic(tt)[0])[0])
            moon = float(np.ravel(moon_ecliptic(tt)[0])[0])
            errs["sun"] = max(errs["sun"], abs((sun - float(row["sun_apparent_lon"]) + 180) % 360 - 180))
            errs["moon"] = max(errs["moon"], abs((moon - float(row["moon_lon"]) + 180) % 360 - 180))
            ev = evening_events(row["date"], RABAT)
            for key, got in (("sunset", ev.sunset), ("moonset", ev.moonset)):
                want = dt.datetime.fromisoformat(row[f"{key}_utc"]).replace(tzinfo=None)
                errs[key] = max(errs[key], abs((got.to_datetime() - want).total_seconds()))
        return errs
    errs, elapsed = _time(run)
    ok = (errs["sun"] <= 0.01 and errs["moon"] <= 0.05 and errs["sunset"] <= 120
          and errs["moonset"] <= 120 and elapsed < 1.0)
    verdict(5, "ephemeris vs independent oracle", ok,
            f"sun {errs['sun']:.5f} deg, moon {errs['moon']:.5f} deg, sunset {errs['sunset']:.1f} s, "
            f"moonset {errs['moonset']:.1f} s, {elapsed:.2f} s")


def test_criterion_6_algorithm(verdict):
    def run():
        d = load_dataset(SURROGATE)
        model = train(d, tune(d, "logreg").best_hyperparams)
        start = hijri.determine_month_start(1445, 9, RABAT, model)
        lengths, totals, violations = [], [], []
        for year in range(1432, 1445):
            cal = hijri.generate_year(year, RABAT, model)
            lengths += cal.month_lengths()
            totals.append(cal.total_days)
            violations += cal.violations
        return start, lengths, totals, violations
    (start, lengths, totals, violations), elapsed = _time(run)
    frac = sum(1 for n in lengths if n == 29) / len(lengths)
    ok = (start.g_first == dt.date(2024, 3, 12) and not violations
          and set(lengths) <= {29, 30} and all(t in (354, 355) for t in totals)
          and 0.45 <= frac <= 0.70 and elapsed < 60)
    verdict(6, "month-start algorithm end to end (logreg trained on the generated fixture)", ok,
            f"1 Ramadan 1445 = {start.g_first}, {len(lengths)} months, totals {sorted(set(totals))}, "
            f"29-day fraction {frac:.3f}, {elapsed:.1f} s")


def test_criterion_7_persistence_and_determinism(verdict):
    d = load_dataset(SURROGATE)
    rng = np.random.default_rng(7)
    X = np.c_[rng.uniform(0, 30, 1000), rng.uniform(0, 2.5, 1000)]
    failures = []
    for fam in FAMILIES:
        hp = HyperParams(fam, n_estimators=20) if fam == "forest" else HyperParams(fam)
        a, b = train(d, hp, seed=11), train(d, hp, seed=11)
        if save_model(a) != save_model(b):
            failures.append(f"{fam} retrain differs")
        if not np.array_equal(load_model(save_model(a)).predict(X), a.predict(X)):
            failures.append(f"{fam} round trip differs")
    outputs = []
    for _ in range(2):
        buf = io.StringIO()
        cli_main(["train", str(SURROGATE), "all", "--seed", "5"], out=buf)
        outputs.append(buf.getvalue())
    if outputs[0] != outputs[1]:
        failures.append("CLI train output differs between runs")
    verdict(7, "persistence round trip and determinism", not failures,
            "; ".join(failures) or "5 families x 1000 inputs identical, repeated runs byte-identical")


def test_criterion_8_cv_structure(verdict):
    d = load_dataset(SURROGATE)
    folds = kfold_split(d, 4)
    tests = np.concatenate([te for _, te in folds])
    sizes = [len(te) for _, te in folds]
    per_class = [[int(np.sum(d.y[te] == c)) for _, te in folds] for c in (0, 1)]
    pred, _ = cross_val_predict(d, HyperParams("logreg"), 4)
    ok = (sorted(tests.tolist()) == list(range(len(d)))
          and all(not set(tr) & set(te) for tr, te in folds)
          and sorted(sizes) == [64, 64, 64, 65]
          and all(max(c) - min(c) <= 1 for c in per_class)
          and pred.shape == (len(d),) and np.all(pred >= 0))
    verdict(8, "stratified 4-fold structure", ok,
            f"fold sizes {sizes}, per-class {per_class}, {len(pred)} predictions for {len(d)} rows")
