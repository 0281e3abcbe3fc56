"""Command-line interface: ``hilal <command> ...``.

Exit codes: 0 success, 2 input error, 3 no sunset at the site, 4 no
predicted sighting within the search window.
"""
from __future__ import annotations

import argparse
import configparser
import csv
import datetime as dt
import io
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import crescent, hijri
from .ephemeris import RABAT, GeoLocation, NoEventError, UnsupportedEpochError
from .ml import (
    FAMILIES,
    DatasetError,
    HyperParams,
    ModelFormatError,
    UnsupportedOptionError,
    load_dataset,
    read_model,
    train,
    tune,
    write_model,
)
from .ml.models import DEFAULT_SEED, TrainingError
from .ml.selection import InfeasibleSplitError, classification_report, format_comparison
from .ml.stats import EmptyDatasetError, format_summary, summary_stats, zone_distribution

EXIT_OK, EXIT_INPUT, EXIT_NO_EVENT, EXIT_EXHAUSTED = 0, 2, 3, 4
CONFIG_NAME = "hilal.ini"

# Configuration used when ``train`` runs without --grid.
REFERENCE_CONFIGS = {
    "logreg": HyperParams("logreg", C=100, solver="lbfgs"),
    "tree": HyperParams("tree", max_depth=5, min_samples_split=2),
    "forest": HyperParams("forest", n_estimators=50, max_depth=3, min_samples_split=10),
    "svm": HyperParams("svm", C=100, kernel="linear"),
    "knn": HyperParams("knn", n_neighbors=3, weights="distance"),
}

STUBS = {"one": lambda arcv, w: 1, "zero": lambda arcv, w: 0}


class InputError(Exception):
    pass


@dataclass
class Config:
    sites: dict = field(default_factory=lambda: {"rabat": RABAT})
    model: str | None = None
    dataset: str | None = None
    seed: int = DEFAULT_SEED


def load_config(path=None) -> Config:
    """Read ``[defaults]`` (model, dataset, seed) and ``[sites]`` (name = lat, lon, elev).

    Without ``path`` a ``hilal.ini`` next to the executable is used if present.
    """
    cfg = Config()
    if path is None:
        candidate = Path(sys.argv[0]).resolve().parent / CONFIG_NAME
        if not candidate.is_file():
            return cfg
        path = candidate
    parser = configparser.ConfigParser()
    try:
        with open(path, encoding="utf-8") as fh:
            parser.read_file(fh)
    except (OSError, configparser.Error) as exc:
        raise InputError(f"cannot read config {path}: {exc}") from None
    if parser.has_section("defaults"):
        d = parser["defaults"]
        cfg.model = d.get("model", cfg.model)
        cfg.dataset = d.get("dataset", cfg.dataset)
        cfg.seed = d.getint("seed", cfg.seed)
    if parser.has_section("sites"):
        for name, value in parser["sites"].items():
            try:
                parts = [float(x) for x in value.split(",")]
                cfg.sites[name.lower()] = GeoLocation(*parts, name=name.lower())
            except (TypeError, ValueError) as exc:
                raise InputError(f"bad site {name!r} in {path}: {exc}") from None
    return cfg


def resolve_site(args, cfg: Config) -> GeoLocation:
    if args.lat is not None or args.lon is not None:
        if args.lat is None or args.lon is None:
            raise InputError("--lat and --lon must be given together")
        try:
            return GeoLocation(args.lat, args.lon, args.elev, name="custom")
        except ValueError as exc:
            raise InputError(str(exc)) from None
    name = args.site.lower()
    if name not in cfg.sites:
        raise InputError(f"unknown site {args.site!r} (known: {', '.join(sorted(cfg.sites))})")
    return cfg.sites[name]


def resolve_model(args, cfg: Config, required: bool = True):
    stub = getattr(args, "model_stub", None)
    if stub:
        return STUBS[stub]
    path = args.model or cfg.model
    if path is None:
        if required:
            raise InputError("a model is required: pass --model FILE or --model-stub")
        return None
    try:
        return read_model(path)
    except OSError as exc:
        raise InputError(f"cannot read model {path}: {exc.strerror}") from None
    except (ModelFormatError, UnsupportedOptionError) as exc:
        raise InputError(f"bad model file {path}: {exc}") from None


def _dataset(args, cfg):
    path = args.dataset or cfg.dataset
    if path is None:
        raise InputError("no dataset given")
    try:
        return load_dataset(path)
    except OSError as exc:
        raise InputError(f"cannot read dataset {path}: {exc.strerror}") from None
    except DatasetError as exc:
        raise InputError(f"{path}: {exc}") from None


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _num(x, p):
    return "" if x is None else f"{x:.{p}f}"


def _time(instant) -> str:
    return "" if instant is None else instant.to_datetime().strftime("%Y-%m-%dT%H:%M:%SZ")


# --- commands -----------------------------------------------------------------

def cmd_geometry(args, cfg, out):
    site = resolve_site(args, cfg)
    model = resolve_model(args, cfg, required=False)
    g = crescent.compute_geometry(args.date, site, epoch=args.epoch)
    a = crescent.assess(g.arcv, g.w)
    p = args.precision
    fields = [
        ("date", args.date.isoformat()),
        ("site", site.name or f"{site.latitude},{site.longitude}"),
        ("sunset", _time(g.sunset)),
        ("moonset", _time(g.moonset)),
        ("lag_min", _num(g.lag, p)),
        ("best_time", _time(g.evaluated_at)),
        ("arcv", _num(g.arcv, p)),
        ("daz", _num(g.daz, p)),
        ("arcl", _num(g.arcl, p)),
        ("w", _num(g.w, p)),
        ("odeh_v", _num(a.v, p)),
        ("zone", a.zone.value),
    ]
    if model is not None:
        fields.append(("prediction", str(0 if g.below_horizon else model(g.arcv, g.w))))
    if args.format == "csv":
        out.write(_csv([k for k, _ in fields], [[v for _, v in fields]]))
    else:
        out.write("".join(f"{k:>10}: {v}\n" for k, v in fields))
    return EXIT_OK


def cmd_stats(args, cfg, out):
    d = _dataset(args, cfg)
    try:
        stats = summary_stats(d)
    except EmptyDatasetError as exc:
        raise InputError(str(exc)) from None
    zones = zone_distribution(d)
    out.write(format_summary(stats, args.precision) + "\n\n")
    out.write(zones.format(args.precision) + "\n")
    if args.emit_zones:
        Path(args.emit_zones).write_text(zones.to_csv(), encoding="utf-8")
    return EXIT_OK


def cmd_train(args, cfg, out):
    d = _dataset(args, cfg)
    seed = cfg.seed if args.seed is None else args.seed
    families = list(FAMILIES) if args.family == "all" else [args.family]
    reports = []
    for fam in families:
        try:
            grid = None if args.grid else [REFERENCE_CONFIGS[fam]]
            rep = tune(d, fam, grid, k=args.folds, seed=seed)
        except (TrainingError, InfeasibleSplitError) as exc:
            out.write(f"[{fam}] failed: {exc}\n")
            continue
        reports.append(rep)
        out.write(rep.format(args.precision) + "\n\n")
    if not reports:
        raise InputError("training failed for every family")
    if len(families) > 1:
        out.write(format_comparison(reports, args.precision) + "\n")
    if args.out:
        done = [r for r in reports if r.overall_accuracy is not None]
        if not done:
            raise InputError("no family produced a model to save")
        chosen = max(done, key=lambda r: r.overall_accuracy)  # first wins on ties
        model = train(d, chosen.best_hyperparams, seed)
        write_model(model, args.out)
        out.write(f"saved {chosen.family} {chosen.best_hyperparams.label()} to {args.out}\n")
    return EXIT_OK


def cmd_evaluate(args, cfg, out):
    d = _dataset(args, cfg)
    model = resolve_model(args, cfg)
    seed = model.seed if model.seed is not None else (cfg.seed if args.seed is None else args.seed)
    rep = tune(d, model.family, [model.hyperparams], k=args.folds, seed=seed)
    out.write(rep.format(args.precision) + "\n")
    fitted = model.predict(d.X)
    acc = float((fitted == d.y).mean())
    out.write(f"  stored model accuracy on this dataset {acc:.{args.precision}f}\n")
    for c, r in classification_report(d.y, fitted).items():
        out.write(f"  {c:>6} {r.precision:>10.{args.precision}f} {r.recall:>10.{args.precision}f}"
                  f" {r.f1:>10.{args.precision}f} {r.support:>8d}\n")
    return EXIT_OK


def _probe_rows(probes, p):
    rows = []
    for pr in probes:
        g = pr.geometry
        a = crescent.assess(g.arcv, g.w)
        rows.append([pr.offset, pr.evening.isoformat(), _num(g.arcv, p), _num(g.w, p), _num(g.lag, p),
                     _num(a.v, p), a.zone.value, pr.visible])
    return rows


PROBE_HEADER = ["offset", "evening", "arcv", "w", "lag_min", "odeh_v", "zone", "prediction"]


def _table(header, rows) -> str:
    cells = [list(map(str, header))] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    return "".join("  ".join(c.rjust(w) for c, w in zip(r, widths)) + "\n" for r in cells)


def cmd_month_start(args, cfg, out):
    site = resolve_site(args, cfg)
    model = resolve_model(args, cfg)
    year, month = args.hijri
    try:
        res = hijri.determine_month_start(year, month, site, model, args.n_max)
    except hijri.NoVisibilityError as exc:
        out.write(f"no sighting predicted for {exc.hijri} within {args.n_max + 2} evenings\n")
        out.write(_table(PROBE_HEADER, _probe_rows(exc.probes, args.precision)))
        return EXIT_EXHAUSTED
    p = args.precision
    if args.format == "csv":
        out.write(_csv(["hijri", "g_base", "g_doubt", "g_first", "offset"],
                       [[f"{year}-{month:02d}", res.g_base, res.g_doubt, res.g_first, res.offset_used]]))
        return EXIT_OK
    out.write(f"{res.g_first.isoformat()}\n")
    out.write(f"hijri month: {year}-{month:02d} ({hijri.MONTH_NAMES[month - 1]})\n")
    out.write(f"g_base:  {res.g_base}\ng_doubt: {res.g_doubt}\ng_first: {res.g_first}\n")
    out.write(f"offset:  {res.offset_used}\n\n")
    out.write(_table(PROBE_HEADER, _probe_rows(res.probes, p)))
    return EXIT_OK


def cmd_calendar(args, cfg, out):
    site = resolve_site(args, cfg)
    model = resolve_model(args, cfg)
    last = args.to if args.to is not None else args.year
    if last < args.year:
        raise InputError("--to must not precede --year")
    header = ["hijri", "name", "g_first", "g_doubt", "offset", "days"]
    rows, notes, exhausted = [], [], False
    for year in range(args.year, last + 1):
        cal = hijri.generate_year(year, site, model, args.n_max)
        for m, (res, length) in enumerate(zip(cal.months, cal.month_lengths()), start=1):
            if isinstance(res, hijri.MonthStartResult):
                rows.append([f"{year}-{m:02d}", hijri.MONTH_NAMES[m - 1], res.g_first, res.g_doubt,
                             res.offset_used, "" if length is None else length])
            else:
                exhausted = True
                rows.append([f"{year}-{m:02d}", hijri.MONTH_NAMES[m - 1], "", "", "", ""])
        notes += [f"{year}: {v}" for v in cal.violations]
        if cal.total_days is not None:
            notes.append(f"{year}: total {cal.total_days} days")
    if args.format == "csv":
        out.write(_csv(header, rows))
    else:
        out.write(_table(header, rows))
        out.write("".join(n + "\n" for n in notes))
    return EXIT_EXHAUSTED if exhausted else EXIT_OK


# --- argument parsing -------------------------------------------------------------

def _date(text):
    try:
        return dt.date.fromisoformat(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid date {text!r}, expected YYYY-MM-DD") from None


def _hijri_month(text):
    try:
        y, m = (int(x) for x in text.split("-"))
        hijri.HijriDate(y, m)
    except (ValueError, hijri.HijriDateError):
        raise argparse.ArgumentTypeError(f"invalid Hijri month {text!r}, expected YYYY-MM") from None
    return y, m


def _nonneg(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise InputError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hilal", description="Crescent visibility and Hijri month starts for Morocco.")
    p.add_argument("--config", help=f"config file (default: {CONFIG_NAME} next to the executable)")
    p.add_argument("--precision", type=_nonneg, default=4, help="decimals for printed floats")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def site_args(sp):
        sp.add_argument("--site", default="rabat")
        sp.add_argument("--lat", type=float)
        sp.add_argument("--lon", type=float)
        sp.add_argument("--elev", type=float, default=0.0)

    def model_args(sp):
        sp.add_argument("--model", help="model file written by 'train --out'")
        sp.add_argument("--model-stub", choices=sorted(STUBS), help="constant model, for testing")

    g = sub.add_parser("geometry", help="crescent geometry and Odeh zone for one evening")
    g.add_argument("--date", type=_date, required=True)
    site_args(g)
    g.add_argument("--model")
    g.add_argument("--epoch", choices=("best", "sunset"), default="best")
    g.add_argument("--format", choices=("table", "csv"), default="table")
    g.set_defaults(func=cmd_geometry)

    s = sub.add_parser("stats", help="summary statistics and zone distribution of a dataset")
    s.add_argument("dataset", nargs="?")
    s.add_argument("--emit-zones", metavar="FILE", help="write the zone,output,count table")
    s.set_defaults(func=cmd_stats)

    t = sub.add_parser("train", help="cross-validate / tune classifiers")
    t.add_argument("dataset", nargs="?")
    t.add_argument("family", nargs="?", default="all", choices=(*FAMILIES, "all"))
    t.add_argument("--grid", action="store_true", help="grid-search the built-in candidate grids")
    t.add_argument("--seed", type=int)
    t.add_argument("--folds", type=int, default=4)
    t.add_argument("--out", metavar="FILE", help="save the best estimator refitted on all rows")
    t.set_defaults(func=cmd_train)

    e = sub.add_parser("evaluate", help="cross-validate a saved model's configuration")
    e.add_argument("dataset", nargs="?")
    e.add_argument("--model")
    e.add_argument("--seed", type=int)
    e.add_argument("--folds", type=int, default=4)
    e.set_defaults(func=cmd_evaluate)

    m = sub.add_parser("month-start", help="first day of a Hijri month")
    m.add_argument("--hijri", type=_hijri_month, required=True, metavar="YYYY-MM")
    site_args(m)
    model_args(m)
    m.add_argument("--n-max", type=_nonneg, default=hijri.DEFAULT_N_MAX)
    m.add_argument("--format", choices=("table", "csv"), default="table")
    m.set_defaults(func=cmd_month_start)

    c = sub.add_parser("calendar", help="month starts for whole Hijri years")
    c.add_argument("--year", type=int, required=True)
    c.add_argument("--to", type=int, help="last year of a range (inclusive)")
    site_args(c)
    model_args(c)
    c.add_argument("--n-max", type=_nonneg, default=hijri.DEFAULT_N_MAX)
    c.add_argument("--format", choices=("table", "csv"), default="table")
    c.set_defaults(func=cmd_calendar)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        cfg = load_config(args.config)
        return args.func(args, cfg, out)
    except InputError as exc:
        print(f"hilal: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (hijri.HijriDateError, UnsupportedEpochError, UnsupportedOptionError) as exc:
        print(f"hilal: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NoEventError as exc:
        print(f"hilal: {exc}", file=sys.stderr)
        return EXIT_NO_EVENT


if __name__ == "__main__":
    sys.exit(main())
