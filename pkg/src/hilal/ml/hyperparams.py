"""Hyperparameter sets for the five classifier families."""
from __future__ import annotations

FAMILIES = ("logreg", "tree", "forest", "svm", "knn")

# key -> default, per family
_SCHEMA = {
    "logreg": {"C": 1.0, "solver": "lbfgs"},
    "tree": {"max_depth": None, "min_samples_split": 2},
    "forest": {"n_estimators": 100, "max_depth": None, "min_samples_split": 2},
    "svm": {"C": 1.0, "kernel": "linear"},
    "knn": {"n_neighbors": 5, "weights": "uniform"},
}
_FLOAT_KEYS = {"C"}
_INT_KEYS = {"max_depth", "min_samples_split", "n_estimators", "n_neighbors"}


class UnsupportedOptionError(ValueError):
    pass


class HyperParams:
    """Immutable, validated hyperparameters for one family.

    >>> HyperParams("logreg", C=100)
    HyperParams('logreg', C=100.0, solver='lbfgs')
    """

    __slots__ = ("family", "_values")

    def __init__(self, family: str, **values):
        if family not in _SCHEMA:
            raise UnsupportedOptionError(f"unknown model family {family!r}")
        schema = _SCHEMA[family]
        unknown = set(values) - set(schema)
        if unknown:
            raise UnsupportedOptionError(f"invalid key(s) for {family}: {', '.join(sorted(unknown))}")
        merged = {**schema, **values}
        for key, value in merged.items():
            merged[key] = _coerce(key, value)
        _validate(family, merged)
        object.__setattr__(self, "family", family)
        object.__setattr__(self, "_values", tuple(merged.items()))

    def __setattr__(self, name, value):
        raise AttributeError("HyperParams is immutable")

    def __getitem__(self, key):
        return dict(self._values)[key]

    def as_dict(self) -> dict:
        return dict(self._values)

    def replace(self, **changes) -> "HyperParams":
        return HyperParams(self.family, **{**self.as_dict(), **changes})

    def __eq__(self, other):
        return isinstance(other, HyperParams) and (self.family, self._values) == (other.family, other._values)

    def __hash__(self):
        return hash((self.family, self._values))

    def __repr__(self):
        inner = ", ".join(f"{k}={v!r}" for k, v in self._values)
        return f"HyperParams({self.family!r}, {inner})"

    def label(self) -> str:
        """Compact text in the style {C: 100, solver: lbfgs}."""
        return "{" + ", ".join(f"{k}: {_fmt(v)}" for k, v in self._values) + "}"


def _fmt(v):
    if v is None:
        return "None"
    if isinstance(v, float) and v.is_integer():
        return str(int(v))
    return str(v)


def _coerce(key, value):
    if isinstance(value, str) and value.strip().lower() in ("none", "unlimited"):
        return None
    if key in _FLOAT_KEYS:
        return float(value)
    if key in _INT_KEYS and value is not None:
        f = float(value)
        if not f.is_integer():
            raise UnsupportedOptionError(f"{key} must be an integer, got {value!r}")
        return int(f)
    return value


def _validate(family, v):
    if "C" in v and not v["C"] > 0:
        raise UnsupportedOptionError(f"C must be > 0, got {v['C']}")
    if v.get("max_depth") is not None and v["max_depth"] < 1:
        raise UnsupportedOptionError(f"max_depth must be >= 1 or None, got {v['max_depth']}")
    if "min_samples_split" in v and v["min_samples_split"] < 2:
        raise UnsupportedOptionError("min_samples_split must be >= 2")
    if "n_estimators" in v and v["n_estimators"] < 1:
        raise UnsupportedOptionError("n_estimators must be >= 1")
    if "n_neighbors" in v and v["n_neighbors"] < 1:
        raise UnsupportedOptionError("n_neighbors must be >= 1")
    if family == "svm" and v["kernel"] != "linear":
        raise UnsupportedOptionError(f"only the linear kernel is supported, got {v['kernel']!r}")
    if family == "knn" and v["weights"] not in ("uniform", "distance"):
        raise UnsupportedOptionError(f"weights must be 'uniform' or 'distance', got {v['weights']!r}")
    if family == "logreg" and v["solver"] != "lbfgs":
        raise UnsupportedOptionError(f"unsupported solver {v['solver']!r}")


def default_grid(family: str) -> list:
    """Candidate grids; each contains the configuration reported best for its family."""
    if family == "logreg":
        return [HyperParams("logreg", C=c) for c in (0.01, 0.1, 1, 10, 100)]
    if family == "tree":
        return [HyperParams("tree", max_depth=d, min_samples_split=s)
                for d in (3, 5, 7, None) for s in (2, 5, 10)]
    if family == "forest":
        return [HyperParams("forest", n_estimators=n, max_depth=d, min_samples_split=s)
                for n in (50, 100) for d in (3, 5, None) for s in (2, 5, 10)]
    if family == "svm":
        return [HyperParams("svm", C=c) for c in (0.1, 1, 10, 100)]
    if family == "knn":
        return [HyperParams("knn", n_neighbors=k, weights=w)
                for k in (3, 5, 7) for w in ("uniform", "distance")]
    raise UnsupportedOptionError(f"unknown model family {family!r}")
