"""Line-oriented text format for trained classifiers.

::

    manazel-model v1
    family: logreg
    hp.C: 100
    hp.solver: lbfgs
    features: arcv,w
    params: 2
    weights: 1.2345678901234567 -0.5
    intercept: -3.25
    checksum: 9f3a01bc

``seed:`` follows ``family:`` for forests.  Floats are written with 17
significant digits so a load reproduces every bit.  The checksum is CRC32 of
all preceding lines, newline-terminated.
"""
from __future__ import annotations

import zlib

import numpy as np

from .dataset import FEATURES
from .hyperparams import HyperParams
from .models import ForestModel, KnnModel, LinearModel, TrainedClassifier, TreeModel

MAGIC = "manazel-model v1"


class ModelFormatError(ValueError):
    pass


def _f(x: float) -> str:
    return "%.17g" % float(x)


def _hp_text(v) -> str:
    if v is None:
        return "none"
    if isinstance(v, float):
        return _f(v)
    return str(v)


def _node_lines(nodes):
    return [f"node: {f} {_f(t)} {l} {r} {v}" for f, t, l, r, v in nodes]


def _param_lines(m: TrainedClassifier) -> list:
    model = m.model
    if isinstance(model, LinearModel):
        return ["weights: " + " ".join(_f(w) for w in model.weights), f"intercept: {_f(model.intercept)}"]
    if isinstance(model, TreeModel):
        return [f"nodes: {len(model.nodes)}", *_node_lines(model.nodes)]
    if isinstance(model, ForestModel):
        lines = [f"trees: {len(model.trees)}"]
        for tree in model.trees:
            lines += [f"nodes: {len(tree.nodes)}", *_node_lines(tree.nodes)]
        return lines
    if isinstance(model, KnnModel):
        return [f"rows: {len(model.y)}"] + [f"row: {_f(a)} {_f(b)} {int(c)}"
                                             for (a, b), c in zip(model.X, model.y)]
    raise TypeError(f"cannot serialise {type(model).__name__}")


def save_model(m: TrainedClassifier) -> str:
    lines = [MAGIC, f"family: {m.family}"]
    if m.seed is not None:
        lines.append(f"seed: {int(m.seed)}")
    lines += [f"hp.{k}: {_hp_text(v)}" for k, v in m.hyperparams.as_dict().items()]
    lines.append("features: " + ",".join(m.features))
    params = _param_lines(m)
    lines.append(f"params: {len(params)}")
    lines += params
    body = "".join(line + "\n" for line in lines)
    return body + f"checksum: {zlib.crc32(body.encode()):08x}\n"


def _split(line: str, key: str, section: str) -> str:
    prefix = key + ":"
    if not line.startswith(prefix):
        raise ModelFormatError(f"missing section: {section} (expected '{prefix}', found {line!r})")
    return line[len(prefix):].strip()


def _parse_nodes(lines, pos):
    count = int(_split(lines[pos], "nodes", "parameters"))
    nodes = []
    for line in lines[pos + 1: pos + 1 + count]:
        f, t, l, r, v = _split(line, "node", "parameters").split()
        nodes.append((int(f), float(t), int(l), int(r), int(v)))
    if len(nodes) != count:
        raise ModelFormatError("missing section: parameters (tree truncated)")
    return TreeModel(nodes), pos + 1 + count


def load_model(text: str) -> TrainedClassifier:
    lines = text.splitlines()
    if not lines or lines[0] != MAGIC:
        found = lines[0] if lines else "<empty>"
        if found.startswith("manazel-model"):
            raise ModelFormatError(f"unsupported model version: {found!r}")
        raise ModelFormatError(f"missing section: header (found {found!r})")
    if not lines[-1].startswith("checksum:"):
        raise ModelFormatError("missing section: checksum (file truncated?)")
    body = "".join(line + "\n" for line in lines[:-1])
    expected = _split(lines[-1], "checksum", "checksum")
    if f"{zlib.crc32(body.encode()):08x}" != expected:
        raise ModelFormatError("checksum mismatch")
    lines = lines[:-1]

    pos = 1
    family = _split(lines[pos], "family", "family")
    pos += 1
    seed = None
    if lines[pos].startswith("seed:"):
        seed = int(_split(lines[pos], "seed", "seed"))
        pos += 1
    hp = {}
    while pos < len(lines) and lines[pos].startswith("hp."):
        key, _, value = lines[pos][3:].partition(":")
        hp[key.strip()] = value.strip()
        pos += 1
    hyper = HyperParams(family, **hp)
    features = tuple(_split(lines[pos], "features", "features").split(","))
    if features != FEATURES:
        raise ModelFormatError(f"feature order {features} does not match {FEATURES}")
    pos += 1
    n_params = int(_split(lines[pos], "params", "parameters"))
    params = lines[pos + 1:]
    if len(params) != n_params:
        raise ModelFormatError(f"missing section: parameters ({len(params)} of {n_params} lines)")

    if family in ("logreg", "svm"):
        w = np.array([float(x) for x in _split(params[0], "weights", "parameters").split()])
        b = float(_split(params[1], "intercept", "parameters"))
        model = LinearModel(w, b, family)
    elif family == "tree":
        model, _ = _parse_nodes(params, 0)
    elif family == "forest":
        n_trees = int(_split(params[0], "trees", "parameters"))
        trees, p = [], 1
        for _ in range(n_trees):
            tree, p = _parse_nodes(params, p)
            trees.append(tree)
        model = ForestModel(trees)
    elif family == "knn":
        count = int(_split(params[0], "rows", "parameters"))
        rows = [_split(line, "row", "parameters").split() for line in params[1:1 + count]]
        X = np.array([[float(a), float(b)] for a, b, _ in rows]).reshape(-1, 2)
        y = np.array([int(c) for _, _, c in rows], dtype=int)
        model = KnnModel(X, y, hyper["n_neighbors"], hyper["weights"])
    else:
        raise ModelFormatError(f"unknown family {family!r}")
    return TrainedClassifier(family, hyper, model, seed=seed)


def write_model(m: TrainedClassifier, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(save_model(m))


def read_model(path) -> TrainedClassifier:
    with open(path, encoding="utf-8") as fh:
        return load_model(fh.read())
