"""The five classifier families, trained from scratch on (arcv, w).

Every trainer takes a :class:`Dataset` and :class:`HyperParams` and returns a
:class:`TrainedClassifier`.  Class 0 wins every tie (votes, margins of a
linear SVM exactly on the boundary); a logistic probability of exactly 0.5
predicts 1.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .dataset import FEATURES, Dataset
from .hyperparams import HyperParams, UnsupportedOptionError

DEFAULT_SEED = 42


class TrainingError(RuntimeError):
    pass


class ConvergenceError(TrainingError):
    def __init__(self, message: str, gradient_norm: float):
        self.gradient_norm = gradient_norm
        super().__init__(f"{message} (gradient inf-norm {gradient_norm:.3e})")


def _require_both_classes(y):
    if len(y) == 0 or y.min() == y.max():
        raise TrainingError("training needs both classes present")


def _signed(y):
    return np.where(np.asarray(y) == 1, 1.0, -1.0)


# --- linear models ------------------------------------------------------------

@dataclass
class LinearModel:
    weights: np.ndarray
    intercept: float
    kind: str  # "logreg" or "svm"

    def decision_function(self, X):
        return np.asarray(X, dtype=float) @ self.weights + self.intercept

    def predict_proba(self, X):
        if self.kind != "logreg":
            raise AttributeError("probabilities are only defined for logistic regression")
        return _sigmoid(self.decision_function(X))

    def predict(self, X):
        z = self.decision_function(X)
        # logreg: sigma(z) >= 0.5 <=> z >= 0; svm: sign(z), 0 -> class 0
        return (z >= 0).astype(int) if self.kind == "logreg" else (z > 0).astype(int)


def _sigmoid(z):
    return np.exp(-np.logaddexp(0.0, -np.asarray(z, dtype=float)))


def logistic_objective(theta, X, y, C):
    """1/2 |w|^2 + C * sum log(1 + exp(-y (w.x + b))) with y in {-1, +1}."""
    w, b = theta[:-1], theta[-1]
    return 0.5 * w @ w + C * np.logaddexp(0.0, -y * (X @ w + b)).sum()


def logistic_gradient(theta, X, y, C):
    w, b = theta[:-1], theta[-1]
    s = y * _sigmoid(-y * (X @ w + b))
    return np.concatenate([w - C * (X.T @ s), [-C * s.sum()]])


def _logistic_hessian(theta, X, C):
    p = _sigmoid(X @ theta[:-1] + theta[-1])
    Xt = np.hstack([X, np.ones((len(X), 1))])
    H = C * (Xt.T * (p * (1 - p))) @ Xt
    H[:-1, :-1] += np.eye(X.shape[1])
    return H


def train_logreg(d: Dataset, hp: HyperParams, *, tol: float = 1e-6, max_iter: int = 10_000):
    """L2-regularised logistic regression, intercept unpenalised.

    Damped Newton iterations until the gradient inf-norm drops below ``tol``.
    """
    X, y = d.X, d.y
    _require_both_classes(y)
    ys, C = _signed(y), hp["C"]
    theta = np.zeros(X.shape[1] + 1)
    f = logistic_objective(theta, X, ys, C)
    for _ in range(max_iter):
        g = logistic_gradient(theta, X, ys, C)
        gnorm = np.abs(g).max()
        if gnorm < tol:
            break
        H = _logistic_hessian(theta, X, C)
        try:
            step = -np.linalg.solve(H, g)
        except np.linalg.LinAlgError:
            step = -np.linalg.lstsq(H, g, rcond=None)[0]
        slope = g @ step
        if slope >= 0:
            step, slope = -g, -(g @ g)
        t = 1.0
        # Near the optimum the decrease is below float resolution of f.
        if abs(slope) < 1e-10 * (1 + abs(f)):
            theta = theta + step
            f = logistic_objective(theta, X, ys, C)
            continue
        while t > 1e-16:
            cand = theta + t * step
            fc = logistic_objective(cand, X, ys, C)
            if fc <= f + 1e-4 * t * slope:
                break
            t *= 0.5
        theta, f = cand, fc
    else:
        g = logistic_gradient(theta, X, ys, C)
        if np.abs(g).max() >= tol:
            raise ConvergenceError("logistic regression did not converge", float(np.abs(g).max()))
    model = LinearModel(theta[:-1].copy(), float(theta[-1]), "logreg")
    return TrainedClassifier("logreg", hp, model)


def hinge_objective(w, b, X, y, C):
    """1/2 |w|^2 + C * sum max(0, 1 - y (w.x + b)) with y in {-1, +1}."""
    w = np.asarray(w, dtype=float)
    return 0.5 * w @ w + C * np.maximum(0.0, 1.0 - y * (X @ w + b)).sum()


def _best_intercept(w, X, y):
    """Midpoint of the interval of b minimising the hinge sum for fixed w."""
    f = X @ w
    knots = np.unique(y - f)
    loss = np.maximum(0.0, 1.0 - y[None, :] * (f[None, :] + knots[:, None])).sum(axis=1)
    best = loss.min()
    on = knots[loss <= best + 1e-9 * (1 + best)]
    return 0.5 * (on.min() + on.max())


def _smo(K, y, C, eps, max_iter):
    """Dual SVM by SMO with second-order working-set selection."""
    n = len(y)
    tau = 1e-12
    alpha = np.zeros(n)
    G = -np.ones(n)
    Kd = np.diag(K).copy()
    for _ in range(max_iter):
        up = ((y > 0) & (alpha < C)) | ((y < 0) & (alpha > 0))
        low = ((y > 0) & (alpha > 0)) | ((y < 0) & (alpha < C))
        score = -y * G
        if not up.any() or not low.any():
            break
        i = int(np.flatnonzero(up)[np.argmax(score[up])])
        m = score[i]
        cand = low & (score < m)
        if not cand.any() or m - score[low].min() < eps:
            break
        b = m - score
        a = Kd[i] + Kd - 2 * K[i]
        a = np.where(a > 0, a, tau)
        obj = np.where(cand, -(b * b) / a, np.inf)
        j = int(np.argmin(obj))

        ai, aj = alpha[i], alpha[j]
        Qij = y[i] * y[j] * K[i, j]
        if y[i] != y[j]:
            quad = Kd[i] + Kd[j] + 2 * Qij
            delta = (-G[i] - G[j]) / (quad if quad > 0 else tau)
            diff = ai - aj
            alpha[i] += delta
            alpha[j] += delta
            if diff > 0:
                if alpha[j] < 0:
                    alpha[j], alpha[i] = 0.0, diff
            elif alpha[i] < 0:
                alpha[i], alpha[j] = 0.0, -diff
            if diff > 0:
                if alpha[i] > C:
                    alpha[i], alpha[j] = C, C - diff
            elif alpha[j] > C:
                alpha[j], alpha[i] = C, C + diff
        else:
            quad = Kd[i] + Kd[j] - 2 * Qij
            delta = (G[i] - G[j]) / (quad if quad > 0 else tau)
            total = ai + aj
            alpha[i] -= delta
            alpha[j] += delta
            if total > C:
                if alpha[i] > C:
                    alpha[i], alpha[j] = C, total - C
            elif alpha[j] < 0:
                alpha[j], alpha[i] = 0.0, total
            if total > C:
                if alpha[j] > C:
                    alpha[j], alpha[i] = C, total - C
            elif alpha[i] < 0:
                alpha[i], alpha[j] = 0.0, total
        G += y * (y[i] * K[i] * (alpha[i] - ai) + y[j] * K[j] * (alpha[j] - aj))
    else:
        raise TrainingError(f"SMO did not reach tolerance {eps} in {max_iter} iterations")
    return alpha


def train_svm(d: Dataset, hp: HyperParams, *, eps: float = 1e-7, max_iter: int = 2_000_000):
    """Linear soft-margin SVM on raw features."""
    if hp["kernel"] != "linear":
        raise UnsupportedOptionError(f"only the linear kernel is supported, got {hp['kernel']!r}")
    X, y = d.X, d.y
    _require_both_classes(y)
    ys, C = _signed(y), hp["C"]
    alpha = _smo(X @ X.T, ys, C, eps, max_iter)
    w = (alpha * ys) @ X
    b = _best_intercept(w, X, ys)
    return TrainedClassifier("svm", hp, LinearModel(w, float(b), "svm"))


# --- trees ------------------------------------------------------------------

@dataclass
class TreeModel:
    """Flat node array in pre-order.

    Each node is (feature, threshold, left, right, value); feature -1 marks a
    leaf whose class is ``value``.  Samples with x[feature] <= threshold go left.
    """

    nodes: list

    def predict(self, X):
        X = np.asarray(X, dtype=float)
        out = np.empty(len(X), dtype=int)
        for r, x in enumerate(X):
            k = 0
            while self.nodes[k][0] >= 0:
                feat, thr, left, right, _ = self.nodes[k]
                k = left if x[feat] <= thr else right
            out[r] = self.nodes[k][4]
        return out

    @property
    def depth(self) -> int:
        def walk(k):
            feat, _, left, right, _ = self.nodes[k]
            return 0 if feat < 0 else 1 + max(walk(left), walk(right))
        return walk(0)


def majority(y) -> int:
    ones = int(np.sum(y))
    return 1 if ones > len(y) - ones else 0


def best_split(X, y, features):
    """Best Gini split over ``features`` (in the given order).

    Thresholds are midpoints between consecutive distinct values.  Returns
    (feature, threshold) or None.  Scores equal within 1e-9 keep the earlier
    candidate.
    """
    n = len(y)
    best, best_score = None, -np.inf
    for feat in features:
        order = np.argsort(X[:, feat], kind="stable")
        xs, ys = X[order, feat], y[order]
        cut = np.flatnonzero(xs[1:] > xs[:-1])  # split after position cut
        if cut.size == 0:
            continue
        n_left = cut + 1.0
        ones_left = np.cumsum(ys)[cut].astype(float)
        n_right = n - n_left
        ones_right = ys.sum() - ones_left
        # sum_k n_k^2 / n_side per side; larger means lower weighted Gini
        score = ((ones_left**2 + (n_left - ones_left) ** 2) / n_left
                 + (ones_right**2 + (n_right - ones_right) ** 2) / n_right)
        k = int(np.flatnonzero(score >= score.max() - 1e-9)[0])
        if score[k] > best_score + 1e-9:
            best_score = score[k]
            best = (int(feat), 0.5 * (xs[cut[k]] + xs[cut[k] + 1]))
    return best


def grow_tree(X, y, max_depth=None, min_samples_split=2, rng=None, max_features=None):
    """CART on Gini impurity.

    With ``max_features`` set, each split examines features in a random order
    drawn from ``rng`` and keeps the first ``max_features`` that admit a split.
    """
    nodes = []
    n_features = X.shape[1]

    def candidate_features(Xn):
        if max_features is None:
            return range(n_features)
        order = rng.permutation(n_features)
        usable = [f for f in order if np.ptp(Xn[:, f]) > 0]
        return usable[:max_features]

    def build(idx, depth):
        k = len(nodes)
        nodes.append(None)
        yn = y[idx]
        value = majority(yn)
        stop = (yn.min() == yn.max()
                or (max_depth is not None and depth >= max_depth)
                or len(idx) < min_samples_split)
        split = None if stop else best_split(X[idx], yn, candidate_features(X[idx]))
        if split is None:
            nodes[k] = (-1, 0.0, -1, -1, value)
            return k
        feat, thr = split
        go_left = X[idx, feat] <= thr
        left = build(idx[go_left], depth + 1)
        right = build(idx[~go_left], depth + 1)
        nodes[k] = (feat, float(thr), left, right, value)
        return k

    build(np.arange(len(y)), 0)
    return TreeModel(nodes)


def train_tree(d: Dataset, hp: HyperParams):
    if len(d) == 0:
        raise TrainingError("cannot train on an empty dataset")
    model = grow_tree(d.X, d.y, hp["max_depth"], hp["min_samples_split"])
    return TrainedClassifier("tree", hp, model)


@dataclass
class ForestModel:
    trees: list

    def predict(self, X):
        votes = np.sum([t.predict(X) for t in self.trees], axis=0)
        return (2 * votes > len(self.trees)).astype(int)


def train_forest(d: Dataset, hp: HyperParams, seed: int = DEFAULT_SEED, *,
                 bootstrap: bool = True, max_features: Optional[int] = 1):
    """Bagged CART trees with one random candidate feature per split.

    ``bootstrap`` and ``max_features`` exist so tests can reduce a
    one-tree forest to plain CART.
    """
    if len(d) == 0:
        raise TrainingError("cannot train on an empty dataset")
    X, y = d.X, d.y
    rng = np.random.default_rng(seed)
    trees = []
    for _ in range(hp["n_estimators"]):
        idx = rng.integers(0, len(y), len(y)) if bootstrap else np.arange(len(y))
        trees.append(grow_tree(X[idx], y[idx], hp["max_depth"], hp["min_samples_split"],
                               rng=rng, max_features=max_features))
    return TrainedClassifier("forest", hp, ForestModel(trees), seed=seed)


# --- nearest neighbours -------------------------------------------------------

@dataclass
class KnnModel:
    X: np.ndarray
    y: np.ndarray
    n_neighbors: int
    weights: str

    def predict(self, X):
        X = np.atleast_2d(np.asarray(X, dtype=float))
        return np.array([self._vote(x) for x in X], dtype=int)

    def _vote(self, x):
        dist = np.sqrt(((self.X - x) ** 2).sum(axis=1))
        near = np.argsort(dist, kind="stable")[: self.n_neighbors]
        d, lab = dist[near], self.y[near]
        if self.weights == "uniform":
            return majority(lab)
        zero = d == 0
        if zero.any():
            return majority(lab[zero])
        w = 1.0 / d
        return 1 if w[lab == 1].sum() > w[lab == 0].sum() else 0


def train_knn(d: Dataset, hp: HyperParams):
    k = hp["n_neighbors"]
    if k > len(d):
        raise TrainingError(f"n_neighbors={k} exceeds the {len(d)} training rows")
    return TrainedClassifier("knn", hp, KnnModel(d.X.copy(), d.y.copy(), k, hp["weights"]))


# --- common wrapper ------------------------------------------------------------

@dataclass
class TrainedClassifier:
    family: str
    hyperparams: HyperParams
    model: object
    seed: Optional[int] = None
    features: tuple = field(default=FEATURES)

    def predict(self, X) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=float))
        if X.shape[1] != len(self.features):
            raise ValueError(f"expected {len(self.features)} features {self.features}, got {X.shape[1]}")
        return self.model.predict(X)

    def __call__(self, arcv: float, w: float) -> int:
        return int(self.predict([[arcv, w]])[0])


def predict(m: TrainedClassifier, arcv: float, w: float) -> int:
    return m(arcv, w)


TRAINERS = {
    "logreg": train_logreg,
    "tree": train_tree,
    "forest": train_forest,
    "svm": train_svm,
    "knn": train_knn,
}


def train(d: Dataset, hp: HyperParams, seed: int = DEFAULT_SEED) -> TrainedClassifier:
    """Dispatch to the family's trainer; only the forest consumes ``seed``."""
    if hp.family == "forest":
        return train_forest(d, hp, seed)
    return TRAINERS[hp.family](d, hp)
